"""Wigner's three-pulse curvature estimator and the fluctuation chain.

A clock and a mirror at rest, separated by l/2, exchange three
consecutive light round trips with flight times (t1, t2, t3).  The
average curvature in the swept region is read off the second difference

    C = (t1 - 2 t2 + t3) / (11 c t2^2)

which annihilates constant and linear trends in the flight times.
Applying the cube-root uncertainty law to the single, pairwise and
triple intervals gives the closed-form curvature noise

    delta_C = sqrt(15 - 6*2^(2/3) + 3^(2/3)) / 11 * (1/l) * (l_planck/l)^(2/3)

valid in the linearized regime l >> l_planck (the flight times are then
much larger than their fluctuations; below LINEARIZATION_MIN_PLANCK
Planck lengths callers should flag the output as questionable).  From
delta_C follow the Riemann-scalar and energy-density fluctuations.  The
scalar and density relations are order-of-magnitude laws: they are
implemented with coefficient exactly 1 and must be labelled as such in
user-facing output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import (
    ConstantSet,
    Curvature,
    Curvature2,
    Length,
    MassDensity,
    TimeInterval,
    default_constants,
)
from .errors import ConsistencyError, DomainError

# Ratio Var(t1 - 2 t2 + t3) / sigma^2 implied by the cube-root law applied
# to overlapping intervals, and the resulting prefactor of delta_C.
VARIANCE_RATIO = 15.0 - 6.0 * 2.0 ** (2.0 / 3.0) + 3.0 ** (2.0 / 3.0)
CURVATURE_NOISE_COEFF = math.sqrt(VARIANCE_RATIO) / 11.0

# Linearization guard: below this many Planck lengths the closed forms
# still evaluate but the linear-in-delta_t approximation is questionable.
LINEARIZATION_MIN_PLANCK = 100.0

# PSD acceptance: smallest eigenvalue >= -PSD_RTOL * sigma2.
PSD_RTOL = 1e-12

_ROUTE_RTOL = 1e-12


@dataclass(frozen=True)
class PulseTriplet:
    """Three successive round-trip flight times (seconds)."""

    t1: TimeInterval
    t2: TimeInterval
    t3: TimeInterval

    def validate(self) -> None:
        for name, value in (("t1", self.t1), ("t2", self.t2), ("t3", self.t3)):
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a strictly positive finite time, got {value!r}")


@dataclass(frozen=True)
class TripletCovariance:
    """3x3 covariance of (t1, t2, t3) with equal diagonal entries.

    Units are time^2.  cov12/cov23 are the adjacent covariances, cov13
    the outer one; the matrix view is symmetric by construction.
    """

    sigma2: float
    cov12: float
    cov23: float
    cov13: float

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.sigma2, self.cov12, self.cov13],
                [self.cov12, self.sigma2, self.cov23],
                [self.cov13, self.cov23, self.sigma2],
            ]
        )

    def smallest_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix())[0])

    def validate(self) -> None:
        entries = (self.sigma2, self.cov12, self.cov23, self.cov13)
        if not all(math.isfinite(x) for x in entries):
            raise DomainError(f"covariance entries must be finite, got {entries!r}")
        if self.sigma2 <= 0:
            raise DomainError(f"sigma2 must be strictly positive, got {self.sigma2!r}")
        smallest = self.smallest_eigenvalue()
        if smallest < -PSD_RTOL * self.sigma2:
            raise DomainError(
                f"covariance is not positive semidefinite: smallest eigenvalue {smallest!r}"
            )


@dataclass(frozen=True)
class FluctuationProfile:
    """delta_C, delta_R and delta_rho evaluated at one averaging length."""

    l: Length
    delta_c: Curvature
    delta_r: Curvature2
    delta_rho: MassDensity


def estimate_curvature(triplet: PulseTriplet, constants: ConstantSet | None = None) -> Curvature:
    """Average curvature (t1 - 2 t2 + t3) / (11 c t2^2) in 1/cm.

    The second difference makes the estimate invariant under affine
    trends in the pulse index and linear in (t1, t3) at fixed t2; the
    sign of the second difference is preserved.
    """
    cs = constants or default_constants()
    triplet.validate()
    second_difference = triplet.t1 - 2.0 * triplet.t2 + triplet.t3
    return second_difference / (11.0 * cs.c * triplet.t2**2)


def second_difference_variance(cov: TripletCovariance) -> float:
    """Var(t1 - 2 t2 + t3) in time^2, computed two equivalent ways.

    Route one is the direct quadratic form with weights (1, -2, 1); route
    two is the six-term decomposition into single, pairwise and triple
    interval variances:

        3 V(t1) + 9 V(t2) + 3 V(t3) - 3 V(t1+t2) - 3 V(t2+t3) + V(t1+t2+t3)

    The two are an algebraic identity for any joint distribution, so any
    disagreement (beyond 1e-12 relative to the matrix scale) raises
    ConsistencyError.
    """
    cov.validate()
    direct = (
        6.0 * cov.sigma2
        - 4.0 * cov.cov12
        - 4.0 * cov.cov23
        + 2.0 * cov.cov13
    )
    var_12 = 2.0 * cov.sigma2 + 2.0 * cov.cov12
    var_23 = 2.0 * cov.sigma2 + 2.0 * cov.cov23
    var_123 = 3.0 * cov.sigma2 + 2.0 * (cov.cov12 + cov.cov23 + cov.cov13)
    six_term = (
        3.0 * cov.sigma2 + 9.0 * cov.sigma2 + 3.0 * cov.sigma2
        - 3.0 * var_12 - 3.0 * var_23 + var_123
    )
    # Relative to the matrix scale as well, since the variance itself may
    # legitimately cancel to zero (perfectly correlated triplets).
    scale = max(abs(direct), abs(six_term), cov.sigma2)
    if abs(direct - six_term) > _ROUTE_RTOL * scale:
        raise ConsistencyError(
            f"second-difference variance routes disagree: direct {direct!r} vs six-term {six_term!r}"
        )
    return direct


def curvature_uncertainty(l: Length, constants: ConstantSet | None = None) -> Curvature:
    """Closed-form curvature noise delta_C(l) in 1/cm.

    Equals CURVATURE_NOISE_COEFF * (1/l) * (l_planck/l)^(2/3); scales as
    l^(-5/3).
    """
    cs = constants or default_constants()
    _require_positive_length(l)
    return CURVATURE_NOISE_COEFF * (1.0 / l) * (cs.l_planck / l) ** (2.0 / 3.0)


def riemann_component(c_value: Curvature) -> Curvature2:
    """Riemann component 2 C^2 for a clock/mirror along the first axis."""
    if not math.isfinite(c_value):
        raise DomainError(f"curvature must be finite, got {c_value!r}")
    return 2.0 * c_value * c_value


def riemann_scalar_fluctuation(l: Length, constants: ConstantSet | None = None) -> Curvature2:
    """Riemann-scalar fluctuation (1/l^2) * (l_planck/l)^(4/3) in 1/cm^2.

    Order-of-magnitude law, implemented with coefficient exactly 1.
    """
    cs = constants or default_constants()
    _require_positive_length(l)
    return (1.0 / l**2) * (cs.l_planck / l) ** (4.0 / 3.0)


def density_fluctuation(l: Length, constants: ConstantSet | None = None) -> MassDensity:
    """Energy-density fluctuation (hbar/c) * l_planck^(-2/3) * l^(-10/3) in g/cm^3.

    Order-of-magnitude law with coefficient exactly 1.  Also evaluated as
    (c^2/G) * riemann_scalar_fluctuation(l); the two forms are the same
    identity through l_planck^2 = hbar G / c^3 and must agree to 1e-12
    relative, else ConsistencyError.
    """
    cs = constants or default_constants()
    _require_positive_length(l)
    direct = (cs.hbar / cs.c) * cs.l_planck ** (-2.0 / 3.0) * l ** (-10.0 / 3.0)
    via_scalar = (cs.c**2 / cs.G) * riemann_scalar_fluctuation(l, cs)
    if abs(direct - via_scalar) > _ROUTE_RTOL * direct:
        raise ConsistencyError(
            f"density fluctuation forms disagree: {direct!r} vs {via_scalar!r}"
        )
    return direct


def fluctuation_profile(l: Length, constants: ConstantSet | None = None) -> FluctuationProfile:
    """Bundle delta_C, delta_R, delta_rho at one averaging length."""
    cs = constants or default_constants()
    return FluctuationProfile(
        l=l,
        delta_c=curvature_uncertainty(l, cs),
        delta_r=riemann_scalar_fluctuation(l, cs),
        delta_rho=density_fluctuation(l, cs),
    )


def linearization_ok(l: Length, constants: ConstantSet | None = None) -> bool:
    """True when l is at least LINEARIZATION_MIN_PLANCK Planck lengths."""
    cs = constants or default_constants()
    return l >= LINEARIZATION_MIN_PLANCK * cs.l_planck


def _require_positive_length(l: float) -> None:
    if not (isinstance(l, (int, float)) and math.isfinite(l) and l > 0):
        raise DomainError(f"l must be a strictly positive finite length, got {l!r}")
