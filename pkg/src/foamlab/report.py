"""Machine-readable reproduction report for the toolkit's claim set.

Each row recomputes one quantitative claim that follows from pushing the
cube-root uncertainty law through the three-pulse curvature protocol,
compares it against the published figure at a documented tolerance, and
records a status:

    reproduced    computed value meets the row's tolerance
    unreproduced  it does not (kept in the report as documentation)

The one expected unreproduced row is the quoted ~1e16 g clock mass for a
one-second interval: the cube-root clock-mass law itself gives 5.8e9 g
for l = c * 1 s, so the quoted figure is inconsistent with the law as
stated and is reported rather than guessed around.

A `basis` column records how each number is obtained (closed-form law,
order-of-magnitude law, Monte Carlo, or toy simulation).  Given a seed
the report is pure: no timestamps, fixed iteration orders, and all
randomness drawn from the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import __version__
from .constants import ConstantSet, default_constants
from .errors import DomainError
from .laws import UncertaintyLaw
from .montecarlo import McConfig, eigenvalues, ngvandam_covariance, verify_curvature_uncertainty
from .wigner import (
    CURVATURE_NOISE_COEFF,
    TripletCovariance,
    curvature_uncertainty,
    density_fluctuation,
    second_difference_variance,
)
from . import bounce

# Spawn key for the random-covariance batch, disjoint from the Monte
# Carlo partition substreams (those use small partition indices).
_IDENTITY_BATCH_KEY = 1_000_003
_IDENTITY_BATCH_SIZE = 10_000

# Expected eigenvalues of the round-trip correlation matrix.
_EXPECTED_EIGENVALUES = (1.269025, 1.047359, 0.683618)


@dataclass(frozen=True)
class ClaimRow:
    claim_id: str
    description: str
    published_value: str
    computed_value: float
    unit: str
    status: str
    tolerance: str
    basis: str


@dataclass(frozen=True)
class ClaimReport:
    """Claim rows plus the provenance needed to reproduce them."""

    version: str
    seed: int
    samples: int
    partitions: int
    constants: ConstantSet
    rows: tuple[ClaimRow, ...]

    def __post_init__(self) -> None:
        ids = [row.claim_id for row in self.rows]
        if len(ids) != len(set(ids)):
            raise DomainError(f"claim ids are not unique: {ids!r}")


def build_claim_report(
    constants: ConstantSet | None = None,
    seed: int = 42,
    samples: int = 1_000_000,
    partitions: int = 1,
) -> ClaimReport:
    cs = constants or default_constants()
    law = UncertaintyLaw(cs)
    rows: list[ClaimRow] = []

    def add(
        claim_id: str,
        description: str,
        published_value: str,
        computed_value: float,
        unit: str,
        ok: bool,
        tolerance: str,
        basis: str,
    ) -> None:
        rows.append(
            ClaimRow(
                claim_id=claim_id,
                description=description,
                published_value=published_value,
                computed_value=computed_value,
                unit=unit,
                status="reproduced" if ok else "unreproduced",
                tolerance=tolerance,
                basis=basis,
            )
        )

    # Clock masses from the cube-root law.
    mass_1cm = law.clock_mass(1.0)
    add(
        "clock-mass-1cm",
        "optimal clock mass for measuring a 1 cm length",
        "~1e6 g",
        mass_1cm,
        "g",
        abs(math.log10(mass_1cm / 1e6)) <= 0.5,
        "same decade: |log10(computed/1e6)| <= 0.5",
        "closed-form",
    )
    mass_1s = law.clock_mass(2.998e10)
    add(
        "clock-mass-1s",
        "optimal clock mass for a 1 s interval (l = c * 1 s = 2.998e10 cm); "
        "the quoted figure is inconsistent with the clock-mass law itself",
        "~1e16 g",
        mass_1s,
        "g",
        abs(math.log10(mass_1s / 1e16)) <= 0.5,
        "same decade: |log10(computed/1e16)| <= 0.5",
        "closed-form",
    )

    # Closed-form curvature-noise prefactor.
    add(
        "second-difference-coefficient",
        "prefactor sqrt(15 - 6*2^(2/3) + 3^(2/3))/11 of the curvature noise law",
        "0.2498866",
        CURVATURE_NOISE_COEFF,
        "-",
        abs(CURVATURE_NOISE_COEFF - 0.2498866) <= 1e-6,
        "|computed - 0.2498866| <= 1e-6",
        "closed-form",
    )

    # Variance-decomposition identity over random covariance matrices.
    identity_gap = _max_identity_gap(seed)
    add(
        "variance-identity",
        "max relative gap between direct and six-term second-difference "
        f"variance over {_IDENTITY_BATCH_SIZE} random covariance matrices",
        "0 (algebraic identity)",
        identity_gap,
        "-",
        identity_gap <= 1e-12,
        "<= 1e-12 relative",
        "closed-form",
    )

    # Monte Carlo reproduction at l = 1 cm.
    mc = verify_curvature_uncertainty(
        McConfig(l=1.0, n_samples=samples, seed=seed, n_partitions=partitions), cs
    )
    variance_ratio = mc.empirical_variance / mc.sigma2
    add(
        "variance-ratio-mc",
        f"Monte Carlo Var(t1 - 2 t2 + t3)/sigma^2 at l = 1 cm ({samples} samples)",
        "7.5557",
        variance_ratio,
        "-",
        abs(variance_ratio - 7.5557) / 7.5557 <= 0.01,
        "within 1% of 7.5557",
        "monte-carlo",
    )
    add(
        "delta-c-mc",
        "Monte Carlo curvature noise at l = 1 cm",
        "3.441e-23 1/cm",
        mc.empirical_delta_c,
        "1/cm",
        abs(mc.empirical_delta_c - mc.closed_form_delta_c) / mc.closed_form_delta_c <= 0.01,
        "within 1% of the closed form",
        "monte-carlo",
    )

    # Correlation-matrix spectrum.
    cov_1cm = ngvandam_covariance(1.0, cs)
    correlation = TripletCovariance(
        sigma2=1.0,
        cov12=cov_1cm.cov12 / cov_1cm.sigma2,
        cov23=cov_1cm.cov23 / cov_1cm.sigma2,
        cov13=cov_1cm.cov13 / cov_1cm.sigma2,
    )
    spectrum = eigenvalues(correlation)
    eigen_gap = max(abs(a - b) for a, b in zip(spectrum, _EXPECTED_EIGENVALUES))
    add(
        "correlation-eigenvalues",
        "max |eigenvalue - expected| of the round-trip correlation matrix "
        "{1.269025, 1.047359, 0.683618}",
        "0",
        eigen_gap,
        "-",
        eigen_gap <= 1e-5,
        "each eigenvalue within 1e-5",
        "closed-form",
    )
    trace = sum(spectrum)
    add(
        "correlation-trace",
        "trace of the round-trip correlation matrix",
        "3",
        trace,
        "-",
        abs(trace - 3.0) <= 1e-12,
        "|computed - 3| <= 1e-12",
        "closed-form",
    )

    # Density-fluctuation claims (order-of-magnitude laws).
    rho_water = density_fluctuation(1e-5, cs)
    add(
        "water-density",
        "energy-density fluctuation at averaging length l = 1e-5 cm",
        "order of water density (~1 g/cm3)",
        rho_water,
        "g/cm3",
        abs(math.log10(rho_water / 1.0)) <= 1.5,
        "within 1.5 decades of 1 g/cm3",
        "order-of-magnitude",
    )
    threshold = law.max_length_for_density(1e-29)
    add(
        "density-threshold",
        "largest averaging length whose density fluctuation stays below "
        "the cosmological bound 1e-29 g/cm3",
        "~1e4 cm (about 100 m)",
        threshold,
        "cm",
        abs(math.log10(threshold / 1e4)) <= 0.5,
        "within half a decade of 1e4 cm",
        "order-of-magnitude",
    )
    roundtrip_gap = max(
        abs(law.max_length_for_density(density_fluctuation(l, cs)) / l - 1.0)
        for l in np.logspace(-8.0, 8.0, 81)
    )
    add(
        "threshold-round-trip",
        "max relative error of max_length_for_density(density_fluctuation(l)) "
        "over l in [1e-8, 1e8] cm",
        "0 (exact inverse)",
        roundtrip_gap,
        "-",
        roundtrip_gap <= 1e-9,
        "<= 1e-9 relative",
        "closed-form",
    )
    two_form_gap = max(
        _density_two_form_gap(l, cs) for l in np.logspace(-3.0, 3.0, 61)
    )
    add(
        "density-two-form",
        "max relative gap between the hbar/c and c^2/G density-fluctuation "
        "forms over six decades of l",
        "0 (algebraic identity)",
        two_form_gap,
        "-",
        two_form_gap <= 1e-12,
        "<= 1e-12 relative",
        "closed-form",
    )

    # Toy bounce simulator checks.
    flat = bounce.simulate_round_trips(bounce.BounceModel(k=0.0, l=1.0, constants=cs), 6)
    flat_gap = max(abs(t * cs.c / 1.0 - 1.0) for t in flat.times)
    add(
        "bounce-flat",
        "max relative deviation of flat-space round trips from l/c (K = 0, 6 pulses)",
        "0 (flat space)",
        flat_gap,
        "-",
        flat_gap <= 1e-10,
        "<= 1e-10 relative",
        "toy-simulation",
    )
    response = bounce.estimator_response(
        [k * 4.0 for k in (1e-6, 1.78e-6, 3.16e-6, 5.62e-6, 1e-5)], 1.0, cs
    )
    add(
        "bounce-linearity",
        "max relative residual of the three-pulse estimate against a linear "
        "response over a decade of K",
        "0 (linear response)",
        response.max_relative_residual,
        "-",
        response.max_relative_residual < 1e-3,
        "< 1e-3 relative",
        "toy-simulation",
    )
    scaling_ratio = _second_difference_doubling_ratio(cs)
    add(
        "bounce-tau-cubed",
        "second-difference ratio when doubling the separation at fixed K",
        "8 (tau^3 scaling)",
        scaling_ratio,
        "-",
        abs(scaling_ratio / 8.0 - 1.0) <= 0.01,
        "within 1% of 8",
        "toy-simulation",
    )

    # Power-law scaling identities.
    scaling_gap = max(
        abs(law.length_uncertainty(k**3 * l) / (k * law.length_uncertainty(l)) - 1.0)
        for k in (2.0, 10.0, 100.0)
        for l in (1e-6, 1.0, 1e4)
    )
    add(
        "scaling-cube-root",
        "max relative error of delta_l(k^3 l) = k delta_l(l) for k in {2, 10, 100}",
        "0",
        scaling_gap,
        "-",
        scaling_gap <= 1e-12,
        "<= 1e-12 relative",
        "closed-form",
    )
    curvature_scaling_gap = abs(
        curvature_uncertainty(8.0, cs) / curvature_uncertainty(1.0, cs) * 32.0 - 1.0
    )
    add(
        "scaling-curvature-noise",
        "relative error of delta_C(8 l)/delta_C(l) = 1/32",
        "0",
        curvature_scaling_gap,
        "-",
        curvature_scaling_gap <= 1e-12,
        "<= 1e-12 relative",
        "closed-form",
    )

    return ClaimReport(
        version=__version__,
        seed=seed,
        samples=samples,
        partitions=partitions,
        constants=cs,
        rows=tuple(rows),
    )


def _max_identity_gap(seed: int) -> float:
    """Worst relative gap between the two variance routes over random matrices.

    The six-term route is evaluated here through matrix quadratic forms,
    independently of the field arithmetic inside the library operation.
    """
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(_IDENTITY_BATCH_KEY,)))
    pair_12 = np.array([1.0, 1.0, 0.0])
    pair_23 = np.array([0.0, 1.0, 1.0])
    total = np.array([1.0, 1.0, 1.0])
    worst = 0.0
    for _ in range(_IDENTITY_BATCH_SIZE):
        raw = rng.standard_normal((3, 3))
        gram = raw @ raw.T
        scale = np.sqrt(np.diag(gram))
        corr = gram / np.outer(scale, scale)
        cov = TripletCovariance(
            sigma2=1.0,
            cov12=float(corr[0, 1]),
            cov23=float(corr[1, 2]),
            cov13=float(corr[0, 2]),
        )
        direct = second_difference_variance(cov)
        matrix = cov.matrix()
        six_term = float(
            3.0 * matrix[0, 0] + 9.0 * matrix[1, 1] + 3.0 * matrix[2, 2]
            - 3.0 * pair_12 @ matrix @ pair_12
            - 3.0 * pair_23 @ matrix @ pair_23
            + total @ matrix @ total
        )
        gap = abs(direct - six_term) / max(abs(direct), abs(six_term), cov.sigma2)
        worst = max(worst, gap)
    return worst


def _density_two_form_gap(l: float, cs: ConstantSet) -> float:
    direct = (cs.hbar / cs.c) * cs.l_planck ** (-2.0 / 3.0) * l ** (-10.0 / 3.0)
    via_scalar = (cs.c**2 / cs.G) * (1.0 / l**2) * (cs.l_planck / l) ** (4.0 / 3.0)
    return abs(direct - via_scalar) / direct


def _second_difference_doubling_ratio(cs: ConstantSet) -> float:
    k = 4e-6  # |K| (l/2)^2 = 1e-6 at l = 1 cm, 4e-6 at l = 2 cm
    small = bounce.simulate_round_trips(bounce.BounceModel(k=k, l=1.0, constants=cs), 3)
    large = bounce.simulate_round_trips(bounce.BounceModel(k=k, l=2.0, constants=cs), 3)
    diff_small = small.times[0] - 2.0 * small.times[1] + small.times[2]
    diff_large = large.times[0] - 2.0 * large.times[1] + large.times[2]
    return diff_large / diff_small
