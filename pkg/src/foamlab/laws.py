"""The cube-root (Ng-van Dam) measurement uncertainty laws and inversions.

The length law states that any geodesic length l carries an intrinsic
one-standard-deviation uncertainty

    delta_l = l_planck^(2/3) * l^(1/3)

with the time law as its exact image under t = l/c.  The clock-mass law
gives the mass an optimal clock must have to reach that accuracy, and
max_length_for_density inverts the energy-density fluctuation it implies.

The uncertainties are treated as one-sigma values, not hard bounds; that
reading is what makes the Monte Carlo verification well-posed.  Inputs
below the Planck scale are accepted (the laws have their fixed point
there) but are physically meaningless; the CLI attaches a warning, which
the `sub_planck_*` helpers back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constants import (
    ConstantSet,
    Length,
    Mass,
    MassDensity,
    TimeInterval,
    default_constants,
    validate_constants,
)
from .errors import DomainError


@dataclass(frozen=True)
class UncertaintyLaw:
    """Cube-root uncertainty laws over an immutable ConstantSet.

    All methods are pure; instances are safe to share between tasks.
    """

    constants: ConstantSet = field(default_factory=default_constants)

    def __post_init__(self) -> None:
        violations = validate_constants(self.constants)
        if violations:
            raise DomainError("invalid constants: " + "; ".join(violations))

    def length_uncertainty(self, l: Length) -> Length:
        """delta_l = l_planck^(2/3) * l^(1/3); fixed point at l = l_planck."""
        _require_positive("l", l)
        return self.constants.l_planck ** (2.0 / 3.0) * l ** (1.0 / 3.0)

    def time_uncertainty(self, t: TimeInterval) -> TimeInterval:
        """delta_t = t_planck^(2/3) * t^(1/3)."""
        _require_positive("t", t)
        return self.constants.t_planck ** (2.0 / 3.0) * t ** (1.0 / 3.0)

    def clock_mass(self, l: Length) -> Mass:
        """Optimal clock mass m = m_planck * (l / l_planck)^(1/3)."""
        _require_positive("l", l)
        return self.constants.m_planck * (l / self.constants.l_planck) ** (1.0 / 3.0)

    def max_length_for_density(self, rho_max: MassDensity) -> Length:
        """Largest averaging length whose density fluctuation stays below rho_max.

        Solves (hbar/c) * l_planck^(-2/3) * l^(-10/3) = rho_max for l, the
        inverse of wigner.density_fluctuation.
        """
        _require_positive("rho_max", rho_max)
        cs = self.constants
        scale = (cs.hbar / cs.c) * cs.l_planck ** (-2.0 / 3.0)
        return (scale / rho_max) ** 0.3

    def sub_planck_length(self, l: Length) -> bool:
        """True when l sits below the Planck length (warning territory)."""
        return l < self.constants.l_planck

    def sub_planck_time(self, t: TimeInterval) -> bool:
        """True when t sits below the Planck time."""
        return t < self.constants.t_planck


def _require_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a strictly positive finite number, got {value!r}")
