"""Physical constants, Planck units, and the CGS unit system.

Every quantity in the toolkit is a plain double-precision float in CGS
units (cm, g, s).  CGS is the working system because all the numbers this
toolkit reproduces are quoted in it ("g cm^-3", lengths in cm).  The
aliases below tag dimensions in signatures; they carry no runtime
behaviour.

Planck units are always derived from (c, hbar, G) and are never
configurable on their own, so the defining identities

    l_planck = sqrt(hbar * G / c^3)
    t_planck = l_planck / c
    m_planck = sqrt(hbar * c / G)

cannot be broken by configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, DomainError

Length = float        # cm
TimeInterval = float  # s
Mass = float          # g
MassDensity = float   # g/cm^3
Curvature = float     # 1/cm
Curvature2 = float    # 1/cm^2

# CODATA 2018, CGS
C_DEFAULT = 2.99792458e10       # cm/s
HBAR_DEFAULT = 1.054571817e-27  # erg s
G_DEFAULT = 6.67430e-8          # cm^3 g^-1 s^-2

# Relative tolerances for the derived-unit identities.
PLANCK_LENGTH_RTOL = 1e-9
PLANCK_TIME_RTOL = 1e-12
PLANCK_MASS_RTOL = 1e-9

_CONFIG_KEYS = ("c", "hbar", "G")


@dataclass(frozen=True)
class ConstantSet:
    """Immutable bundle of base constants and derived Planck units (CGS)."""

    c: float
    hbar: float
    G: float
    l_planck: Length
    t_planck: TimeInterval
    m_planck: Mass


def make_constants(c: float, hbar: float, G: float) -> ConstantSet:
    """Build a ConstantSet, deriving the Planck units from (c, hbar, G)."""
    for name, value in (("c", c), ("hbar", hbar), ("G", G)):
        _require_positive_finite(name, value)
    l_planck = math.sqrt(hbar * G / c**3)
    return ConstantSet(
        c=c,
        hbar=hbar,
        G=G,
        l_planck=l_planck,
        t_planck=l_planck / c,
        m_planck=math.sqrt(hbar * c / G),
    )


def default_constants() -> ConstantSet:
    """CODATA-2018 constants in CGS with derived Planck units."""
    return make_constants(C_DEFAULT, HBAR_DEFAULT, G_DEFAULT)


def validate_constants(constants: ConstantSet) -> list[str]:
    """Check every ConstantSet invariant; return the violations found.

    Violations are data, not errors: the list is empty iff the set is
    valid.  The cross-identity t_planck * c = l_planck is only reported
    when the per-field derivations hold, so a single corrupted field
    produces a single line naming it rather than a cascade.
    """
    violations: list[str] = []
    fields = (
        ("c", constants.c),
        ("hbar", constants.hbar),
        ("G", constants.G),
        ("l_planck", constants.l_planck),
        ("t_planck", constants.t_planck),
        ("m_planck", constants.m_planck),
    )
    for name, value in fields:
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            violations.append(f"{name} must be a strictly positive finite number, got {value!r}")
    if violations:
        return violations

    l_derived = math.sqrt(constants.hbar * constants.G / constants.c**3)
    m_derived = math.sqrt(constants.hbar * constants.c / constants.G)
    l_ok = abs(constants.l_planck - l_derived) <= PLANCK_LENGTH_RTOL * l_derived
    m_ok = abs(constants.m_planck - m_derived) <= PLANCK_MASS_RTOL * m_derived
    if not l_ok:
        violations.append(
            f"l_planck = {constants.l_planck!r} does not match sqrt(hbar*G/c^3) = {l_derived!r}"
        )
    if not m_ok:
        violations.append(
            f"m_planck = {constants.m_planck!r} does not match sqrt(hbar*c/G) = {m_derived!r}"
        )
    if l_ok:
        t_scaled = constants.t_planck * constants.c
        if abs(t_scaled - constants.l_planck) > PLANCK_TIME_RTOL * constants.l_planck:
            violations.append(
                f"t_planck * c = {t_scaled!r} does not match l_planck = {constants.l_planck!r}"
            )
    return violations


def load_constants(config_text: str) -> ConstantSet:
    """Parse a flat key/value document and return a derived ConstantSet.

    Grammar: one `key = number` per line, `#` starts a comment, blank
    lines ignored.  Keys must be a subset of {c, hbar, G}; missing keys
    take the CODATA defaults.  Planck units are always recomputed, never
    read from the file.
    """
    values: dict[str, float] = {}
    for lineno, raw in enumerate(config_text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = number', got {raw.strip()!r}")
        key, _, text = line.partition("=")
        key = key.strip()
        text = text.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(
                f"line {lineno}: unknown key {key!r} (allowed: {', '.join(_CONFIG_KEYS)})"
            )
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            value = float(text)
        except ValueError:
            raise ConfigError(f"line {lineno}: value for {key!r} is not a number: {text!r}") from None
        values[key] = value
    for key in _CONFIG_KEYS:
        if key in values:
            _require_positive_finite(key, values[key])
    return make_constants(
        c=values.get("c", C_DEFAULT),
        hbar=values.get("hbar", HBAR_DEFAULT),
        G=values.get("G", G_DEFAULT),
    )


def serialize_constants(constants: ConstantSet) -> str:
    """Render the base constants as a config document.

    Uses repr floats, so load_constants(serialize_constants(s)) is
    bit-comparable to s on (c, hbar, G).
    """
    return (
        "# foamlab constants (CGS: cm, g, s)\n"
        f"c = {constants.c!r}\n"
        f"hbar = {constants.hbar!r}\n"
        f"G = {constants.G!r}\n"
    )


def _require_positive_finite(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a strictly positive finite number, got {value!r}")
