"""Physical parameters, scaled quantities, and SI output conversion.

All internal computation uses hbar = m = 1 with lengths in Bohr radii;
energies are then in units of hbar^2/(m * a0^2) and the scaled frequency
omega' coincides numerically with the photon energy.  Conversions happen
only at the input boundary (angstrom -> Bohr) and the output boundary
(polarizability volume -> m^3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bound_states import solve_even_kappa
from .errors import DegenerateRegionError

# Bohr radius pinned to 8 significant figures so golden values stay bit-stable.
BOHR_RADIUS_M = 0.52917721e-10
BOHR_RADIUS_ANGSTROM = 0.52917721
ANGSTROM_TO_BOHR = 1.0 / BOHR_RADIUS_ANGSTROM
# Polarizability volume of one atomic unit, in m^3.
ATOMIC_POLARIZABILITY_M3 = BOHR_RADIUS_M**3

# Onset of the near-degenerate region; refuse above this unless overridden.
DEGENERATE_P_THRESHOLD = 5.0


@dataclass(frozen=True)
class PhysicalParams:
    """User-facing parameters: mass and charge as ratios, length in angstrom."""

    mass: float = 1.0  # m / m_e
    charge: float = 1.0  # q / e
    half_separation_a: float = 0.5  # angstrom (figures quote 2a)

    def __post_init__(self):
        if self.mass <= 0.0:
            raise ValueError("mass ratio must be positive")
        if self.charge == 0.0:
            raise ValueError("charge must be nonzero")
        if self.half_separation_a <= 0.0:
            raise ValueError("half separation must be positive")


@dataclass(frozen=True)
class ScaledParams:
    """Scaled quantities of the symmetric double well in internal units.

    p = 2 * g_prime * a holds exactly; k0a is the even-state root, cached
    here because every downstream formula needs it.
    """

    p: float
    g_prime: float  # inverse Bohr radii
    a_bohr: float
    k0a: float
    mass_ratio: float = 1.0
    charge_ratio: float = 1.0
    degenerate_override: bool = False

    @property
    def k0(self) -> float:
        return self.k0a / self.a_bohr

    @property
    def energy0(self) -> float:
        return -0.5 * self.k0**2

    @property
    def omega_b(self) -> float:
        """Threshold frequency (= binding energy in internal units)."""
        return 0.5 * self.k0**2

    @property
    def response_scale(self) -> float:
        """Prefactor q^2 * m (in ratios) carried by every polarizability."""
        return self.charge_ratio**2 * self.mass_ratio

    def omega_internal(self, omega_over_omegaB: float) -> float:
        return omega_over_omegaB * self.omega_b


def build_scaled(params: PhysicalParams, p: float, allow_degenerate: bool = False) -> ScaledParams:
    """Scaled parameters from physical ones; g' = p/(2a) in inverse Bohr.

    Refuses p >= 5 (near-degenerate even/odd pair) unless explicitly
    overridden.
    """
    if p <= 0.0:
        raise ValueError("p must be positive")
    if p >= DEGENERATE_P_THRESHOLD and not allow_degenerate:
        raise DegenerateRegionError(
            f"p = {p} is in the degenerate region (p >= {DEGENERATE_P_THRESHOLD}); "
            "pass allow_degenerate=True to proceed anyway"
        )
    a_bohr = params.half_separation_a * ANGSTROM_TO_BOHR
    return ScaledParams(
        p=p,
        g_prime=p / (2.0 * a_bohr),
        a_bohr=a_bohr,
        k0a=solve_even_kappa(p, a_bohr) * a_bohr,
        mass_ratio=params.mass,
        charge_ratio=params.charge,
        degenerate_override=bool(p >= DEGENERATE_P_THRESHOLD),
    )


@dataclass(frozen=True)
class SiPolarizability:
    """Polarizability volume alpha/(4 pi eps0) in m^3, split into parts."""

    real_m3: float
    imag_m3: float = 0.0
    finite: bool = True

    @property
    def value_m3(self) -> complex:
        return complex(self.real_m3, self.imag_m3)


def to_si_volume(alpha_atomic: complex) -> SiPolarizability:
    """Convert an atomic-unit polarizability to m^3, componentwise.

    Non-finite inputs are propagated and flagged rather than raised: sweep
    output stays writable even through tagged pole points.
    """
    z = complex(alpha_atomic)
    finite = math.isfinite(z.real) and math.isfinite(z.imag)
    return SiPolarizability(
        real_m3=z.real * ATOMIC_POLARIZABILITY_M3,
        imag_m3=z.imag * ATOMIC_POLARIZABILITY_M3,
        finite=finite,
    )
