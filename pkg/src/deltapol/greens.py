"""Free resolvent, kernel integrals, and Dyson coefficients for delta wells.

Conventions, all in internal units (hbar = m = 1):

* The intermediate energy is E = E0 + s*omega' with s = +1 or -1.
* Below threshold (E < 0) we write E = -gamma**2/2 with gamma > 0; above
  threshold (E > 0), E = Omega**2/2 with Omega > 0 and the outgoing-wave
  prescription is equivalent to the substitution gamma -> -i*Omega.
  All closed forms below are written as analytic functions of that single
  complex decay constant, so one code path covers both regimes and the
  analytic-continuation identity holds by construction.
* The Fourier transform of the free resolvent diagonal is
  int exp(i k b) / (E - k^2/2 + i0) dk = -(2*pi/gamma) * exp(-gamma*|b|).

The +i*mu prescription is never represented by a finite imaginary number;
it enters only through the residue terms baked into the closed forms (and
the principal-value split used by the numeric oracle).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .bound_states import DeltaPotential, multi_delta_spectrum
from .errors import PoleEvaluationError, ThresholdWindowError
from .units import ScaledParams

# Half-width of the excluded window around the threshold, relative to omega_B.
THRESHOLD_WINDOW = 1e-6
# |I2| below this marks a resonance pole; values are tagged, not raised.
POLE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Regime:
    """Frequency regime of one branch: decay constant or outgoing momentum."""

    tag: str  # "below_threshold" | "above_threshold"
    gamma_or_omega: float  # gamma below, Omega above; both positive

    @property
    def gamma_complex(self) -> complex:
        """The single complex decay constant: gamma below, -i*Omega above."""
        if self.tag == "below_threshold":
            return complex(self.gamma_or_omega)
        return -1j * self.gamma_or_omega

    @property
    def energy(self) -> float:
        """Intermediate-state energy E = E0 + s*omega'."""
        if self.tag == "below_threshold":
            return -0.5 * self.gamma_or_omega**2
        return 0.5 * self.gamma_or_omega**2


def regime_for(omega_prime: float, k0: float, branch: int) -> Regime:
    """Regime of the branch E = -k0^2/2 + branch*omega'.

    Rejects frequencies inside the threshold window (gamma, Omega -> 0
    makes the individual closed-form terms singular there).
    """
    if branch not in (+1, -1):
        raise ValueError("branch must be +1 or -1")
    omega_b = 0.5 * k0**2
    energy = branch * omega_prime - omega_b
    if abs(energy) < THRESHOLD_WINDOW * omega_b:
        raise ThresholdWindowError(
            f"omega within {THRESHOLD_WINDOW:g}*omega_B of the ionization threshold"
        )
    if energy < 0.0:
        return Regime("below_threshold", float(np.sqrt(-2.0 * energy)))
    return Regime("above_threshold", float(np.sqrt(2.0 * energy)))


def free_resolvent_diag(e_total: float, k: float) -> float:
    """Diagonal 1/(E - k^2/2) of the free resolvent in the plane-wave basis."""
    denom = e_total - 0.5 * k**2
    if abs(denom) < 1e-14:
        raise PoleEvaluationError("free resolvent evaluated on its pole")
    return 1.0 / denom


def resolvent_fourier(gamma_c: complex, separation: float) -> complex:
    """int exp(i k b) G0_k dk = -(2 pi / gamma) exp(-gamma |b|), complex gamma."""
    return -(2.0 * cmath.pi / gamma_c) * cmath.exp(-gamma_c * abs(separation))


@dataclass(frozen=True)
class KernelIntegrals:
    """The four regime-dependent resolvent integrals for the double well."""

    I: complex
    I1: complex
    I2: complex
    I3: complex


def kernel_integrals(regime: Regime, g_prime: float, a: float) -> KernelIntegrals:
    """Closed forms of the kernel integrals at one regime point.

    Below threshold (x = g'/gamma, e = exp(-2*gamma*a)):
        I  = 1 - x
        I1 = 1 - x*(1 + e)
        I2 = 1 - x*(1 - e)
        I3 = -x*e
    and above threshold the same expressions with gamma -> -i*Omega, which
    realizes -1/gamma -> -i/Omega and exp(-2*gamma*a) -> exp(2i*Omega*a).
    """
    if regime.gamma_or_omega <= 0.0:
        raise ValueError("regime decay constant must be positive (threshold excluded)")
    gc = regime.gamma_complex
    x = g_prime / gc
    e = cmath.exp(-2.0 * gc * a)
    return KernelIntegrals(
        I=1.0 - x,
        I1=1.0 - x * (1.0 + e),
        I2=1.0 - x * (1.0 - e),
        I3=-x * e,
    )


@dataclass(frozen=True)
class DysonCoefficients:
    """Per-well coefficients of the scattered part of <k'|G(+-omega)|k>.

    ``pole`` marks evaluation next to a zero of the kernel determinant
    (an intermediate bound state); values are still returned so sweeps
    can plot through the divergence.
    """

    values: tuple[complex, ...]
    sign: int
    k: float
    pole: bool = False
    condition: float | None = None


def coeff_single(g_prime: float, sign: int, k: float, omega_prime: float) -> DysonCoefficients:
    """Coefficient A = G0_k / I for one well; E0 is the single-well energy -g'^2/2."""
    regime = regime_for(omega_prime, g_prime, sign)
    g0k = _g0k(regime, k)
    kern = kernel_integrals(regime, g_prime, a=1.0)  # I is separation-free
    pole = abs(kern.I) < POLE_TOLERANCE
    value = g0k / kern.I if not pole else complex(np.nan, np.nan)
    return DysonCoefficients(values=(value,), sign=sign, k=k, pole=pole)


def coeff_double(scaled: ScaledParams, sign: int, k: float, omega_prime: float) -> DysonCoefficients:
    """Coefficients (A1, A2) of the symmetric double well.

    A1 = G0_k * (cos(ka)/I1 - i sin(ka)/I2); A2 follows from the linear
    system as (G0_k exp(ika) - I3*A1)/(I1 - I3) and equals A1(-k) by
    parity.
    """
    regime = regime_for(omega_prime, scaled.k0, sign)
    kern = kernel_integrals(regime, scaled.g_prime, scaled.a_bohr)
    g0k = _g0k(regime, k)
    ka = k * scaled.a_bohr
    pole = abs(kern.I1) < POLE_TOLERANCE or abs(kern.I2) < POLE_TOLERANCE
    if pole:
        nan = complex(np.nan, np.nan)
        return DysonCoefficients(values=(nan, nan), sign=sign, k=k, pole=True)
    a1 = g0k * (np.cos(ka) / kern.I1 - 1j * np.sin(ka) / kern.I2)
    a2 = (g0k * cmath.exp(1j * ka) - kern.I3 * a1) / (kern.I1 - kern.I3)
    return DysonCoefficients(values=(a1, a2), sign=sign, k=k, pole=pole)


def coeff_multi(
    potential: DeltaPotential,
    sign: int,
    k: float,
    omega_prime: float,
    kappa0: float | None = None,
) -> DysonCoefficients:
    """Per-well coefficients for any number of wells, as an N x N solve.

    The system follows from projecting the Dyson equation on the well
    exponentials: entry (l, j) is delta_lj - (g_j/gamma) exp(-gamma*|x_l - x_j|)
    and the right side is G0_k exp(i k x_l).  ``kappa0`` (ground-state
    decay constant) may be passed to skip the spectrum solve.
    """
    if kappa0 is None:
        kappa0 = multi_delta_spectrum(potential)[0].kappa
    regime = regime_for(omega_prime, kappa0, sign)
    gc = regime.gamma_complex
    pos = potential.positions
    g = potential.strengths
    d = np.abs(pos[:, None] - pos[None, :])
    matrix = np.eye(len(pos), dtype=complex) - (g[None, :] / gc) * np.exp(-gc * d)
    g0k = _g0k(regime, k)
    rhs = g0k * np.exp(1j * k * pos)
    condition = float(np.linalg.cond(matrix))
    values = np.linalg.solve(matrix, rhs)
    return DysonCoefficients(
        values=tuple(values),
        sign=sign,
        k=k,
        pole=condition > 1.0 / POLE_TOLERANCE,
        condition=condition,
    )


def _g0k(regime: Regime, k: float) -> float:
    return free_resolvent_diag(regime.energy, k)
