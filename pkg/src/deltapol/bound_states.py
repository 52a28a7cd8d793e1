"""Bound states of attractive delta-function wells on the line.

Everything here works in scaled units (hbar = m = 1, lengths in Bohr
radii): a well of strength ``g`` enters the Hamiltonian as
``-g * delta(x - x0)`` with g in inverse length, and a bound state with
decay constant kappa has energy ``-kappa**2 / 2``.

For the symmetric double well (wells of equal strength g at -a and +a,
p = 2*g*a) the even/odd decay constants solve the transcendental
conditions

    even:  u * (1 + tanh(u)) = p,   u = kappa * a
    odd:   u * (1 + coth(u)) = p    (a second state exists only for p > 1)

The general N-well spectrum comes from the determinant condition
det(1 - K(kappa)) = 0 with K[l, j] = (g_j / kappa) * exp(-kappa*|x_l - x_j|).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq


@dataclass(frozen=True)
class DeltaPotential:
    """Ordered collection of attractive delta wells (position, strength)."""

    wells: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.wells) == 0:
            raise ValueError("potential needs at least one well")
        positions = [w[0] for w in self.wells]
        if any(b <= a for a, b in zip(positions, positions[1:])):
            raise ValueError("well positions must be strictly increasing")
        if any(g <= 0.0 for _, g in self.wells):
            raise ValueError("well strengths must be positive (attractive wells only)")

    @classmethod
    def symmetric_double(cls, a: float, g: float) -> "DeltaPotential":
        """Wells of equal strength g at -a and +a."""
        if a <= 0.0:
            raise ValueError("half separation a must be positive")
        return cls(wells=((-a, g), (a, g)))

    @classmethod
    def single(cls, g: float, position: float = 0.0) -> "DeltaPotential":
        return cls(wells=((position, g),))

    @property
    def positions(self) -> np.ndarray:
        return np.array([w[0] for w in self.wells])

    @property
    def strengths(self) -> np.ndarray:
        return np.array([w[1] for w in self.wells])

    @property
    def total_strength(self) -> float:
        return float(sum(g for _, g in self.wells))


@dataclass(frozen=True)
class BoundState:
    """One bound state: decay constant, energy, and evaluable wavefunction.

    ``norm`` is the textbook normalization constant
    N = sqrt(2*k0 / (exp(2*k0*a) + 2*k0*a + 1)) and is filled only for the
    even ground state of the symmetric double well; the generic
    representation psi(x) = sum_j coeffs[j] * exp(-kappa*|x - x_j|) is
    always populated and already normalized.
    """

    kappa: float
    energy: float
    parity: str | None
    positions: tuple[float, ...]
    coeffs: tuple[float, ...]
    norm: float | None = None

    def psi(self, x):
        """Wavefunction value(s) at x (scalar or array)."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for xj, cj in zip(self.positions, self.coeffs):
            out = out + cj * np.exp(-self.kappa * np.abs(x - xj))
        return out if out.shape else float(out)

    def psi_outer_amplitude(self) -> float:
        """Coefficient C of the outer tail C*exp(-kappa*|x|), symmetric case only."""
        if self.parity != "even":
            raise ValueError("outer amplitude is defined for the even symmetric state")
        a = self.positions[-1]
        return float(self.norm * np.cosh(self.kappa * a) * np.exp(self.kappa * a))


def _even_condition(u: float, p: float) -> float:
    return u * (1.0 + np.tanh(u)) - p


def _odd_condition(u: float, p: float) -> float:
    # u*(1 + coth u) = u + u*cosh/sinh; u/tanh(u) is regular at u -> 0
    return u + u / np.tanh(u) - p


def solve_even_kappa(p: float, a: float) -> float:
    """Decay constant k0 of the even ground state, from u*(1+tanh u) = p.

    The left side is strictly increasing and sandwiched between u and 2u,
    so the root is bracketed by [p/2, p] for every p > 0.
    """
    if p <= 0.0 or a <= 0.0:
        raise ValueError("p and a must be positive")
    u = brentq(_even_condition, 0.5 * p, p, args=(p,), xtol=1e-300, rtol=8.9e-16)
    if abs(_even_condition(u, p)) > 1e-12 * max(1.0, p):
        raise RuntimeError("even-state root did not converge")
    return u / a


def solve_odd_kappa(p: float, a: float) -> float | None:
    """Decay constant k1 of the odd bound state, or None when p <= 1.

    Solves u*(1 + coth u) = p; the left side decreases to 1 as u -> 0+,
    so a positive root exists exactly for p > 1.
    """
    if p <= 0.0 or a <= 0.0:
        raise ValueError("p and a must be positive")
    if p <= 1.0:
        return None
    lo = 1e-14
    if _odd_condition(lo, p) >= 0.0:  # p barely above 1, root below lo
        return lo / a
    u = brentq(_odd_condition, lo, p, args=(p,), xtol=1e-300, rtol=8.9e-16)
    return u / a


def even_norm_constant(kappa: float, a: float) -> float:
    """Normalization N(k0*a) of the even double-well ground state."""
    u = kappa * a
    return float(np.sqrt(2.0 * kappa / (np.exp(2.0 * u) + 2.0 * u + 1.0)))


def ground_state(p: float, a: float) -> BoundState:
    """Even ground state of the symmetric double well at +/-a with p = 2*g*a.

    The piecewise form is N*cosh(k0*x) between the wells and
    N*cosh(k0*a)*exp(-k0*(|x|-a)) outside; both are reproduced exactly by
    the two-exponential representation with equal coefficients
    N*exp(k0*a)/2 on each well.
    """
    kappa = solve_even_kappa(p, a)
    norm = even_norm_constant(kappa, a)
    c = 0.5 * norm * np.exp(kappa * a)
    return BoundState(
        kappa=kappa,
        energy=-0.5 * kappa**2,
        parity="even",
        positions=(-a, a),
        coeffs=(c, c),
        norm=norm,
    )


def odd_state(p: float, a: float) -> BoundState | None:
    """Odd bound state of the symmetric double well, or None for p <= 1."""
    kappa = solve_odd_kappa(p, a)
    if kappa is None:
        return None
    # psi = c*(exp(-k|x+a|) - exp(-k|x-a|)) up to sign; normalize exactly
    c = 1.0 / np.sqrt(_overlap_norm(np.array([-a, a]), np.array([1.0, -1.0]), kappa))
    return BoundState(
        kappa=kappa,
        energy=-0.5 * kappa**2,
        parity="odd",
        positions=(-a, a),
        coeffs=(c, -c),
    )


def _overlap_norm(positions: np.ndarray, coeffs: np.ndarray, kappa: float) -> float:
    """Exact norm^2 of sum_j c_j exp(-kappa|x-x_j|).

    Uses int exp(-k|x-A|-k|x-B|) dx = exp(-k*d)*(d + 1/k), d = |A-B|.
    """
    d = np.abs(positions[:, None] - positions[None, :])
    overlap = np.exp(-kappa * d) * (d + 1.0 / kappa)
    return float(coeffs @ overlap @ coeffs)


def _det_condition(kappa: float, positions: np.ndarray, strengths: np.ndarray) -> float:
    # row scaling (g_l) so the null vector is directly the coefficient
    # vector of psi = sum_j c_j exp(-kappa|x - x_j|); the determinant is
    # the same under column scaling.
    d = np.abs(positions[:, None] - positions[None, :])
    k_matrix = (strengths[:, None] / kappa) * np.exp(-kappa * d)
    return float(np.linalg.det(np.eye(len(positions)) - k_matrix))


def multi_delta_spectrum(potential: DeltaPotential, scan_points: int = 4000) -> list[BoundState]:
    """All bound states of an arbitrary delta-well potential, ground state first.

    Roots of det(1 - K(kappa)) are bracketed by a sign-change scan on
    (0, total strength] and refined by brentq.  Raises if the guaranteed
    ground state cannot be bracketed; warns when two states are within
    1e-3 relative (onset of degeneracy).
    """
    positions = potential.positions
    strengths = potential.strengths
    kmax = potential.total_strength * (1.0 + 1e-9)
    kmin = kmax * 1e-8
    grid = np.linspace(kmin, kmax, scan_points)
    values = np.array([_det_condition(k, positions, strengths) for k in grid])

    roots: list[float] = []
    for i in range(len(grid) - 1):
        if values[i] == 0.0:
            roots.append(grid[i])
        elif values[i] * values[i + 1] < 0.0:
            roots.append(
                brentq(_det_condition, grid[i], grid[i + 1], args=(positions, strengths),
                       xtol=1e-300, rtol=8.9e-16)
            )
    if not roots:
        raise RuntimeError("scan failed to bracket the guaranteed ground state")

    roots = sorted(set(roots), reverse=True)
    for ka, kb in zip(roots, roots[1:]):
        if (ka - kb) < 1e-3 * ka:
            warnings.warn(
                f"near-degenerate pair kappa={ka:.6g}, {kb:.6g}; results unreliable",
                RuntimeWarning,
            )

    states = []
    for kappa in roots:
        coeffs = _null_vector(kappa, positions, strengths)
        coeffs = coeffs / np.sqrt(_overlap_norm(positions, coeffs, kappa))
        parity = _classify_parity(positions, coeffs)
        norm = None
        if parity == "even" and len(positions) == 2:
            norm = even_norm_constant(kappa, positions[1])
        if coeffs[np.argmax(np.abs(coeffs))] < 0:
            coeffs = -coeffs
        states.append(
            BoundState(
                kappa=float(kappa),
                energy=-0.5 * float(kappa) ** 2,
                parity=parity,
                positions=tuple(positions),
                coeffs=tuple(coeffs),
                norm=norm,
            )
        )
    return states


def _null_vector(kappa: float, positions: np.ndarray, strengths: np.ndarray) -> np.ndarray:
    d = np.abs(positions[:, None] - positions[None, :])
    m = np.eye(len(positions)) - (strengths[:, None] / kappa) * np.exp(-kappa * d)
    _, _, vh = np.linalg.svd(m)
    return vh[-1]


def _classify_parity(positions: np.ndarray, coeffs: np.ndarray) -> str | None:
    if not np.allclose(positions, -positions[::-1], rtol=0, atol=1e-12):
        return None
    rev = coeffs[::-1]
    if np.allclose(coeffs, rev, rtol=1e-8, atol=1e-10):
        return "even"
    if np.allclose(coeffs, -rev, rtol=1e-8, atol=1e-10):
        return "odd"
    return None
