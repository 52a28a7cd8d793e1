"""Exact integrals of x^n * exp(w*x) with small-|w| safe evaluation.

The closed-form polarizability assembles from integrals of exponential
polynomials whose rates are differences like gamma - k0.  Near the static
limit those rates vanish, and the textbook antiderivative
exp(w*x)*(x/w - 1/w**2) loses all precision to cancellation.  The
routines here switch to a convergent power series in w for small
|w| * (interval length), so every primitive stays accurate uniformly in
the frequency, including complex rates (gamma -> -i*Omega above
threshold).

A "term list" is a list of (c, n, w) triples meaning c * x**n * exp(w*x);
the term algebra (product, cumulative integral, definite integral) is
what the closed-form module builds its finite-interval pieces from.
"""

from __future__ import annotations

import math

_SERIES_CUTOFF = 0.8
_SERIES_MAX_TERMS = 120


def _moment_series(j: int, w: complex, d: float) -> complex:
    """int_{-d}^{d} s^j exp(w s) ds by power series; any |w*d| (entire in w)."""
    total = 0.0j
    coeff = 1.0 + 0.0j  # w^i / i!
    for i in range(_SERIES_MAX_TERMS):
        m = i + j + 1
        if m % 2 == 1:  # odd power of s integrates to 2 d^m / m
            term = coeff * (2.0 * d**m / m)
            total += term
            if abs(term) < 1e-18 * max(abs(total), 1e-300) and i > 2:
                break
        coeff = coeff * w / (i + 1)
    return total


def _moment_recurrence(j: int, w: complex, d: float) -> complex:
    """int_{-d}^{d} s^j exp(w s) ds by upward recurrence; needs |w*d| >~ j."""
    ep, em = _cexp(w * d), _cexp(-w * d)
    b = (ep - em) / w
    for jj in range(1, j + 1):
        boundary = (d**jj * ep - (-d) ** jj * em) / w
        b = boundary - (jj / w) * b
    return b


def _cexp(z: complex) -> complex:
    if z.real > 700.0:
        raise OverflowError("exponent too large; rescale before integrating")
    return complex(math.exp(z.real) * math.cos(z.imag), math.exp(z.real) * math.sin(z.imag))


def _centered_moment(j: int, w: complex, d: float) -> complex:
    if d == 0.0:
        return 0.0j
    if abs(w) * d <= 8.0 or j > 5:
        return _moment_series(j, w, d)
    return _moment_recurrence(j, w, d)


def xn_exp_integral(n: int, w: complex, x1: float, x2: float, ref: float = 0.0) -> complex:
    """int_{x1}^{x2} x^n exp(w*(x - ref)) dx, exact up to roundoff.

    ``ref`` shifts the exponential's reference point so callers can keep
    the overall exponent bounded when w is large.
    """
    mid = 0.5 * (x1 + x2)
    d = 0.5 * (x2 - x1)
    total = 0.0j
    for j in range(n + 1):
        total += math.comb(n, j) * mid ** (n - j) * _centered_moment(j, w, d)
    return _cexp(w * (mid - ref)) * total


def xn_exp_tail(n: int, w: complex, x1: float, ref: float = 0.0) -> complex:
    """int_{x1}^{inf} x^n exp(w*(x - ref)) dx for Re(w) < 0."""
    if w.real >= 0.0:
        raise ValueError("tail integral needs a decaying rate, Re(w) < 0")
    total = 0.0j
    for j in range(n + 1):
        total += math.comb(n, j) * x1 ** (n - j) * math.factorial(j) / (-w) ** (j + 1)
    return _cexp(w * (x1 - ref)) * total


# ---------------------------------------------------------------------------
# term-list algebra: [(c, n, w)] means sum of c * x^n * exp(w x)

Terms = list[tuple[complex, int, complex]]


def multiply_terms(a: Terms, b: Terms) -> Terms:
    return [(ca * cb, na + nb, wa + wb) for ca, na, wa in a for cb, nb, wb in b]


def cumulative_terms(terms: Terms, x0: float, span: float) -> Terms:
    """Term list of F(y) = int_{x0}^{y} f(x) dx for f given by ``terms``.

    ``span`` bounds |y - x0|; rates with |w|*span below the series cutoff
    are expanded into plain polynomials so no 1/w coefficient ever
    appears for a nearly-flat exponential.
    """
    out: Terms = []
    for c, n, w in terms:
        if abs(w) * span < _SERIES_CUTOFF:
            coeff = c
            for i in range(_SERIES_MAX_TERMS):
                m = n + i + 1
                out.append((coeff / m, m, 0.0j))
                out.append((-coeff / m * x0**m, 0, 0.0j))
                if abs(coeff) * span ** (i + 1) < 1e-18 * max(abs(c), 1e-300) and i > 2:
                    break
                coeff = coeff * w / (i + 1)
        else:
            # exact antiderivative exp(wx) * sum_j (-1)^j n!/(n-j)! x^(n-j) / w^(j+1)
            const = 0.0j
            for j in range(n + 1):
                falling = math.factorial(n) // math.factorial(n - j)
                coef = c * (-1) ** j * falling / w ** (j + 1)
                out.append((coef, n - j, w))
                const += coef * x0 ** (n - j)
            out.append((-const * _cexp(w * x0), 0, 0.0j))
    return out


def integrate_terms(terms: Terms, x1: float, x2: float) -> complex:
    return sum(c * xn_exp_integral(n, w, x1, x2) for c, n, w in terms)
