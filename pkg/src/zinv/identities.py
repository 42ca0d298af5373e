"""Exact-arithmetic combinatorial identities behind the quadratic-pole formula.

Everything here runs over Python integers (and one exact rational division),
so the identity sweeps are machine-checked statements rather than float
comparisons. The one float producer, pair_convolution_series, is the
independent convolution route to the quadratic-pole sequence; for integer
pole data it too is exact (Gaussian-integer arithmetic).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .closedform import SequenceTable, _gauss_pow
from .errors import ConjugateSymmetryError

SYMMETRY_TOL = 1e-9


def falling_factorial(x, l):
    """x(x-1)...(x-l+1); the empty product (l = 0) is 1."""
    if l < 0:
        raise ValueError("length must be >= 0")
    out = 1
    for i in range(l):
        out *= x - i
    return out


def binomial_general(nu, kappa):
    """C(nu, kappa) = (nu)_kappa / kappa! for any integer nu, kappa >= 0.

    For 0 <= nu < kappa the falling factorial crosses zero, giving the usual
    vanishing convention; negative nu gives the signed extension. Always an
    exact integer.
    """
    fr = Fraction(falling_factorial(nu, kappa), math.factorial(kappa))
    if fr.denominator != 1:
        raise ArithmeticError("binomial was not integral")
    return fr.numerator


def internal_summation_holds(k, j, n):
    """Check that the inner alternating sum collapses to its closed form.

    LHS:  sum_{t=j}^{k-1} C(n-1,t) (2k-2-t)!/(k-1-t)! C(t,j) (-1)^t
    RHS:  (-1)^(k-1) C(k-1,j) (n-1)_j (n-(k+1+j))_{k-1-j}

    Both sides are evaluated in exact integer arithmetic; returns equality.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0 <= j <= k - 1:
        raise ValueError("j must lie in [0, k-1]")
    lhs = 0
    for t in range(j, k):
        lhs += (
            binomial_general(n - 1, t)
            * (math.factorial(2 * k - 2 - t) // math.factorial(k - 1 - t))
            * math.comb(t, j)
            * (-1) ** t
        )
    rhs = (
        (-1) ** (k - 1)
        * math.comb(k - 1, j)
        * falling_factorial(n - 1, j)
        * falling_factorial(n - (k + 1 + j), k - 1 - j)
    )
    return lhs == rhs


def surjection_count(boxes, balls):
    """Number of surjections from `balls` distinct balls onto `boxes` boxes.

    Inclusion-exclusion: sum_{w=0}^{boxes} (boxes-w)^balls C(boxes,w) (-1)^w,
    with 0^0 = 1. Zero whenever balls < boxes.
    """
    if boxes < 1:
        raise ValueError("need at least one box")
    if balls < 0:
        raise ValueError("balls must be >= 0")
    return sum(
        (boxes - w) ** balls * math.comb(boxes, w) * (-1) ** w
        for w in range(boxes + 1)
    )


def _pair_convolution_int(ai, bi, k, n):
    total_re = 0
    total_im = 0
    for m in range(k, n - k + 1):
        pr, pi = _gauss_pow(ai, bi, m - k)
        qr, qi = _gauss_pow(ai, -bi, n - m - k)
        c = math.comb(m - 1, m - k) * math.comb(n - m - 1, n - m - k)
        total_re += c * (pr * qr - pi * qi)
        total_im += c * (pr * qi + pi * qr)
    if total_im != 0:
        raise ConjugateSymmetryError(
            f"conjugate symmetry violated in convolution: residue {total_im}"
        )
    return float(total_re)


def _pair_convolution_float(a, b, k, n):
    total = 0j
    w = complex(a, b)
    for m in range(k, n - k + 1):
        pr, pi = _gauss_pow(w.real, w.imag, m - k)
        qr, qi = _gauss_pow(w.real, -w.imag, n - m - k)
        c = math.comb(m - 1, m - k) * math.comb(n - m - 1, n - m - k)
        total += c * complex(pr, pi) * complex(qr, qi)
    if abs(total.imag) > SYMMETRY_TOL * max(1.0, abs(total)):
        raise ConjugateSymmetryError(
            f"conjugate symmetry violated in convolution: residue {total.imag:.3g}"
        )
    return total.real


def pair_convolution_series(a, b, k, n_max):
    """Quadratic-pole sequence by convolving the two conjugate pole sequences.

    x[n] = sum_{m=k}^{n-k} C(m-1,m-k) (a+ib)^(m-k)
                           C(n-m-1,n-m-k) (a-ib)^(n-m-k)

    The m <-> n-m symmetry makes the sum real; the empty sum for n < 2k gives
    the zero prefix. Integer (a, b) are evaluated exactly.
    """
    if b <= 0:
        raise ValueError("not a complex pair")
    if k < 1:
        raise ValueError("multiplicity must be >= 1")
    ai, bi = int(a), int(b)
    exact = a == ai and b == bi
    vals = []
    for n in range(n_max + 1):
        if n < 2 * k:
            vals.append(0.0)
        elif exact:
            vals.append(_pair_convolution_int(ai, bi, k, n))
        else:
            vals.append(_pair_convolution_float(float(a), float(b), k, n))
    return SequenceTable(tuple(vals), "convolution", None)
