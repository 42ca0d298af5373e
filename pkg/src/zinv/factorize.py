"""Decompose a real denominator into linear and irreducible quadratic factors.

The factor shapes are (z - r)**u for real poles and
(z**2 - 2az + (a**2 + b**2))**k for conjugate pairs a +/- ib with b > 0;
poles at the origin are tracked separately since their inverses are plain
impulses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FactorizationError, RootFindingError
from .polynomial import Polynomial

DEFAULT_TOL_CLUSTER = 1e-6
DEFAULT_TOL_REAL = 1e-8
EXPAND_RTOL = 1e-8
# Retry tolerances for repeated roots: eigenvalue scatter of an m-fold root
# grows like eps**(1/m), far beyond the default cluster width.
_PROMOTION_TOLS = (1e-4, 1e-3, 1e-2)


@dataclass(frozen=True)
class LinearFactor:
    """(z - r)**u, real nonzero pole r with multiplicity u."""

    r: float
    u: int

    def __post_init__(self):
        if self.u < 1:
            raise ValueError("multiplicity must be >= 1")


@dataclass(frozen=True)
class QuadraticFactor:
    """(z**2 - 2az + (a**2+b**2))**k, the conjugate pole pair a +/- ib, b > 0."""

    a: float
    b: float
    k: int

    def __post_init__(self):
        if self.b <= 0:
            raise ValueError("quadratic factor requires b > 0")
        if self.k < 1:
            raise ValueError("multiplicity must be >= 1")

    @property
    def modulus(self):
        return math.hypot(self.a, self.b)

    @property
    def angle(self):
        """Principal argument of a + ib; lies in (0, pi) since b > 0."""
        return math.atan2(self.b, self.a)


@dataclass(frozen=True)
class FactoredDenominator:
    """Complete factor structure of a real polynomial."""

    origin_mult: int
    linears: tuple
    quadratics: tuple
    scale: float = 1

    @property
    def degree(self):
        return (
            self.origin_mult
            + sum(f.u for f in self.linears)
            + 2 * sum(f.k for f in self.quadratics)
        )

    def expand(self):
        """Multiply the factors back out (scale included)."""
        p = Polynomial.from_factors(
            [(f.r, f.u) for f in self.linears],
            [(f.a, f.b, f.k) for f in self.quadratics],
            scale=self.scale,
        )
        return p.shift(self.origin_mult)

    def pole_list(self):
        """All poles as (location, multiplicity), conjugate-closed."""
        poles = []
        if self.origin_mult:
            poles.append((0j, self.origin_mult))
        for f in self.linears:
            poles.append((complex(f.r, 0.0), f.u))
        for f in self.quadratics:
            poles.append((complex(f.a, f.b), f.k))
            poles.append((complex(f.a, -f.b), f.k))
        return sorted(poles, key=lambda pm: (pm[0].real, pm[0].imag))


def find_roots(p, max_iter=30):
    """All complex roots of p (with repetition), Newton-polished.

    Returns a list of (root, residual) with residual = |p(root)|, sorted by
    real then imaginary part. Structural roots at the origin (exact zero
    low-order coefficients) are returned exactly. Raises RootFindingError if
    polishing leaves a residual above 1e-6 * max(1, |p|_inf).
    """
    if p.degree < 1:
        raise ValueError("need degree >= 1 to find roots")
    coeffs = list(p.coeffs)
    n_origin = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        n_origin += 1
    roots = [0j] * n_origin
    if len(coeffs) > 1:
        raw = np.roots(np.array(coeffs[::-1]))
        dp = Polynomial(coeffs).derivative()
        stripped = Polynomial(coeffs)
        tiny = 1e-15 * max(1.0, stripped.norm_inf)
        for z0 in raw:
            z = complex(z0)
            best, best_res = z, abs(stripped(z))
            for _ in range(max_iter):
                if best_res <= tiny:
                    break
                d = dp(z)
                if d == 0:
                    break
                z = z - stripped(z) / d
                res = abs(stripped(z))
                if res < best_res:
                    best, best_res = z, res
            roots.append(best)
    out = sorted(
        ((z, abs(p(z))) for z in roots), key=lambda zr: (zr[0].real, zr[0].imag)
    )
    worst = max(res for _, res in out)
    bound = 1e-6 * max(1.0, p.norm_inf)
    if worst > bound:
        bad = max(out, key=lambda zr: zr[1])
        raise RootFindingError(
            f"root refinement did not converge: residual {worst:.3g} at {bad[0]}",
            best=bad[0],
            residual=worst,
        )
    return out


def _cluster(roots, tol_abs):
    """Greedy clustering of nearby roots; returns (centroid, count) pairs."""
    clusters = []  # [sum, count]
    for z in sorted(roots, key=lambda w: (w.real, w.imag)):
        for cl in clusters:
            if abs(z - cl[0] / cl[1]) <= tol_abs:
                cl[0] += z
                cl[1] += 1
                break
        else:
            clusters.append([z, 1])
    return [(s / c, c) for s, c in clusters]


def cluster_and_pair(roots, tol_cluster=DEFAULT_TOL_CLUSTER, tol_real=DEFAULT_TOL_REAL):
    """Group raw roots into origin / real / conjugate-pair factors.

    Roots within tol_cluster (relative to the largest root modulus) merge with
    summed multiplicity; near-real locations snap to the axis, near-zero ones
    to the origin; the rest must pair with their conjugates (b > 0 kept).
    """
    roots = [complex(z) for z in roots]
    if not roots:
        return FactoredDenominator(0, (), (), 1)
    scale = max(1.0, max(abs(z) for z in roots))
    merged = _cluster(roots, tol_cluster * scale)

    origin = 0
    reals = []
    upper = []
    lower = []
    for z, m in merged:
        if abs(z) <= tol_real:
            origin += m
        elif abs(z.imag) <= tol_real * (1 + abs(z)):
            reals.append([z.real, m])
        elif z.imag > 0:
            upper.append((z, m))
        else:
            lower.append((z, m))

    # conjugate pairs that individually snapped to the axis can collide
    reals.sort(key=lambda rm: rm[0])
    dedup = []
    for r, m in reals:
        if dedup and abs(r - dedup[-1][0]) <= tol_cluster * scale:
            dedup[-1][1] += m
        else:
            dedup.append([r, m])

    pair_tol = max(tol_cluster, tol_real) * scale * 4
    quads = []
    lower = list(lower)
    for z, m in upper:
        match = None
        for i, (w, mw) in enumerate(lower):
            if abs(w.conjugate() - z) <= pair_tol:
                match = i
                break
        if match is None:
            raise FactorizationError(f"conjugate pairing failed: unpaired root {z}")
        w, mw = lower.pop(match)
        if mw != m:
            raise FactorizationError(
                f"conjugate pairing failed: multiplicity mismatch at {z} ({m} vs {mw})"
            )
        a = (z.real + w.real) / 2
        b = (z.imag - w.imag) / 2
        quads.append(QuadraticFactor(a, b, m))
    if lower:
        raise FactorizationError(
            f"conjugate pairing failed: unpaired root {lower[0][0]}"
        )

    return FactoredDenominator(
        origin,
        tuple(LinearFactor(r, m) for r, m in dedup),
        tuple(sorted(quads, key=lambda f: (f.a, f.b))),
        1,
    )


def _newton(p, z, iters=40):
    """Newton refinement tracking the lowest-residual iterate."""
    dp = p.derivative()
    best, best_res = z, abs(p(z))
    for _ in range(iters):
        if best_res == 0.0:
            break
        d = dp(z)
        if d == 0:
            break
        z = z - p(z) / d
        res = abs(p(z))
        if res < best_res:
            best, best_res = z, res
    return best


def _polish(d, skel):
    """Refine repeated factor locations on the matching derivative of d.

    An m-fold root of d is a simple root of d^(m-1), where Newton converges
    quadratically; multiplicity-1 locations were already polished in
    find_roots.
    """
    linears = []
    for f in skel.linears:
        r = f.r
        if f.u > 1:
            z = _newton(d.derivative(f.u - 1), complex(r, 0.0))
            if abs(z.imag) <= 1e-6 * (1 + abs(z)):
                r = z.real
        linears.append(LinearFactor(r, f.u))
    quads = []
    for f in skel.quadratics:
        a, b = f.a, f.b
        if f.k > 1:
            z = _newton(d.derivative(f.k - 1), complex(a, b))
            if z.imag > 0:
                a, b = z.real, z.imag
        quads.append(QuadraticFactor(a, b, f.k))
    return FactoredDenominator(skel.origin_mult, tuple(linears), tuple(quads), skel.scale)


def _expand_error(d, f):
    """Relative coefficient error between d and the expanded factorization."""
    e = f.expand()
    if e.degree != d.degree:
        return math.inf
    norm = max(d.norm_inf, 1e-300)
    return max(abs(e.coeff(i) - d.coeff(i)) for i in range(d.degree + 1)) / norm


def _eval_noise(p, z):
    """Evaluation-noise zero threshold for p at z (~1e3 ulps, backward stable)."""
    m = max(1.0, abs(z))
    s = 0.0
    pw = 1.0
    for c in p.coeffs:
        s += abs(c) * pw
        pw *= m
    return 1e-13 * s


def _is_m_fold_root(p, z, m):
    """True when p, p', ..., p^(m-1) all vanish at z to within noise.

    Expansion fit cannot tell an m-fold root from m accurate close roots (both
    reproduce the coefficients); the low-derivative residuals can: merged
    distinct roots at separation delta leave |p| ~ delta^m, far above noise.
    """
    for i in range(m):
        pi = p.derivative(i)
        if abs(pi(z)) > _eval_noise(pi, z):
            return False
    return True


def _structure_ok(d, f):
    for lf in f.linears:
        if lf.u >= 2 and not _is_m_fold_root(d, complex(lf.r, 0.0), lf.u):
            return False
    for qf in f.quadratics:
        if qf.k >= 2 and not _is_m_fold_root(d, complex(qf.a, qf.b), qf.k):
            return False
    return True


def _location_count(f):
    # quadratics hold two pole locations; counting them as such makes a
    # merged double real root beat the near-degenerate tiny-b pair shape
    return (1 if f.origin_mult else 0) + len(f.linears) + 2 * len(f.quadratics)


def factor_denominator(
    d, tol_cluster=DEFAULT_TOL_CLUSTER, tol_real=DEFAULT_TOL_REAL
):
    """Recover the full factor structure of a real polynomial numerically.

    Composes find_roots and cluster_and_pair over a ladder of cluster widths
    (repeated roots scatter like eps**(1/m), beyond the default width),
    polishes repeated locations, and accepts a candidate only when it both
    re-expands to d (relative error <= 1e-8) and passes the multiple-root
    residual test. Among acceptable candidates the most merged one wins:
    a spurious merge of genuinely distinct roots fails the residual test.
    """
    if d.degree < 1:
        raise ValueError("need degree >= 1 to factor")
    if not d.is_real():
        raise ValueError("real coefficients required")
    lead = d.leading
    roots = [z for z, _ in find_roots(d)]

    candidates = []
    best_err = math.inf
    for order, tc in enumerate((tol_cluster, *_PROMOTION_TOLS)):
        try:
            skel = cluster_and_pair(roots, tc, tol_real)
        except FactorizationError:
            continue
        cand = FactoredDenominator(
            skel.origin_mult, skel.linears, skel.quadratics, lead
        )
        cand = _polish(d, cand)
        err = _expand_error(d, cand)
        best_err = min(best_err, err)
        if err <= EXPAND_RTOL and _structure_ok(d, cand):
            candidates.append((_location_count(cand), order, cand))
    if not candidates:
        raise FactorizationError(
            f"factor recovery failed: best relative expansion error {best_err:.3g}"
        )
    return min(candidates)[2]


def complex_pole_multiplicities(
    p, tol_cluster=DEFAULT_TOL_CLUSTER, tol_real=DEFAULT_TOL_REAL
):
    """Distinct complex poles of a real polynomial with multiplicities.

    Same recovery pipeline as factor_denominator, returned as a
    conjugate-closed (pole, multiplicity) list.
    """
    return factor_denominator(p, tol_cluster, tol_real).pole_list()
