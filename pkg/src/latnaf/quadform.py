"""Exact lattice geometry for positive definite rational quadratic forms.

Everything here is rational arithmetic: enumeration bounds come from an
LDL decomposition with integer range endpoints computed through isqrt,
so no floating point is involved anywhere on a decision path.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, isqrt, lcm

import sympy

from . import intmat
from .exactreal import CReal, Interval, sqrt_upper

Gram = tuple[tuple[Fraction, ...], ...]


def as_gram(rows) -> Gram:
    g = tuple(tuple(Fraction(v) for v in row) for row in rows)
    n = len(g)
    for row in g:
        if len(row) != n:
            raise ValueError("gram matrix must be square")
    for i in range(n):
        for k in range(i + 1, n):
            if g[i][k] != g[k][i]:
                raise ValueError("gram matrix must be symmetric")
    return g


def eval_quadratic(g: Gram, v) -> Fraction:
    total = Fraction(0)
    for i, vi in enumerate(v):
        if vi == 0:
            continue
        row = g[i]
        for k, vk in enumerate(v):
            if vk:
                total += Fraction(vi) * Fraction(vk) * row[k]
    return total


def ldl(g: Gram):
    """Q(y) = sum_i d[i] * (y_i + sum_{j>i} u[i][j] y_j)^2 with d[i] > 0,
    or None when the form is not positive definite."""
    n = len(g)
    a = [[Fraction(g[i][k]) for k in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        pivot = a[i][i]
        if pivot <= 0:
            return None
        d[i] = pivot
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / pivot
        for j in range(i + 1, n):
            for k in range(j, n):
                a[j][k] -= a[i][j] * a[i][k] / pivot
                a[k][j] = a[j][k]
    return d, u


def _floor_shift_sqrt(shift: Fraction, val: Fraction) -> int:
    """floor(shift + sqrt(val)) computed exactly; val >= 0."""
    if val < 0:
        raise ValueError("negative radicand")
    num, den = val.numerator, val.denominator
    k = floor(shift) + isqrt(num * den) // den

    def le(c: int) -> bool:
        # c <= shift + sqrt(val)
        rest = Fraction(c) - shift
        if rest <= 0:
            return True
        return rest * rest <= val

    while le(k + 1):
        k += 1
    while not le(k):
        k -= 1
    return k


def enumerate_with_offset(g: Gram, t, bound: Fraction):
    """All integer x with Q(t + x) <= bound, sorted lexicographically.

    t is a rational point of the ambient space; bound is a rational.
    """
    n = len(g)
    decomp = ldl(g)
    if decomp is None:
        raise ValueError("form is not positive definite")
    d, u = decomp
    tt = tuple(Fraction(v) for v in t)
    if len(tt) != n:
        raise ValueError("offset length mismatch")
    bound = Fraction(bound)
    if bound < 0:
        return []
    out: list[tuple[int, ...]] = []
    ys = [Fraction(0)] * n
    xs = [0] * n

    def recurse(i: int, budget: Fraction) -> None:
        shift = sum((u[i][j] * ys[j] for j in range(i + 1, n)), Fraction(0))
        rad = budget / d[i]
        center = -(tt[i] + shift)
        hi = _floor_shift_sqrt(center, rad)
        lo = -_floor_shift_sqrt(-center, rad)
        for xi in range(lo, hi + 1):
            yi = tt[i] + xi
            used = d[i] * (yi + shift) * (yi + shift)
            if used > budget:
                continue
            xs[i] = xi
            ys[i] = yi
            if i == 0:
                out.append(tuple(xs))
            else:
                recurse(i - 1, budget - used)

    recurse(n - 1, bound)
    out.sort()
    return out


def enumerate_ball(g: Gram, bound: Fraction):
    """All integer points with Q(x) <= bound, origin included, lex order."""
    return enumerate_with_offset(g, (0,) * len(g), bound)


def shortest_nonzero_norm_sq(g: Gram) -> Fraction:
    bound = min(g[i][i] for i in range(len(g)))
    best = None
    for x in enumerate_ball(g, bound):
        if all(c == 0 for c in x):
            continue
        v = eval_quadratic(g, x)
        if best is None or v < best:
            best = v
    assert best is not None
    return best


def _babai_seed(g: Gram, t) -> tuple[int, ...]:
    n = len(g)
    d, u = ldl(g)
    xs = [0] * n
    ys = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        shift = sum((u[i][j] * ys[j] for j in range(i + 1, n)), Fraction(0))
        target = -(Fraction(t[i]) + shift)
        xs[i] = floor(target + Fraction(1, 2))
        ys[i] = Fraction(t[i]) + xs[i]
    return tuple(xs)


def closest_lattice_points(g: Gram, t):
    """All integer x minimizing Q(t + x), with the minimum.

    Returns (points sorted lex, min_value). The Babai nearest-plane point
    seeds the search radius, so the enumeration provably contains every
    minimizer.
    """
    tt = tuple(Fraction(v) for v in t)
    seed = _babai_seed(g, tt)
    bound = eval_quadratic(g, tuple(a + b for a, b in zip(tt, seed)))
    best = bound
    winners = []
    for x in enumerate_with_offset(g, tt, bound):
        v = eval_quadratic(g, tuple(a + b for a, b in zip(tt, x)))
        if v < best:
            best = v
            winners = [x]
        elif v == best:
            winners.append(x)
    winners.sort()
    return winners, best


def _is_diagonal(g: Gram) -> bool:
    n = len(g)
    return all(g[i][k] == 0 for i in range(n) for k in range(n) if i != k)


def _covering_radius_sq_2d(g: Gram) -> Fraction:
    """Exact squared covering radius in dimension 2: the farthest vertex
    of the origin's exact Voronoi cell."""
    bound = 2 * (g[0][0] + g[1][1])
    rel = [x for x in enumerate_ball(g, bound) if x != (0, 0)]
    half = []
    for v in rel:
        gv = (
            g[0][0] * v[0] + g[0][1] * v[1],
            g[1][0] * v[0] + g[1][1] * v[1],
        )
        half.append((2 * gv[0], 2 * gv[1], eval_quadratic(g, v)))
    best = Fraction(0)
    m = len(half)
    for i in range(m):
        a1, b1, c1 = half[i]
        for j in range(i + 1, m):
            a2, b2, c2 = half[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            x = (c1 * b2 - c2 * b1) / det
            y = (a1 * c2 - a2 * c1) / det
            if all(a * x + b * y <= c for a, b, c in half):
                nv = eval_quadratic(g, (x, y))
                if nv > best:
                    best = nv
    # constraints from vectors outside the candidate ball cannot cut the
    # cell: their bisectors stay farther out than every vertex found
    assert best <= Fraction(bound, 4)
    return best


def covering_radius_sq_exact(g: Gram) -> Fraction | None:
    """Exact squared covering radius when cheaply available, else None."""
    n = len(g)
    if n == 1:
        return g[0][0] / 4
    if _is_diagonal(g):
        return sum((g[i][i] for i in range(n)), Fraction(0)) / 4
    if n == 2:
        return _covering_radius_sq_2d(g)
    return None


def covering_radius_sq_upper(g: Gram) -> Fraction:
    """Rational upper bound on the squared covering radius. Exact in the
    cases covering_radius_sq_exact handles; otherwise the half-diameter
    bound: rounding coordinates one at a time strays at most half the sum
    of the basis-vector lengths."""
    exact = covering_radius_sq_exact(g)
    if exact is not None:
        return exact
    total = Fraction(0)
    for i in range(len(g)):
        total += sqrt_upper(Fraction(g[i][i]), 64)
    return total * total / 4


def min_eigenvalue_real(mat) -> CReal:
    """Smallest eigenvalue of a symmetric rational matrix as a certified
    real; exact rational whenever that eigenvalue is rational."""
    rows = [[Fraction(v) for v in row] for row in mat]
    n = len(rows)
    den = 1
    for row in rows:
        for v in row:
            den = lcm(den, v.denominator)
    a = tuple(
        tuple(int(v * den) for v in row) for row in rows
    )
    coeffs = intmat.char_poly(a)
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x)
    poly = sympy.quo(poly, sympy.gcd(poly, poly.diff(x)))
    factors = sympy.factor_list(poly)[1]
    scale = Fraction(1, den)
    candidates: list[CReal] = []
    for fac, _exp in factors:
        fac = sympy.Poly(fac, x)
        if fac.degree() == 1:
            c0, c1 = fac.all_coeffs()[1], fac.all_coeffs()[0]
            candidates.append(
                CReal.from_rational(Fraction(-int(c0), int(c1)) * scale)
            )
            continue
        fc = tuple(int(v) for v in reversed(fac.all_coeffs()))

        def atom(bits: int, fcoeffs=fc) -> Interval:
            from .numberfield import _isolated_roots

            reals, _ = _isolated_roots(fcoeffs, bits)
            return reals[0].scaled(scale)

        candidates.append(CReal.from_refinable(atom))
    best = candidates[0]
    for c in candidates[1:]:
        if c.compare(best, 4096) < 0:
            best = c
    return best
