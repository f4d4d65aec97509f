"""Algebraic-integer bases realized as lattice endomorphisms.

A base is described by its monic integer minimal polynomial. The lattice
is the power basis 1, tau, ..., tau^(n-1) of Z[tau] with multiplication
by tau acting through the companion matrix; the working geometry is the
embedding norm: the sum of |sigma(alpha)|^2 over all field embeddings
into the complex numbers (so each complex conjugate pair counts twice).

The Gram matrix of that quadratic form on the power basis is computed
exactly as rationals whenever the root structure allows it:

* all roots real: entries are power sums of the roots (Newton identities);
* all roots sharing one rational squared modulus m (certified, not
  assumed): entry (i, k) is m^min(i,k) times a power sum;
* otherwise entries are certified interval enclosures built from
  isolated roots, refinable on demand.

Exactness matters because digit-set construction must resolve exact
norm ties; enclosure-only instances fall back to interval comparisons
with a precision cap.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from . import intmat, lattice
from .errors import NotExpandingError
from .exactreal import (
    DEFAULT_PRECISION_CAP_BITS,
    ComplexBox,
    CReal,
    IndeterminateInterval,
    Interval,
    QuadExt,
)

GRAM_POWER_SUMS = "power-sums"
GRAM_EQUAL_MODULUS = "equal-modulus"
GRAM_ENCLOSURE = "enclosure"


@dataclass(frozen=True)
class NumberFieldInstance:
    """Immutable description of a base tau and its lattice realization."""

    min_poly: tuple[int, ...]
    s: int
    t: int
    lattice: lattice.LatticeInstance
    gram_kind: str
    gram: tuple[tuple[Fraction, ...], ...] | None
    equal_modulus_sq: Fraction | None
    precision_cap_bits: int

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    @property
    def weights(self) -> tuple[int, ...]:
        return (1,) * self.s + (2,) * self.t

    def with_precision_cap(self, bits: int) -> "NumberFieldInstance":
        return NumberFieldInstance(
            self.min_poly,
            self.s,
            self.t,
            self.lattice,
            self.gram_kind,
            self.gram,
            self.equal_modulus_sq,
            bits,
        )


def _companion(coeffs: tuple[int, ...]) -> intmat.Matrix:
    n = len(coeffs) - 1
    return tuple(
        tuple(
            (-coeffs[i] if j == n - 1 else (1 if i == j + 1 else 0))
            for j in range(n)
        )
        for i in range(n)
    )


def _power_sums(coeffs: tuple[int, ...], upto: int) -> list[int]:
    """Newton identities: sums of k-th powers of all roots, exact."""
    n = len(coeffs) - 1
    e = [0] * (n + 1)
    e[0] = 1
    for k in range(1, n + 1):
        e[k] = (-1) ** k * coeffs[n - k]
    p = [n]
    for k in range(1, upto + 1):
        acc = 0
        for i in range(1, min(k - 1, n) + 1):
            if i < k:
                acc += (-1) ** (i - 1) * e[i] * p[k - i]
        if k <= n:
            acc += (-1) ** (k - 1) * k * e[k]
        p.append(acc)
    return p


@lru_cache(maxsize=None)
def _isolated_roots(min_poly: tuple[int, ...], bits: int):
    """Disjoint certified enclosures of all roots.

    Returns (reals, pairs): real roots as Intervals (ascending) and one
    ComplexBox per conjugate pair, keeping the one with positive imaginary
    part. Indices follow the isolation output order, which refines the
    same initial isolation at every precision, so the k-th entry encloses
    the same root at every bits value.
    """
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(min_poly)), x)
    eps = sympy.Rational(1, 1 << max(bits, 8))
    real_iv, cplx_iv = poly.intervals(all=True, eps=eps)
    reals = []
    for (lo, hi), mult in real_iv:
        if mult != 1:
            raise ValueError("repeated root in isolation")
        reals.append(Interval(Fraction(lo.p, lo.q), Fraction(hi.p, hi.q)))
    pairs = []
    for (c1, c2), mult in cplx_iv:
        if mult != 1:
            raise ValueError("repeated root in isolation")
        r1, i1 = c1.as_real_imag()
        r2, i2 = c2.as_real_imag()
        re = Interval(
            min(Fraction(r1.p, r1.q), Fraction(r2.p, r2.q)),
            max(Fraction(r1.p, r1.q), Fraction(r2.p, r2.q)),
        )
        im = Interval(
            min(Fraction(i1.p, i1.q), Fraction(i2.p, i2.q)),
            max(Fraction(i1.p, i1.q), Fraction(i2.p, i2.q)),
        )
        if im.lo >= 0:
            pairs.append(ComplexBox(re, im))
    if len(reals) + 2 * len(pairs) != len(min_poly) - 1:
        raise ValueError("conjugate pairing of isolated roots failed")
    return tuple(reals), tuple(pairs)


def _int_root(x: int, n: int) -> int | None:
    root, exact = sympy.integer_nthroot(x, n)
    return int(root) if exact else None


def _equal_modulus_candidate(coeffs: tuple[int, ...]) -> int | None:
    """Rational m with m^n = a0^2 and the reversal identity a0*a_k ==
    a_{n-k} * m^(n-k); necessary for all roots to sit on |z|^2 = m."""
    n = len(coeffs) - 1
    a0 = coeffs[0]
    m = _int_root(a0 * a0, n)
    if m is None or m == 0:
        return None
    for k in range(n + 1):
        if a0 * coeffs[k] != coeffs[n - k] * m ** (n - k):
            return None
    return m


def _certify_equal_modulus(min_poly: tuple[int, ...], m: int) -> bool:
    """Certify |root|^2 == m for every root: the map z -> m / conj(z)
    permutes the roots (reversal identity), so if the image of each root
    box meets only that same box, every root is a fixed point."""
    bits = 32
    while bits <= (1 << 14):
        reals, pairs = _isolated_roots(min_poly, bits)
        boxes = [ComplexBox(iv, Interval.point(0)) for iv in reals]
        for box in pairs:
            boxes.append(box)
            boxes.append(box.conj())
        ok = True
        for i, box in enumerate(boxes):
            try:
                image = box.conj().recip().scaled(m)
            except IndeterminateInterval:
                ok = False
                break
            hits = [j for j, other in enumerate(boxes) if image.intersects(other)]
            if hits == [i]:
                continue
            if i not in hits and len(hits) == 1:
                return False
            ok = False
            break
        if ok:
            return True
        bits *= 2
    return False


def build(min_poly, precision_cap_bits: int | None = None) -> NumberFieldInstance:
    """Validate a monic integer minimal polynomial and assemble the instance.

    Coefficients are ascending (constant first). Rejects non-monic input
    and a zero constant term; warns when the polynomial is reducible;
    rejects repeated roots because they degenerate the embedding norm.
    """
    coeffs = tuple(int(c) for c in min_poly)
    if len(coeffs) < 2:
        raise ValueError("polynomial must have degree at least 1")
    if coeffs[-1] != 1:
        raise ValueError("minimal polynomial must be monic")
    if coeffs[0] == 0:
        raise ValueError("constant term must be nonzero (the base must be invertible)")
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x)
    if sympy.degree(sympy.gcd(poly, poly.diff(x)), x) > 0:
        raise ValueError("repeated roots degenerate the embedding norm")
    if len(coeffs) > 2 and not poly.is_irreducible:
        warnings.warn("minimal polynomial is reducible; treating the product ring")

    inst = lattice.LatticeInstance.from_matrix(_companion(coeffs))
    reals, pairs = _isolated_roots(coeffs, 32)
    s, t = len(reals), len(pairs)
    n = len(coeffs) - 1

    gram_kind = GRAM_ENCLOSURE
    gram = None
    m_sq: Fraction | None = None
    if t == 0:
        gram_kind = GRAM_POWER_SUMS
        p = _power_sums(coeffs, 2 * n - 2)
        gram = tuple(
            tuple(Fraction(p[i + k]) for k in range(n)) for i in range(n)
        )
    else:
        m = _equal_modulus_candidate(coeffs)
        if m is not None and _certify_equal_modulus(coeffs, m):
            gram_kind = GRAM_EQUAL_MODULUS
            m_sq = Fraction(m)
            p = _power_sums(coeffs, n - 1)
            gram = tuple(
                tuple(
                    Fraction(m ** min(i, k) * p[abs(i - k)])
                    for k in range(n)
                )
                for i in range(n)
            )

    return NumberFieldInstance(
        min_poly=coeffs,
        s=s,
        t=t,
        lattice=inst,
        gram_kind=gram_kind,
        gram=gram,
        equal_modulus_sq=m_sq,
        precision_cap_bits=(
            DEFAULT_PRECISION_CAP_BITS
            if precision_cap_bits is None
            else int(precision_cap_bits)
        ),
    )


def gram_enclosure(nf: NumberFieldInstance, bits: int) -> list[list[Interval]]:
    """Interval Gram matrix straight from isolated roots. Works for every
    instance; used as the fallback and as an independent cross-check of
    the exact constructions."""
    n = nf.degree
    reals, pairs = _isolated_roots(nf.min_poly, bits)
    out = [[Interval.point(0)] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            acc = Interval.point(0)
            for iv in reals:
                acc = acc + iv.pow(i + k)
            for box in pairs:
                prod = box.pow(i) * box.conj().pow(k)
                acc = acc + prod.re.scaled(2)
            out[i][k] = acc
    return out


def minkowski_norm_sq_exact(nf: NumberFieldInstance, p) -> Fraction | None:
    """Exact squared embedding norm, when the Gram matrix is exact."""
    if nf.gram is None:
        return None
    vec = tuple(Fraction(v) for v in p)
    if len(vec) != nf.degree:
        raise ValueError("point length does not match the field degree")
    total = Fraction(0)
    for i, vi in enumerate(vec):
        if vi == 0:
            continue
        row = nf.gram[i]
        for k, vk in enumerate(vec):
            if vk:
                total += vi * vk * row[k]
    return total


def minkowski_norm_sq(nf: NumberFieldInstance, p, bits: int = 64) -> Interval:
    """Certified enclosure of sum of |sigma_j(alpha)|^2 over all embeddings
    (conjugate pairs counted twice); degenerate interval when exact."""
    exact = minkowski_norm_sq_exact(nf, p)
    if exact is not None:
        return Interval.point(exact)
    vec = tuple(Fraction(v) for v in p)
    if len(vec) != nf.degree:
        raise ValueError("point length does not match the field degree")
    g = gram_enclosure(nf, bits)
    acc = Interval.point(0)
    for i, vi in enumerate(vec):
        if vi == 0:
            continue
        for k, vk in enumerate(vec):
            if vk:
                acc = acc + g[i][k].scaled(vi * vk)
    return acc


def norm_sq_real(nf: NumberFieldInstance, p) -> CReal:
    """The squared embedding norm as a comparable certified real."""
    exact = minkowski_norm_sq_exact(nf, p)
    if exact is not None:
        return CReal.from_rational(exact)
    vec = tuple(Fraction(v) for v in p)
    return CReal.from_refinable(lambda bits: minkowski_norm_sq(nf, vec, bits))


def _quadratic_roots(coeffs: tuple[int, ...]) -> tuple[QuadExt, QuadExt]:
    # monic x^2 + b x + c with real roots; exact radicals
    c, b = Fraction(coeffs[0]), Fraction(coeffs[1])
    disc = b * b - 4 * c
    root = QuadExt.sqrt_rational(disc)
    half = Fraction(1, 2)
    lo = (QuadExt.rational(-b) - root).scaled(half)
    hi = (QuadExt.rational(-b) + root).scaled(half)
    return lo, hi


def embedding_moduli_sq(nf: NumberFieldInstance) -> list[CReal]:
    """|sigma_j(tau)|^2 for each embedding (one entry per conjugate pair),
    real embeddings first, in the canonical root order. Exact whenever the
    Gram construction is exact; refinable enclosures otherwise."""
    coeffs = nf.min_poly
    n = nf.degree
    if nf.equal_modulus_sq is not None:
        return [CReal.from_rational(nf.equal_modulus_sq)] * (nf.s + nf.t)
    if n == 1:
        return [CReal.from_rational(Fraction(coeffs[0]) ** 2)]
    if n == 2 and nf.t == 0:
        lo, hi = _quadratic_roots(coeffs)
        return [CReal.from_quadext(lo * lo), CReal.from_quadext(hi * hi)]
    out: list[CReal] = []
    for j in range(nf.s):
        def fn(bits: int, idx: int = j) -> Interval:
            reals, _ = _isolated_roots(coeffs, bits)
            return reals[idx].sq()

        out.append(CReal.from_refinable(fn))
    for j in range(nf.t):
        def fn(bits: int, idx: int = j) -> Interval:
            _, pairs = _isolated_roots(coeffs, bits)
            return pairs[idx].modulus_sq()

        out.append(CReal.from_refinable(fn))
    return out


def is_expanding_base(nf: NumberFieldInstance) -> bool:
    return lattice.is_expanding(nf.lattice)


def inv_operator_norm_real(nf: NumberFieldInstance) -> CReal:
    """Operator norm of the inverse base map in the embedding geometry:
    the reciprocal of the smallest embedding modulus. Requires an
    expanding base so the value is strictly below 1."""
    if not is_expanding_base(nf):
        raise NotExpandingError(
            "some embedding of the base has modulus at most 1"
        )
    min_mod_sq = CReal.minimum(embedding_moduli_sq(nf))
    return (CReal.from_rational(1) / min_mod_sq).sqrt()


def inv_operator_norm(nf: NumberFieldInstance, bits: int = 64) -> Interval:
    return inv_operator_norm_real(nf).interval(bits)
