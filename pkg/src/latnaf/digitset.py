"""Digit sets for sliding-window expansions.

A digit set for window width w holds exactly one representative of every
residue class of the lattice modulo the w-th power of the base map,
excluding classes inside the image of the base map itself (those are
represented by the digit zero). Three families are provided:

* minimal-norm: per class, a representative of least embedding norm,
  ties broken by the lexicographically smallest coordinate tuple;
* interval: for integer bases tau, the representatives in the balanced
  half-open interval (-|tau|^w / 2, |tau|^w / 2] not divisible by tau;
* custom: caller-provided representatives, validated.

The module also bundles the geometric context (packing radius, covering
radius, contraction factor of the inverse map) that the termination and
optimality arguments consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import intmat, lattice, numberfield, quadform
from .errors import InstanceError, MalformedDigitSetError, NotExpandingError
from .exactreal import (
    DEFAULT_PRECISION_CAP_BITS,
    CReal,
    Interval,
    PrecisionCapError,
    sqrt_upper,
)

Point = lattice.Point

FAMILY_MINIMAL_NORM = "minimal-norm"
FAMILY_INTERVAL = "interval"
FAMILY_CUSTOM = "custom"


@dataclass(frozen=True)
class Geometry:
    """Working norm of an instance: exact Gram matrix when available,
    certified interval fallback otherwise, and the contraction factor of
    the inverse base map in that norm."""

    inst: lattice.LatticeInstance
    nf: numberfield.NumberFieldInstance | None
    gram: quadform.Gram | None
    precision_cap_bits: int

    def norm_sq_exact(self, p) -> Fraction | None:
        if self.gram is None:
            return None
        return quadform.eval_quadratic(self.gram, p)

    def norm_sq_real(self, p) -> CReal:
        exact = self.norm_sq_exact(p)
        if exact is not None:
            return CReal.from_rational(exact)
        assert self.nf is not None
        return numberfield.norm_sq_real(self.nf, p)

    def norm_sq_interval(self, p, bits: int = 64) -> Interval:
        exact = self.norm_sq_exact(p)
        if exact is not None:
            return Interval.point(exact)
        assert self.nf is not None
        return numberfield.minkowski_norm_sq(self.nf, p, bits)

    @cached_property
    def u(self) -> CReal:
        """Operator norm of the inverse base map in the working norm;
        raises unless it is certified strictly below 1."""
        if self.nf is not None:
            return numberfield.inv_operator_norm_real(self.nf)
        if not lattice.is_expanding(self.inst):
            raise NotExpandingError("the base map is not expanding")
        phi = self.inst.phi
        sym = intmat.mat_mul(intmat.transpose(phi), phi)
        lam = quadform.min_eigenvalue_real(sym)
        one = CReal.from_rational(Fraction(1))
        if lam.compare(one, self.precision_cap_bits) <= 0:
            raise InstanceError(
                "inverse map is not a contraction in the coordinate norm; "
                "supply the base as a minimal polynomial instead"
            )
        return (one / lam).sqrt()


@lru_cache(maxsize=None)
def geometry(source) -> Geometry:
    """Working geometry for a base given as a field instance (embedding
    norm) or a plain matrix instance (coordinate norm, Gram = identity)."""
    if isinstance(source, numberfield.NumberFieldInstance):
        gram = None
        if source.gram is not None:
            gram = quadform.as_gram(source.gram)
        return Geometry(source.lattice, source, gram, source.precision_cap_bits)
    if isinstance(source, lattice.LatticeInstance):
        eye = quadform.as_gram(
            [[1 if i == j else 0 for j in range(source.n)] for i in range(source.n)]
        )
        return Geometry(source, None, eye, DEFAULT_PRECISION_CAP_BITS)
    raise TypeError("source must be a field instance or a lattice instance")


def lattice_of(source) -> lattice.LatticeInstance:
    return geometry(source).inst


def digit_count(source, w: int) -> int:
    d = abs(lattice_of(source).det)
    return d**w - d ** (w - 1)


@dataclass(frozen=True)
class DigitSet:
    """Validated digit set; digits are lattice points in coordinates,
    sorted, with the zero digit included."""

    source: object
    w: int
    digits: tuple[Point, ...]
    family: str

    @property
    def inst(self) -> lattice.LatticeInstance:
        return lattice_of(self.source)

    @property
    def nonzero_digits(self) -> tuple[Point, ...]:
        zero = self.inst.zero()
        return tuple(d for d in self.digits if d != zero)

    @cached_property
    def class_map(self) -> dict:
        inst = self.inst
        return {
            lattice.residue_key(inst, self.w, d): d for d in self.nonzero_digits
        }


def _validate_digits(source, w: int, nonzero: list[Point]) -> tuple[Point, ...]:
    inst = lattice_of(source)
    want = digit_count(inst, w)
    if len(nonzero) != want:
        raise MalformedDigitSetError(
            f"expected {want} nonzero digits, got {len(nonzero)}"
        )
    seen = {}
    for d in nonzero:
        if lattice.solve_divisibility(inst, d, 1) is not None:
            raise MalformedDigitSetError(
                f"digit {d} lies in the image of the base map"
            )
        key = lattice.residue_key(inst, w, d)
        if key in seen:
            raise MalformedDigitSetError(
                f"digits {seen[key]} and {d} share a residue class"
            )
        seen[key] = d
    return tuple(sorted(nonzero)) + (inst.zero(),)


def _finish(source, w: int, nonzero: list[Point], family: str) -> DigitSet:
    # a non-expanding base never terminates the division, so the digit
    # system would be vacuous; reject it at construction
    if not lattice.is_expanding(lattice_of(source)):
        raise NotExpandingError(
            "digit sets require an expanding base "
            "(every eigenvalue outside the closed unit disk)"
        )
    digits = _validate_digits(source, w, nonzero)
    return DigitSet(source, w, tuple(sorted(digits)), family)


def _minimizers_exact(
    geo: Geometry, pw: intmat.Matrix, rep: Point
) -> list[Point]:
    """All representatives of rep's class minimizing the norm of the
    class member pulled back through the w-th power of the base: the
    digit candidates with Phi^-w(digit) in the Voronoi cell."""
    t = intmat.solve_exact(pw, rep)
    winners, _ = quadform.closest_lattice_points(geo.gram, t)
    return sorted(
        tuple(r + s for r, s in zip(rep, intmat.mat_vec(pw, x))) for x in winners
    )


def _minimizers_enclosure(
    geo: Geometry, pw: intmat.Matrix, rep: Point
) -> list[Point]:
    """Same minimization over the class, for instances where the Gram
    matrix is only known by enclosure.

    Candidates come from a rational midpoint Gram matrix with a rigorous
    inflation factor: for any vector v, |Q_true(v) - Q_mid(v)| is at most
    eps * (sum |v_i|)^2 <= eps * n * Q_mid(v) / lambda_min(mid), with eps
    the largest entry halfwidth. So Q_true(v) <= C implies
    Q_mid(v) <= C / (1 - kappa) with kappa = eps * n / lambda_min, and
    enumerating to the inflated bound provably contains every minimizer.
    Finalists are then compared as certified reals; a tie between
    candidates that are not mirror images raises the precision cap error.
    """
    nf = geo.nf
    assert nf is not None
    n = len(rep)
    t = intmat.solve_exact(pw, rep)
    bits = 64
    while True:
        giv = numberfield.gram_enclosure(nf, bits)
        mid = quadform.as_gram(
            [[(giv[i][k].lo + giv[i][k].hi) / 2 for k in range(n)] for i in range(n)]
        )
        eps = max(e.width() for row in giv for e in row) / 2
        if quadform.ldl(mid) is None:
            bits *= 2
            continue
        lam_lo = quadform.min_eigenvalue_real(mid).interval(64).lo
        if lam_lo <= 0:
            bits *= 2
            continue
        kappa = eps * n / lam_lo
        if kappa > Fraction(1, 2):
            bits *= 2
            continue
        seed = quadform._babai_seed(mid, t)
        seed_vec = tuple(a + b for a, b in zip(t, seed))
        c_hi = numberfield.minkowski_norm_sq(nf, seed_vec, bits).hi
        bound = c_hi / (1 - kappa)
        cands = sorted(
            tuple(a + b for a, b in zip(t, x))
            for x in quadform.enumerate_with_offset(mid, t, bound)
        )
        break
    cap = geo.precision_cap_bits
    best: list[tuple[Fraction, ...]] = []
    best_val: CReal | None = None
    for vec in cands:
        if best and any(vec == tuple(-c for c in b) for b in best):
            best.append(vec)
            continue
        val = numberfield.norm_sq_real(nf, vec)
        if best_val is None:
            best, best_val = [vec], val
            continue
        rel = val.compare(best_val, cap)
        if rel < 0:
            best, best_val = [vec], val
        elif rel == 0:
            best.append(vec)
    digits = []
    for vec in best:
        pt = intmat.mat_vec(pw, vec)
        assert all(c.denominator == 1 for c in pt)
        digits.append(tuple(int(c) for c in pt))
    return sorted(digits)


def build_minimal_norm(source, w: int) -> DigitSet:
    """One digit of least working norm per admissible residue class."""
    if w < 1:
        raise ValueError("window width must be at least 1")
    geo = geometry(source)
    inst = geo.inst
    pw = intmat.mat_pow(inst.phi, w)
    nonzero = []
    for rep in lattice.residue_system(inst, w):
        if rep == inst.zero():
            continue
        if lattice.solve_divisibility(inst, rep, 1) is not None:
            continue
        if geo.gram is not None:
            mins = _minimizers_exact(geo, pw, rep)
        else:
            mins = _minimizers_enclosure(geo, pw, rep)
        nonzero.append(mins[0])
    return _finish(source, w, nonzero, FAMILY_MINIMAL_NORM)


def build_rational_interval(source, w: int) -> DigitSet:
    """Balanced-interval digits for an integer base (degree 1 only)."""
    if w < 1:
        raise ValueError("window width must be at least 1")
    inst = lattice_of(source)
    if inst.n != 1:
        raise InstanceError("interval digits require an integer base")
    tau = inst.phi[0][0]
    m = abs(tau) ** w
    start = -(m // 2) + (1 if m % 2 == 0 else 0)
    nonzero = [
        (d,) for d in range(start, m // 2 + 1) if d % abs(tau) != 0 and d != 0
    ]
    return _finish(source, w, nonzero, FAMILY_INTERVAL)


def from_digits(source, w: int, points) -> DigitSet:
    """Validate caller-supplied digits: one representative per residue
    class outside the image of the base map, zero digit optional."""
    if w < 1:
        raise ValueError("window width must be at least 1")
    inst = lattice_of(source)
    zero = inst.zero()
    nonzero = []
    for p in points:
        pt = tuple(int(v) for v in p)
        if len(pt) != inst.n:
            raise MalformedDigitSetError(
                f"digit {pt} has wrong dimension (expected {inst.n})"
            )
        if pt != zero:
            nonzero.append(pt)
    return _finish(source, w, nonzero, FAMILY_CUSTOM)


def max_digit_norm_sq_upper(ds: DigitSet, bits: int = 64) -> Fraction:
    """Rational upper bound on the squared working norm of the digits;
    exact for instances with an exact Gram matrix."""
    geo = geometry(ds.source)
    best = Fraction(0)
    for d in ds.nonzero_digits:
        hi = geo.norm_sq_interval(d, bits).hi
        if hi > best:
            best = hi
    return best


@dataclass(frozen=True)
class NormContext:
    """Packing radius, covering radius and inverse contraction factor of
    an instance, with exactness flags for the rational bounds."""

    r_sq: Fraction
    r_exact: bool
    R_sq: Fraction
    R_exact: bool
    u: CReal


@lru_cache(maxsize=None)
def norm_context(source) -> NormContext:
    geo = geometry(source)
    if geo.gram is not None:
        r_sq = quadform.shortest_nonzero_norm_sq(geo.gram) / 4
        exact_R = quadform.covering_radius_sq_exact(geo.gram)
        if exact_R is not None:
            return NormContext(r_sq, True, exact_R, True, geo.u)
        return NormContext(
            r_sq, True, quadform.covering_radius_sq_upper(geo.gram), False, geo.u
        )
    nf = geo.nf
    assert nf is not None
    bits = 64
    while True:
        giv = numberfield.gram_enclosure(nf, bits)
        n = nf.degree
        # conjugate symmetry makes the enclosure entrywise symmetric
        mid = quadform.as_gram(
            [[(giv[i][k].lo + giv[i][k].hi) / 2 for k in range(n)] for i in range(n)]
        )
        eps = max(e.width() for row in giv for e in row) / 2
        if quadform.ldl(mid) is None:
            bits *= 2
            continue
        lam_lo = quadform.min_eigenvalue_real(mid).interval(64).lo
        if lam_lo <= 0 or eps * n / lam_lo > Fraction(1, 2):
            bits *= 2
            continue
        kappa = eps * n / lam_lo
        c = min(giv[i][i].hi for i in range(n))
        cands = [
            x
            for x in quadform.enumerate_ball(mid, c / (1 - kappa))
            if any(v != 0 for v in x)
        ]
        r_lo = min(geo.norm_sq_interval(x, bits).lo for x in cands)
        if r_lo <= 0:
            bits *= 2
            continue
        total = Fraction(0)
        for i in range(n):
            total += sqrt_upper(giv[i][i].hi, 64)
        return NormContext(r_lo / 4, False, total * total / 4, False, geo.u)


def w0_bound(source) -> int:
    """Least window width at which one inverse step contracts the norm
    below half: the threshold beyond which minimal-norm digit systems
    always terminate."""
    geo = geometry(source)
    u = geo.u
    half = CReal.from_rational(Fraction(1, 2))
    cap = geo.precision_cap_bits
    w = 1
    upow = u
    while True:
        if upow.compare(half, cap) < 0:
            return w
        w += 1
        upow = upow * u
        if w > 10_000:
            raise PrecisionCapError("window bound search did not converge")


def tiling_w_bound(source) -> int:
    """Least window width with u^w below r / (r + R): the contraction
    regime where every digit set drawn from the covering argument works."""
    geo = geometry(source)
    ctx = norm_context(source)
    ratio = (
        CReal.from_rational(ctx.R_sq) / CReal.from_rational(ctx.r_sq)
    ).sqrt()
    rhs = CReal.from_rational(Fraction(1)) / (CReal.from_rational(Fraction(1)) + ratio)
    cap = geo.precision_cap_bits
    u = geo.u
    w = 1
    upow = u
    while True:
        if upow.compare(rhs, cap) < 0:
            return w
        w += 1
        upow = upow * u
        if w > 10_000:
            raise PrecisionCapError("window bound search did not converge")
