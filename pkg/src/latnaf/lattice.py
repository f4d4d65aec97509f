"""Integer lattices with an injective endomorphism.

The lattice is always Z^n in coordinates; the endomorphism is a square
integer matrix ``phi`` with nonzero determinant. Everything is exact:
residue systems come from a Smith normal form and the expanding test is
a rational root-locus test on the characteristic polynomial, so there is
no floating point anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import intmat
from .errors import BallSizeError
from .exactreal import sqrt_upper

Point = tuple[int, ...]

_RESIDUE_CAP = 2_000_000


@dataclass(frozen=True)
class LatticeInstance:
    """Z^n together with the endomorphism matrix and its determinant."""

    n: int
    phi: intmat.Matrix
    det: int

    def __post_init__(self):
        if self.n != len(self.phi):
            raise ValueError("dimension does not match matrix size")
        if self.det == 0:
            raise ValueError("endomorphism must be injective (nonzero determinant)")
        if self.det != intmat.determinant(self.phi):
            raise ValueError("stored determinant disagrees with the matrix")

    @classmethod
    def from_matrix(cls, rows) -> "LatticeInstance":
        phi = intmat.mat_from_rows(rows)
        return cls(n=len(phi), phi=phi, det=intmat.determinant(phi))

    def zero(self) -> Point:
        return (0,) * self.n

    def check_point(self, p) -> Point:
        p = tuple(int(v) for v in p)
        if len(p) != self.n:
            raise ValueError(f"point has length {len(p)}, expected {self.n}")
        return p


@dataclass(frozen=True)
class SpectralInfo:
    """Cheap rational bounds on the spectrum, mostly informational."""

    char_poly: tuple[int, ...]
    min_eig_abs_lower: Fraction
    max_inv_norm_upper: Fraction


def apply_phi(inst: LatticeInstance, p, k: int = 1) -> Point:
    """phi^k applied to p, exactly."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = inst.check_point(p)
    for _ in range(k):
        out = intmat.mat_vec(inst.phi, out)
    return out


@lru_cache(maxsize=None)
def _adjugate_det(inst: LatticeInstance) -> tuple[intmat.Matrix, int]:
    return intmat.adjugate(inst.phi), inst.det


def solve_divisibility(inst: LatticeInstance, p, k: int = 1) -> Point | None:
    """The unique q with phi^k(q) = p, or None when p is not divisible.

    Works one factor of phi at a time: if p is in the image of phi^k then
    every intermediate preimage is integral, so stepping never loses
    solutions.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    cur = inst.check_point(p)
    adj, det = _adjugate_det(inst)
    for _ in range(k):
        nxt = intmat.mat_vec(adj, cur)
        if any(v % det for v in nxt):
            return None
        cur = tuple(v // det for v in nxt)
    return cur


@lru_cache(maxsize=None)
def residue_structure(inst: LatticeInstance, k: int):
    """Smith normal form data for Z^n modulo phi^k(Z^n).

    Returns (u, diag, u_inv) with u unimodular and diag the invariant
    factors; the class key of a point p is (u @ p) mod diag, and the
    canonical representative of key e is u_inv @ e.
    """
    if k < 1:
        raise ValueError("k must be positive")
    a = inst.phi
    for _ in range(k - 1):
        a = intmat.mat_mul(a, inst.phi)
    u, diag, _v = intmat.smith_normal_form(a)
    return u, diag, intmat.unimodular_inverse(u)


def residue_key(inst: LatticeInstance, k: int, p) -> tuple[int, ...]:
    """Canonical key of the class of p modulo phi^k(Z^n)."""
    u, diag, _ = residue_structure(inst, k)
    up = intmat.mat_vec(u, inst.check_point(p))
    return tuple(x % d for x, d in zip(up, diag))


def residue_system(inst: LatticeInstance, k: int) -> tuple[Point, ...]:
    """One representative per class of Z^n modulo phi^k(Z^n), in a
    deterministic order (mixed-radix over the invariant factor keys)."""
    u, diag, u_inv = residue_structure(inst, k)
    count = 1
    for d in diag:
        count *= d
    if count > _RESIDUE_CAP:
        raise BallSizeError(
            f"residue system has {count} classes, above the cap", _RESIDUE_CAP
        )
    reps = []
    key = [0] * inst.n
    while True:
        reps.append(intmat.mat_vec(u_inv, tuple(key)))
        i = inst.n - 1
        while i >= 0:
            key[i] += 1
            if key[i] < diag[i]:
                break
            key[i] = 0
            i -= 1
        if i < 0:
            return tuple(reps)


@lru_cache(maxsize=None)
def char_poly(inst: LatticeInstance) -> tuple[int, ...]:
    """det(xI - phi), ascending coefficients, monic."""
    return intmat.char_poly(inst.phi)


@lru_cache(maxsize=None)
def is_expanding(inst: LatticeInstance) -> bool:
    """True iff every eigenvalue of phi has modulus strictly above 1.

    Equivalent to all roots of the reversed characteristic polynomial
    lying strictly inside the unit circle, which the exact Schur-Cohn
    reduction decides; eigenvalues on the circle report False.
    """
    f = char_poly(inst)
    if f[0] == 0:
        return False
    return intmat.all_roots_in_open_unit_disk(f[::-1])


def spectral_info(inst: LatticeInstance) -> SpectralInfo:
    f = char_poly(inst)
    if f[0] == 0:
        min_lower = Fraction(0)
    else:
        # Cauchy bound on the reciprocal roots
        c = Fraction(1) + max(Fraction(abs(a), abs(f[0])) for a in f[1:])
        min_lower = 1 / c
    adj, det = _adjugate_det(inst)
    frob_sq = Fraction(sum(v * v for row in adj for v in row), det * det)
    return SpectralInfo(
        char_poly=f,
        min_eig_abs_lower=min_lower,
        max_inv_norm_upper=sqrt_upper(frob_sq, 32),
    )
