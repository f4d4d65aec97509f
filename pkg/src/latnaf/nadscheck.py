"""Deciding whether a digit set expands every lattice point.

Two mechanisms, used in order:

* certificates: strict inequalities on the contraction factor u of the
  inverse base map. Either u^w < 1/2 with digits of minimal norm in
  their classes, or u^w < r / (r + R) (packing over packing-plus-covering
  radius), each implying termination for every point.
* exhaustive search: backwards division contracts every orbit into the
  ball of radius M = u / (1 - u) * (max digit norm), and that ball is
  forward invariant. Classifying the finitely many orbits inside it
  decides the property outright; a nonzero cycle is a counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lattice, numberfield, quadform
from .digitset import (
    DigitSet,
    FAMILY_INTERVAL,
    FAMILY_MINIMAL_NORM,
    Geometry,
    geometry,
    max_digit_norm_sq_upper,
    norm_context,
    _minimizers_exact,
)
from .errors import BallSizeError, PrecisionCapError
from .exactreal import CReal, sqrt_upper
from .expansion import CycleReport, step
from . import intmat

Point = lattice.Point

CERT_MINIMAL_NORM = "minimal-norm-contraction"
CERT_TILING = "tiling-ratio"

STATUS_CERTIFIED = "certified_by_bound"
STATUS_SEARCH = "verified_by_search"
STATUS_COUNTEREXAMPLE = "counterexample"

DEFAULT_BALL_CAP = 5_000_000


@dataclass(frozen=True)
class NadsVerdict:
    status: str
    bound_used: str | None = None
    witness: CycleReport | None = None
    search_radius: Fraction | None = None

    @property
    def holds(self) -> bool:
        return self.status != STATUS_COUNTEREXAMPLE


def _u_hi(geo: Geometry) -> Fraction:
    """Rational upper bound on the inverse contraction factor, strictly
    below 1 (the factor itself is, since the base is expanding)."""
    bits = 64
    while True:
        hi = geo.u.interval(bits).hi
        if hi < 1:
            return hi
        bits *= 2
        if bits > geo.precision_cap_bits:
            raise PrecisionCapError(
                "could not separate the contraction factor from 1"
            )


def invariant_ball_bound(ds: DigitSet) -> Fraction:
    """Rational M with: every orbit of the division map eventually enters
    and never leaves the ball of norm M. One division step maps norm b to
    at most u * (b + max digit norm), so the fixed point is
    u / (1 - u) * (max digit norm)."""
    geo = geometry(ds.source)
    u_hi = _u_hi(geo)
    md_hi = sqrt_upper(max_digit_norm_sq_upper(ds), 64)
    return u_hi * md_hi / (1 - u_hi)


def _digits_are_minimal(ds: DigitSet) -> bool:
    """Whether every digit minimizes the pulled-back norm in its class
    (the Voronoi-cell membership both certificates rest on)."""
    if ds.family == FAMILY_MINIMAL_NORM:
        return True
    geo = geometry(ds.source)
    if geo.gram is None:
        return False
    pw = intmat.mat_pow(ds.inst.phi, ds.w)
    for d in ds.nonzero_digits:
        if d not in _minimizers_exact(geo, pw, d):
            return False
    return True


def certify(ds: DigitSet) -> NadsVerdict | None:
    """Certificate-only check; None when no certificate applies (which
    says nothing about the property itself).

    Minimal-norm digits terminate once one window of inverse steps
    contracts below a half. The interval family is the tiling
    construction for the balanced interval, whose inradius and
    circumradius agree, so its certificate is the covering-ratio bound.
    """
    geo = geometry(ds.source)
    cap = geo.precision_cap_bits
    u = geo.u
    upow = u
    for _ in range(1, ds.w):
        upow = upow * u
    if ds.family == FAMILY_INTERVAL:
        # V is the balanced interval: r = R = half the cell width
        half = CReal.from_rational(Fraction(1, 2))
        if upow.compare(half, cap) < 0:
            return NadsVerdict(STATUS_CERTIFIED, bound_used=CERT_TILING)
        return None
    if not _digits_are_minimal(ds):
        return None
    half = CReal.from_rational(Fraction(1, 2))
    if upow.compare(half, cap) < 0:
        return NadsVerdict(STATUS_CERTIFIED, bound_used=CERT_MINIMAL_NORM)
    ctx = norm_context(ds.source)
    ratio = (CReal.from_rational(ctx.R_sq) / CReal.from_rational(ctx.r_sq)).sqrt()
    one = CReal.from_rational(Fraction(1))
    rhs = one / (one + ratio)
    if upow.compare(rhs, cap) < 0:
        return NadsVerdict(STATUS_CERTIFIED, bound_used=CERT_TILING)
    return None


def _ball_points(geo: Geometry, bound_sq: Fraction, cap: int):
    """Lattice points with squared working norm at most bound_sq; a
    certified superset is fine (extra starts are harmless)."""
    if geo.gram is not None:
        pts = quadform.enumerate_ball(geo.gram, bound_sq)
        if len(pts) > cap:
            raise BallSizeError(
                f"search ball holds {len(pts)} points (cap {cap})", cap
            )
        return pts
    nf = geo.nf
    bits = 64
    while True:
        giv = numberfield.gram_enclosure(nf, bits)
        n = nf.degree
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
        pts = quadform.enumerate_ball(mid, bound_sq / (1 - kappa))
        if len(pts) > cap:
            raise BallSizeError(
                f"search ball holds {len(pts)} points (cap {cap})", cap
            )
        return pts


def search(ds: DigitSet, ball_cap: int = DEFAULT_BALL_CAP) -> NadsVerdict:
    """Decide the property by orbit classification over the invariant
    ball. Deterministic: starting points in lexicographic order, first
    nonzero cycle reported, rotated to start at its smallest point."""
    m_hi = invariant_ball_bound(ds)
    geo = geometry(ds.source)
    zero = ds.inst.zero()
    starts = _ball_points(geo, m_hi * m_hi, ball_cap)
    status: dict[Point, bool] = {zero: True}
    for start in starts:
        if start in status:
            continue
        path: list[Point] = []
        index: dict[Point, int] = {}
        cur = start
        while True:
            if cur in status:
                good = status[cur]
                for p in path:
                    status[p] = good
                break
            if cur in index:
                cyc = tuple(path[index[cur]:])
                k = min(range(len(cyc)), key=lambda i: cyc[i])
                witness = CycleReport(start, cyc[k:] + cyc[:k])
                _validate_cycle(ds, witness)
                return NadsVerdict(
                    STATUS_COUNTEREXAMPLE,
                    witness=witness,
                    search_radius=m_hi,
                )
            index[cur] = len(path)
            path.append(cur)
            cur = step(ds, cur)
    return NadsVerdict(STATUS_SEARCH, search_radius=m_hi)


def _validate_cycle(ds: DigitSet, report: CycleReport) -> None:
    cyc = report.cycle
    assert cyc, "empty cycle"
    zero = ds.inst.zero()
    for i, p in enumerate(cyc):
        assert p != zero, "cycle through zero"
        assert step(ds, p) == cyc[(i + 1) % len(cyc)], "cycle does not close"


def decide(ds: DigitSet, ball_cap: int = DEFAULT_BALL_CAP) -> NadsVerdict:
    """Certificates first, exhaustive orbit search as the fallback."""
    verdict = certify(ds)
    if verdict is not None:
        return verdict
    return search(ds, ball_cap)
