"""Hamming-weight optimality of window expansions.

Two independent instruments:

* a certificate: four norm-geometry hypotheses (symmetric cell, cell
  inside its image under the base map, contraction below the cell
  ratio, and the window inequality u^w < (r/R - u) / 2) that together
  imply every window expansion has minimum weight among all digit words
  of the same value;
* an oracle: exact shortest-path search over lattice states where a
  step strips any congruent digit (not only the canonical one), edges
  cost 1 for a nonzero digit and 0 otherwise. The oracle realizes the
  true minimum weight over all words and owes nothing to the window
  recoding, so agreement is evidence, not circularity.

Both stay inside the ball that one division step provably cannot leave,
which makes the searches finite and complete.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import lattice, numberfield, quadform
from .digitset import DigitSet, Geometry, geometry, norm_context
from .errors import InstanceError, LatnafError, NormCapError
from .exactreal import CReal, Interval, QuadExt
from .expansion import CycleReport, expand
from .nadscheck import _digits_are_minimal, invariant_ball_bound

Point = lattice.Point


@dataclass(frozen=True)
class OptimalityCertificate:
    """Outcome of the hypothesis checks, with the enclosures they used."""

    cell_symmetric: bool
    cell_within_base_image: bool
    contraction_below_cell_ratio: bool
    window_inequality: bool
    w: int
    r_sq: Fraction
    R_sq: Fraction
    u_enclosure: Interval

    @property
    def certified(self) -> bool:
        return (
            self.cell_symmetric
            and self.cell_within_base_image
            and self.contraction_below_cell_ratio
            and self.window_inequality
        )

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "not_certified"


def check_hypotheses(ds: DigitSet) -> OptimalityCertificate:
    """Evaluate the sufficient conditions for weight optimality of the
    minimal-norm digit system.

    The cell is the Voronoi cell of a norm, hence symmetric by
    construction. Cell-inside-image is checked through the sufficient
    inequality u * R <= r. The remaining two are strict certified
    comparisons; failure of any flag is not a refutation of optimality.
    """
    if not _digits_are_minimal(ds):
        raise InstanceError(
            "optimality hypotheses apply to minimal-norm digit sets only"
        )
    geo = geometry(ds.source)
    cap = geo.precision_cap_bits
    ctx = norm_context(ds.source)
    u = geo.u
    u_sq = u * u
    r_over_R = CReal.from_quadext(QuadExt.sqrt_rational(ctx.r_sq / ctx.R_sq))

    # u * R <= r, compared through squares to stay in exact territory
    within = (
        u_sq.compare(CReal.from_rational(ctx.r_sq / ctx.R_sq), cap) <= 0
    )
    below_ratio = u.compare(r_over_R, cap) < 0

    upow = u
    for _ in range(1, ds.w):
        upow = upow * u
    rhs = (r_over_R - u) * CReal.from_rational(Fraction(1, 2))
    window_ok = below_ratio and upow.compare(rhs, cap) < 0

    return OptimalityCertificate(
        cell_symmetric=True,
        cell_within_base_image=within,
        contraction_below_cell_ratio=below_ratio,
        window_inequality=window_ok,
        w=ds.w,
        r_sq=ctx.r_sq,
        R_sq=ctx.R_sq,
        u_enclosure=u.interval(64),
    )


def _congruent_digits(ds: DigitSet, p: Point) -> list[Point]:
    """Digits usable as the least significant position for p: zero when
    the base divides p, every digit congruent to p modulo the base image
    otherwise."""
    inst = ds.inst
    if lattice.solve_divisibility(inst, p, 1) is not None:
        return [inst.zero()]
    out = []
    for d in ds.nonzero_digits:
        shifted = tuple(a - b for a, b in zip(p, d))
        if lattice.solve_divisibility(inst, shifted, 1) is not None:
            out.append(d)
    return out


def default_norm_cap(ds: DigitSet) -> Fraction:
    """Twice the invariant-ball radius: minimum-weight paths provably
    stay inside the ball itself, so the default has slack."""
    return 2 * invariant_ball_bound(ds)


def min_weight_oracle(
    ds: DigitSet, p, norm_cap: Fraction | None = None
) -> int:
    """Minimum weight over ALL digit words with value p (not only window
    forms): zero-one shortest path on lattice states, where a state q
    steps to (q - digit)/base at cost one for a nonzero digit and zero
    for the zero digit.

    Raises NormCapError when the frontier provably exceeds the cap
    (cap too small), and LatnafError when no word exists at all.
    """
    inst = ds.inst
    start = inst.check_point(p)
    zero = inst.zero()
    if start == zero:
        return 0
    geo = geometry(ds.source)
    if norm_cap is None:
        norm_cap = default_norm_cap(ds)
    start_norm_hi = geo.norm_sq_interval(start).hi
    cap_sq = max(Fraction(norm_cap) ** 2, start_norm_hi)

    dist: dict[Point, int] = {start: 0}
    queue: deque[Point] = deque([start])
    while queue:
        cur = queue.popleft()
        base = dist[cur]
        if cur == zero:
            return base
        for d in _congruent_digits(ds, cur):
            shifted = tuple(a - b for a, b in zip(cur, d))
            nxt = lattice.solve_divisibility(inst, shifted, 1)
            assert nxt is not None
            cost = 0 if d == zero else 1
            if nxt in dist and dist[nxt] <= base + cost:
                continue
            if geo.norm_sq_interval(nxt).lo > cap_sq:
                raise NormCapError(
                    f"state {nxt} escapes the norm cap {norm_cap}", nxt
                )
            dist[nxt] = base + cost
            if cost == 0:
                queue.appendleft(nxt)
            else:
                queue.append(nxt)
    raise LatnafError(f"no digit word represents {start} within the cap")


def _ball_points_superset(geo: Geometry, bound_sq: Fraction):
    """Lattice points certainly covering the closed ball of squared norm
    bound_sq (a superset for enclosure instances)."""
    if geo.gram is not None:
        return quadform.enumerate_ball(geo.gram, bound_sq)
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
        return quadform.enumerate_ball(mid, bound_sq / (1 - kappa))


@lru_cache(maxsize=8)
def _distance_table(ds: DigitSet, bound: Fraction) -> dict:
    """Minimum word weight for every lattice point of norm <= bound, by
    one zero-one sweep outward from zero: the reverse of a division step
    maps s to (base * s + digit). Restricting states to the ball is
    complete because forward minimum paths never leave it."""
    geo = geometry(ds.source)
    inst = ds.inst
    zero = inst.zero()
    points = _ball_points_superset(geo, Fraction(bound) ** 2)
    inside = set(points)
    dist: dict[Point, int] = {zero: 0}
    queue: deque[Point] = deque([zero])
    digits = ds.digits
    while queue:
        cur = queue.popleft()
        base = dist[cur]
        phi_cur = lattice.apply_phi(inst, cur)
        for d in digits:
            pred = tuple(a + b for a, b in zip(phi_cur, d))
            if pred not in inside:
                continue
            cost = 0 if d == zero else 1
            if pred in dist and dist[pred] <= base + cost:
                continue
            dist[pred] = base + cost
            if cost == 0:
                queue.appendleft(pred)
            else:
                queue.append(pred)
    return dist


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of an empirical optimality sweep."""

    points_checked: int
    violations: tuple = field(default_factory=tuple)
    sampled: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_empirically(
    ds: DigitSet,
    radius,
    seed: int = 0,
    sample_threshold: int = 1_000_000,
) -> VerifyReport:
    """Compare the window expansion's weight against the oracle on every
    lattice point of norm up to radius (or a seeded sample when the ball
    is larger than sample_threshold). Zero violations is the certified
    expectation whenever check_hypotheses passes."""
    geo = geometry(ds.source)
    radius = Fraction(radius)
    if radius < 0:
        return VerifyReport(0)
    pts = _ball_points_superset(geo, radius * radius)
    if geo.gram is None:
        pts = [
            p for p in pts if geo.norm_sq_interval(p).hi <= radius * radius
        ]
    sampled = False
    if len(pts) > sample_threshold:
        rng = random.Random(seed)
        pts = sorted(rng.sample(pts, sample_threshold))
        sampled = True
    sweep_bound = max(radius, invariant_ball_bound(ds))
    table = _distance_table(ds, sweep_bound)
    violations = []
    for p in pts:
        result = expand(ds, p)
        if isinstance(result, CycleReport):
            raise LatnafError(
                f"digit system is not terminating at {p}; "
                "verify requires a decided instance"
            )
        if p not in table:
            raise LatnafError(f"oracle found no digit word for {p}")
        if result.weight != table[p]:
            violations.append((p, result.weight, table[p]))
    return VerifyReport(len(pts), tuple(violations), sampled)
