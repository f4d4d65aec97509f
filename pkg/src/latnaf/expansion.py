"""Window expansions by backwards division.

Repeatedly strip a digit (the unique one congruent to the point modulo
the w-th power of the base, or zero when the point is divisible) and
apply the inverse base map. The digit words are least significant first.
A word produced this way automatically satisfies the window property:
after a nonzero digit the next w - 1 steps see a point divisible by the
base and emit zeros.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import lattice
from .digitset import DigitSet
from .errors import LatnafError, MalformedDigitSetError

Point = lattice.Point


@dataclass(frozen=True)
class Expansion:
    """A finite digit word for a point, least significant digit first."""

    point: Point
    word: tuple[Point, ...]
    w: int

    @property
    def weight(self) -> int:
        zero = tuple(0 for _ in self.point)
        return sum(1 for d in self.word if d != zero)


@dataclass(frozen=True)
class CycleReport:
    """A nonzero orbit cycle of the division map: proof that the digit
    system does not terminate. Rotated so the smallest point comes first."""

    point: Point
    cycle: tuple[Point, ...]


def digit_of(ds: DigitSet, p: Point) -> Point:
    """The digit congruent to p: zero when p is divisible by the base,
    the class representative otherwise."""
    inst = ds.inst
    if lattice.solve_divisibility(inst, p, 1) is not None:
        return inst.zero()
    key = lattice.residue_key(inst, ds.w, p)
    try:
        return ds.class_map[key]
    except KeyError:
        raise MalformedDigitSetError(
            f"no digit covers the residue class of {p}"
        ) from None


def step(ds: DigitSet, p: Point) -> Point:
    """One backwards-division step: subtract the digit, divide by the base."""
    d = digit_of(ds, p)
    shifted = tuple(a - b for a, b in zip(p, d))
    q = lattice.solve_divisibility(ds.inst, shifted, 1)
    if q is None:
        raise MalformedDigitSetError(
            f"digit {d} is not congruent to {p} modulo the base image"
        )
    return q


def default_step_limit(ds: DigitSet, p) -> int:
    """Generous cap, well above the geometric-decay bound on orbit entry
    into the invariant ball plus the cycle length the ball can hold."""
    size = sum(abs(int(v)).bit_length() for v in p)
    return 64 + ds.w * (8 + size)


def expand(ds: DigitSet, p, max_steps: int | None = None):
    """Full expansion of a point: an Expansion on success, a CycleReport
    when the orbit falls into a nonzero cycle (so no word exists).

    Orbits are eventually periodic, so cycle detection fires long before
    the step cap on well-formed instances; the cap is a hard abort
    against hostile configurations.
    """
    inst = ds.inst
    start = inst.check_point(p)
    if max_steps is None:
        max_steps = default_step_limit(ds, start)
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    zero = inst.zero()
    path: list[Point] = []
    seen: dict[Point, int] = {}
    cur = start
    digits: list[Point] = []
    quiet = 0
    while cur != zero:
        if cur in seen:
            cyc = tuple(path[seen[cur]:])
            k = min(range(len(cyc)), key=lambda i: cyc[i])
            return CycleReport(start, cyc[k:] + cyc[:k])
        if len(path) >= max_steps:
            raise LatnafError(f"expansion exceeded {max_steps} steps")
        seen[cur] = len(path)
        path.append(cur)
        d = digit_of(ds, cur)
        if d != zero:
            assert quiet == 0, "window property violated during division"
            quiet = ds.w - 1
        elif quiet:
            quiet -= 1
        digits.append(d)
        cur = step(ds, cur)
    return Expansion(start, tuple(digits), ds.w)


def value(inst: lattice.LatticeInstance, word) -> Point:
    """Evaluate a digit word (least significant first) back to a point."""
    acc = inst.zero()
    for d in reversed(tuple(word)):
        acc = tuple(
            a + b for a, b in zip(lattice.apply_phi(inst, acc), inst.check_point(d))
        )
    return acc


def is_window_form(w: int, word) -> bool:
    """True when every w consecutive positions hold at most one nonzero."""
    last = None
    for i, d in enumerate(word):
        if any(v != 0 for v in d):
            if last is not None and i - last < w:
                return False
            last = i
    return True


def is_wnaf(e: Expansion) -> bool:
    return is_window_form(e.w, e.word)


def word_weight(word) -> int:
    return sum(1 for d in word if any(v != 0 for v in d))
