"""Redundancy classes and symmetry orbits of configurations.

Two seeds with the same mask are *redundant* (fractally equal) when they
generate the same matrix at every level.  For a mask that is symmetric
about one diagonal, with reflection ``r`` across that diagonal, this
happens exactly when

* every occupied diagonal cell carries a transform commuting with ``r``;
* every mirrored pair of cells ``p``, ``r(p)`` carries transforms ``a``,
  ``b`` with ``b`` in ``{r a, r a r}``;

and then each cell may independently swap ``s`` for ``s r``.  With the
default naming and the main diagonal this is: diagonal cells in
{R0, K1, R2, K3}; pairs matching R0/K1 with R0/K1, R2/K3 with R2/K3 and
R1/K0 with R3/K2; swaps R0<->K1, R1<->K0, R2<->K3, R3<->K2.

The symmetry group then acts on class representatives: move the seed,
then map it back to the representative of its class.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

import numpy as np

from .group import D4, SquareGroup, Transform
from .tile import Configuration, transform_config

__all__ = [
    "DEFAULT_DEPTH",
    "BurnsideError",
    "BurnsideCount",
    "levels",
    "fractal_equal",
    "symmetry_axis",
    "is_redundant_diag",
    "redundancy_partners",
    "canonical_rep",
    "act",
    "orbit_of",
    "count_orbits_burnside",
    "count_orbits_direct",
]

DEFAULT_DEPTH = 3


class BurnsideError(ArithmeticError):
    """Fixed-point total not divisible by the group order."""


def levels(c: Configuration, depth: int, *, group: SquareGroup = D4):
    """Yield ``M_0, M_1, ..., M_depth`` without recomputing earlier levels."""
    assignment = list(c.assignment.items())
    n = c.n
    current = c.mask
    yield current
    for _ in range(depth):
        size = current.shape[0]
        nxt = np.zeros((size * n, size * n), dtype=np.uint8)
        for (i, j), t in assignment:
            nxt[i * size:(i + 1) * size, j * size:(j + 1) * size] = group.apply(t, current)
        current = nxt
        yield current


def fractal_equal(c1: Configuration, c2: Configuration, depth: int = DEFAULT_DEPTH,
                  *, group: SquareGroup = D4) -> bool:
    """True iff both seeds give identical matrices at every level ``k <= depth``."""
    if c1.n != c2.n:
        raise ValueError(f"cannot compare a {c1.n}x{c1.n} seed with a {c2.n}x{c2.n} seed")
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if c1 == c2:
        return True
    for a, b in zip(levels(c1, depth, group=group), levels(c2, depth, group=group)):
        if not np.array_equal(a, b):
            return False
    return True


def symmetry_axis(mask, *, group: SquareGroup = D4) -> Transform | None:
    """Reflection across the diagonal the mask is symmetric about.

    The main diagonal wins when the mask is symmetric about both.
    """
    mask = np.asarray(mask)
    if np.array_equal(mask, mask.T):
        return group.main_reflection
    if np.array_equal(mask, mask[::-1, ::-1].T):
        return group.anti_reflection
    return None


def _axis_or_raise(c: Configuration, group: SquareGroup) -> Transform:
    r = symmetry_axis(c.mask, group=group)
    if r is None:
        raise ValueError(f"mask of {c} is not symmetric about a diagonal")
    return r


def _mirrored_cells(n: int, r: Transform, group: SquareGroup):
    """Split cells into those on the axis of ``r`` and mirrored pairs ``(p, r(p))``."""
    src = group.cell_source(r, n)
    on_axis = [p for p in range(n * n) if src[p] == p]
    pairs = [(p, int(src[p])) for p in range(n * n) if p < src[p]]
    return on_axis, pairs


def is_redundant_diag(c: Configuration, *, group: SquareGroup = D4) -> bool:
    """Closed-form redundancy test for a diagonally symmetric mask."""
    r = _axis_or_raise(c, group)
    table = group.table
    on_axis, pairs = _mirrored_cells(c.n, r, group)
    for p in on_axis:
        code = c.codes[p]
        if code and table[code - 1, r] != table[r, code - 1]:
            return False
    for p, q in pairs:
        if not c.codes[p]:
            continue
        a, b = c.codes[p] - 1, c.codes[q] - 1
        ra = table[r, a]
        if b != ra and b != table[ra, r]:
            return False
    return True


def redundancy_partners(c: Configuration, *, group: SquareGroup = D4) -> set[Configuration]:
    """All ``2**occupied`` seeds reached by swapping cells ``s -> s r``."""
    if not is_redundant_diag(c, group=group):
        raise ValueError(f"{c} is not redundant")
    r = symmetry_axis(c.mask, group=group)
    options = []
    for code in c.codes:
        if code:
            options.append((code, int(group.table[code - 1, r]) + 1))
        else:
            options.append((0,))
    return {Configuration(c.n, codes) for codes in product(*options)}


def canonical_rep(c: Configuration, *, group: SquareGroup = D4) -> Configuration:
    """Smallest-encoding member of the redundancy class of ``c``.

    Masks with no diagonal symmetry give singleton classes.
    """
    r = symmetry_axis(c.mask, group=group)
    if r is None or not is_redundant_diag(c, group=group):
        return c
    table = group.table
    # cells swap independently, so the lexicographic minimum is cellwise
    codes = tuple(min(v, int(table[v - 1, r]) + 1) if v else 0 for v in c.codes)
    return Configuration(c.n, codes)


def act(t: Transform | int, c: Configuration, *, group: SquareGroup = D4) -> Configuration:
    """Action of ``t`` on class representatives."""
    return canonical_rep(transform_config(t, c, group=group), group=group)


def orbit_of(c: Configuration, *, group: SquareGroup = D4) -> frozenset[Configuration]:
    return frozenset(act(t, c, group=group) for t in Transform)


@dataclass(frozen=True)
class BurnsideCount:
    orbits: int
    fixed: dict[Transform, int]

    @property
    def total_fixed(self) -> int:
        return sum(self.fixed.values())


def count_orbits_burnside(population: Iterable[Configuration], *,
                          group: SquareGroup = D4) -> BurnsideCount:
    """Orbit count as the average number of fixed points over the group."""
    fixed = {t: 0 for t in Transform}
    for x in population:
        for t in Transform:
            if act(t, x, group=group) == x:
                fixed[t] += 1
    total = sum(fixed.values())
    if total % 8:
        raise BurnsideError(
            f"fixed-point total {total} is not a multiple of 8: the action is inconsistent "
            f"({', '.join(f'{t.name}={v}' for t, v in fixed.items())})"
        )
    return BurnsideCount(total // 8, fixed)


def count_orbits_direct(population: Iterable[Configuration], *, group: SquareGroup = D4) -> int:
    """Orbit count by explicit partition of the population."""
    remaining = set(population)
    count = 0
    while remaining:
        x = remaining.pop()
        remaining -= orbit_of(x, group=group)
        count += 1
    return count
