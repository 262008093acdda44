"""The eight symmetries of the square and their action on square arrays.

Elements are named R0..R3 (counterclockwise quarter turns) and K0..K3,
where ``K_i = M o R_i``: rotate first, then apply the mirror ``M``.  With
the default convention ``M`` reverses the row order (an up-down flip),
which makes K1 the main-diagonal transpose and K3 the anti-diagonal
reflection.

Composition reads right to left: ``compose(a, b)`` applies ``b`` first.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np

__all__ = [
    "Transform",
    "ROTATIONS",
    "REFLECTIONS",
    "SquareGroup",
    "D4",
    "apply_transform",
    "compose",
    "inverse",
    "conjugate",
]


class Transform(IntEnum):
    R0 = 0
    R1 = 1
    R2 = 2
    R3 = 3
    K0 = 4
    K1 = 5
    K2 = 6
    K3 = 7

    @property
    def code(self) -> int:
        """Nonzero cell code used by the compact encoding (R0=1 .. K3=8)."""
        return int(self) + 1

    @classmethod
    def from_code(cls, code: int) -> "Transform":
        return cls(code - 1)

    @property
    def is_rotation(self) -> bool:
        return self < 4

    def __str__(self) -> str:
        return self.name


ROTATIONS = tuple(Transform(i) for i in range(4))
REFLECTIONS = tuple(Transform(i) for i in range(4, 8))

# any probe with distinct entries and no symmetry of its own will do
_PROBE = np.arange(9).reshape(3, 3)


class SquareGroup:
    """A concrete realization of the symmetry group of the square.

    ``mirror`` picks the reflection that K0 stands for: ``"rows"`` (reverse
    row order, the default) or ``"cols"`` (reverse column order).  The two
    choices differ only by a renaming of the reflections, which is what the
    relabeling checks rely on.
    """

    def __init__(self, mirror: str = "rows"):
        if mirror not in ("rows", "cols"):
            raise ValueError(f"mirror must be 'rows' or 'cols', not {mirror!r}")
        self.mirror = mirror
        self._flip = np.flipud if mirror == "rows" else np.fliplr

        images = [self.apply(t, _PROBE) for t in Transform]
        keys = [img.tobytes() for img in images]
        if len(set(keys)) != 8:
            raise AssertionError("transforms are not distinct on the probe")
        lookup = {key: Transform(i) for i, key in enumerate(keys)}

        table = np.empty((8, 8), dtype=np.int8)
        for a in Transform:
            for b in Transform:
                table[a, b] = lookup[self.apply(a, images[b]).tobytes()]
        self.table = table
        self.table.setflags(write=False)

        inv = np.empty(8, dtype=np.int8)
        for t in Transform:
            inv[t] = int(np.flatnonzero(table[t] == Transform.R0)[0])
        self.inverse_table = inv
        self.inverse_table.setflags(write=False)

        conj = np.empty((8, 8), dtype=np.int8)
        for t in Transform:
            for s in Transform:
                conj[t, s] = table[t, table[s, inv[t]]]
        self.conj_table = conj
        self.conj_table.setflags(write=False)
        self._sources: dict[tuple[int, int], np.ndarray] = {}

        # element acting as the transpose / anti-transpose
        self.main_reflection = lookup[_PROBE.T.tobytes()]
        self.anti_reflection = lookup[_PROBE[::-1, ::-1].T.tobytes()]

    def __repr__(self) -> str:
        return f"SquareGroup(mirror={self.mirror!r})"

    def apply(self, t: Transform | int, m) -> np.ndarray:
        """Return the image of the square array ``m`` under ``t``."""
        m = np.asarray(m)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
        t = int(t)
        out = np.rot90(m, t % 4)
        if t >= 4:
            out = self._flip(out)
        return out

    def compose(self, a: Transform | int, b: Transform | int) -> Transform:
        return Transform(int(self.table[a, b]))

    def inverse(self, t: Transform | int) -> Transform:
        return Transform(int(self.inverse_table[t]))

    def conjugate(self, t: Transform | int, s: Transform | int) -> Transform:
        """``t o s o t^-1``: the element ``s`` seen through the change of frame ``t``."""
        return self.compose(t, self.compose(s, self.inverse(t)))

    def cell_source(self, t: Transform | int, n: int) -> np.ndarray:
        """Flat index map ``src`` with ``apply(t, m).flat[q] == m.flat[src[q]]``."""
        key = (int(t), n)
        src = self._sources.get(key)
        if src is None:
            src = self.apply(t, np.arange(n * n).reshape(n, n)).ravel().copy()
            src.setflags(write=False)
            self._sources[key] = src
        return src

    def stabilizer(self, m) -> tuple[Transform, ...]:
        """Elements leaving the array ``m`` unchanged."""
        m = np.asarray(m)
        return tuple(t for t in Transform if np.array_equal(self.apply(t, m), m))


D4 = SquareGroup()


def apply_transform(t: Transform | int, m) -> np.ndarray:
    return D4.apply(t, m)


def compose(t1: Transform | int, t2: Transform | int) -> Transform:
    return D4.compose(t1, t2)


def inverse(t: Transform | int) -> Transform:
    return D4.inverse(t)


def conjugate(t: Transform | int, s: Transform | int) -> Transform:
    return D4.conjugate(t, s)
