"""Configurations and the recursive super-tile expansion.

A configuration is an ``n x n`` seed tile: each cell is either empty or
carries one of the eight transforms.  Expanding it ``k`` times yields a
square bit matrix of side ``n**(k+1)``.  At each step the block sitting at
occupied seed cell ``p`` is the previous level transformed by the
transform at ``p``; empty seed cells give all-zero blocks.

Cells are addressed 0-indexed, row-major.  The compact integer encoding
packs one 4-bit nibble per cell (0 empty, 1..8 for R0..K3) with cell
``(0, 0)`` in the most significant nibble, so integer order is the
lexicographic order of the row-major code sequence.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .group import D4, SquareGroup, Transform

__all__ = [
    "Configuration",
    "ConfigParseError",
    "SizeLimitError",
    "DEFAULT_MAX_SIDE",
    "max_side",
    "expand",
    "expand_labeled",
    "forget_labels",
    "transform_labeled",
    "transform_config",
    "parse_config",
    "format_config",
    "parse_quadruplet",
    "format_quadruplet",
    "motif_id",
    "from_motif",
]

DEFAULT_MAX_SIDE = 2**15
MAX_SIDE_ENV = "FRACTILING_MAX_SIDE"

EMPTY = -1  # label value of an empty cell in labeled patterns


class ConfigParseError(ValueError):
    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        self.row = row
        self.col = col
        where = ""
        if row is not None:
            where = f"row {row}" + (f", cell {col}" if col is not None else "") + ": "
        super().__init__(where + message)


class SizeLimitError(ValueError):
    """Requested pattern would exceed the configured side limit."""


def max_side() -> int:
    """Side limit for expansions, from ``FRACTILING_MAX_SIDE`` if set."""
    raw = os.environ.get(MAX_SIDE_ENV)
    if not raw:
        return DEFAULT_MAX_SIDE
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_SIDE_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{MAX_SIDE_ENV} must be positive, got {value}")
    return value


@dataclass(frozen=True, order=False)
class Configuration:
    """Seed tile: side ``n`` and row-major cell codes (0 empty, 1..8 = R0..K3)."""

    n: int
    codes: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"side must be >= 1, got {self.n}")
        if len(self.codes) != self.n * self.n:
            raise ValueError(f"expected {self.n * self.n} cells, got {len(self.codes)}")
        for c in self.codes:
            if not 0 <= c <= 8:
                raise ValueError(f"cell code out of range: {c}")

    @classmethod
    def from_cells(cls, rows: Iterable[Iterable[Transform | int | None]]) -> "Configuration":
        """Build from a nested list; ``None`` or ``0`` marks an empty cell."""
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("rows must form a square")
        codes = []
        for r in rows:
            for v in r:
                if v is None or (not isinstance(v, Transform) and v == 0):
                    codes.append(0)
                else:
                    codes.append(Transform(v).code)
        return cls(n, tuple(codes))

    @classmethod
    def from_assignment(cls, mask, assignment: Mapping[tuple[int, int], Transform]) -> "Configuration":
        mask = np.asarray(mask)
        n = mask.shape[0]
        occupied = {tuple(map(int, p)) for p in np.argwhere(mask)}
        if set(assignment) != occupied:
            raise ValueError("assignment must cover exactly the occupied cells of the mask")
        codes = [0] * (n * n)
        for (i, j), t in assignment.items():
            codes[i * n + j] = Transform(t).code
        return cls(n, tuple(codes))

    @classmethod
    def decode(cls, value: int, n: int) -> "Configuration":
        codes = []
        for k in range(n * n - 1, -1, -1):
            codes.append((value >> (4 * k)) & 0xF)
        if value >> (4 * n * n):
            raise ValueError(f"encoding {value:#x} too wide for n={n}")
        return cls(n, tuple(codes))

    def encode(self) -> int:
        value = 0
        for c in self.codes:
            value = (value << 4) | c
        return value

    @property
    def mask(self) -> np.ndarray:
        return (np.array(self.codes, dtype=np.uint8) > 0).astype(np.uint8).reshape(self.n, self.n)

    @property
    def occupied(self) -> int:
        return sum(1 for c in self.codes if c)

    @property
    def assignment(self) -> dict[tuple[int, int], Transform]:
        n = self.n
        return {divmod(k, n): Transform.from_code(c) for k, c in enumerate(self.codes) if c}

    def labels(self) -> np.ndarray:
        """Seed as an int8 array of transform indices, -1 where empty."""
        return (np.array(self.codes, dtype=np.int8) - 1).reshape(self.n, self.n)

    def __getitem__(self, cell: tuple[int, int]) -> Transform | None:
        i, j = cell
        c = self.codes[i * self.n + j]
        return Transform.from_code(c) if c else None

    def __str__(self) -> str:
        return format_config(self)


def _check_depth(n: int, depth: int, limit: int | None) -> None:
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    limit = max_side() if limit is None else limit
    side = n ** (depth + 1)
    if side > limit:
        raise SizeLimitError(
            f"pattern side {n}**{depth + 1} = {side} exceeds the limit of {limit} "
            f"(set {MAX_SIDE_ENV} to raise it)"
        )


def expand(c: Configuration, depth: int, *, group: SquareGroup = D4,
           limit: int | None = None) -> np.ndarray:
    """Return the bit matrix after ``depth`` expansion steps (depth 0 is the mask)."""
    _check_depth(c.n, depth, limit)
    n = c.n
    assignment = list(c.assignment.items())
    current = c.mask
    for _ in range(depth):
        size = current.shape[0]
        nxt = np.zeros((size * n, size * n), dtype=np.uint8)
        images: dict[Transform, np.ndarray] = {}
        for (i, j), t in assignment:
            if t not in images:
                images[t] = group.apply(t, current)
            nxt[i * size:(i + 1) * size, j * size:(j + 1) * size] = images[t]
        current = nxt
    return current


def transform_labeled(t: Transform | int, labels: np.ndarray, *, group: SquareGroup = D4) -> np.ndarray:
    """Move a labeled pattern by ``t`` and left-compose every label with ``t``."""
    moved = np.array(group.apply(t, labels))
    occ = moved >= 0
    moved[occ] = group.table[int(t)][moved[occ]]
    return moved


def expand_labeled(c: Configuration, depth: int, *, group: SquareGroup = D4,
                   limit: int | None = None) -> np.ndarray:
    """Labeled analogue of :func:`expand`.

    Returns an int8 array holding transform indices (``EMPTY`` = -1 for
    empty cells).  A label at depth ``k`` is the composition of the
    ``k + 1`` seed transforms met along the construction path, outermost
    first.
    """
    _check_depth(c.n, depth, limit)
    n = c.n
    assignment = list(c.assignment.items())
    current = c.labels()
    for _ in range(depth):
        size = current.shape[0]
        nxt = np.full((size * n, size * n), EMPTY, dtype=np.int8)
        images: dict[Transform, np.ndarray] = {}
        for (i, j), t in assignment:
            if t not in images:
                images[t] = transform_labeled(t, current, group=group)
            nxt[i * size:(i + 1) * size, j * size:(j + 1) * size] = images[t]
        current = nxt
    return current


def forget_labels(labels: np.ndarray) -> np.ndarray:
    return (np.asarray(labels) >= 0).astype(np.uint8)


def transform_config(t: Transform | int, c: Configuration, *, group: SquareGroup = D4) -> Configuration:
    """Seed whose expansions are the ``t``-images of the expansions of ``c``.

    The mask moves with ``t`` and each carried transform ``s`` becomes
    ``t s t^-1``.
    """
    src = group.cell_source(t, c.n)
    conj = group.conj_table[int(t)]
    codes = tuple(int(conj[c.codes[k] - 1]) + 1 if c.codes[k] else 0 for k in src)
    return Configuration(c.n, codes)


# -- text forms ---------------------------------------------------------------

_TOKENS = {t.name: t for t in Transform}
_TOKENS["Id"] = Transform.R0


def parse_config(text: str) -> Configuration:
    """Parse ``"0 R0 / R0 R0"``: rows split by ``/``, cells by whitespace.

    ``Id`` is accepted as an alias of R0.  Row and cell numbers in error
    messages are 1-based.
    """
    raw_rows = text.strip().split("/")
    rows = [r.split() for r in raw_rows]
    if not rows or all(not r for r in rows):
        raise ConfigParseError("empty configuration")
    parsed: list[list[Transform | None]] = []
    for ri, row in enumerate(rows, start=1):
        if not row:
            raise ConfigParseError("empty row", ri)
        out: list[Transform | None] = []
        for ci, tok in enumerate(row, start=1):
            if tok == "0":
                out.append(None)
            elif tok in _TOKENS:
                out.append(_TOKENS[tok])
            else:
                raise ConfigParseError(f"unknown token {tok!r}", ri, ci)
        parsed.append(out)
    width = len(parsed[0])
    for ri, row in enumerate(parsed, start=1):
        if len(row) != width:
            raise ConfigParseError(
                f"ragged rows: expected {width} cells, found {len(row)}", ri)
    if width != len(parsed):
        raise ConfigParseError(f"not square: {len(parsed)} rows of {width} cells")
    return Configuration.from_cells(parsed)


def format_config(c: Configuration) -> str:
    n = c.n
    cells = [Transform.from_code(v).name if v else "0" for v in c.codes]
    return " / ".join(" ".join(cells[i * n:(i + 1) * n]) for i in range(n))


def format_quadruplet(c: Configuration) -> str:
    """2x2 seed in the ``(a,b,c,d)`` notation, row-major."""
    if c.n != 2:
        raise ValueError("quadruplet notation needs a 2x2 configuration")
    return "(" + ",".join(Transform.from_code(v).name if v else "0" for v in c.codes) + ")"


def parse_quadruplet(text: str) -> Configuration:
    items = [s.strip() for s in text.strip().strip("()").split(",")]
    if len(items) != 4:
        raise ConfigParseError(f"quadruplet needs 4 entries, got {len(items)}")
    return parse_config(f"{items[0]} {items[1]} / {items[2]} {items[3]}")


_MOTIF = re.compile(r"^(?:motif)?([1-8])([1-8])([1-8])$")


def motif_id(c: Configuration) -> str:
    """``motif{b}{c}{d}`` for a 2x2 seed whose only empty cell is (0, 0).

    Digits are the cell codes, so 1..8 stand for R0, R1, R2, R3, K0, K1,
    K2, K3.
    """
    if c.n != 2 or c.codes[0] != 0 or 0 in c.codes[1:]:
        raise ValueError(f"motif ids need the form (0,b,c,d), got {format_config(c)}")
    return "motif" + "".join(str(v) for v in c.codes[1:])


def from_motif(ident: str | int) -> Configuration:
    m = _MOTIF.match(str(ident).strip())
    if not m:
        raise ConfigParseError(f"not a motif id: {ident!r}")
    return Configuration(2, (0,) + tuple(int(d) for d in m.groups()))
