"""Exact counts of distinct fractal tilings.

* :func:`census_2x2` enumerates every 2x2 seed with one empty cell,
  removes redundancy and counts symmetry orbits two ways.
* :func:`closed_form_3x3` evaluates the closed-form ledger for 3x3 seeds
  whose mask is symmetric about exactly one diagonal.
* :func:`closed_form_symmetric` derives the same ledger for any side from
  the cell orbits of the diagonal reflections, and
  :func:`closed_form_general` evaluates the naive ``(d, u)`` generalization.
* :func:`classify_masks` tags every zero/one mask by its diagonal symmetry.

The streamed 3x3 verifier lives in :mod:`fractiling.bruteforce`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product
from math import comb

import numpy as np

from .equivalence import (act, canonical_rep, count_orbits_burnside,
                          count_orbits_direct, orbit_of)
from .group import D4, SquareGroup, Transform
from .tile import Configuration, motif_id

__all__ = [
    "CensusReport",
    "CensusConsistencyError",
    "parse_report",
    "EXPECTED_2X2",
    "EXPECTED_3X3",
    "one_zero_configs_2x2",
    "census_2x2",
    "list_motifs_2x2",
    "closed_form_3x3",
    "closed_form_general",
    "closed_form_symmetric",
    "ledger_report",
    "MaskClassification",
    "classify_masks",
    "mask_from_index",
    "binomial_total",
]

FIXED_KEYS = tuple(f"fixed.{t.name}" for t in Transform)

EXPECTED_2X2 = {
    "raw": 2048,
    "dedup": 1824,
    "fixed.R0": 1824, "fixed.R1": 0, "fixed.R2": 0, "fixed.R3": 0,
    "fixed.K0": 0, "fixed.K1": 16, "fixed.K2": 0, "fixed.K3": 16,
    "orbits": 232,
    "orbits_direct": 232,
    "redundancy_classes": 32,
}

EXPECTED_3X3 = {
    "ni": 200201625,
    "ds12": 155788425,
    "ds1": 44413200,
    "ds2": 44413200,
    "ds": 88826400,
    "dss1": 242760,
    "n2": 2100,
    "dss": 485520,
    "dsr": 88345080,
    "orbits": 11043660,
}


class CensusConsistencyError(AssertionError):
    """An internal cross-check of a ledger failed."""


@dataclass
class CensusReport:
    mode: str
    n: int
    raw: int | None = None
    dedup: int | None = None
    fixed: dict[str, int] | None = None
    orbits: int | None = None
    elapsed_ms: int = 0
    workers: int = 1
    extra: dict[str, int] = field(default_factory=dict)
    expected: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def counters(self) -> dict[str, int]:
        out: dict[str, int] = {}
        if self.raw is not None:
            out["raw"] = self.raw
        if self.dedup is not None:
            out["dedup"] = self.dedup
        if self.fixed is not None:
            for t in Transform:
                out[f"fixed.{t.name}"] = self.fixed[t.name]
        if self.orbits is not None:
            out["orbits"] = self.orbits
        out.update(self.extra)
        return out

    def mismatches(self) -> list[tuple[str, int, int | None]]:
        """``(counter, expected, computed)`` for every disagreeing counter."""
        got = self.counters()
        return [(k, v, got.get(k)) for k, v in self.expected.items() if got.get(k) != v]

    @property
    def ok(self) -> bool:
        return not self.mismatches()

    def to_text(self) -> str:
        lines = [f"mode: {self.mode}", f"n: {self.n}"]
        for key, value in self.counters().items():
            if key in self.extra:
                continue
            lines.append(f"{key}: {value}")
        lines.append(f"elapsed_ms: {self.elapsed_ms}")
        lines.append(f"workers: {self.workers}")
        for key, value in self.extra.items():
            lines.append(f"extra.{key}: {value}")
        for key, want, got in self.mismatches():
            lines.append(f"mismatch.{key}: expected {want}, computed {got}")
        lines.append(f"status: {'ok' if self.ok else 'mismatch'}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict[str, object]:
    """Read a report back into a flat dict; integer values become ints.

    Repeated ``note`` lines are collected into a list.
    """
    out: dict[str, object] = {}
    notes: list[str] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        key, sep, value = line.partition(": ")
        if not sep:
            raise ValueError(f"malformed report line: {line!r}")
        if key == "note":
            notes.append(value)
            continue
        try:
            out[key] = int(value)
        except ValueError:
            out[key] = value
    if notes:
        out["note"] = notes
    return out


def _fixed_by_name(fixed) -> dict[str, int]:
    return {Transform(t).name: int(v) for t, v in fixed.items()}


# -- 2x2 ----------------------------------------------------------------------

def one_zero_configs_2x2():
    """All 2048 seeds ``(a,b,c,d)`` with exactly one empty cell."""
    for zero in range(4):
        for labels in product(range(1, 9), repeat=3):
            codes = list(labels)
            codes.insert(zero, 0)
            yield Configuration(2, tuple(codes))


def census_2x2(*, group: SquareGroup = D4) -> CensusReport:
    start = time.perf_counter()
    raw = list(one_zero_configs_2x2())
    classes: dict[Configuration, int] = {}
    for c in raw:
        rep = canonical_rep(c, group=group)
        classes[rep] = classes.get(rep, 0) + 1
    reps = sorted(classes, key=Configuration.encode)
    burnside = count_orbits_burnside(reps, group=group)
    direct = count_orbits_direct(reps, group=group)

    extra = {
        "orbits_direct": direct,
        "redundancy_classes": sum(1 for size in classes.values() if size > 1),
        "redundant_members": sum(size for size in classes.values() if size > 1),
    }
    # where the empty cell sits for the seeds fixed by each reflection
    for t in Transform:
        if t.is_rotation or not burnside.fixed[t]:
            continue
        for zero in range(4):
            count = sum(1 for x in reps if x.codes[zero] == 0
                        and act(t, x, group=group) == x)
            i, j = divmod(zero, 2)
            extra[f"fixed_{t.name}_zero_at_{i + 1}{j + 1}"] = count

    return CensusReport(
        mode="exhaustive",
        n=2,
        raw=len(raw),
        dedup=len(reps),
        fixed=_fixed_by_name(burnside.fixed),
        orbits=burnside.orbits,
        elapsed_ms=round((time.perf_counter() - start) * 1000),
        workers=1,
        extra=extra,
        expected=dict(EXPECTED_2X2),
        notes=[f"group mirror convention: {group.mirror}"],
    )


def list_motifs_2x2(*, group: SquareGroup = D4) -> list[Configuration]:
    """One seed per orbit, empty cell at (1,1), ordered by motif id.

    Within an orbit the member with the smallest encoding is chosen.
    """
    reps = {canonical_rep(c, group=group) for c in one_zero_configs_2x2()}
    motifs = []
    while reps:
        x = min(reps, key=Configuration.encode)
        orbit = orbit_of(x, group=group)
        reps -= orbit
        candidates = [y for y in orbit if y.codes[0] == 0]
        motifs.append(min(candidates, key=Configuration.encode))
    return sorted(motifs, key=motif_id)


# -- closed forms -------------------------------------------------------------

def _geometric(base: int, terms: int) -> int:
    return sum(base**k for k in range(terms))


def _finish_ledger(ledger: dict[str, int]) -> dict[str, int]:
    ledger["ds2"] = ledger["ds1"]
    ledger["ds"] = 2 * ledger["ds1"]
    ledger["dss"] = 2 * ledger["dss1"]
    ledger["dsr"] = ledger["ds"] - ledger["dss"] + 2 * ledger["n2"]
    total = ledger["dsr"] + 2 * ledger["n2"]
    if total % 8:
        raise CensusConsistencyError(f"Burnside total {total} is not a multiple of 8")
    ledger["orbits"] = total // 8
    return ledger


def closed_form_general(d: int, u: int) -> dict[str, int]:
    """Closed-form ledger with ``d`` diagonal cells and ``u`` cells above it.

    Every sum over zero patterns is taken as if each (diagonal, pair)
    occupancy count had exactly one doubly symmetric mask, which is true
    for 3x3 seeds.
    """
    if d < 1 or u < 0:
        raise ValueError(f"need d >= 1 and u >= 0, got d={d}, u={u}")
    ledger = {
        "ni": 9**d * 65**u,
        "ds12": _geometric(8, d + 1) * _geometric(64, u + 1),
        "dss1": 5**d * 17**u - _geometric(4, d + 1) * _geometric(16, u + 1),
        "n2": 3**d * 5**u - _geometric(2, d + 1) * _geometric(4, u + 1),
    }
    ledger["ds1"] = ledger["ni"] - ledger["ds12"]
    return _finish_ledger(ledger)


def _klein_orbits(n: int):
    """Cell orbits under the two diagonal reflections, as ``(on_main, size)``."""
    seen = set()
    out = []
    for i in range(n):
        for j in range(n):
            if (i, j) in seen:
                continue
            orbit = {(i, j), (j, i), (n - 1 - j, n - 1 - i), (n - 1 - i, n - 1 - j)}
            seen |= orbit
            out.append(orbit)
    return out


def closed_form_symmetric(n: int) -> dict[str, int]:
    """Ledger for ``n x n`` seeds with a mask symmetric about exactly one diagonal.

    Each count is a product over cell orbits.  Per cell orbit the factor is
    ``1 + w`` (orbit empty, or occupied with weight ``w``) where ``w`` is the
    number of admissible assignments: all of them for raw counts, only the
    redundancy-compatible ones for redundant counts, and those divided by
    the class size for class counts.  Orbits of the main reflection are
    diagonal cells or mirrored pairs; orbits of both reflections together
    are unions of one or two of those.
    """
    if n < 1:
        raise ValueError(f"side must be >= 1, got {n}")
    # weights per main-reflection orbit: (diagonal cell, mirrored pair)
    weights = {"raw": (8, 64), "dss": (4, 16), "n2": (2, 4)}

    def product_over(orbits, kind):
        diag_w, pair_w = weights[kind]
        total = 1
        for orbit in orbits:
            on_diag = sum(1 for i, j in orbit if i == j)
            pairs = (len(orbit) - on_diag) // 2
            total *= 1 + diag_w**on_diag * pair_w**pairs
        return total

    main_orbits = []
    for i in range(n):
        for j in range(i, n):
            main_orbits.append({(i, j), (j, i)})
    klein = _klein_orbits(n)
    ledger = {
        "ni": product_over(main_orbits, "raw"),
        "ds12": product_over(klein, "raw"),
        "dss1": product_over(main_orbits, "dss") - product_over(klein, "dss"),
        "n2": product_over(main_orbits, "n2") - product_over(klein, "n2"),
    }
    ledger["ds1"] = ledger["ni"] - ledger["ds12"]
    return _finish_ledger(ledger)


def ledger_report(ledger: dict[str, int], n: int, *, mode: str = "closed-form",
                  elapsed_ms: int = 0) -> CensusReport:
    fixed = {t.name: 0 for t in Transform}
    fixed["R0"] = ledger["dsr"]
    fixed["K1"] = ledger["n2"]
    fixed["K3"] = ledger["n2"]
    extra = {k: v for k, v in ledger.items() if k != "orbits"}
    return CensusReport(mode=mode, n=n, raw=ledger["ds"], dedup=ledger["dsr"], fixed=fixed,
                        orbits=ledger["orbits"], elapsed_ms=elapsed_ms, extra=extra)


def closed_form_3x3() -> CensusReport:
    """The 3x3 ledger, each term checked two ways with exact integers."""
    start = time.perf_counter()
    ledger = closed_form_general(3, 3)

    # term-by-term double sums over (occupied diagonal cells, occupied pairs)
    ds1_sum = dss1_sum = n2_sum = 0
    for k in range(4):
        for l in range(4):
            masks = comb(3, k) * comb(3, l) - 1  # minus the doubly symmetric one
            ds1_sum += masks * 8**(k + 2 * l)
            dss1_sum += masks * 4**k * 8**l * 2**l
            n2_sum += masks * (4**k * 8**l * 2**l) // 2**(k + 2 * l)
    checks = {
        "ni = ds1 + ds12": ledger["ni"] == ledger["ds1"] + ledger["ds12"],
        "ds1 double sum": ds1_sum == ledger["ds1"],
        "dss1 double sum": dss1_sum == ledger["dss1"],
        "n2 double sum": n2_sum == ledger["n2"],
        "orbit-structure ledger": closed_form_symmetric(3) == ledger,
        "burnside quotient": (ledger["dsr"] + 2 * ledger["n2"]) == 8 * ledger["orbits"],
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise CensusConsistencyError(f"closed-form cross-checks failed: {', '.join(failed)}")
    report = ledger_report(ledger, 3, elapsed_ms=round((time.perf_counter() - start) * 1000))
    report.expected = {**EXPECTED_3X3, "raw": EXPECTED_3X3["ds"], "dedup": EXPECTED_3X3["dsr"],
                       "fixed.K1": EXPECTED_3X3["n2"], "fixed.K3": EXPECTED_3X3["n2"]}
    return report


def binomial_total(cells: int = 9, choices: int = 8) -> int:
    """``sum_k C(cells, k) * choices**k``: seeds of any occupancy."""
    return sum(comb(cells, k) * choices**k for k in range(cells + 1))


# -- masks ----------------------------------------------------------------------

def mask_from_index(index: int, n: int) -> np.ndarray:
    """Mask whose row-major cells read as the bits of ``index``, first cell highest."""
    bits = [(index >> (n * n - 1 - k)) & 1 for k in range(n * n)]
    return np.array(bits, dtype=np.uint8).reshape(n, n)


def _mask_index(mask: np.ndarray) -> int:
    value = 0
    for b in mask.ravel():
        value = (value << 1) | int(b)
    return value


@dataclass
class MaskClassification:
    n: int
    tags: list[str]  # indexed by mask index: DS12, DS1, DS2 or neither
    counts: dict[str, int]
    main_symmetric: int
    anti_symmetric: int
    rotation_classes: int
    group_classes: int
    notes: list[str] = field(default_factory=list)


def classify_masks(n: int, *, group: SquareGroup = D4) -> MaskClassification:
    if n < 1:
        raise ValueError(f"side must be >= 1, got {n}")
    total = 2 ** (n * n)
    tags = []
    counts = {"DS12": 0, "DS1": 0, "DS2": 0, "neither": 0}
    rot_seen: set[int] = set()
    grp_seen: set[int] = set()
    rot_classes = grp_classes = 0
    main_sym = anti_sym = 0
    for index in range(total):
        mask = mask_from_index(index, n)
        main = np.array_equal(mask, mask.T)
        anti = np.array_equal(mask, mask[::-1, ::-1].T)
        main_sym += main
        anti_sym += anti
        tag = "DS12" if main and anti else "DS1" if main else "DS2" if anti else "neither"
        tags.append(tag)
        counts[tag] += 1
        if index not in grp_seen:
            grp_classes += 1
            grp_seen.update(_mask_index(group.apply(t, mask)) for t in Transform)
        if index not in rot_seen:
            rot_classes += 1
            rot_seen.update(_mask_index(np.rot90(mask, k)) for k in range(4))
    notes = []
    if n == 2:
        notes.append("rotation classes: empty, full, one zero, three zeros, two adjacent zeros "
                     "and two diagonal zeros (the last is easy to overlook)")
    return MaskClassification(n, tags, counts, main_sym, anti_sym, rot_classes, grp_classes, notes)
