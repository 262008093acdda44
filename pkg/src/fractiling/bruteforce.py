"""Streamed exhaustive census of diagonally symmetric seeds.

The population is every ``n x n`` seed whose mask is symmetric about
exactly one diagonal, with every assignment of transforms to occupied
cells (88 826 400 seeds for ``n = 3``).  It is cut into work units of at
most ``CHUNK`` consecutive assignments of one mask; each unit decodes its
assignments into one label column per occupied cell and tallies, with numpy:

* redundant seeds and the redundancy classes they form;
* seeds kept after redundancy elimination (class minimum by encoding);
* for each of the 8 transforms, kept seeds that map back to themselves
  under "move, then take the class minimum".

Units share nothing and tallies add, so the result does not depend on the
worker count or scheduling.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .census import CensusReport, closed_form_symmetric, mask_from_index
from .group import SquareGroup, Transform

__all__ = ["SCOPES", "CHUNK", "ds_masks", "work_units", "tally_unit", "brute_force",
           "brute_force_3x3", "default_workers"]

SCOPES = ("masks-only", "redundancy-only", "fixed-points", "full")
CHUNK = 8**6

# tally layout
RAW, DSS1, DSS2, N2_1, N2_2, DSR = range(6)
FIXED = 6  # followed by 8 per-transform slots
WIDTH = FIXED + 8


def default_workers() -> int:
    return os.cpu_count() or 1


@lru_cache(maxsize=None)
def _group(mirror: str) -> SquareGroup:
    return SquareGroup(mirror)


@dataclass(frozen=True)
class _MaskInfo:
    index: int
    family: int  # 1: main diagonal only, 2: anti-diagonal only
    occupied: tuple[int, ...]
    axis: int
    on_axis: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]


@lru_cache(maxsize=None)
def ds_masks(n: int, mirror: str = "rows") -> tuple[_MaskInfo, ...]:
    """Masks symmetric about exactly one diagonal, with their mirror structure."""
    group = _group(mirror)
    out = []
    for index in range(2 ** (n * n)):
        mask = mask_from_index(index, n)
        main = np.array_equal(mask, mask.T)
        anti = np.array_equal(mask, mask[::-1, ::-1].T)
        if main == anti:
            continue
        axis = group.main_reflection if main else group.anti_reflection
        src = group.cell_source(axis, n)
        flat = mask.ravel()
        occupied = tuple(int(p) for p in np.flatnonzero(flat))
        on_axis = tuple(p for p in occupied if src[p] == p)
        pairs = tuple((p, int(src[p])) for p in occupied if p < src[p])
        out.append(_MaskInfo(index, 1 if main else 2, occupied, int(axis), on_axis, pairs))
    return tuple(out)


@lru_cache(maxsize=None)
def _tables(mirror: str):
    """Lookup tables indexed ``[axis][label]`` / ``[axis][a, b]``."""
    g = _group(mirror)
    table = g.table.astype(np.int64)
    commutes = np.zeros((8, 8), dtype=bool)
    pair_ok = np.zeros((8, 8, 8), dtype=bool)
    class_min = np.zeros((8, 8), dtype=np.intp)
    for r in range(8):
        for a in range(8):
            commutes[r, a] = table[a, r] == table[r, a]
            ra = table[r, a]
            pair_ok[r, a, ra] = True
            pair_ok[r, a, table[ra, r]] = True
            class_min[r, a] = min(a, table[a, r])
    return commutes, pair_ok, class_min, g.conj_table.astype(np.intp)


def _redundant(cols, info: _MaskInfo, commutes, pair_ok):
    size = len(cols[info.occupied[0]])
    ok = np.ones(size, dtype=bool)
    for p in info.on_axis:
        ok &= commutes[info.axis][cols[p]]
    for p, q in info.pairs:
        ok &= pair_ok[info.axis][cols[p], cols[q]]
    return ok


def _is_class_min(cols, info: _MaskInfo, class_min):
    """Rows already equal to their class minimum, assuming they are redundant."""
    size = len(cols[info.occupied[0]])
    ok = np.ones(size, dtype=bool)
    for p in info.occupied:
        ok &= class_min[info.axis][cols[p]] == cols[p]
    return ok


def work_units(n: int, mirror: str = "rows", chunk: int = CHUNK):
    """``(mask position, start, stop)`` ranges covering the population in order."""
    for pos, info in enumerate(ds_masks(n, mirror)):
        total = 8 ** len(info.occupied)
        for start in range(0, total, chunk):
            yield pos, start, min(start + chunk, total)


def tally_unit(n: int, mirror: str, scope: str, unit) -> np.ndarray:
    pos, start, stop = unit
    masks = ds_masks(n, mirror)
    info = masks[pos]
    commutes, pair_ok, class_min, conj = _tables(mirror)
    group = _group(mirror)
    if not info.occupied:
        raise ValueError("diagonally symmetric masks with one axis are never empty")

    m = len(info.occupied)
    idx = np.arange(start, stop, dtype=np.int64)
    # one label column per occupied cell; the first occupied cell is the most
    # significant digit, so unit ranges follow encoding order
    cols: dict[int, np.ndarray] = {}
    for k, p in enumerate(info.occupied):
        cols[p] = ((idx >> (3 * (m - 1 - k))) & 7).astype(np.intp)

    out = np.zeros(WIDTH, dtype=np.int64)
    out[RAW] = idx.size
    redundant = _redundant(cols, info, commutes, pair_ok)
    is_min = _is_class_min(cols, info, class_min)
    out[DSS1 if info.family == 1 else DSS2] = int(redundant.sum())
    out[N2_1 if info.family == 1 else N2_2] = int((redundant & is_min).sum())
    if scope == "redundancy-only":
        return out

    kept = ~redundant | is_min
    out[DSR] = int(kept.sum())
    mask = mask_from_index(info.index, n)
    for t in Transform:
        if not np.array_equal(group.apply(t, mask), mask):
            # the image has a different mask, so no row can equal it
            continue
        src = group.cell_source(t, n)
        moved = {q: conj[int(t)][cols[int(src[q])]] for q in info.occupied}
        image_red = _redundant(moved, info, commutes, pair_ok)
        same = kept.copy()
        for q in info.occupied:
            image_q = np.where(image_red, class_min[info.axis][moved[q]], moved[q])
            same &= image_q == cols[q]
        out[FIXED + int(t)] = int(same.sum())
    return out


def _run(n, mirror, scope, workers):
    units = list(work_units(n, mirror))
    total = np.zeros(WIDTH, dtype=np.int64)
    if workers <= 1:
        for unit in units:
            total += tally_unit(n, mirror, scope, unit)
        return total
    with ProcessPoolExecutor(max_workers=workers) as pool:
        args = [(n, mirror, scope, u) for u in units]
        for part in pool.map(_tally_star, args, chunksize=max(1, len(units) // (4 * workers))):
            total += part
    return total


def _tally_star(args):
    return tally_unit(*args)


def brute_force(n: int = 3, *, scope: str = "full", workers: int | None = None,
                mirror: str = "rows") -> CensusReport:
    """Exhaustive census over seeds symmetric about exactly one diagonal.

    Expected counters come from :func:`fractiling.census.closed_form_symmetric`;
    any disagreement shows up in ``report.mismatches()``.
    """
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {', '.join(SCOPES)}; got {scope!r}")
    workers = default_workers() if workers is None else workers
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    begin = time.perf_counter()
    ledger = closed_form_symmetric(n)

    masks = ds_masks(n, mirror)
    extra = {
        "ds1_masks": sum(1 for mi in masks if mi.family == 1),
        "ds2_masks": sum(1 for mi in masks if mi.family == 2),
    }
    n_cells = n * n
    both = 0
    for index in range(2**n_cells):
        mask = mask_from_index(index, n)
        both += np.array_equal(mask, mask.T) and np.array_equal(mask, mask[::-1, ::-1].T)
    extra["ds12_masks"] = both
    expected = {"ds1_masks": extra["ds1_masks"], "ds2_masks": extra["ds2_masks"]}
    if n == 3:
        expected = {"ds1_masks": 48, "ds2_masks": 48, "ds12_masks": 16}

    report = CensusReport(mode="brute-force", n=n, workers=workers, extra=extra,
                          notes=[f"scope: {scope}", f"group mirror convention: {mirror}"])
    if scope != "masks-only":
        total = _run(n, mirror, scope, workers)
        report.raw = int(total[RAW])
        extra.update(dss1=int(total[DSS1]), dss2=int(total[DSS2]),
                     n2_1=int(total[N2_1]), n2_2=int(total[N2_2]))
        expected.update(raw=ledger["ds"], dss1=ledger["dss1"], dss2=ledger["dss1"],
                        n2_1=ledger["n2"], n2_2=ledger["n2"])
        if scope in ("fixed-points", "full"):
            report.dedup = int(total[DSR])
            report.fixed = {t.name: int(total[FIXED + int(t)]) for t in Transform}
            expected["dedup"] = ledger["dsr"]
            expected.update({f"fixed.{t.name}": 0 for t in Transform})
            expected["fixed.R0"] = ledger["dsr"]
            axes = _group(mirror)
            expected[f"fixed.{Transform(axes.main_reflection).name}"] = ledger["n2"]
            expected[f"fixed.{Transform(axes.anti_reflection).name}"] = ledger["n2"]
        if scope == "full":
            fixed_total = int(total[FIXED:].sum())
            if fixed_total % 8:
                report.notes.append(f"Burnside total {fixed_total} is not a multiple of 8")
                expected["burnside_remainder"] = 0
                extra["burnside_remainder"] = fixed_total % 8
            report.orbits = fixed_total // 8
            expected["orbits"] = ledger["orbits"]
    report.expected = expected
    report.elapsed_ms = round((time.perf_counter() - begin) * 1000)
    return report


def brute_force_3x3(*, scope: str = "full", workers: int | None = None) -> CensusReport:
    return brute_force(3, scope=scope, workers=workers)
