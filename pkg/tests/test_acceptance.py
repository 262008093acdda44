"""Acceptance gate: one PASS/FAIL line per criterion.

Run standalone with ``python3 tests/test_acceptance.py``, or through pytest,
which repeats the lines in its terminal summary.
"""

from __future__ import annotations

import sys
import tempfile
import time
from pathlib import Path

import numpy as np

from fractiling.bruteforce import brute_force
from fractiling.census import census_2x2, closed_form_3x3, list_motifs_2x2, one_zero_configs_2x2
from fractiling.equivalence import (canonical_rep, count_orbits_burnside, count_orbits_direct,
                                    is_redundant_diag, levels, orbit_of)
from fractiling.group import SquareGroup, Transform, apply_transform
from fractiling.render import gallery, preset, write_image
from fractiling.tile import expand, transform_config
from fractiling.verify import (collision_oracle, has_equal_neighbour, random_configuration,
                               random_ds_configuration)

sys.path.insert(0, str(Path(__file__).parent))
from oracles import literal_classes  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"
SEED = 7
RESULTS: dict[int, str] = {}


def record(number: int, title: str, ok: bool, detail: str) -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {title}: {detail}"
    RESULTS[number] = line
    print(line)
    return ok


def test_01_census_2x2():
    start = time.perf_counter()
    r = census_2x2()
    seconds = time.perf_counter() - start
    fixed = {"R0": 1824, "R1": 0, "R2": 0, "R3": 0, "K0": 0, "K1": 16, "K2": 0, "K3": 16}
    ok = (r.raw, r.dedup, r.orbits) == (2048, 1824, 232) and r.fixed == fixed and seconds < 5
    assert record(1, "2x2 census", ok,
                  f"raw {r.raw}, dedup {r.dedup}, fixed {r.fixed}, orbits {r.orbits}, {seconds:.2f}s")


def test_02_burnside_direct_agreement():
    reps = sorted({canonical_rep(c) for c in one_zero_configs_2x2()}, key=lambda c: c.encode())
    direct = count_orbits_direct(reps)
    orbits = sorted({orbit_of(x) for x in reps}, key=lambda o: min(c.encode() for c in o))
    rng = np.random.default_rng(SEED)
    disagreements = 0
    for _ in range(50):
        k = int(rng.integers(1, len(orbits) + 1))
        chosen = rng.choice(len(orbits), size=k, replace=False)
        population = [x for i in chosen for x in orbits[i]]
        if count_orbits_burnside(population).orbits != count_orbits_direct(population) or \
                count_orbits_direct(population) != k:
            disagreements += 1
    ok = direct == 232 and disagreements == 0
    assert record(2, "Burnside vs direct orbit count", ok,
                  f"direct {direct}; {disagreements} disagreements on 50 closed sub-populations")


def test_03_redundancy_classes():
    configs = list(one_zero_configs_2x2())
    buckets: dict[bytes, set] = {}
    for c in configs:
        buckets.setdefault(b"".join(m.tobytes() for m in levels(c, 3)), set()).add(c)
    found = {frozenset(v) for v in buckets.values() if len(v) > 1}
    listed = literal_classes()
    expected = {frozenset(transform_config(t, c) for c in cls)
                for cls in listed for t in Transform if t.is_rotation}
    listed_ok = all(cls in found for cls in listed)
    ok = len(found) == 32 and found == expected and listed_ok and all(len(v) == 8 for v in found)
    assert record(3, "redundancy classes", ok,
                  f"{len(found)} classes found, eight listed classes matched: {listed_ok}")


def test_04_closed_form_3x3():
    start = time.perf_counter()
    r = closed_form_3x3()
    seconds = time.perf_counter() - start
    got = {**r.extra, "orbits": r.orbits}
    want = {"ni": 200201625, "ds12": 155788425, "ds1": 44413200, "ds2": 44413200,
            "ds": 88826400, "dss1": 242760, "n2": 2100, "dss": 485520, "dsr": 88345080,
            "orbits": 11043660}
    wrong = {k: got.get(k) for k, v in want.items() if got.get(k) != v}
    ok = not wrong and r.ok and seconds < 1
    assert record(4, "3x3 closed-form ledger", ok,
                  f"orbits {r.orbits}, {seconds * 1000:.1f} ms" + (f", wrong {wrong}" if wrong else ""))


def test_05_brute_force_3x3():
    reports = {w: brute_force(3, workers=w) for w in (1, 4, 8)}
    tallies = {w: r.counters() for w, r in reports.items()}
    r = reports[1]
    fixed_ok = r.fixed == {"R0": 88345080, "R1": 0, "R2": 0, "R3": 0, "K0": 0,
                           "K1": 2100, "K2": 0, "K3": 2100}
    same = tallies[1] == tallies[4] == tallies[8]
    ok = r.dedup == 88345080 and r.orbits == 11043660 and fixed_ok and same and r.ok
    times = ", ".join(f"{w} workers {rep.elapsed_ms / 1000:.0f}s" for w, rep in reports.items())
    assert record(5, "3x3 brute force", ok,
                  f"dedup {r.dedup}, orbits {r.orbits}, identical tallies: {same} ({times})")


def test_06_expansion_commutation():
    rng = np.random.default_rng(SEED)
    failures = 0
    for _ in range(1000):
        c = random_configuration(rng, int(rng.integers(2, 4)))
        t = Transform(int(rng.integers(8)))
        k = int(rng.integers(0, 4))
        if not np.array_equal(expand(transform_config(t, c), k), apply_transform(t, expand(c, k))):
            failures += 1
    assert record(6, "expansion commutes with transforms", failures == 0,
                  f"{failures} failures in 1000 triples")


def test_07_occupancy_law():
    rng = np.random.default_rng(SEED)
    failures = 0
    for _ in range(500):
        n = int(rng.integers(2, 4))
        c = random_configuration(rng, n)
        k = int(rng.integers(0, 5))
        if int(expand(c, k).sum()) != c.occupied ** (k + 1):
            failures += 1
    sierpinski = int(expand(preset("sierpinski-triangle"), 7).sum())
    ok = failures == 0 and sierpinski == 6561
    assert record(7, "occupancy law", ok,
                  f"{failures} failures in 500 seeds; Sierpinski depth 7 popcount {sierpinski}")


def test_08_oracle_agreement():
    configs = list(one_zero_configs_2x2())
    colliding = collision_oracle(configs)
    bad_2x2 = sum(is_redundant_diag(c) != (c in colliding) for c in configs)
    rng = np.random.default_rng(SEED)
    bad_3x3 = redundant = 0
    for _ in range(10_000):
        c = random_ds_configuration(rng)
        red = is_redundant_diag(c)
        redundant += red
        bad_3x3 += red != has_equal_neighbour(c)
    ok = bad_2x2 == 0 and bad_3x3 == 0
    assert record(8, "predicate vs expansion oracle", ok,
                  f"2x2: {bad_2x2}/2048 disagree; 3x3: {bad_3x3}/10000 disagree "
                  f"({redundant} redundant)")


def test_09_gallery_and_goldens():
    motifs = list_motifs_2x2()
    orbits = {orbit_of(canonical_rep(m)) for m in motifs}
    with tempfile.TemporaryDirectory() as tmp:
        a = gallery(motifs, Path(tmp) / "a")
        b = gallery(motifs, Path(tmp) / "b")
        images = [p for p in a if p.name.startswith("motif")]
        identical = all(p.read_bytes() == q.read_bytes() for p, q in zip(a, b))
        golden_bad = []
        for name, depth in {"sierpinski-triangle": 7, "sierpinski-carpet": 4, "von-koch": 4,
                            "maple-leaf": 7, "demo-2x2-r3k2": 7, "demo-3x3-rot": 4}.items():
            out = Path(tmp) / f"{name}.pbm"
            write_image(out, preset(name), depth)
            if out.read_bytes() != (GOLDEN / f"{name}-d{depth}.pbm").read_bytes():
                golden_bad.append(name)
    ok = len(images) == 232 and len(orbits) == 232 and identical and not golden_bad
    assert record(9, "gallery and golden images", ok,
                  f"{len(images)} images, {len(orbits)} distinct orbits, reruns identical: "
                  f"{identical}, golden mismatches: {golden_bad or 'none'}")


def test_10_mirror_convention():
    cols = SquareGroup("cols")
    rows_2 = census_2x2().counters()
    cols_2 = census_2x2(group=cols).counters()
    swapped = {"fixed.K1": "fixed.K3", "fixed.K3": "fixed.K1"}
    counts_2 = {swapped.get(k, k): v for k, v in cols_2.items() if not k.startswith("fixed_")}
    same_2 = all(rows_2[k] == v for k, v in counts_2.items())
    r3 = brute_force(3, mirror="cols")
    ok = same_2 and r3.ok and r3.orbits == 11043660 and cols_2["orbits"] == 232
    assert record(10, "alternative mirror convention", ok,
                  f"2x2 counts equal: {same_2}; 3x3 brute-force orbits {r3.orbits}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
