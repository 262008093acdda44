"""Named invariant checks, shared by ``fractiling verify`` and the tests.

The oracles here deliberately avoid the closed-form redundancy rule:
they decide fractal equality by expanding seeds and comparing matrices.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable

import numpy as np

from .census import census_2x2, closed_form_3x3, one_zero_configs_2x2
from .equivalence import fractal_equal, is_redundant_diag, levels
from .group import D4, SquareGroup, Transform
from .tile import Configuration, expand, expand_labeled, forget_labels, transform_config

__all__ = [
    "CheckResult",
    "table_failures",
    "random_configuration",
    "random_ds_configuration",
    "perturb_within_stabilizer",
    "collision_oracle",
    "has_equal_neighbour",
    "run_checks",
]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


# -- group table ----------------------------------------------------------------

_PROBES = [np.arange(9).reshape(3, 3), np.array([[1, 1, 0], [0, 1, 0], [0, 0, 0]])]


def table_failures(table: np.ndarray, group: SquareGroup = D4) -> list[str]:
    """Names of the group-table properties that ``table`` violates, in check order."""
    table = np.asarray(table)
    failures = []
    if table.shape != (8, 8) or table.min() < 0 or table.max() > 7:
        return ["closure"]
    e = int(Transform.R0)
    if any(table[e, t] != t or table[t, e] != t for t in range(8)):
        failures.append("identity")
    if any(e not in table[t] for t in range(8)):
        failures.append("inverse")
    if any(table[a, table[b, c]] != table[table[a, b], c]
           for a, b, c in product(range(8), repeat=3)):
        failures.append("associativity")
    for a, b in product(range(8), repeat=2):
        if any(not np.array_equal(group.apply(int(table[a, b]), m),
                                  group.apply(a, group.apply(b, m))) for m in _PROBES):
            failures.append("matrix-consistency")
            break
    return failures


# -- samplers -------------------------------------------------------------------

def random_configuration(rng: np.random.Generator, n: int, mask=None) -> Configuration:
    if mask is None:
        mask = rng.integers(0, 2, size=(n, n))
    labels = rng.integers(1, 9, size=n * n)
    codes = tuple(int(v) if b else 0 for v, b in zip(labels, np.asarray(mask).ravel()))
    return Configuration(n, codes)


@lru_cache(maxsize=None)
def _ds_mask_weights(n: int):
    from .bruteforce import ds_masks
    from .census import mask_from_index
    infos = ds_masks(n)
    masks = [mask_from_index(i.index, n) for i in infos]
    weights = np.array([8.0 ** len(i.occupied) for i in infos])
    return masks, weights / weights.sum()


def random_ds_configuration(rng: np.random.Generator, n: int = 3) -> Configuration:
    """Uniform draw from the seeds whose mask is symmetric about exactly one diagonal."""
    masks, p = _ds_mask_weights(n)
    mask = masks[rng.choice(len(masks), p=p)]
    return random_configuration(rng, n, mask)


def perturb_within_stabilizer(rng: np.random.Generator, c: Configuration,
                              group: SquareGroup = D4) -> Configuration:
    """Right-multiply some cells by symmetries of the mask.

    These are the only single-level-invisible changes, so the pair agrees
    on ``M_0`` and ``M_1`` and any difference shows up later, if at all.
    """
    stab = [int(t) for t in group.stabilizer(c.mask)]
    codes = []
    for v in c.codes:
        if v and rng.random() < 0.5:
            v = int(group.table[v - 1, stab[rng.integers(len(stab))]]) + 1
        codes.append(v)
    return Configuration(c.n, tuple(codes))


# -- redundancy oracles -----------------------------------------------------------

def collision_oracle(configs: Iterable[Configuration], depth: int = 3) -> set[Configuration]:
    """Seeds sharing their expansions ``M_0..M_depth`` with another seed in the list."""
    buckets: dict[tuple[int, bytes], list[Configuration]] = defaultdict(list)
    for c in configs:
        key = b"".join(m.tobytes() for m in levels(c, depth))
        buckets[(c.n, key)].append(c)
    return {c for group_ in buckets.values() if len(group_) > 1 for c in group_}


def has_equal_neighbour(c: Configuration, depth: int = 3) -> bool:
    """Is some other seed with the same mask fractally equal to ``c``?

    Blocks of a level depend on one seed cell each, so if any seed equals
    ``c`` then so does one differing from it in a single cell; trying all
    single-cell substitutions is therefore exhaustive.
    """
    own = list(levels(c, depth))
    images = [D4.apply(t, own[0]) for t in Transform]
    for p, v in enumerate(c.codes):
        if not v:
            continue
        for alt in range(1, 9):
            # a different block at level 1 rules the substitution out cheaply
            if alt == v or not np.array_equal(images[alt - 1], images[v - 1]):
                continue
            other = Configuration(c.n, c.codes[:p] + (alt,) + c.codes[p + 1:])
            if all(np.array_equal(a, b) for a, b in zip(own, levels(other, depth))):
                return True
    return False


# -- the suite -----------------------------------------------------------------------

def _check_group(table) -> CheckResult:
    failures = table_failures(D4.table if table is None else table)
    if failures:
        return CheckResult(f"group-table.{failures[0]}", False, f"violated: {', '.join(failures)}")
    return CheckResult("group-table", True, "closure, identity, inverse, associativity, matrix action")


def _check_commutation(rng, count: int) -> CheckResult:
    for _ in range(count):
        n = int(rng.integers(2, 4))
        c = random_configuration(rng, n)
        t = Transform(int(rng.integers(8)))
        k = int(rng.integers(1, 4))
        lhs = expand(transform_config(t, c), k)
        rhs = D4.apply(t, expand(c, k))
        if not np.array_equal(lhs, rhs):
            return CheckResult("expansion-commutation", False, f"{c} under {t.name} at depth {k}")
        labeled = expand_labeled(c, k)
        if not np.array_equal(forget_labels(labeled), expand(c, k)):
            return CheckResult("expansion-commutation", False, f"label projection of {c}")
    return CheckResult("expansion-commutation", True, f"{count} random triples")


def _check_occupancy(rng, count: int) -> CheckResult:
    for _ in range(count):
        n = int(rng.integers(2, 4))
        c = random_configuration(rng, n)
        k = int(rng.integers(0, 4 if n == 2 else 3))
        if int(expand(c, k).sum()) != c.occupied ** (k + 1):
            return CheckResult("occupancy-law", False, f"{c} at depth {k}")
    return CheckResult("occupancy-law", True, f"{count} random seeds")


def _check_oracle_2x2() -> CheckResult:
    configs = list(one_zero_configs_2x2())
    colliding = collision_oracle(configs)
    bad = [c for c in configs if is_redundant_diag(c) != (c in colliding)]
    if bad:
        return CheckResult("oracle-agreement-2x2", False, f"{len(bad)} disagreements, first {bad[0]}")
    return CheckResult("oracle-agreement-2x2", True, f"{len(configs)} seeds, {len(colliding)} redundant")


def _check_oracle_3x3(rng, count: int) -> CheckResult:
    for _ in range(count):
        c = random_ds_configuration(rng)
        if is_redundant_diag(c) != has_equal_neighbour(c):
            return CheckResult("oracle-agreement-3x3", False, str(c))
    return CheckResult("oracle-agreement-3x3", True, f"{count} sampled seeds")


def _check_census_2x2() -> CheckResult:
    report = census_2x2()
    if not report.ok:
        return CheckResult("census-2x2", False, str(report.mismatches()))
    return CheckResult("census-2x2", True, f"orbits {report.orbits}")


def _check_closed_form() -> CheckResult:
    report = closed_form_3x3()
    if not report.ok:
        return CheckResult("closed-form-3x3", False, str(report.mismatches()))
    return CheckResult("closed-form-3x3", True, f"orbits {report.orbits}")


def _check_depth(rng, count: int) -> CheckResult:
    for _ in range(count):
        n = int(rng.integers(2, 4))
        c = random_configuration(rng, n)
        other = perturb_within_stabilizer(rng, c)
        e3 = fractal_equal(c, other, 3)
        if e3 != fractal_equal(c, other, 4):
            return CheckResult("depth-stability", False, f"{c} vs {other}: depth 3 and 4 disagree")
        if len(D4.stabilizer(c.mask)) <= 2 and e3 != fractal_equal(c, other, 2):
            return CheckResult("depth-stability", False, f"{c} vs {other}: depth 2 and 3 disagree")
    return CheckResult("depth-stability", True, f"{count} stabilizer-perturbed pairs")


def _check_brute_force(workers) -> CheckResult:
    from .bruteforce import brute_force_3x3
    report = brute_force_3x3(workers=workers)
    if not report.ok:
        return CheckResult("brute-force-3x3", False, str(report.mismatches()[0]))
    return CheckResult("brute-force-3x3", True, f"orbits {report.orbits}")


def run_checks(level: str = "quick", *, table=None, seed: int = 2024, workers: int | None = None,
               stop_on_failure: bool = True) -> list[CheckResult]:
    """Run the suite in order; by default stop at the first failing property."""
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', not {level!r}")
    rng = np.random.default_rng(seed)
    steps: list[Callable[[], CheckResult]] = [
        lambda: _check_group(table),
        lambda: _check_commutation(rng, 300),
        lambda: _check_occupancy(rng, 300),
        _check_oracle_2x2,
        _check_census_2x2,
        _check_closed_form,
        lambda: _check_depth(rng, 2000),
        lambda: _check_oracle_3x3(rng, 1000),
    ]
    if level == "full":
        steps.append(lambda: _check_brute_force(workers))
    results = []
    for step in steps:
        start = time.perf_counter()
        result = step()
        result.seconds = time.perf_counter() - start
        results.append(result)
        if not result.passed and stop_on_failure:
            break
    return results
