"""Shared test fixtures: independent oracles and random generators.

The naive implementations here deliberately avoid the library's count-table
shortcut so they can serve as oracles for it.
"""

from __future__ import annotations

import itertools
import random

from pml.core import Polymatroid, canonical_key, is_valid


def naive_natural_rank(p: Polymatroid, clones: list[tuple[int, int]]) -> int:
    """Rank of an explicit clone set straight from the defining minimum.

    ``clones`` is a list of (element index, clone index) pairs.
    """
    best = None
    for mask in range(1 << p.n):
        outside = sum(1 for (e, _) in clones if not mask >> e & 1)
        val = p.table[mask] + outside
        if best is None or val < best:
            best = val
    return best


def all_clone_subsets(p: Polymatroid):
    """Every subset of the clone universe, as lists of (element, clone) pairs."""
    universe = [(e, j) for e in range(p.n) for j in range(1, p.k + 1)]
    for mask in range(1 << len(universe)):
        yield [universe[i] for i in range(len(universe)) if mask >> i & 1]


def random_polymatroid(rng: random.Random, k: int, n: int,
                       labels: tuple[str, ...] | None = None) -> Polymatroid:
    """Uniform-ish valid k-polymatroid via random choices inside the local bounds."""
    labels = labels or tuple("efghi"[:n])
    size = 1 << n
    table = [0] * size
    for i in range(n):
        table[1 << i] = rng.randint(0, k)
    masks = sorted((m for m in range(size) if bin(m).count("1") >= 2),
                   key=lambda m: (bin(m).count("1"), m))
    for mask in masks:
        members = [i for i in range(n) if mask >> i & 1]
        lo, hi = 0, k * len(members)
        for a in members:
            sub = mask & ~(1 << a)
            lo = max(lo, table[sub])
            hi = min(hi, table[sub] + table[1 << a])
        for a, b in itertools.combinations(members, 2):
            hi = min(hi, table[mask & ~(1 << a)] + table[mask & ~(1 << b)]
                     - table[mask & ~(1 << a) & ~(1 << b)])
        table[mask] = rng.randint(lo, hi)
    p = Polymatroid(labels, k, tuple(table))
    assert is_valid(p)
    return p


def brute_polymatroids(k: int, n: int):
    """Every valid k-polymatroid on n elements, by filtering the full value grid."""
    labels = tuple("efghi"[:n])
    size = 1 << n
    masks = sorted(range(1, size), key=lambda m: (bin(m).count("1"), m))

    def go(i: int, table: list[int]):
        if i == len(masks):
            p = Polymatroid(labels, k, tuple(table))
            if is_valid(p):
                yield p
            return
        mask = masks[i]
        members = [j for j in range(n) if mask >> j & 1]
        if len(members) == 1:
            rng = range(0, k + 1)
        else:
            lo = max(table[mask & ~(1 << a)] for a in members)
            hi = min(table[mask & ~(1 << a)] + table[1 << a] for a in members)
            rng = range(lo, hi + 1)
        for v in rng:
            table[mask] = v
            yield from go(i + 1, table)

    yield from go(0, [0] * size)


def canonical_classes(polymatroids) -> set[tuple]:
    return {canonical_key(p) for p in polymatroids}
