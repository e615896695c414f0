"""Rank oracle for the natural matroid of a k-polymatroid, and its minors.

The natural matroid places k freely positioned clones inside each ground
element; its rank is r(X) = min over A of rank(A) + |X - X_A|.  Swapping two
clones of the same element is an automorphism, so r depends only on how many
clones of each class X lies in.  The oracle therefore never materializes the
2**(k n) subset table: it keeps one dense array over per-class count vectors,
(k+1)**n entries, and answers every query with a lookup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from pml.core import Polymatroid

CLONE_SEP = "#"


def clone_label(element: str, index: int) -> str:
    """Wire format for clone names: ``<element>#<index>``, 1-based."""
    return f"{element}{CLONE_SEP}{index}"


def parse_clone(label: str) -> tuple[str, int]:
    element, _, idx = label.rpartition(CLONE_SEP)
    if not element or not idx.isdigit() or int(idx) < 1:
        raise ValueError(f"bad clone label {label!r}, expected <element>#<index>")
    return element, int(idx)


@lru_cache(maxsize=512)
def count_rank_table(p: Polymatroid) -> np.ndarray:
    """Dense table R over count vectors: R[c] = min_A rank(A) + sum(c[e] for e not in A)."""
    shape = (p.k + 1,) * p.n
    if p.n == 0:
        return np.zeros((), dtype=np.int64)
    coords = np.indices(shape, dtype=np.int64)
    best = np.full(shape, p.table[p.full_mask], dtype=np.int64)
    for mask in range(1 << p.n):
        val = np.full(shape, p.table[mask], dtype=np.int64)
        for i in range(p.n):
            if not mask >> i & 1:
                val += coords[i]
        np.minimum(best, val, out=best)
    best.setflags(write=False)
    return best


@dataclass(frozen=True)
class CloneMinorSpec:
    """Per-element clone counts (contracted, deleted) describing a minor.

    Kept count is implied: k - contracted - deleted.  Concrete clone sets are
    always the lowest-indexed clones first: contracted take indices
    1..c, deleted the next d, kept the rest.
    """

    contracted: tuple[int, ...]
    deleted: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.contracted) != len(self.deleted):
            raise ValueError("count vectors differ in length")
        for c, d in zip(self.contracted, self.deleted):
            if c < 0 or d < 0:
                raise ValueError("clone counts must be nonnegative")

    @staticmethod
    def empty(n: int) -> "CloneMinorSpec":
        return CloneMinorSpec((0,) * n, (0,) * n)


@dataclass(frozen=True)
class NaturalOracle:
    """Lazy rank oracle for a minor of the natural matroid of ``base``.

    ``contracted[i]`` / ``deleted[i]`` count clones of the i-th element removed
    by contraction / deletion; the clone sets they denote are the
    lowest-indexed clones (contracted first, then deleted).
    """

    base: Polymatroid
    contracted: tuple[int, ...] = field(default=())
    deleted: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        n, k = self.base.n, self.base.k
        c = tuple(self.contracted) or (0,) * n
        d = tuple(self.deleted) or (0,) * n
        if len(c) != n or len(d) != n:
            raise ValueError(f"count vectors must have length {n}")
        for ce, de in zip(c, d):
            if ce < 0 or de < 0 or ce + de > k:
                raise ValueError(f"clone counts ({ce},{de}) overflow k={k}")
        object.__setattr__(self, "contracted", c)
        object.__setattr__(self, "deleted", d)

    # -- clone bookkeeping -------------------------------------------------

    @property
    def k(self) -> int:
        return self.base.k

    def available(self, element: str) -> int:
        i = self.base.labels.index(element)
        return self.k - self.contracted[i] - self.deleted[i]

    def available_clones(self, element: str) -> tuple[str, ...]:
        i = self.base.labels.index(element)
        lo = self.contracted[i] + self.deleted[i]
        return tuple(clone_label(element, j) for j in range(lo + 1, self.k + 1))

    def contracted_clones(self) -> tuple[str, ...]:
        out = []
        for i, lab in enumerate(self.base.labels):
            out.extend(clone_label(lab, j) for j in range(1, self.contracted[i] + 1))
        return tuple(out)

    def ground(self) -> tuple[str, ...]:
        """All clones of the minor, class by class, lowest index first."""
        out = []
        for lab in self.base.labels:
            out.extend(self.available_clones(lab))
        return tuple(out)

    def _counts_of(self, clones: Iterable[str]) -> tuple[int, ...]:
        counts = [0] * self.base.n
        seen: set[str] = set()
        for lab in clones:
            if lab in seen:
                raise ValueError(f"duplicate clone {lab!r}")
            seen.add(lab)
            element, idx = parse_clone(lab)
            try:
                i = self.base.labels.index(element)
            except ValueError:
                raise KeyError(f"{element!r} is not a ground element") from None
            if idx > self.k:
                raise ValueError(f"{lab!r}: index exceeds k={self.k}")
            if idx <= self.contracted[i] + self.deleted[i]:
                raise ValueError(f"{lab!r} was removed by this minor")
            counts[i] += 1
        return tuple(counts)

    # -- rank --------------------------------------------------------------

    def rank_counts(self, counts: tuple[int, ...]) -> int:
        """Rank of any clone set taking counts[i] clones in class i."""
        table = count_rank_table(self.base)
        merged = tuple(c + extra for c, extra in zip(counts, self.contracted))
        return int(table[merged]) - int(table[self.contracted])

    def rank(self, clones: Iterable[str]) -> int:
        return self.rank_counts(self._counts_of(clones))

    def total_rank(self) -> int:
        return self.rank_counts(tuple(self.k - c - d for c, d
                                      in zip(self.contracted, self.deleted)))

    def full_class_counts(self, subset: Iterable[str]) -> tuple[int, ...]:
        """Counts selecting every available clone of each element in ``subset``."""
        counts = [0] * self.base.n
        for lab in subset:
            i = self.base.labels.index(lab)
            counts[i] = self.k - self.contracted[i] - self.deleted[i]
        return tuple(counts)

    # -- minors ------------------------------------------------------------

    def minor(self, spec: CloneMinorSpec) -> "NaturalOracle":
        """Contract/delete further clones, lowest available indices first."""
        n, k = self.base.n, self.k
        if len(spec.contracted) != n:
            raise ValueError(f"spec length {len(spec.contracted)}, expected {n}")
        c = tuple(a + b for a, b in zip(self.contracted, spec.contracted))
        d = tuple(a + b for a, b in zip(self.deleted, spec.deleted))
        for ce, de in zip(c, d):
            if ce + de > k:
                raise ValueError("clone count overflow")
        return NaturalOracle(self.base, c, d)


def natural_oracle(p: Polymatroid) -> NaturalOracle:
    return NaturalOracle(p)


def natural_rank(o: NaturalOracle, clones: Iterable[str]) -> int:
    return o.rank(clones)


def minor_of_natural(o: NaturalOracle, spec: CloneMinorSpec) -> NaturalOracle:
    return o.minor(spec)


# -- point views and simplification -------------------------------------------

@dataclass(frozen=True)
class PointView:
    """A labelled family of single clones of an oracle minor, with rank access.

    Used both for the simplification (one representative per parallel class,
    loops dropped) and for explicitly chosen clone families when checking
    printed representations.
    """

    oracle: NaturalOracle
    points: tuple[str, ...]
    _class_index: tuple[int, ...] = field(repr=False, default=())

    def __post_init__(self) -> None:
        idx = []
        for lab in self.points:
            element, _ = parse_clone(lab)
            idx.append(self.oracle.base.labels.index(element))
        self.oracle._counts_of(self.points)
        object.__setattr__(self, "_class_index", tuple(idx))

    @property
    def n(self) -> int:
        return len(self.points)

    def rank(self, subset: Iterable[str]) -> int:
        counts = [0] * self.oracle.base.n
        for lab in subset:
            counts[self._class_index[self.points.index(lab)]] += 1
        return self.oracle.rank_counts(tuple(counts))

    def rank_point_mask(self, mask: int) -> int:
        counts = [0] * self.oracle.base.n
        for j, ci in enumerate(self._class_index):
            if mask >> j & 1:
                counts[ci] += 1
        return self.oracle.rank_counts(tuple(counts))

    def all_subset_ranks(self) -> np.ndarray:
        """Vector of ranks of all 2**n point subsets, indexed by point mask."""
        n = self.n
        table = count_rank_table(self.oracle.base)
        flat = np.ascontiguousarray(table).reshape(-1)
        strides = []
        acc = 1
        for _ in range(self.oracle.base.n):
            strides.append(acc)
            acc *= self.oracle.k + 1
        strides.reverse()  # match C-order indexing of the count table
        subsets = np.arange(1 << n, dtype=np.int64)
        base_idx = int(np.dot(self.oracle.contracted, strides)) if strides else 0
        idx = np.full(1 << n, base_idx, dtype=np.int64)
        for i in range(self.oracle.base.n):
            class_mask = 0
            for j, ci in enumerate(self._class_index):
                if ci == i:
                    class_mask |= 1 << j
            if class_mask:
                counts = np.bitwise_count(subsets & class_mask).astype(np.int64)
                idx += counts * strides[i]
        base_rank = int(flat[base_idx])
        return flat[idx] - base_rank


def points_view(o: NaturalOracle, points: Iterable[str]) -> PointView:
    return PointView(o, tuple(points))


def simplified_natural(o: NaturalOracle) -> PointView:
    """One representative clone per parallel class, loops removed.

    Classes whose clones are pairwise independent contribute all of their
    available clones; rank-one classes collapse to a single representative,
    and representatives of different elements merge when they are parallel
    across classes.  Representatives are the lowest available clone of the
    earliest element of each parallel class.
    """

    n = o.base.n
    labels = o.base.labels
    avail = [o.available(lab) for lab in labels]

    def unit(i: int, m: int = 1) -> tuple[int, ...]:
        c = [0] * n
        c[i] = m
        return tuple(c)

    free_points: list[str] = []
    point_class_reps: list[int] = []  # indices of elements acting as single merged points
    for i, lab in enumerate(labels):
        if avail[i] == 0:
            continue
        if o.rank_counts(unit(i)) == 0:
            continue  # loops
        if avail[i] >= 2 and o.rank_counts(unit(i, 2)) == 2:
            free_points.extend(o.available_clones(lab))
        else:
            point_class_reps.append(i)

    # Merge cross-class parallel representatives, keeping the earliest element.
    kept: list[int] = []
    for i in point_class_reps:
        for j in kept:
            pair = [0] * n
            pair[i] += 1
            pair[j] += 1
            if o.rank_counts(tuple(pair)) == 1:
                break
        else:
            kept.append(i)
    reps = [o.available_clones(labels[i])[0] for i in kept]

    points = sorted(reps + free_points,
                    key=lambda lab: (labels.index(parse_clone(lab)[0]), parse_clone(lab)[1]))
    return PointView(o, tuple(points))
