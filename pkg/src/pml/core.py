"""Integer k-polymatroids as dense rank tables, with minors, duality and geometry.

A k-polymatroid is a normalized, monotone, submodular integer function on the
subsets of a finite ground set whose singleton values are at most k.  Ground
sets here never exceed a handful of elements, so every subset is stored
explicitly: ``table[mask]`` is the rank of the subset encoded by ``mask`` over
the label positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class TypeUndefinedError(ValueError):
    """Raised when the rank-class triple is requested but not defined."""


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Polymatroid:
    """A k-polymatroid on an ordered ground set.

    ``labels`` fixes the element order used for bitmask encoding; ``table`` has
    one entry per subset mask, ``2 ** len(labels)`` in total.  Instances are
    immutable; every operation returns a new value.  Construction checks only
    structure (shapes and types) -- axiom checking is :func:`validate`.
    """

    labels: tuple[str, ...]
    k: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate ground labels: {labels}")
        for lab in labels:
            if not lab or any(c in lab for c in " \t,#"):
                raise ValueError(f"bad label {lab!r}: labels are nonempty and "
                                 "may not contain whitespace, ',' or '#'")
        table = tuple(self.table)
        if len(table) != 1 << len(labels):
            raise ValueError(
                f"rank table has {len(table)} entries, expected {1 << len(labels)}")
        for v in table:
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"rank values must be nonnegative integers, got {v!r}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", table)

    # -- subset encoding --------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def mask_of(self, subset: Iterable[str]) -> int:
        mask = 0
        for lab in subset:
            try:
                i = self.labels.index(lab)
            except ValueError:
                raise KeyError(f"{lab!r} is not a ground element of {self.labels}") from None
            mask |= 1 << i
        return mask

    def subset_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.labels[i] for i in range(self.n) if mask >> i & 1)

    def rank(self, subset: Iterable[str]) -> int:
        return self.table[self.mask_of(subset)]

    def rank_mask(self, mask: int) -> int:
        return self.table[mask]

    @property
    def total_rank(self) -> int:
        return self.table[self.full_mask]

    # -- minors and sums ---------------------------------------------------

    def _split(self, drop_mask: int) -> tuple[tuple[str, ...], list[int]]:
        keep = [i for i in range(self.n) if not drop_mask >> i & 1]
        labels = tuple(self.labels[i] for i in keep)
        expand = []
        for mask in range(1 << len(keep)):
            full = 0
            for j, i in enumerate(keep):
                if mask >> j & 1:
                    full |= 1 << i
            expand.append(full)
        return labels, expand

    def delete(self, subset: Iterable[str]) -> "Polymatroid":
        """Restrict to the complement of ``subset``; ranks are unchanged."""
        drop = self.mask_of(subset)
        labels, expand = self._split(drop)
        return Polymatroid(labels, self.k, tuple(self.table[m] for m in expand))

    def contract(self, subset: Iterable[str]) -> "Polymatroid":
        """Contract ``subset``: new rank of Y is rank(X u Y) - rank(X)."""
        drop = self.mask_of(subset)
        base = self.table[drop]
        labels, expand = self._split(drop)
        return Polymatroid(labels, self.k,
                           tuple(self.table[m | drop] - base for m in expand))

    def restrict(self, subset: Iterable[str]) -> "Polymatroid":
        keep = self.mask_of(subset)
        return self.delete(self.subset_of(self.full_mask & ~keep))

    def minor(self, delete: Iterable[str] = (), contract: Iterable[str] = ()) -> "Polymatroid":
        dele, cont = frozenset(delete), frozenset(contract)
        if dele & cont:
            raise ValueError(f"delete/contract overlap: {sorted(dele & cont)}")
        return self.contract(cont).delete(dele)

    def direct_sum(self, other: "Polymatroid") -> "Polymatroid":
        """Disjoint union with additive ranks.  Requires equal k."""
        if self.k != other.k:
            raise ValueError(f"mixed k: {self.k} vs {other.k}")
        if set(self.labels) & set(other.labels):
            raise ValueError(
                f"label collision: {sorted(set(self.labels) & set(other.labels))}")
        labels = self.labels + other.labels
        table = []
        for mask in range(1 << len(labels)):
            left = mask & self.full_mask
            right = mask >> self.n
            table.append(self.table[left] + other.table[right])
        return Polymatroid(labels, self.k, tuple(table))

    # -- duality -----------------------------------------------------------

    def dual(self) -> "Polymatroid":
        """The k-dual: rank*(X) = k|X| + rank(E-X) - rank(E)."""
        full = self.full_mask
        total = self.table[full]
        table = tuple(self.k * _popcount(m) + self.table[full & ~m] - total
                      for m in range(full + 1))
        return Polymatroid(self.labels, self.k, table)

    # -- predicates and derived structure -----------------------------------

    def is_connected(self) -> bool:
        """False iff the ground set splits into two nonempty rank-additive parts."""
        full = self.full_mask
        for s in range(1, full):
            if self.table[s] + self.table[full & ~s] != self.table[full]:
                continue
            comp = full & ~s
            if all(self.table[a] == self.table[a & s] + self.table[a & comp]
                   for a in range(full + 1)):
                return False
        return True

    def closure(self, subset: Iterable[str]) -> frozenset[str]:
        mask = self.mask_of(subset)
        r = self.table[mask]
        out = mask
        for i in range(self.n):
            if self.table[mask | 1 << i] == r:
                out |= 1 << i
        return self.subset_of(out)

    def loops(self) -> frozenset[str]:
        return frozenset(lab for i, lab in enumerate(self.labels)
                         if self.table[1 << i] == 0)

    def is_parallel(self, e: str, f: str) -> bool:
        re, rf = self.rank([e]), self.rank([f])
        return 0 < re == rf == self.rank([e, f])

    def is_skew(self, e: str, f: str) -> bool:
        re, rf = self.rank([e]), self.rank([f])
        return re > 0 and rf > 0 and re + rf == self.rank([e, f])

    def lies_on(self, e: str, f: str) -> bool:
        re, rf = self.rank([e]), self.rank([f])
        return 0 < re < rf and rf == self.rank([e, f])

    def is_collinear(self, subset: Iterable[str]) -> bool:
        return self.rank(subset) == 2

    def is_coplanar(self, subset: Iterable[str]) -> bool:
        return self.rank(subset) == 3

    def simplify(self) -> "Polymatroid":
        """Drop loops, and all but the earliest point of each parallel point class."""
        drop: set[str] = set(self.loops())
        points = [lab for i, lab in enumerate(self.labels) if self.table[1 << i] == 1]
        seen: list[str] = []
        for p in points:
            for q in seen:
                if self.rank([p, q]) == 1:
                    drop.add(p)
                    break
            else:
                seen.append(p)
        return self.delete(drop) if drop else self

    def is_simple(self) -> bool:
        return self.simplify() == self


@dataclass(frozen=True)
class TypeTriple:
    """Counts of ground elements of rank 1, k-1 and k."""

    a1: int
    a_km1: int
    a_k: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a1, self.a_km1, self.a_k)


def type_of(p: Polymatroid) -> TypeTriple:
    """Rank-class triple of ``p``.  Defined only for k >= 3 with every
    singleton rank in {1, k-1, k}."""
    if p.k < 3:
        raise TypeUndefinedError(f"rank classes 1, k-1, k need k >= 3, got k={p.k}")
    a1 = akm1 = ak = 0
    for i, lab in enumerate(p.labels):
        r = p.table[1 << i]
        if r == 1:
            a1 += 1
        elif r == p.k - 1:
            akm1 += 1
        elif r == p.k:
            ak += 1
        else:
            raise TypeUndefinedError(
                f"singleton {lab!r} has rank {r}, outside {{1, {p.k - 1}, {p.k}}}")
    return TypeTriple(a1, akm1, ak)


# -- axiom validation --------------------------------------------------------

def validate(p: Polymatroid) -> list[tuple[str, tuple[frozenset[str], ...]]]:
    """Check the polymatroid axioms; returns every (axiom, witness-subsets) pair.

    An empty report means ``p`` is a valid k-polymatroid: normalized,
    monotone, submodular, with singleton ranks bounded by k.
    """
    out: list[tuple[str, tuple[frozenset[str], ...]]] = []
    t = p.table
    size = 1 << p.n
    if t[0] != 0:
        out.append(("normalization", (frozenset(),)))
    for i in range(p.n):
        if t[1 << i] > p.k:
            out.append(("bounded", (frozenset([p.labels[i]]),)))
    for a in range(size):
        for b in range(size):
            if a & b == a and a != b and t[a] > t[b]:
                out.append(("monotone", (p.subset_of(a), p.subset_of(b))))
    for a in range(size):
        for b in range(a, size):
            if t[a | b] + t[a & b] > t[a] + t[b]:
                out.append(("submodular", (p.subset_of(a), p.subset_of(b))))
    return out


def is_valid(p: Polymatroid) -> bool:
    return not validate(p)


# -- isomorphism --------------------------------------------------------------

@lru_cache(maxsize=None)
def _mask_maps(n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """For each permutation of n positions, the induced map on subset masks."""
    out = []
    for perm in itertools.permutations(range(n)):
        mp = [0] * (1 << n)
        for mask in range(1 << n):
            img = 0
            for i in range(n):
                if mask >> i & 1:
                    img |= 1 << perm[i]
            mp[mask] = img
        out.append((perm, tuple(mp)))
    return tuple(out)


def canonical_key(p: Polymatroid) -> tuple[int, int, tuple[int, ...]]:
    """Hashable isomorphism invariant: (k, n, lex-min relabelled rank vector)."""
    best: tuple[int, ...] | None = None
    t = p.table
    for _, mp in _mask_maps(p.n):
        vec = tuple(t[mp[m]] for m in range(len(t)))
        if best is None or vec < best:
            best = vec
    assert best is not None
    return (p.k, p.n, best)


_CANON_LABELS = tuple("abcdefghijklmnopqrstuvwxyz")


def canonical_form(p: Polymatroid) -> Polymatroid:
    """A representative of p's isomorphism class, identical for isomorphic inputs."""
    _, n, vec = canonical_key(p)
    return Polymatroid(_CANON_LABELS[:n], p.k, vec)


def is_isomorphic(p1: Polymatroid, p2: Polymatroid) -> bool:
    """True iff some relabelling carries one rank table onto the other."""
    if p1.k != p2.k:
        raise ValueError(f"mixed k: {p1.k} vs {p2.k}")
    if p1.n != p2.n:
        return False
    return canonical_key(p1) == canonical_key(p2)


# -- small constructors --------------------------------------------------------

def from_ranks(labels: Sequence[str], k: int, ranks: dict[frozenset[str], int],
               empty_ok: bool = True) -> Polymatroid:
    """Build a Polymatroid from a subset->rank mapping (frozenset keys)."""
    labels = tuple(labels)
    n = len(labels)
    table = [0] * (1 << n)
    seen = set()
    for subset, r in ranks.items():
        mask = 0
        for lab in subset:
            mask |= 1 << labels.index(lab)
        table[mask] = r
        seen.add(mask)
    missing = [m for m in range(1, 1 << n) if m not in seen]
    if missing:
        raise ValueError(f"missing rank entries for masks {missing}")
    if not empty_ok and 0 in seen and table[0] != 0:
        raise ValueError("empty set must have rank 0")
    return Polymatroid(labels, k, tuple(table))


def singleton(label: str, k: int, rank: int) -> Polymatroid:
    return Polymatroid((label,), k, (0, rank))


def uniform_table(labels: Sequence[str], k: int, point_rank: int,
                  cap: int) -> Polymatroid:
    """Ranks min(point_rank * |X|, cap); e.g. four collinear points."""
    labels = tuple(labels)
    table = tuple(min(point_rank * _popcount(m), cap) for m in range(1 << len(labels)))
    return Polymatroid(labels, k, table)
