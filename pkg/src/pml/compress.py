"""Compression of a polymatroid by an element, and enumeration of its inverses.

The l-compression by e places l free points inside e, contracts them and
deletes e.  The normative computation path goes through the natural matroid:
contract l clones of e's class, delete the rest, and read the new ranks off
clone-class unions.  A closed form derived from that path,

    min(rank(A u e), rank(A) + l) - min(l, rank(e)),

drives the decompression search and is cross-checked against the oracle path
by the property suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from pml.core import Polymatroid, canonical_key, is_valid
from pml.natural import count_rank_table


@dataclass(frozen=True)
class CompressionRequest:
    p: Polymatroid
    element: str
    l: int

    def __post_init__(self) -> None:
        if self.element not in self.p.labels:
            raise ValueError(f"{self.element!r} is not a ground element")
        if not 1 <= self.l <= self.p.k - 1:
            raise ValueError(f"l must lie in 1..{self.p.k - 1}, got {self.l}")


def compress(p: Polymatroid, element: str, l: int) -> Polymatroid:
    """The l-compression of p by element, via the natural-matroid path.

    For each A not containing the element, the new rank is the rank in the
    natural matroid of X_A together with l contracted clones of the element's
    class, the remaining clones deleted.
    """
    CompressionRequest(p, element, l)
    table = count_rank_table(p)
    ei = p.labels.index(element)
    base_counts = [0] * p.n
    base_counts[ei] = l
    base = int(table[tuple(base_counts)])
    keep = [i for i in range(p.n) if i != ei]
    labels = tuple(p.labels[i] for i in keep)
    out = []
    for mask in range(1 << len(keep)):
        counts = [0] * p.n
        counts[ei] = l
        for j, i in enumerate(keep):
            if mask >> j & 1:
                counts[i] = p.k
        out.append(int(table[tuple(counts)]) - base)
    return Polymatroid(labels, p.k, tuple(out))


def compress_closed_form(p: Polymatroid, element: str, l: int) -> Polymatroid:
    """Same operation evaluated by the closed form; the oracle path is normative."""
    CompressionRequest(p, element, l)
    ei = p.labels.index(element)
    ebit = 1 << ei
    m = min(l, p.table[ebit])
    keep = [i for i in range(p.n) if i != ei]
    labels = tuple(p.labels[i] for i in keep)
    out = []
    for mask in range(1 << len(keep)):
        full = 0
        for j, i in enumerate(keep):
            if mask >> j & 1:
                full |= 1 << i
        out.append(min(p.table[full | ebit], p.table[full] + l) - m)
    return Polymatroid(labels, p.k, tuple(out))


def dual_commutes(p: Polymatroid, element: str, l: int) -> bool:
    """Check that compressing by l then dualizing equals dualizing then
    compressing by k - l."""
    left = compress(p, element, l).dual()
    right = compress(p.dual(), element, p.k - l)
    return left == right


# -- decompression enumeration ---------------------------------------------------

@dataclass(frozen=True)
class Decompression:
    """A polymatroid on E u {d} whose compression by d gives the base back."""

    polymatroid: Polymatroid
    element: str
    ls: tuple[int, ...]  # every l for which the compression matches


def _key_fixing_last(p: Polymatroid) -> tuple:
    """Canonical key under relabelings fixing the last element."""
    n = p.n
    best = None
    for perm in itertools.permutations(range(n - 1)):
        slot = list(perm) + [n - 1]
        vec = []
        for mask in range(1 << n):
            src = 0
            for i in range(n):
                if mask >> slot[i] & 1:
                    src |= 1 << i
            vec.append(p.table[src])
        tup = tuple(vec)
        if best is None or tup < best:
            best = tup
    return (p.k, n, best)


def enumerate_decompressions(p: Polymatroid, d: str,
                             ranks_d: Iterable[int],
                             l_range: Iterable[int] | None = None) -> list[Decompression]:
    """All k-polymatroids on E u {d}, up to isomorphism fixing d, whose
    compression by d (for some allowed l) equals p.

    Depth-first over subset ranks in size order, pruned by monotonicity,
    local submodularity and the compression constraint; ranks of subsets
    inside E may sit above p wherever the constraint pins the d-side instead.
    Every candidate is re-verified through the oracle path.
    """
    if d in p.labels:
        raise ValueError(f"label {d!r} already in the ground set")
    k = p.k
    ranks_d = sorted(set(ranks_d))
    if any(r < 1 or r > k for r in ranks_d):
        raise ValueError(f"ranks_d must lie in 1..{k}")
    ls = sorted(set(l_range)) if l_range is not None else list(range(1, k))
    if any(l < 1 or l > k - 1 for l in ls):
        raise ValueError(f"l values must lie in 1..{k - 1}")

    n = p.n
    labels = p.labels + (d,)
    found: dict[tuple, tuple[Polymatroid, set[int]]] = {}
    for rd in ranks_d:
        for l in ls:
            for table in _decompress_tables(p, rd, l):
                pm = Polymatroid(labels, k, table)
                if not is_valid(pm):
                    continue
                if compress(pm, d, l) != p:
                    continue
                key = _key_fixing_last(pm)
                if key in found:
                    found[key][1].add(l)
                else:
                    found[key] = (pm, {l})
    out = [Decompression(pm, d, tuple(sorted(lset))) for pm, lset in found.values()]
    out.sort(key=lambda dec: canonical_key(dec.polymatroid))
    return out


def _decompress_tables(p: Polymatroid, rd: int, l: int) -> Iterator[tuple[int, ...]]:
    k = p.k
    n = p.n
    dbit = 1 << n
    size = 1 << (n + 1)
    m_eff = min(l, rd)
    table = [0] * size
    masks = sorted(range(1, size), key=lambda m: (bin(m).count("1"), m))

    def bounds(mask: int) -> tuple[int, int]:
        members = [i for i in range(n + 1) if mask >> i & 1]
        lo, hi = 0, k * len(members)
        for a in members:
            sub = mask & ~(1 << a)
            lo = max(lo, table[sub])
            if sub:
                hi = min(hi, table[sub] + table[1 << a])
        for a, b in itertools.combinations(members, 2):
            hi = min(hi, table[mask & ~(1 << a)] + table[mask & ~(1 << b)]
                     - table[mask & ~(1 << a) & ~(1 << b)])
        return lo, hi

    def go(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(masks):
            yield tuple(table)
            return
        mask = masks[i]
        if mask == dbit:
            table[dbit] = rd
            yield from go(i + 1)
            return
        lo, hi = bounds(mask)
        if not mask & dbit:
            # inside E: min(t[mask|d] - l, t[mask]) must later equal p(mask),
            # so t[mask] lies in [p + m_eff - l, p + m_eff].
            target = p.table[mask] + m_eff
            lo = max(lo, target - l)
            hi = min(hi, target, k if bin(mask).count("1") == 1 else hi)
        else:
            a_mask = mask & ~dbit
            target = p.table[a_mask] + m_eff
            lo = max(lo, target)
            if table[a_mask] + l != target:
                if lo <= target <= hi:
                    lo = hi = target
                else:
                    return
        for v in range(lo, hi + 1):
            table[mask] = v
            yield from go(i + 1)

    yield from go(0)
