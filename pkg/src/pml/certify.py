"""Class membership, excluded-minor certificates, and classification sweeps.

A polymatroid is in the class when the natural matroid is binary.  It is an
excluded minor when it is out of the class but every single-element deletion
and contraction is in it (single elements suffice because minors compose).
The sweeps enumerate all candidates on a ground set up to isomorphism and
certify each one.
"""

from __future__ import annotations

import hashlib
import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from pml import catalog as _catalog
from pml.binary import U24Witness, is_binary
from pml.compress import enumerate_decompressions
from pml.core import (
    Polymatroid,
    TypeUndefinedError,
    canonical_form,
    canonical_key,
    type_of,
)
from pml.natural import NaturalOracle
from pml.textio import serialize

DEFAULT_BUDGET = 10 ** 9

_ENUM_LABELS = ("e", "f", "g", "h", "i")


class BudgetExceededError(RuntimeError):
    """A sweep hit its node budget; results would be incomplete."""


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes: int):
        self.left = nodes

    def spend(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise BudgetExceededError("enumeration node budget exhausted")


# -- membership ----------------------------------------------------------------

_IN_CLASS_CACHE: dict[tuple, bool] = {}


def clear_cache() -> None:
    _IN_CLASS_CACHE.clear()


def in_class(p: Polymatroid, use_cache: bool = True) -> bool:
    """True iff the natural matroid of p is binary (both routes, agreement checked)."""
    if not use_cache:
        return is_binary(NaturalOracle(p)).binary
    key = canonical_key(p)
    hit = _IN_CLASS_CACHE.get(key)
    if hit is None:
        hit = is_binary(NaturalOracle(p)).binary
        _IN_CLASS_CACHE[key] = hit
    return hit


@dataclass(frozen=True)
class ChildVerdict:
    op: str  # "delete" | "contract"
    element: str
    in_class: bool


@dataclass(frozen=True)
class Certificate:
    subject: Polymatroid
    verdict: str  # "in-class" | "excluded-minor" | "not-excluded"
    witness: Optional[U24Witness]
    children: tuple[ChildVerdict, ...]


def is_excluded_minor(p: Polymatroid) -> Certificate:
    """Certify p: out of class with every one-element minor in class."""
    decision = is_binary(NaturalOracle(p))
    children = []
    for lab in p.labels:
        children.append(ChildVerdict("delete", lab, in_class(p.delete([lab]))))
        children.append(ChildVerdict("contract", lab, in_class(p.contract([lab]))))
    if decision.binary:
        verdict = "in-class"
    elif all(c.in_class for c in children):
        verdict = "excluded-minor"
    else:
        verdict = "not-excluded"
    return Certificate(p, verdict, decision.witness, tuple(children))


def _excluded_fast(p: Polymatroid) -> bool:
    """Children first (cache-hot), subject only when all children pass."""
    for lab in p.labels:
        if not in_class(p.delete([lab])) or not in_class(p.contract([lab])):
            return False
    return not in_class(p)


# -- enumeration ----------------------------------------------------------------

@dataclass(frozen=True)
class EnumFilters:
    """Candidate filters; the defaults are the excluded-minor necessary conditions."""

    simple: bool = True
    connected: bool = True
    singleton_ranks: Optional[frozenset[int]] = None  # None: {1, k-1, k} when n >= 2
    max_total_rank: Optional[int] = None

    def allowed_singletons(self, k: int, n: int) -> tuple[int, ...]:
        if self.singleton_ranks is not None:
            ranks = sorted(self.singleton_ranks)
        elif n >= 2:
            ranks = sorted({1, k - 1, k})
        else:
            ranks = list(range(0, k + 1))
        if self.simple:
            ranks = [r for r in ranks if r >= 1]
        return tuple(ranks)

    def describe(self) -> str:
        parts = []
        if self.simple:
            parts.append("simple")
        if self.connected:
            parts.append("connected")
        if self.singleton_ranks is not None:
            parts.append("singletons=" + ",".join(map(str, sorted(self.singleton_ranks))))
        else:
            parts.append("singletons=default")
        if self.max_total_rank is not None:
            parts.append(f"rankE<={self.max_total_rank}")
        return " ".join(parts)


def enumerate_polymatroids(k: int, n: int,
                           filters: EnumFilters | None = None,
                           budget: int = DEFAULT_BUDGET) -> Iterator[Polymatroid]:
    """All valid k-polymatroids on n elements meeting the filters, exactly once
    up to isomorphism.

    Depth-first over subset ranks in size order.  Bounds: a subset's rank is at
    least each child's, at most every pairwise submodular ceiling.  Singleton
    ranks are assigned in nondecreasing order and a leaf is emitted only when
    its rank vector is lexicographically minimal among relabelings preserving
    that order, which makes emission canonical.
    """
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    if n == 0:
        yield Polymatroid((), k, (0,))
        return
    filters = filters or EnumFilters()
    labels = _ENUM_LABELS[:n] if n <= len(_ENUM_LABELS) else tuple(
        f"x{i}" for i in range(1, n + 1))
    allowed = filters.allowed_singletons(k, n)
    cap = filters.max_total_rank
    tracker = _Budget(budget)
    size = 1 << n
    masks = sorted((m for m in range(size) if bin(m).count("1") >= 2),
                   key=lambda m: (bin(m).count("1"), m))
    table = [0] * size
    perms = list(itertools.permutations(range(n)))

    def stabilizer() -> list[tuple[int, ...]]:
        singles = [table[1 << i] for i in range(n)]
        return [perm for perm in perms
                if all(singles[perm[i]] == singles[i] for i in range(n))]

    def is_canonical(stab: list[tuple[int, ...]]) -> bool:
        for perm in stab:
            if all(perm[i] == i for i in range(n)):
                continue
            for mask in range(size):
                img = 0
                for i in range(n):
                    if mask >> i & 1:
                        img |= 1 << perm[i]
                a, b = table[mask], table[img]
                if a < b:
                    break
                if a > b:
                    return False
        return True

    def go(i: int, stab: list[tuple[int, ...]]) -> Iterator[Polymatroid]:
        tracker.spend()
        if i == len(masks):
            if not is_canonical(stab):
                return
            p = Polymatroid(labels, k, tuple(table))
            if filters.connected and not p.is_connected():
                return
            yield p
            return
        mask = masks[i]
        members = [j for j in range(n) if mask >> j & 1]
        lo, hi = 0, k * len(members)
        for a in members:
            sub = mask & ~(1 << a)
            lo = max(lo, table[sub])
            hi = min(hi, table[sub] + table[1 << a])
        for a, b in itertools.combinations(members, 2):
            hi = min(hi, table[mask & ~(1 << a)] + table[mask & ~(1 << b)]
                     - table[mask & ~(1 << a) & ~(1 << b)])
        if cap is not None:
            hi = min(hi, cap)
        if filters.simple and len(members) == 2:
            a, b = members
            if table[1 << a] == 1 and table[1 << b] == 1:
                lo = max(lo, 2)  # no parallel points
        for v in range(lo, hi + 1):
            table[mask] = v
            yield from go(i + 1, stab)

    for singles in itertools.combinations_with_replacement(allowed, n):
        if cap is not None and max(singles) > cap:
            continue
        for i, r in enumerate(singles):
            table[1 << i] = r
        yield from go(0, stabilizer())


# -- sweeps ----------------------------------------------------------------------

def canonical_hash(p: Polymatroid) -> str:
    return hashlib.sha256(serialize(canonical_form(p)).encode()).hexdigest()[:16]


def machine_line(p: Polymatroid, verdict: str) -> str:
    try:
        t = type_of(p)
        ts = f"{t.a1},{t.a_km1},{t.a_k}"
    except TypeUndefinedError:
        ts = "-"
    return (f"result name={canonical_hash(p)} verdict={verdict} "
            f"rankE={p.total_rank} type={ts}")


@dataclass(frozen=True)
class SweepReport:
    k: int
    n: int
    mode: str
    filters: str
    count_enumerated: int
    excluded: tuple[tuple[Polymatroid, Optional[str]], ...]  # canonical form, catalog name
    matches_catalog: bool
    dual_completed: int
    wall_time: float

    def machine_lines(self) -> list[str]:
        return sorted(machine_line(p, "excluded-minor") for p, _ in self.excluded)

    def summary(self) -> str:
        lines = [
            f"classify k={self.k} n={self.n} mode={self.mode} [{self.filters}]",
            f"  enumerated {self.count_enumerated} candidates in {self.wall_time:.2f}s",
            f"  excluded minors found: {len(self.excluded)}"
            + (f" (including {self.dual_completed} added by duality)"
               if self.dual_completed else ""),
        ]
        for p, name in self.excluded:
            lines.append(f"    rankE={p.total_rank} {name or '(not in catalog)'}")
        lines.append(f"  matches catalog for |E|={self.n}: {self.matches_catalog}")
        return "\n".join(lines)


def classify(k: int, n: int, mode: str = "auto",
             budget: int = DEFAULT_BUDGET) -> SweepReport:
    """Certify every enumerated candidate; report the excluded minors found.

    Restricted mode caps the total rank at floor(n*k/2) and completes the
    result set under duality, which is exhaustive because duality pairs every
    excluded minor above the cap with one below it.
    """
    if mode == "auto":
        mode = "restricted" if n >= 4 else "full"
    if mode not in ("full", "restricted"):
        raise ValueError(f"unknown mode {mode!r}")
    cap = (n * k) // 2 if mode == "restricted" else None
    filters = EnumFilters(max_total_rank=cap)
    start = time.monotonic()
    count = 0
    found: dict[tuple, Polymatroid] = {}
    for p in enumerate_polymatroids(k, n, filters, budget=budget):
        count += 1
        if _excluded_fast(p):
            found[canonical_key(p)] = canonical_form(p)
    dual_added = 0
    if mode == "restricted":
        for p in list(found.values()):
            q = canonical_form(p.dual())
            key = canonical_key(q)
            if key not in found:
                # the dual of a certified excluded minor is one as well
                found[key] = q
                dual_added += 1
    names = {canonical_key(e.polymatroid): e.name
             for e in _catalog.list_for_k(k) if e.polymatroid.n == n} if k >= 3 else {}
    excluded = tuple((found[key], names.get(key))
                     for key in sorted(found.keys()))
    matches = set(found.keys()) == set(names.keys())
    return SweepReport(k, n, mode, filters.describe(), count, excluded, matches,
                       dual_added, time.monotonic() - start)


# -- decompression check -----------------------------------------------------------

@dataclass(frozen=True)
class DecompressionCheck:
    k: int
    bases: tuple[tuple[str, int, int], ...]  # name, decompressions, excluded among them
    ok: bool


def decompression_report(k: int) -> DecompressionCheck:
    """Enumerate decompressions of the three base excluded minors and certify
    that none is an excluded minor.

    Duality reduces the |E| = 4 check to these three bases: the other two
    catalog entries are their duals, and compression commutes with duality.
    """
    rows = []
    ok = True
    for name in ("U_{2,4}", "Ex_{(3,0,1)}^{k+1}", "Ex_{(2,0,2)}^{2k}"):
        base = _catalog.build(name, k).polymatroid
        decs = enumerate_decompressions(base, "d", ranks_d={k - 1, k})
        bad = sum(1 for dec in decs if _excluded_fast(dec.polymatroid))
        rows.append((name, len(decs), bad))
        if bad:
            ok = False
    return DecompressionCheck(k, tuple(rows), ok)


def verify_no_decompression_excluded(k: int) -> bool:
    return decompression_report(k).ok
