"""Binary membership of natural-matroid minors, decided by two independent routes.

Route one searches for a four-point rank-2 minor (the unique obstruction to
binary representability) over per-class clone counts.  Route two builds a
candidate GF(2) representation from a greedy basis and fundamental circuits,
then verifies it against the rank oracle on every point subset.  The two must
agree; disagreement is an internal bug, not a data condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from pml.natural import (
    CloneMinorSpec,
    NaturalOracle,
    PointView,
    clone_label,
    count_rank_table,
    simplified_natural,
)


class OracleDisagreementError(RuntimeError):
    """The minor search and the representation builder returned opposite verdicts."""


# -- GF(2) matrices ------------------------------------------------------------

@dataclass(frozen=True)
class Gf2Matrix:
    """Bit-packed binary matrix with labelled columns.

    ``columns[j]`` is an integer whose bit i is the entry in row i, column j.
    """

    rows: int
    labels: tuple[str, ...]
    columns: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate column labels")
        if len(self.columns) != len(self.labels):
            raise ValueError("one column per label required")
        for c in self.columns:
            if c < 0 or c >> self.rows:
                raise ValueError(f"column value {c} out of range for {self.rows} rows")

    @property
    def cols(self) -> int:
        return len(self.columns)

    def column(self, label: str) -> int:
        return self.columns[self.labels.index(label)]

    def entry(self, row: int, label: str) -> int:
        return self.column(label) >> row & 1


def gf2_rank(columns: Sequence[int]) -> int:
    """Rank over GF(2) of a family of bit-packed column vectors."""
    basis: list[int] = []
    for v in columns:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def gf2_rank_of(m: Gf2Matrix, labels: Iterable[str]) -> int:
    return gf2_rank([m.column(lab) for lab in labels])


def gf2_all_subset_ranks(columns: Sequence[int], rows: int) -> np.ndarray:
    """Ranks of every column subset, indexed by column bitmask.

    Incremental elimination, vectorized over subsets: layer i holds, for each
    subset of the first i columns, a reduced basis (one row per pivot).
    """
    n = len(columns)
    if n > 20:
        return _gf2_all_subset_ranks_dfs(columns, rows)
    ranks = np.zeros(1, dtype=np.int64)
    basis = np.zeros((1, rows), dtype=np.int64)
    for i, col in enumerate(columns):
        v = np.full(1 << i, col, dtype=np.int64)
        for p in range(rows - 1, -1, -1):
            v ^= basis[:, p] * (v >> p & 1)
        newranks = ranks + (v != 0)
        newbasis = basis.copy()
        if rows:
            piv = np.full(1 << i, -1, dtype=np.int64)
            for p in range(rows - 1, -1, -1):
                piv[(piv < 0) & (v >> p & 1 == 1)] = p
            nz = piv >= 0
            newbasis[np.flatnonzero(nz), piv[nz]] = v[nz]
        ranks = np.concatenate([ranks, newranks])
        basis = np.concatenate([basis, newbasis], axis=0)
    return ranks


def _gf2_all_subset_ranks_dfs(columns: Sequence[int], rows: int) -> np.ndarray:
    out = np.zeros(1 << len(columns), dtype=np.int64)
    n = len(columns)

    def go(i: int, mask: int, basis: list[int], rank: int) -> None:
        if i == n:
            out[mask] = rank
            return
        go(i + 1, mask, basis, rank)
        v = columns[i]
        for b in basis:
            v = min(v, v ^ b)
        if v:
            nb = sorted(basis + [v], reverse=True)
            go(i + 1, mask | 1 << i, nb, rank + 1)
        else:
            go(i + 1, mask | 1 << i, basis, rank)

    go(0, 0, [], 0)
    return out


# -- matrix text format --------------------------------------------------------

def parse_matrix(text: str) -> Gf2Matrix:
    """Parse the ``gf2 <rows> <cols>`` text format."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix document")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "gf2":
        raise ValueError(f"bad header {lines[0]!r}, expected 'gf2 <rows> <cols>'")
    try:
        rows, cols = int(head[1]), int(head[2])
    except ValueError:
        raise ValueError(f"bad dimensions in header {lines[0]!r}") from None
    if rows < 0 or cols < 0:
        raise ValueError("dimensions must be nonnegative")
    if len(lines) < 2:
        raise ValueError("missing column label line")
    labels = tuple(lines[1].split())
    if len(labels) != cols:
        raise ValueError(f"{len(labels)} column labels for {cols} columns")
    body = lines[2:]
    if len(body) != rows:
        raise ValueError(f"{len(body)} data rows, header declares {rows}")
    columns = [0] * cols
    for r, line in enumerate(body):
        line = line.strip()
        if len(line) != cols or set(line) - {"0", "1"}:
            raise ValueError(f"row {r + 1}: expected {cols} characters of 0/1, got {line!r}")
        for j, ch in enumerate(line):
            if ch == "1":
                columns[j] |= 1 << r
    return Gf2Matrix(rows, labels, tuple(columns))


def serialize_matrix(m: Gf2Matrix) -> str:
    lines = [f"gf2 {m.rows} {m.cols}", " ".join(m.labels)]
    for r in range(m.rows):
        lines.append("".join(str(c >> r & 1) for c in m.columns))
    return "\n".join(lines) + "\n"


# -- the four-point obstruction search -----------------------------------------

@dataclass(frozen=True)
class U24Witness:
    """A certified four-point line minor: contract the counted clones per class,
    keep the four named clones, delete everything else."""

    contracted: tuple[int, ...]
    points: tuple[str, str, str, str]

    def replay(self, o: NaturalOracle) -> bool:
        """Re-check the witness rank pattern against a fresh oracle."""
        contracted: list[str] = []
        for i, lab in enumerate(o.base.labels):
            lo = o.contracted[i] + o.deleted[i]
            contracted.extend(clone_label(lab, j)
                              for j in range(lo + 1, lo + 1 + self.contracted[i]))
        base = o.rank(contracted)
        pts = list(self.points)
        if any(o.rank(contracted + [p]) - base != 1 for p in pts):
            return False
        if any(o.rank(contracted + [p, q]) - base != 2
               for p, q in itertools.combinations(pts, 2)):
            return False
        return o.rank(contracted + pts) - base == 2


class _FastCountRank:
    """Flat-list view of a count-rank table for tight search loops."""

    def __init__(self, o: NaturalOracle):
        table = count_rank_table(o.base)
        self.flat = table.reshape(-1).tolist() if o.base.n else [int(table)]
        self.strides = []
        acc = 1
        for _ in range(o.base.n):
            self.strides.insert(0, acc)
            acc *= o.k + 1
        self.base_idx = sum(c * s for c, s in zip(o.contracted, self.strides))
        self.base_rank = self.flat[self.base_idx]

    def rank(self, idx: int) -> int:
        return self.flat[idx] - self.base_rank


def find_u24_minor(o: NaturalOracle) -> Optional[U24Witness]:
    """Search for a four-point line minor over per-class clone counts.

    Any such minor can be normalized, class by class, to contract some c_e
    lowest clones, keep s_e <= 4 of the next ones, and delete the rest; only
    the counts matter because clones of a class are interchangeable.
    """
    n = o.base.n
    if n == 0:
        return None
    fast = _FastCountRank(o)
    strides = fast.strides
    avail = [o.available(lab) for lab in o.base.labels]

    # spec per element: contracted count c, kept count s.
    choices: list[list[tuple[int, int]]] = []
    for i in range(n):
        opts = [(c, s) for c in range(avail[i] + 1)
                for s in range(min(4, avail[i] - c) + 1)]
        choices.append(opts)

    for combo in itertools.product(*choices):
        if sum(s for _, s in combo) != 4:
            continue
        cidx = fast.base_idx
        for i, (c, _) in enumerate(combo):
            cidx += c * strides[i]
        r0 = fast.flat[cidx]
        ok = True
        singles = [i for i, (_, s) in enumerate(combo) if s >= 1]
        for i in singles:
            if fast.flat[cidx + strides[i]] - r0 != 1:
                ok = False
                break
        if not ok:
            continue
        for i in singles:
            if combo[i][1] >= 2 and fast.flat[cidx + 2 * strides[i]] - r0 != 2:
                ok = False
                break
        if not ok:
            continue
        for i, j in itertools.combinations(singles, 2):
            if fast.flat[cidx + strides[i] + strides[j]] - r0 != 2:
                ok = False
                break
        if not ok:
            continue
        tot = cidx
        for i, (_, s) in enumerate(combo):
            tot += s * strides[i]
        if fast.flat[tot] - r0 != 2:
            continue
        points: list[str] = []
        for i, (c, s) in enumerate(combo):
            lo = o.contracted[i] + o.deleted[i] + c
            lab = o.base.labels[i]
            points.extend(clone_label(lab, j) for j in range(lo + 1, lo + 1 + s))
        return U24Witness(tuple(c for c, _ in combo),
                          (points[0], points[1], points[2], points[3]))
    return None


# -- representations -----------------------------------------------------------

def verify_representation(m: Gf2Matrix, view: PointView) -> bool:
    """Full-sweep check: GF(2) rank of every column subset equals the oracle rank.

    Column labels must be exactly the view's points (any order).
    """
    if set(m.labels) != set(view.points):
        raise ValueError(
            f"column labels {sorted(m.labels)} do not match points {sorted(view.points)}")
    cols = [m.column(lab) for lab in view.points]
    got = gf2_all_subset_ranks(cols, m.rows)
    want = view.all_subset_ranks()
    return bool(np.array_equal(got, want))


def build_representation(view: PointView) -> Optional[Gf2Matrix]:
    """Candidate GF(2) representation from a greedy basis and fundamental circuits.

    Returns the matrix iff the full verification sweep passes; a binary matroid
    is determined by any basis together with its fundamental circuits, so a
    failed sweep certifies nonbinariness.
    """
    n = view.n
    if n > 24:
        raise ValueError(f"{n} points exceed the supported representation size")
    if n == 0:
        return Gf2Matrix(0, (), ())
    ranks = view.all_subset_ranks()
    basis_mask = 0
    basis: list[int] = []
    for j in range(n):
        if ranks[basis_mask | 1 << j] > ranks[basis_mask]:
            basis_mask |= 1 << j
            basis.append(j)
    m = len(basis)
    columns = [0] * n
    for pos, j in enumerate(basis):
        columns[j] = 1 << pos
    full_rank = int(ranks[basis_mask])
    for j in range(n):
        if j in basis:
            continue
        if ranks[basis_mask | 1 << j] != full_rank:
            return None  # point outside the span of a maximal independent set
        col = 0
        for pos, b in enumerate(basis):
            swapped = (basis_mask & ~(1 << b)) | 1 << j
            if ranks[swapped] == full_rank:
                col |= 1 << pos
        columns[j] = col
    matrix = Gf2Matrix(m, tuple(view.points), tuple(columns))
    return matrix if verify_representation(matrix, view) else None


@dataclass(frozen=True)
class BinaryDecision:
    """Verdict plus the evidence from both decision routes."""

    binary: bool
    witness: Optional[U24Witness]
    representation: Optional[Gf2Matrix]


def is_binary(o: NaturalOracle) -> BinaryDecision:
    """Decide binariness by both routes and insist they agree."""
    witness = find_u24_minor(o)
    rep = build_representation(simplified_natural(o))
    if (witness is None) != (rep is not None):
        raise OracleDisagreementError(
            f"witness search says {'binary' if witness is None else 'nonbinary'} "
            f"but representation build says {'binary' if rep is not None else 'nonbinary'} "
            f"for base {o.base!r}")
    return BinaryDecision(witness is None, witness, rep)
