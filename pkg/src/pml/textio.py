"""Text document format for polymatroids.

    polymatroid v1
    k 3
    ground e f g h
    rank - 0
    rank e 1
    rank e,f 2
    ...

Every nonempty subset appears exactly once as a comma-separated label list;
``-`` denotes the empty set, whose line is optional and must read 0.
Serialization emits subsets by size, then by ground order within a size.
"""

from __future__ import annotations

from pml.core import Polymatroid


class DocumentError(ValueError):
    """Parse failure, carrying the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def serialize(p: Polymatroid) -> str:
    lines = ["polymatroid v1", f"k {p.k}", "ground " + " ".join(p.labels)]
    masks = sorted(range(1, 1 << p.n), key=lambda m: (bin(m).count("1"), _order_key(p, m)))
    for mask in masks:
        subset = ",".join(lab for i, lab in enumerate(p.labels) if mask >> i & 1)
        lines.append(f"rank {subset} {p.table[mask]}")
    return "\n".join(lines) + "\n"


def _order_key(p: Polymatroid, mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(p.n) if mask >> i & 1)


def parse(text: str) -> Polymatroid:
    lines = text.splitlines()
    rows: list[tuple[int, str]] = [(i + 1, ln.strip()) for i, ln in enumerate(lines)
                                   if ln.strip()]
    if not rows:
        raise DocumentError(1, "empty document")
    ln, header = rows[0]
    if header != "polymatroid v1":
        raise DocumentError(ln, f"expected 'polymatroid v1', got {header!r}")
    if len(rows) < 3:
        raise DocumentError(rows[-1][0], "missing k or ground line")
    ln, kline = rows[1]
    parts = kline.split()
    if len(parts) != 2 or parts[0] != "k":
        raise DocumentError(ln, f"expected 'k <int>', got {kline!r}")
    try:
        k = int(parts[1])
    except ValueError:
        raise DocumentError(ln, f"bad integer {parts[1]!r}") from None
    if k < 1:
        raise DocumentError(ln, f"k must be positive, got {k}")
    ln, gline = rows[2]
    gparts = gline.split()
    if len(gparts) < 2 or gparts[0] != "ground":
        raise DocumentError(ln, f"expected 'ground <label>...', got {gline!r}")
    labels = tuple(gparts[1:])
    if len(set(labels)) != len(labels):
        raise DocumentError(ln, f"duplicate ground labels in {gline!r}")
    for lab in labels:
        if any(c in lab for c in ",#"):
            raise DocumentError(ln, f"bad label {lab!r}")
    n = len(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    table: dict[int, int] = {}
    last_line = rows[2][0]
    for ln, line in rows[3:]:
        last_line = ln
        parts = line.split()
        if len(parts) != 3 or parts[0] != "rank":
            raise DocumentError(ln, f"expected 'rank <subset> <int>', got {line!r}")
        subset, value = parts[1], parts[2]
        try:
            r = int(value)
        except ValueError:
            raise DocumentError(ln, f"bad integer {value!r}") from None
        if r < 0:
            raise DocumentError(ln, f"rank must be nonnegative, got {r}")
        if subset == "-":
            mask = 0
            if r != 0:
                raise DocumentError(ln, f"empty set must have rank 0, got {r}")
        else:
            mask = 0
            for lab in subset.split(","):
                if lab not in index:
                    raise DocumentError(ln, f"unknown label {lab!r}")
                bit = 1 << index[lab]
                if mask & bit:
                    raise DocumentError(ln, f"repeated label {lab!r} in subset")
                mask |= bit
        if mask in table:
            raise DocumentError(ln, f"duplicate subset {subset!r}")
        table[mask] = r
    missing = [m for m in range(1, 1 << n) if m not in table]
    if missing:
        names = ",".join(labels[i] for i in range(n) if missing[0] >> i & 1)
        raise DocumentError(last_line + 1,
                            f"missing rank line for subset {names!r}"
                            + (f" and {len(missing) - 1} more" if len(missing) > 1 else ""))
    table.setdefault(0, 0)
    return Polymatroid(labels, k, tuple(table[m] for m in range(1 << n)))
