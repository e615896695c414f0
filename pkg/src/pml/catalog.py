"""Constructors for the named excluded minors of the binary natural-matroid class.

Rank tables are stored literally, cell by cell, so that a transcription error
surfaces in validation or certification instead of being masked by clever
generation.  Superscripts in entry names are the total rank as a function of k.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from pml.core import Polymatroid, singleton, uniform_table


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    k: int
    polymatroid: Polymatroid
    dual_name: str
    total_rank: int


def _pm2(k: int, e: int, f: int, ef: int) -> Polymatroid:
    return Polymatroid(("e", "f"), k, (0, e, f, ef))


def _pm4(k: int, e: int, f: int, g: int, h: int, ef: int, eg: int, fg: int,
         eh: int, fh: int, gh: int, efg: int, efh: int, egh: int, fgh: int,
         efgh: int) -> Polymatroid:
    # table indexed by mask over (e, f, g, h)
    return Polymatroid(("e", "f", "g", "h"), k,
                       (0, e, f, ef, g, eg, fg, efg,
                        h, eh, fh, efh, gh, egh, fgh, efgh))


def u24(k: int) -> Polymatroid:
    """Four collinear points."""
    return uniform_table(("e", "f", "g", "h"), k, 1, 2)


def ex_301(k: int) -> Polymatroid:
    """Three collinear points and a rank-k element spanning rank k+1, no
    point lying on the rank-k element."""
    return _pm4(k, 1, 1, 1, k,
                2, 2, 2, k + 1, k + 1, k + 1,
                2, k + 1, k + 1, k + 1, k + 1)


def ex_202(k: int) -> Polymatroid:
    """Two points and two skew rank-k elements, every mixed pair spanning k+1."""
    return _pm4(k, 1, 1, k, k,
                2, k + 1, k + 1, k + 1, k + 1, 2 * k,
                k + 1, k + 1, 2 * k, 2 * k, 2 * k)


def ex_103(k: int) -> Polymatroid:
    """One point and three pairwise-skew rank-k elements in total rank 3k-1."""
    return _pm4(k, 1, k, k, k,
                k + 1, k + 1, 2 * k, k + 1, 2 * k, 2 * k,
                2 * k, 2 * k, 2 * k, 3 * k - 1, 3 * k - 1)


def ex_004(k: int) -> Polymatroid:
    """Four rank-k elements, pairwise skew, triples at 3k-1, total 4k-2."""
    sizes = (0, k, 2 * k, 3 * k - 1, 4 * k - 2)
    table = tuple(sizes[bin(m).count("1")] for m in range(16))
    return Polymatroid(("e", "f", "g", "h"), k, table)


_SUP_RE = re.compile(r"^(?:(\d*)k)?([+-]?\d+)?$")


def _eval_sup(expr: str, k: int) -> int:
    m = _SUP_RE.match(expr)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ValueError(f"bad superscript {expr!r}")
    coef = 0
    if m.group(1) is not None:
        coef = int(m.group(1)) if m.group(1) else 1
    off = int(m.group(2)) if m.group(2) else 0
    return coef * k + off


def _entries(k: int) -> list[CatalogEntry]:
    if k < 3:
        raise ValueError(f"catalog requires k >= 3, got {k}")
    out: list[CatalogEntry] = []
    for m in range(2, k - 1):
        out.append(CatalogEntry(f"Ex^{m}", k, singleton("e", k, m), f"Ex^{k - m}", m))
    two = [
        ("Ex_alpha^{k-1}", _pm2(k, k - 1, k - 1, k - 1), "Ex_beta^{k+1}"),
        ("Ex_alpha^{k}", _pm2(k, k - 1, k - 1, k), "Ex_alpha^{k}"),
        ("Ex_beta^{k}", _pm2(k, k, k, k), "Ex_beta^{k}"),
        ("Ex_beta^{k+1}", _pm2(k, k, k, k + 1), "Ex_alpha^{k-1}"),
        ("Ex_epsilon^{k}", _pm2(k, k - 1, k, k), "Ex_epsilon^{k}"),
    ]
    if k == 3:
        two += [
            ("Ex_gamma^{2}", _pm2(k, 1, 2, 2), "Ex_epsilon^{4}"),
            ("Ex_epsilon^{4}", _pm2(k, 2, 3, 4), "Ex_gamma^{2}"),
        ]
    for name, pm, dual in two:
        out.append(CatalogEntry(name, k, pm, dual, pm.total_rank))
    four = [
        ("U_{2,4}", u24(k), "Ex_{(0,0,4)}^{4k-2}"),
        ("Ex_{(3,0,1)}^{k+1}", ex_301(k), "Ex_{(1,0,3)}^{3k-1}"),
        ("Ex_{(2,0,2)}^{2k}", ex_202(k), "Ex_{(2,0,2)}^{2k}"),
        ("Ex_{(1,0,3)}^{3k-1}", ex_103(k), "Ex_{(3,0,1)}^{k+1}"),
        ("Ex_{(0,0,4)}^{4k-2}", ex_004(k), "U_{2,4}"),
    ]
    for name, pm, dual in four:
        out.append(CatalogEntry(name, k, pm, dual, pm.total_rank))
    return out


def _normalize(name: str) -> str:
    return name.replace("{", "").replace("}", "").replace(" ", "")


def _aliases(entry: CatalogEntry) -> set[str]:
    out = {_normalize(entry.name)}
    head, sep, sup = entry.name.rpartition("^")
    if sep:
        sup = sup.strip("{}")
        try:
            value = _eval_sup(sup, entry.k)
        except ValueError:
            value = None
        if value is not None:
            out.add(_normalize(f"{head}^{value}"))
    if entry.name == "U_{2,4}":
        out |= {"U_2,4", "U24", _normalize(f"Ex_(4,0,0)^2")}
    return out


def list_for_k(k: int) -> list[CatalogEntry]:
    """Complete list of excluded minors for the given k; 12 at k=3, k+7 beyond."""
    return _entries(k)


def expected_count(k: int) -> int:
    if k < 3:
        raise ValueError(f"expected_count requires k >= 3, got {k}")
    return 12 if k == 3 else k + 7


def build(name: str, k: int) -> CatalogEntry:
    """Look up a catalog entry by name; superscripts may be symbolic or numeric."""
    want = _normalize(name)
    for entry in _entries(k):
        if want in _aliases(entry):
            return entry
    raise KeyError(f"no catalog entry named {name!r} for k={k}")


def names_for_k(k: int) -> list[str]:
    return [entry.name for entry in _entries(k)]
