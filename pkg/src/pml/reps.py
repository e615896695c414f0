"""Reference GF(2) representations shipped as verification fixtures.

Five matrix patterns, parameterized by k, around the two-points/two-spans
excluded minor Ex_{(2,0,2)}^{2k}: representations of the natural matroids of
its two in-class siblings (same type and total rank, one rank cell away), and
of its delete-point, contract-point and contract-span minors.  Each pattern
comes with the labelled point family it represents.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from pml.binary import Gf2Matrix, serialize_matrix
from pml.catalog import _pm4, ex_202
from pml.core import Polymatroid
from pml.natural import NaturalOracle, PointView, clone_label, points_view, simplified_natural


def sibling_overlap(k: int) -> Polymatroid:
    """In-class neighbour of Ex_{(2,0,2)}^{2k}: the two rank-k spans overlap
    (their union has rank 2k-1)."""
    return _pm4(k, 1, 1, k, k,
                2, k + 1, k + 1, k + 1, k + 1, 2 * k - 1,
                k + 1, k + 1, 2 * k, 2 * k, 2 * k)


def sibling_incident(k: int) -> Polymatroid:
    """In-class neighbour of Ex_{(2,0,2)}^{2k}: one point lies in a rank-k span
    (pair rank k instead of k+1)."""
    return _pm4(k, 1, 1, k, k,
                2, k + 1, k + 1, k + 1, k, 2 * k,
                k + 1, k + 1, 2 * k, 2 * k, 2 * k)


def _cols(labels: list[str], rows_of: dict[str, list[int]], rows: int) -> Gf2Matrix:
    columns = []
    for lab in labels:
        v = 0
        for r in rows_of[lab]:
            v |= 1 << r
        columns.append(v)
    return Gf2Matrix(rows, tuple(labels), tuple(columns))


def _point_labels(k: int, *elements: str) -> list[str]:
    out = []
    for spec in elements:
        if spec.endswith("*"):
            out.extend(clone_label(spec[:-1], i) for i in range(1, k + 1))
        else:
            out.append(clone_label(spec, 1))
    return out


def matrix_sibling_overlap(k: int) -> Gf2Matrix:
    """2k x (2k+2): two chained span blocks sharing a row with the second point."""
    labels = _point_labels(k, "e", "f", "g*", "h*")
    rows: dict[str, list[int]] = {lab: [] for lab in labels}
    rows[clone_label("e", 1)] = [0]
    rows[clone_label("f", 1)] = [0, 1]
    rows[clone_label("g", 1)].append(1)
    rows[clone_label("h", 1)].append(1)
    for j in range(1, k):  # chain rows: g_j + g_{j+1} at row j+1
        rows[clone_label("g", j)].append(j + 1)
        rows[clone_label("g", j + 1)].append(j + 1)
    for j in range(1, k):  # chain rows: h_j + h_{j+1} at row k+j
        rows[clone_label("h", j)].append(k + j)
        rows[clone_label("h", j + 1)].append(k + j)
    return _cols(labels, rows, 2 * k)


def matrix_sibling_incident(k: int) -> Gf2Matrix:
    """2k x (2k+2): unit span columns; one point column is the sum of a span."""
    labels = _point_labels(k, "e", "f", "g*", "h*")
    rows: dict[str, list[int]] = {lab: [] for lab in labels}
    rows[clone_label("e", 1)] = list(range(2 * k))
    rows[clone_label("f", 1)] = list(range(k, 2 * k))
    for j in range(1, k + 1):
        rows[clone_label("g", j)] = [j - 1]
        rows[clone_label("h", j)] = [k + j - 1]
    return _cols(labels, rows, 2 * k)


def matrix_minor_delete_point(k: int) -> Gf2Matrix:
    """2k x (2k+1): representation after deleting one point of the excluded minor."""
    labels = _point_labels(k, "f", "g*", "h*")
    rows: dict[str, list[int]] = {lab: [] for lab in labels}
    rows[clone_label("f", 1)] = list(range(2 * k))
    for j in range(1, k + 1):
        rows[clone_label("g", j)] = [j - 1]
        rows[clone_label("h", j)] = [k + j - 1]
    return _cols(labels, rows, 2 * k)


def matrix_minor_contract_point(k: int) -> Gf2Matrix:
    """(2k-1) x (2k+1): representation after contracting one point."""
    labels = _point_labels(k, "f", "g*", "h*")
    rows: dict[str, list[int]] = {lab: [] for lab in labels}
    rows[clone_label("f", 1)] = [0]
    rows[clone_label("g", 1)].append(0)
    rows[clone_label("h", 1)].append(0)
    for j in range(1, k):  # g_j + g_{j+1} at row j
        rows[clone_label("g", j)].append(j)
        rows[clone_label("g", j + 1)].append(j)
    for j in range(1, k):  # h_j + h_{j+1} at row k-1+j
        rows[clone_label("h", j)].append(k - 1 + j)
        rows[clone_label("h", j + 1)].append(k - 1 + j)
    return _cols(labels, rows, 2 * k - 1)


def matrix_minor_contract_span(k: int) -> Gf2Matrix:
    """k x (k+2): after contracting a rank-k span the two points become parallel,
    both printed as the sum of the remaining span's units."""
    labels = _point_labels(k, "e", "f", "h*")
    rows: dict[str, list[int]] = {lab: [] for lab in labels}
    rows[clone_label("e", 1)] = list(range(k))
    rows[clone_label("f", 1)] = list(range(k))
    for j in range(1, k + 1):
        rows[clone_label("h", j)] = [j - 1]
    return _cols(labels, rows, k)


@dataclass(frozen=True)
class RepFixture:
    name: str
    k: int
    matrix: Gf2Matrix
    view: PointView


def rep_fixtures(k: int) -> list[RepFixture]:
    """The five shipped (matrix, point family) pairs for one value of k."""
    base = ex_202(k)
    out = [
        RepFixture("ex202-sibling-overlap", k, matrix_sibling_overlap(k),
                   simplified_natural(NaturalOracle(sibling_overlap(k)))),
        RepFixture("ex202-sibling-incident", k, matrix_sibling_incident(k),
                   simplified_natural(NaturalOracle(sibling_incident(k)))),
        RepFixture("ex202-minor-delete-point", k, matrix_minor_delete_point(k),
                   simplified_natural(NaturalOracle(base.delete(["e"])))),
        RepFixture("ex202-minor-contract-point", k, matrix_minor_contract_point(k),
                   simplified_natural(NaturalOracle(base.contract(["e"])))),
        # After contracting g the points e and f are parallel; the printed
        # matrix keeps both, so pin its point family explicitly.
        RepFixture("ex202-minor-contract-span", k, matrix_minor_contract_span(k),
                   points_view(NaturalOracle(base.contract(["g"])),
                               _point_labels(k, "e", "f", "h*"))),
    ]
    return out


def fixture_filename(name: str, k: int) -> str:
    return f"gf2_{name.replace('-', '_')}_k{k}.txt"


def write_fixture_files(directory: str, ks: tuple[int, ...] = (3, 4, 5, 6)) -> list[str]:
    """Write every fixture matrix for the given k values; returns the paths."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for k in ks:
        for fx in rep_fixtures(k):
            path = os.path.join(directory, fixture_filename(fx.name, k))
            with open(path, "w", encoding="ascii") as fh:
                fh.write(serialize_matrix(fx.matrix))
            paths.append(path)
    return paths
