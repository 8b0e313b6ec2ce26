"""Resolution dual graphs and their intersection forms.

Vertices are exceptional curves carrying self-intersection numbers,
edges carry intersection multiplicities.  Negative definiteness is
certified in exact integer arithmetic via leading principal minors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping


class GraphInvariantError(ValueError):
    """A DualGraph invariant is violated; .invariant names the first failure."""

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class ParameterError(ValueError):
    """An ADE type/index pair outside the admissible range."""


@dataclass(frozen=True)
class DualGraph:
    """Weighted dual graph: self-intersections plus edge multiplicities."""

    vertex_count: int
    self_intersections: tuple[int, ...]
    edges: Mapping[tuple[int, int], int]  # key (i, j) with i < j, value >= 1

    def __post_init__(self):
        n = self.vertex_count
        if n < 1:
            raise GraphInvariantError("vertex_count_positive", f"got {n}")
        object.__setattr__(
            self, "self_intersections", tuple(int(w) for w in self.self_intersections)
        )
        if len(self.self_intersections) != n:
            raise GraphInvariantError(
                "self_intersections_length",
                f"expected {n} entries, got {len(self.self_intersections)}",
            )
        for i, w in enumerate(self.self_intersections):
            if w > -1:
                raise GraphInvariantError(
                    "self_intersection_negative",
                    f"vertex {i} has self-intersection {w} > -1",
                )
        clean: dict[tuple[int, int], int] = {}
        for (a, b), m in self.edges.items():
            a, b, m = int(a), int(b), int(m)
            if a == b:
                raise GraphInvariantError("no_self_loops", f"vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise GraphInvariantError(
                    "edge_endpoints_in_range", f"edge ({a},{b})"
                )
            if m < 1:
                raise GraphInvariantError(
                    "edge_multiplicity_positive", f"edge ({a},{b}) has multiplicity {m}"
                )
            key = (min(a, b), max(a, b))
            if key in clean:
                raise GraphInvariantError("edge_unique", f"duplicate edge {key}")
            clean[key] = m
        object.__setattr__(self, "edges", clean)
        if not self._connected():
            raise GraphInvariantError("connected", "graph is not connected")

    def _connected(self) -> bool:
        n = self.vertex_count
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def is_all_minus_two(self) -> bool:
        return all(w == -2 for w in self.self_intersections)


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric integer matrix of pairwise intersection numbers."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        for row in m:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise ValueError("matrix must be symmetric")
                if m[i][j] < 0:
                    raise ValueError("off-diagonal entries must be >= 0")

    @property
    def size(self) -> int:
        return len(self.matrix)

    def entry(self, i: int, j: int) -> int:
        return self.matrix[i][j]


def build_dynkin(type_: str, n: int) -> DualGraph:
    """Standard ADE tree, all self-intersections -2, multiplicities 1.

    Numbering: A_n is the path 0-1-...-(n-1); D_n is the path 0-...-(n-3)
    with leaves (n-2) and (n-1) attached to vertex (n-3); E_n is the path
    0-...-(n-2) with leaf (n-1) attached to vertex 2.
    """
    type_ = type_.upper()
    if type_ == "A":
        if n < 1:
            raise ParameterError(f"A_n requires n >= 1, got {n}")
        edges = {(i, i + 1): 1 for i in range(n - 1)}
    elif type_ == "D":
        if n < 4:
            raise ParameterError(f"D_n requires n >= 4, got {n}")
        edges = {(i, i + 1): 1 for i in range(n - 3)}
        edges[(n - 3, n - 2)] = 1
        edges[(n - 3, n - 1)] = 1
    elif type_ == "E":
        if n not in (6, 7, 8):
            raise ParameterError(f"E_n requires n in {{6,7,8}}, got {n}")
        edges = {(i, i + 1): 1 for i in range(n - 2)}
        edges[(2, n - 1)] = 1
    else:
        raise ParameterError(f"unknown type {type_!r}, expected A, D or E")
    return DualGraph(n, (-2,) * n, edges)


def intersection_form(g: DualGraph) -> IntersectionForm:
    n = g.vertex_count
    m = [[0] * n for _ in range(n)]
    for i, w in enumerate(g.self_intersections):
        m[i][i] = w
    for (a, b), mult in g.edges.items():
        m[a][b] = mult
        m[b][a] = mult
    return IntersectionForm(tuple(tuple(row) for row in m))


def leading_minor_determinants(form: IntersectionForm) -> list[int]:
    """Exact determinants of the k x k leading principal minors, k=1..n.

    Fraction-free Gaussian elimination over the rationals; all
    arithmetic exact.
    """
    return [
        _exact_determinant([row[: k + 1] for row in form.matrix[: k + 1]])
        for k in range(form.size)
    ]


def _exact_determinant(m: list) -> int:
    n = len(m)
    a = [[Fraction(v) for v in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] / inv
            for c in range(col, n):
                a[r][c] -= factor * a[col][c]
    assert det.denominator == 1
    return int(det)


def determinant_cofactor(form: IntersectionForm) -> int:
    """Independent exact determinant by cofactor expansion (memoized on
    column subsets); verification oracle for the elimination route."""
    n = form.size
    m = form.matrix
    cache: dict[int, int] = {}

    def rec(row: int, colmask: int) -> int:
        if row == n:
            return 1
        if colmask in cache:
            return cache[colmask]
        total = 0
        sign = 1
        for j in range(n):
            bit = 1 << j
            if colmask & bit:
                continue
            if m[row][j] != 0:
                total += sign * m[row][j] * rec(row + 1, colmask | bit)
            sign = -sign
        cache[colmask] = total
        return total

    return rec(0, 0)


def is_negative_definite(form: IntersectionForm) -> bool:
    """True iff (-1)^k (k-th leading principal minor) > 0 for all k."""
    for k, det in enumerate(leading_minor_determinants(form), start=1):
        if (det if k % 2 == 0 else -det) <= 0:
            return False
    return True


# -- graph file format --------------------------------------------------------

def graph_to_dict(g: DualGraph) -> dict:
    return {
        "vertices": [
            {"id": i, "self_intersection": w}
            for i, w in enumerate(g.self_intersections)
        ],
        "edges": [
            {"a": a, "b": b, "multiplicity": m}
            for (a, b), m in sorted(g.edges.items())
        ],
    }


def graph_from_dict(doc: dict) -> DualGraph:
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise GraphInvariantError(
            "document_shape", "expected object with 'vertices' and 'edges'"
        )
    vertices = doc["vertices"]
    ids = [v.get("id") for v in vertices]
    if sorted(ids) != list(range(len(vertices))):
        raise GraphInvariantError(
            "vertex_ids_contiguous", f"ids must be 0..{len(vertices) - 1}, got {ids}"
        )
    weights = [0] * len(vertices)
    for v in vertices:
        weights[v["id"]] = v["self_intersection"]
    edges = {}
    for e in doc["edges"]:
        a, b = e["a"], e["b"]
        key = (min(a, b), max(a, b))
        if key in edges:
            raise GraphInvariantError("edge_unique", f"duplicate edge {key}")
        edges[key] = e.get("multiplicity", 1)
    return DualGraph(len(vertices), tuple(weights), edges)


def load_graph(path: str) -> DualGraph:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphInvariantError("json_syntax", str(exc)) from exc
    return graph_from_dict(doc)


def save_graph(g: DualGraph, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_dict(g), fh, indent=2)
        fh.write("\n")
