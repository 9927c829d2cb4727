"""Sections of the structure sheaf and the structure algebra Z.

A family (z_x) indexed by the vertices is a section iff for every edge
x -- y the label divides z_x - z_y.  The stalks S/l(E)S are never built;
the canonical surjections are the remainder computations in ``poly``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import poly
from .graph import Edge, MomentGraph, VertexId, graph_from_json, graph_to_json, parse_vertex, vertex_key, vertex_name
from .poly import ONE, ZERO, Poly2


class GraphMismatch(ValueError):
    pass


class NotASubgraph(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    edge: Edge
    remainder: Poly2

    def to_json(self) -> dict:
        return {
            "src": vertex_name(self.edge.src),
            "dst": vertex_name(self.edge.dst),
            "label": str(self.edge.label),
            "remainder": poly.poly_to_json(self.remainder),
        }


def _edge_key(e: Edge):
    return (vertex_key(e.src), vertex_key(e.dst))


def check_section(graph: MomentGraph, entries: Mapping[VertexId, Poly2]) -> list[Violation]:
    """All violated edge congruences, sorted by edge; empty means ok."""
    missing = [v for v in graph.vertices if v not in entries]
    if missing:
        raise ValueError(f"entries missing for vertices {[vertex_name(v) for v in missing]}")
    out = []
    for e in graph.edges:
        r = poly.remainder_linear(entries[e.src] - entries[e.dst], e.label)
        if r:
            out.append(Violation(e, r))
    out.sort(key=lambda v: _edge_key(v.edge))
    return out


def is_section(graph: MomentGraph, entries: Mapping[VertexId, Poly2]) -> bool:
    return not check_section(graph, entries)


@dataclass(frozen=True, eq=False)
class Section:
    graph: MomentGraph
    entries: Mapping[VertexId, Poly2]

    def __post_init__(self):
        extra = set(self.entries) - set(self.graph.vertices)
        if extra:
            raise ValueError(f"entries for unknown vertices {sorted(map(vertex_name, extra))}")
        full = {v: self.entries.get(v, ZERO) for v in self.graph.vertices}
        object.__setattr__(self, "entries", full)

    def __getitem__(self, v: VertexId) -> Poly2:
        return self.entries[v]

    def violations(self) -> list[Violation]:
        return check_section(self.graph, self.entries)

    def is_valid(self) -> bool:
        return not self.violations()

    def is_zero(self) -> bool:
        return not any(self.entries.values())

    def _pair(self, other: Section) -> None:
        if other.graph != self.graph:
            raise GraphMismatch("sections live on different graphs")

    def __add__(self, other: Section) -> Section:
        self._pair(other)
        return Section(self.graph, {v: p + other.entries[v] for v, p in self.entries.items()})

    def __sub__(self, other: Section) -> Section:
        self._pair(other)
        return Section(self.graph, {v: p - other.entries[v] for v, p in self.entries.items()})

    def __neg__(self) -> Section:
        return Section(self.graph, {v: -p for v, p in self.entries.items()})

    def __mul__(self, other):
        if isinstance(other, Section):
            self._pair(other)
            return Section(self.graph, {v: p * other.entries[v] for v, p in self.entries.items()})
        return self.scalar_mul(other)

    __rmul__ = __mul__

    def scalar_mul(self, f) -> Section:
        """Diagonal action of S."""
        if not isinstance(f, Poly2):
            f = Poly2.const(f)
        return Section(self.graph, {v: f * p for v, p in self.entries.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Section):
            return NotImplemented
        return self.graph == other.graph and self.entries == other.entries

    def __hash__(self):
        return hash((self.graph, frozenset(self.entries.items())))

    def specialize_c0(self) -> dict[VertexId, poly.FinPoly]:
        return {v: poly.specialize_c0(p) for v, p in self.entries.items()}


def section_arith(op: str, s: Section, t) -> Section:
    if op == "add":
        return s + t
    if op == "mul":
        if not isinstance(t, Section):
            raise TypeError("mul expects two sections; use scalar_mul for S")
        return s * t
    if op == "scalar_mul":
        return s.scalar_mul(t)
    raise ValueError(f"unknown op {op!r}")


def zero_section(graph: MomentGraph) -> Section:
    return Section(graph, {})


def constant_section(graph: MomentGraph, value=ONE) -> Section:
    if not isinstance(value, Poly2):
        value = Poly2.const(value)
    return Section(graph, {v: value for v in graph.vertices})


def vertex_generator(graph: MomentGraph, x: VertexId) -> Section:
    """Section supported at ``x`` whose entry is the product of incident labels."""
    if x not in graph.vertices:
        raise KeyError(f"unknown vertex {vertex_name(x)}")
    entry = poly.product(e.label.to_poly() for e in graph.incident(x))
    return Section(graph, {x: entry})


def restrict(s: Section, subgraph: MomentGraph) -> Section:
    if not subgraph.is_subgraph_of(s.graph):
        raise NotASubgraph("target is not a subgraph of the section's graph")
    return Section(subgraph, {v: s.entries[v] for v in subgraph.vertices})


def section_to_json(s: Section, full_graph: bool = True) -> dict:
    g = graph_to_json(s.graph) if full_graph else {"kind": s.graph.kind, "param": s.graph.param}
    return {
        "graph": g,
        "entries": {
            vertex_name(v): poly.poly_to_json(s.entries[v]) for v in sorted(s.graph.vertices, key=vertex_key)
        },
    }


def section_from_json(obj: dict) -> Section:
    graph = graph_from_json(obj["graph"])
    entries = {parse_vertex(k): poly.poly_from_json(p) for k, p in obj["entries"].items()}
    missing = set(graph.vertices) - set(entries)
    if missing:
        raise ValueError(f"entries missing for vertices {sorted(map(vertex_name, missing))}")
    return Section(graph, entries)
