"""Moment graphs over the lattice Z*alpha + Z*c and the affine sl2 examples.

Three constructors are provided, all truncated to a finite window:

* ``build_parabolic(N)``: vertices n*alpha, 1 <= |n| <= N, complete graph.
* ``build_stable(N)``: same vertices, only edges between opposite columns
  (positive n to negative n').
* ``build_regular(L)``: reduced words in s0, s1 of length <= L.

Vertex ids are nonzero ints for the first two and tuples of 0/1 letters
for the regular graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Union

from .poly import LinearForm

VertexId = Union[int, tuple[int, ...]]

KINDS = ("parabolic", "stable", "regular", "custom")


class Edge(NamedTuple):
    src: VertexId
    dst: VertexId
    label: LinearForm


def parabolic_label(n: int, n2: int) -> LinearForm:
    """Label of the edge n*alpha -- n2*alpha in the parabolic graph."""
    if n == n2:
        raise ValueError("parabolic_label needs distinct vertices")
    s = n + n2
    if s > 0:
        return LinearForm(-1, s)
    return LinearForm(1, -s)


def bruhat_leq(n: int, n2: int) -> bool:
    # n < n2  iff  |n| < |n2|  xor  n2 == -n < 0
    if n == n2:
        return True
    return (abs(n) < abs(n2)) != (n2 == -n and n2 < 0)


def word_length_leq(x: tuple[int, ...], y: tuple[int, ...]) -> bool:
    """Bruhat order of the infinite dihedral group."""
    return x == y or len(x) < len(y)


def vertex_key(v: VertexId):
    if isinstance(v, tuple):
        return (len(v), v)
    return (abs(v), v < 0)


def vertex_name(v: VertexId) -> str:
    """Serialized key: "1", "-1" for lattice vertices, "e"/"s0s1" for words."""
    if isinstance(v, tuple):
        return "".join(f"s{i}" for i in v) or "e"
    return str(v)


def parse_vertex(name: str | int) -> VertexId:
    if isinstance(name, int):
        return name
    if name == "e":
        return ()
    if name.startswith("s"):
        letters = name.split("s")[1:]
        word = tuple(int(x) for x in letters)
        if any(x not in (0, 1) for x in word):
            raise ValueError(f"bad word {name!r}")
        return word
    return int(name)


@dataclass(frozen=True)
class MomentGraph:
    kind: str
    param: int
    vertices: tuple[VertexId, ...]
    edges: tuple[Edge, ...]
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown graph kind {self.kind!r}")
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertices")
        index: dict[frozenset, Edge] = {}
        for e in self.edges:
            if e.src not in vset or e.dst not in vset:
                raise ValueError(f"edge {e} leaves the vertex set")
            if e.src == e.dst:
                raise ValueError(f"loop at {e.src}")
            key = frozenset((e.src, e.dst))
            if key in index:
                raise ValueError(f"multiple edges between {e.src} and {e.dst}")
            if not self.leq(e.src, e.dst):
                raise ValueError(f"edge {e.src} -> {e.dst} against the order")
            index[key] = e
        object.__setattr__(self, "_index", index)

    def leq(self, x: VertexId, y: VertexId) -> bool:
        if self.kind == "regular":
            return word_length_leq(x, y)
        return bruhat_leq(x, y)

    def edge_between(self, x: VertexId, y: VertexId) -> Edge | None:
        return self._index.get(frozenset((x, y)))

    def incident(self, x: VertexId) -> list[Edge]:
        return [e for e in self.edges if x in (e.src, e.dst)]

    def with_edges(self, extra: Iterable[Edge]) -> MomentGraph:
        """A copy with additional edges (used to probe alternative edge sets)."""
        return MomentGraph(self.kind, self.param, self.vertices, self.edges + tuple(extra))

    def is_subgraph_of(self, other: MomentGraph) -> bool:
        if not set(self.vertices) <= set(other.vertices):
            return False
        return all(other.edge_between(e.src, e.dst) == e for e in self.edges)


def _lattice_vertices(N: int) -> tuple[int, ...]:
    return tuple(v for n in range(1, N + 1) for v in (n, -n))


def _oriented(n: int, n2: int) -> Edge:
    label = parabolic_label(n, n2)
    if bruhat_leq(n, n2):
        return Edge(n, n2, label)
    return Edge(n2, n, label)


@lru_cache(maxsize=64)
def build_parabolic(N: int) -> MomentGraph:
    if N < 1:
        raise ValueError("truncation N must be >= 1")
    verts = _lattice_vertices(N)
    edges = []
    for i, x in enumerate(verts):
        for y in verts[i + 1:]:
            edges.append(_oriented(x, y))
    return MomentGraph("parabolic", N, verts, tuple(edges))


@lru_cache(maxsize=64)
def build_stable(N: int) -> MomentGraph:
    if N < 1:
        raise ValueError("truncation N must be >= 1")
    verts = _lattice_vertices(N)
    edges = [_oriented(p, -q) for p in range(1, N + 1) for q in range(1, N + 1)]
    edges.sort(key=lambda e: (vertex_key(e.src), vertex_key(e.dst)))
    return MomentGraph("stable", N, verts, tuple(edges))


def reduce_word(word: Iterable[int]) -> tuple[int, ...]:
    """Free reduction in the infinite dihedral group (s_i^2 = 1)."""
    out: list[int] = []
    for s in word:
        if out and out[-1] == s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def reflection_word(sign: int, n: int) -> tuple[int, ...]:
    """Word for s_beta, beta = -alpha + n*delta (sign -1, n >= 1) or alpha + n*delta (sign +1, n >= 0)."""
    if sign < 0:
        if n < 1:
            raise ValueError("-alpha + n*delta is positive only for n >= 1")
        return (0, 1) * (n - 1) + (0,)
    if n < 0:
        raise ValueError("alpha + n*delta is positive only for n >= 0")
    return (1, 0) * n + (1,)


def reflection_coroot(word: tuple[int, ...]) -> LinearForm:
    """Coroot of the reflection with the given (odd length) reduced word."""
    if len(word) % 2 == 0:
        raise ValueError(f"{vertex_name(word)} is not a reflection")
    if word[0] == 0:
        return LinearForm(-1, (len(word) + 1) // 2)
    return LinearForm(1, (len(word) - 1) // 2)


@lru_cache(maxsize=64)
def build_regular(L: int) -> MomentGraph:
    if L < 0:
        raise ValueError("truncation L must be >= 0")
    verts: list[tuple[int, ...]] = [()]
    for m in range(1, L + 1):
        verts.append(tuple((i % 2) for i in range(m)))       # starts with s0
        verts.append(tuple(((i + 1) % 2) for i in range(m)))  # starts with s1
    edges = []
    # every reflection of length <= 2L - 1 is enough to connect words of length <= L
    reflections = [reflection_word(-1, n) for n in range(1, L + 1)]
    reflections += [reflection_word(1, n) for n in range(0, L)]
    vset = set(verts)
    for x in verts:
        for r in reflections:
            y = reduce_word(r + x)
            if y in vset and len(x) < len(y):
                edges.append(Edge(x, y, reflection_coroot(r)))
    edges.sort(key=lambda e: (vertex_key(e.src), vertex_key(e.dst)))
    return MomentGraph("regular", L, tuple(verts), tuple(edges))


def _dot_name(g: MomentGraph, v: VertexId) -> str:
    if isinstance(v, tuple):
        return vertex_name(v)
    return f"{v}a"


def export_dot(g: MomentGraph) -> str:
    lines = [f"digraph {g.kind}_{g.param} {{"]
    for v in sorted(g.vertices, key=vertex_key):
        lines.append(f'  "{_dot_name(g, v)}";')
    for e in sorted(g.edges, key=lambda e: (vertex_key(e.src), vertex_key(e.dst))):
        lines.append(f'  "{_dot_name(g, e.src)}" -> "{_dot_name(g, e.dst)}" [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _label_json(f: LinearForm) -> dict:
    return {"a": int(f.a), "b": int(f.b)}


def _vertex_json(v: VertexId):
    return vertex_name(v) if isinstance(v, tuple) else v


def graph_to_json(g: MomentGraph) -> dict:
    return {
        "kind": g.kind,
        "param": g.param,
        "vertices": [_vertex_json(v) for v in g.vertices],
        "edges": [
            {"src": _vertex_json(e.src), "dst": _vertex_json(e.dst), "label": _label_json(e.label)}
            for e in g.edges
        ],
    }


_BUILDERS = {"parabolic": build_parabolic, "stable": build_stable, "regular": build_regular}


def graph_from_json(obj: dict) -> MomentGraph:
    """Decode a graph; a bare ``{"kind", "param"}`` reference is rebuilt."""
    kind, param = obj["kind"], int(obj["param"])
    if "edges" not in obj:
        return _BUILDERS[kind](param)
    verts = tuple(parse_vertex(v) for v in obj["vertices"])
    edges = tuple(
        Edge(parse_vertex(e["src"]), parse_vertex(e["dst"]), LinearForm(e["label"]["a"], e["label"]["b"]))
        for e in obj["edges"]
    )
    g = MomentGraph(kind, param, verts, edges)
    if kind in _BUILDERS and g == _BUILDERS[kind](param):
        return _BUILDERS[kind](param)
    return g
