import json

import pytest
from hypothesis import given, strategies as st

from mga.graph import (
    Edge, MomentGraph, bruhat_leq, build_parabolic, build_regular, build_stable, export_dot, graph_from_json,
    graph_to_json, parabolic_label, reduce_word,
)
from mga.poly import LinearForm

nonzero = st.integers(-12, 12).filter(bool)


def test_parabolic_label_examples():
    assert parabolic_label(1, -1) == LinearForm(1, 0)
    assert parabolic_label(1, 2) == LinearForm(-1, 3)
    assert parabolic_label(2, -3) == LinearForm(1, 1)
    with pytest.raises(ValueError):
        parabolic_label(4, 4)


@given(nonzero, nonzero)
def test_parabolic_label_symmetric(n, m):
    if n != m:
        assert parabolic_label(n, m) == parabolic_label(m, n)


def test_bruhat_examples():
    assert bruhat_leq(1, -1)
    assert bruhat_leq(-1, 2)
    assert not bruhat_leq(-2, 2)
    assert bruhat_leq(3, 3)


@given(nonzero, nonzero)
def test_bruhat_antisymmetric_total(n, m):
    if n != m:
        assert bruhat_leq(n, m) != bruhat_leq(m, n)


def test_build_parabolic():
    g = build_parabolic(1)
    assert set(g.vertices) == {1, -1}
    assert g.edges == (Edge(1, -1, LinearForm(1, 0)),)
    g2 = build_parabolic(2)
    assert len(g2.vertices) == 4 and len(g2.edges) == 6
    assert g2.edge_between(2, -2) == Edge(2, -2, LinearForm(1, 0))


def test_build_stable():
    g = build_stable(2)
    assert len(g.vertices) == 4
    assert {frozenset((e.src, e.dst)) for e in g.edges} == {
        frozenset(p) for p in [(1, -1), (1, -2), (2, -1), (2, -2)]
    }
    assert build_stable(3).edge_between(2, -3).label == LinearForm(1, 1)
    assert build_stable(3).edge_between(1, 2) is None


@pytest.mark.parametrize("N", range(1, 8))
def test_stable_inside_parabolic(N):
    st_, par = build_stable(N), build_parabolic(N)
    assert st_.is_subgraph_of(par)
    assert len(st_.edges) == N * N
    assert all((e.src > 0) != (e.dst > 0) for e in st_.edges)
    for g in (st_, par):
        for e in g.edges:
            assert bruhat_leq(e.src, e.dst)


def test_rejects_bad_truncation():
    for builder in (build_parabolic, build_stable):
        with pytest.raises(ValueError):
            builder(0)
    with pytest.raises(ValueError):
        build_regular(-1)


def test_build_regular_small():
    g = build_regular(1)
    assert set(g.vertices) == {(), (0,), (1,)}
    assert g.edge_between((), (0,)).label == LinearForm(-1, 1)
    assert g.edge_between((), (1,)).label == LinearForm(1, 0)
    g2 = build_regular(2)
    assert g2.edge_between((1,), (0, 1)) == Edge((1,), (0, 1), LinearForm(-1, 1))


@pytest.mark.parametrize("L", range(0, 7))
def test_regular_structure(L):
    g = build_regular(L)
    assert len(g.vertices) == 2 * L + 1
    for x in g.vertices:
        if len(x) < L:
            ups = [e.dst for e in g.edges if e.src == x and len(e.dst) == len(x) + 1]
            assert len(ups) == 2
    for e in g.edges:
        assert len(e.src) < len(e.dst)
        # s_beta x = y with the label's reflection
        r = reduce_word(e.dst + tuple(reversed(e.src)))
        assert len(r) % 2 == 1


def test_regular_labels_match_reflection_words():
    # s_{-a+n d} = (s0 s1)^(n-1) s0 and s_{a+n d} = (s1 s0)^n s1 act on e
    g = build_regular(5)
    for n in range(1, 3):
        assert g.edge_between((), (0, 1) * (n - 1) + (0,)).label == LinearForm(-1, n)
        assert g.edge_between((), (1, 0) * n + (1,)).label == LinearForm(1, n)


def test_graph_invariants_enforced():
    with pytest.raises(ValueError):
        MomentGraph("stable", 1, (1, -1), (Edge(-1, 1, LinearForm(1, 0)),))  # against the order
    with pytest.raises(ValueError):
        MomentGraph("stable", 1, (1, -1), (Edge(1, -1, LinearForm(1, 0)),) * 2)
    with pytest.raises(ValueError):
        MomentGraph("stable", 1, (1,), (Edge(1, 1, LinearForm(1, 0)),))


def test_export_dot():
    text = export_dot(build_parabolic(1))
    assert '"1a" -> "-1a" [label="a"];' in text
    assert text.count("->") == 1
    assert export_dot(build_parabolic(3)) == export_dot(build_parabolic(3))
    empty = export_dot(build_regular(0))
    assert "->" not in empty and '"e";' in empty
    assert 'label="-a+3c"' in export_dot(build_parabolic(2))


@pytest.mark.parametrize("g", [build_stable(3), build_parabolic(2), build_regular(3)])
def test_json_roundtrip(g):
    obj = graph_to_json(g)
    assert graph_from_json(json.loads(json.dumps(obj))) == g
    assert graph_from_json({"kind": g.kind, "param": g.param}) == g


def test_json_shape():
    obj = graph_to_json(build_stable(1))
    assert obj == {
        "kind": "stable", "param": 1, "vertices": [1, -1],
        "edges": [{"src": 1, "dst": -1, "label": {"a": 1, "b": 0}}],
    }
