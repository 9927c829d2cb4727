import random
from fractions import Fraction

import pytest

from mga.acceptance import random_basis_coeffs
from mga.basis import (
    BasisId, Decomposition, DivisibilityError, coeff_ab, coeff_k, combination, decompose, make_u, make_v,
)
from mga.graph import build_parabolic, build_stable
from mga.poly import ALPHA, C, ONE, ZERO, Poly2
from mga.sections import Section, restrict, vertex_generator


def test_coeff_k():
    assert all(coeff_k(0, n) == 1 for n in range(6))
    assert coeff_k(1, 1) == 2
    assert coeff_k(2, 1) == 3
    assert coeff_k(3, 2) == 10
    with pytest.raises(ValueError):
        coeff_k(-1, 0)


def test_coeff_ab():
    for n in range(1, 6):
        assert coeff_ab(1, n) == (n - 1, 1)
    assert coeff_ab(2, 2) == (3, 0)
    assert coeff_ab(2, 1) == (0, 1)
    assert coeff_ab(3, 3) == (20, -10)
    assert coeff_ab(2, 3) == (8, Fraction(-4, 2))
    with pytest.raises(ValueError):
        coeff_ab(0, 1)


def test_basis_id():
    assert str(BasisId("u", 0)) == "u0"
    assert BasisId.parse("v12") == BasisId("v", 12)
    for bad in ("v0", "w1", "u-1", "u"):
        with pytest.raises(ValueError):
            BasisId.parse(bad)


def test_make_u_examples():
    assert all(p == ONE for p in make_u(0, 5).entries.values())
    u = make_u(1, 3)
    assert u[1] == ZERO and u[-1] == ZERO
    assert u[2] == -ALPHA + C
    assert u[-2] == ALPHA + C
    assert u[3] == (-ALPHA + 2 * C).scale(2)
    assert u[-3] == (ALPHA + 2 * C).scale(2)


def test_make_v_examples():
    v = make_v(1, 2)
    assert v[-1] == ALPHA and v[1] == ZERO
    assert v[2] == C
    assert v[-2] == ALPHA + C
    v2 = make_v(2, 2)
    assert [p for p in v2.entries.values() if p] == [ALPHA * (ALPHA + C)]


def test_window_preconditions():
    with pytest.raises(ValueError):
        make_u(3, 3)
    with pytest.raises(ValueError):
        make_v(4, 3)
    with pytest.raises(ValueError):
        make_v(0, 3)


@pytest.mark.parametrize("n", range(0, 8))
def test_basis_are_sections(n):
    assert make_u(n, 12).is_valid()
    if n:
        assert make_v(n, 12).is_valid()


def test_stable_graph_is_needed():
    # u_1 breaks on a same-column edge of the parabolic graph
    s = make_u(1, 3)
    lifted = Section(build_parabolic(3), dict(s.entries))
    assert not lifted.is_valid()


def test_decompose_examples():
    d = decompose(make_v(1, 4))
    assert d.coefficients == {BasisId("v", 1): ONE} and d.residual.is_zero()
    d = decompose(make_u(1, 4).scalar_mul(2))
    assert d.coefficients == {BasisId("u", 1): Poly2.const(2)} and d.residual.is_zero()


def test_vertex_generator_lies_in_span():
    d = decompose(vertex_generator(build_stable(2), 2))
    assert d.residual.is_zero()
    assert d.coefficients == {BasisId("u", 1): ALPHA, BasisId("v", 2): -ONE}


@pytest.mark.parametrize("N", range(1, 6))
def test_all_vertex_generators_decompose(N):
    g = build_stable(N)
    for x in g.vertices:
        s = vertex_generator(g, x)
        d = decompose(s)
        assert d.residual.is_zero()
        assert d.reconstruct() == s


@pytest.mark.parametrize("seed", range(6))
def test_roundtrip(seed):
    rng = random.Random(seed)
    coeffs = random_basis_coeffs(rng, 4, 3)
    w = combination(coeffs, 8)
    d = decompose(w)
    assert d.residual.is_zero()
    assert d.coefficients == {b: p for b, p in coeffs.items() if p}


def test_restriction_compatibility():
    rng = random.Random(11)
    coeffs = random_basis_coeffs(rng, 3, 2)
    w = combination(coeffs, 9)
    full = decompose(w).coefficients
    for M in (5, 7):
        assert decompose(restrict(w, build_stable(M))).coefficients == full


def test_invalid_input_raises():
    s = Section(build_stable(2), {1: C})
    with pytest.raises(DivisibilityError):
        decompose(s)
    with pytest.raises(DivisibilityError):
        decompose(s, check=False)
    with pytest.raises(ValueError):
        decompose(Section(build_parabolic(2), {}))


def test_decomposition_json():
    w = make_u(1, 5).scalar_mul(ALPHA - C) + make_v(3, 5)
    d = decompose(w)
    obj = d.to_json()
    assert list(obj["coefficients"]) == ["u1", "v3"]
    back = Decomposition.from_json(obj)
    assert back.coefficients == d.coefficients
    assert back.reconstruct() == w
