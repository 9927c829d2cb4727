import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mga.acceptance import random_span_family
from mga.basis import make_u, make_v
from mga.czero import (
    FinPair, RowFamily, check_congruences, closure_check, combine, identity_suite, ideal_member, make_u_bar,
    make_v_bar, oracle_compare, oracle_solution_space, pair, predicted_dimension, specialize_section,
)
from mga.poly import FIN_ALPHA, FinPoly

from conftest import finpolys

A = FIN_ALPHA


def rows(fam):
    return [(a.z1, a.z2) for a in fam.rows]


def test_specialize_examples():
    assert all(r == (FinPoly.const(1), FinPoly.const(1)) for r in rows(specialize_section(make_u(0, 4))))
    assert rows(specialize_section(make_u(1, 3))) == [(FinPoly(), FinPoly()), (-A, A), (-A * 2, A * 2)]
    assert rows(specialize_section(make_v(1, 3))) == [(FinPoly(), A)] * 3


def test_u_bar_v_bar_examples():
    assert rows(make_u_bar(1, 3)) == [(FinPoly(), FinPoly()), (-A, A), (-A * 2, A * 2), (-A * 3, A * 3)]
    assert rows(make_v_bar(1, 2)) == [(FinPoly(), A)] * 3
    a2 = A * A
    assert rows(make_v_bar(2, 3)) == [(FinPoly(), FinPoly()), (FinPoly(), a2), (-a2, a2), (-a2 * 3, FinPoly())]


@pytest.mark.parametrize("n", range(0, 11))
def test_closed_forms_match_specialization(n):
    for J in (max(n, 1), 20):
        assert make_u_bar(n, J, cross_check=False) == specialize_section(make_u(n, J + 1))
        if n:
            assert make_v_bar(n, J, cross_check=False) == specialize_section(make_v(n, J + 1))


def test_row_family_rejects_non_zfin():
    with pytest.raises(ValueError):
        RowFamily((pair(1, 2),))


def test_ideal_member_examples():
    v = ideal_member(1, FinPair(A, -A))
    assert v.ok and v.witness == pair(-1, -1)
    v = ideal_member(2, FinPair(A * A, A * A))
    assert v.ok and v.witness == pair(1, 1)
    assert not ideal_member(1, FinPair(A, A))
    assert not ideal_member(2, FinPair(A, A))
    assert ideal_member(0, pair(3, 3))


@settings(max_examples=60)
@given(st.integers(1, 4), finpolys(max_deg=3), finpolys(max_deg=3))
def test_ideal_member_monotone(m, p, q):
    # build a guaranteed member and check membership one level down
    z = FinPair(p, q - FinPoly.const(q.coeff(0) - p.coeff(0)))
    member = FinPair(z.z1 * FinPoly.monomial(m, (-1) ** m), z.z2 * FinPoly.monomial(m))
    assert ideal_member(m, member)
    assert ideal_member(m - 1, member)


def test_congruence_examples():
    assert check_congruences(make_u_bar(0, 5), 5).ok
    rep = check_congruences(make_u_bar(1, 5), 2)
    assert rep.ok and rep.results[2].combination.is_zero()


def test_corrupted_family_fails_at_one():
    fam = make_v_bar(1, 3)
    bad = RowFamily((pair(1, FinPoly({0: 1, 1: 1})),) + fam.rows[1:])
    rep = check_congruences(bad, 3)
    assert not rep.ok
    assert [r.m for r in rep.failures()][0] == 1
    assert rep.to_json()["status"] == "fail"


def test_m_max_bound():
    with pytest.raises(ValueError):
        check_congruences(make_u_bar(0, 2), 3)


@pytest.mark.parametrize("n", range(0, 8))
def test_forward_inclusion_basis(n):
    J = 10
    for k in range(3):
        assert check_congruences(make_u_bar(n, J).scale(A ** k), J).ok
        if n:
            assert check_congruences(make_v_bar(n, J).scale(A ** k), J).ok


def test_random_combinations_pass():
    rng = random.Random(5)
    for _ in range(10):
        assert check_congruences(random_span_family(rng, 8, 6), 8).ok


def test_identity_suite():
    rep = identity_suite(15, 15)
    assert rep.ok and rep.checked > 0
    assert rep.to_json()["status"] == "pass"


def test_oracle_golden():
    dim, vecs = oracle_solution_space(1, 1)
    assert dim == 3
    r = oracle_compare(1, 1)
    assert r.equal and r.span_rank == 3 and r.ok
    import sympy
    golden = sympy.Matrix([[1, 1, 1, 1], [0, 0, -1, 1], [0, 1, 0, 1]])
    sol = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in v] for v in vecs])
    assert golden.rank() == 3 and golden.col_join(sol).rank() == 3


@pytest.mark.parametrize("J", range(0, 5))
def test_oracle_constants(J):
    assert oracle_solution_space(J, 0)[0] == 1
    assert oracle_compare(J, 0).equal


@pytest.mark.parametrize("J,d", [(J, d) for J in range(0, 5) for d in range(0, J + 1)])
def test_oracle_grid(J, d):
    r = oracle_compare(J, d)
    assert r.ok and r.equal
    assert r.solution_dim == predicted_dimension(J, d)


def test_closure_examples():
    one = make_u_bar(0, 6)
    other = make_v_bar(2, 6).scale(A)
    assert (one * other) == other
    assert closure_check(one, other, 6).ok
    rng = random.Random(3)
    for _ in range(5):
        f, g = random_span_family(rng, 6, 5), random_span_family(rng, 6, 5)
        assert closure_check(f, g, 6).ok


def test_combine_and_json():
    fam = combine([(A, make_u_bar(1, 4)), (FinPoly.const(Fraction(1, 2)), make_v_bar(2, 4))], 4)
    assert RowFamily.from_json(fam.to_json()) == fam
    assert fam.truncate(2).J == 2
