"""Acceptance criteria, shared by ``mga selfcheck`` and the test suite.

Every criterion is exact: arithmetic is rational throughout, so each one
either holds on the nose or fails with a reported counterexample.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import basis, czero, graph
from .basis import BasisId
from .graph import Edge, build_parabolic, build_stable, parabolic_label
from .poly import FinPoly, Poly2
from .sections import check_section


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number}. {self.name}: {self.detail} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "status": "pass" if self.ok else "fail",
                "detail": self.detail, "seconds": round(self.seconds, 3)}


@dataclass(frozen=True)
class Params:
    sect_nmax: int = 12
    sect_N: int = 25
    edge_nmax: int = 8
    roundtrip_count: int = 200
    roundtrip_nmax: int = 5
    roundtrip_deg: int = 3
    roundtrip_N: int = 12
    ident_max: int = 30
    forward_J: int = 10
    forward_nmax: int = 10
    forward_kmax: int = 4
    forward_random: int = 100
    oracle_max: int = 6
    closure_count: int = 100
    closure_J: int = 8
    grid: int = 10


FULL = Params()
QUICK = Params(sect_nmax=6, sect_N=12, roundtrip_count=40, ident_max=12, forward_J=6, forward_nmax=6,
               forward_random=20, oracle_max=4, closure_count=20, closure_J=6, grid=6)


# random generators


def random_poly2(rng: random.Random, max_deg: int) -> Poly2:
    terms = {}
    for _ in range(rng.randint(0, 4)):
        d = rng.randint(0, max_deg)
        i = rng.randint(0, d)
        terms[(i, d - i)] = Fraction(rng.randint(-5, 5), rng.choice((1, 1, 2, 3)))
    return Poly2(terms)


def random_finpoly(rng: random.Random, max_deg: int) -> FinPoly:
    return FinPoly({rng.randint(0, max_deg): Fraction(rng.randint(-4, 4), rng.choice((1, 2))) for _ in range(rng.randint(0, 3))})


def random_basis_coeffs(rng: random.Random, nmax: int, deg: int) -> dict[BasisId, Poly2]:
    ids = [BasisId("u", n) for n in range(nmax + 1)] + [BasisId("v", n) for n in range(1, nmax + 1)]
    out = {}
    for b in ids:
        if rng.random() < 0.6:
            p = random_poly2(rng, deg)
            if p:
                out[b] = p
    return out


def random_span_family(rng: random.Random, J: int, nmax: int) -> czero.RowFamily:
    """Random S^fin-combination of u_bar_n (n <= min(nmax, J)) and v_bar_n."""
    terms = []
    for n in range(0, min(nmax, J) + 1):
        terms.append((random_finpoly(rng, 3), czero.make_u_bar(n, J, cross_check=False)))
    for n in range(1, min(nmax, J + 1) + 1):
        terms.append((random_finpoly(rng, 3), czero.make_v_bar(n, J, cross_check=False)))
    chosen = [t for t in terms if rng.random() < 0.5] or terms[:1]
    return czero.combine(chosen, J)


# criteria


def sectionhood(p: Params, rng: random.Random) -> tuple[bool, str]:
    N = p.sect_N
    bad = []
    for n in range(p.sect_nmax + 1):
        elems = [("u", basis.make_u(n, N))]
        if n >= 1:
            elems.append(("v", basis.make_v(n, N)))
        for kind, s in elems:
            v = s.violations()
            if v:
                bad.append(f"{kind}{n}: {len(v)} violations, first edge {v[0].edge.src}->{v[0].edge.dst}")
    if bad:
        return False, "; ".join(bad[:3])
    return True, f"u_n, v_n for n <= {p.sect_nmax} on build_stable({N}), 0 violations"


def stable_edges_forced(p: Params, rng: random.Random) -> tuple[bool, str]:
    N = p.edge_nmax + 3
    base = build_stable(N)
    failures = []
    for n in range(p.edge_nmax + 1):
        x, y = n + 1, n + 2
        g = base.with_edges([Edge(x, y, parabolic_label(x, y))])
        candidates = range(0, n + 2)
        if any(check_section(base, basis.make_u(k, N).entries) for k in candidates):
            failures.append(f"u_k invalid on build_stable({N}) itself")
            continue
        broken = [k for k in candidates if check_section(g, basis.make_u(k, N).entries)]
        if not broken:
            failures.append(f"edge ({x},{y}) breaks no u_k")
        elif n >= 1 and n not in broken:
            failures.append(f"edge ({x},{y}) does not break u_{n}")
    if failures:
        return False, "; ".join(failures)
    return True, f"each same-column edge (n+1, n+2), n <= {p.edge_nmax}, breaks u_n (u_1 when n = 0)"


def basis_roundtrip(p: Params, rng: random.Random) -> tuple[bool, str]:
    N = p.roundtrip_N
    for t in range(p.roundtrip_count):
        coeffs = random_basis_coeffs(rng, p.roundtrip_nmax, p.roundtrip_deg)
        w = basis.combination(coeffs, N)
        d = basis.decompose(w)
        if d.coefficients != coeffs or not d.residual.is_zero():
            return False, f"trial {t}: recovered {d.coefficients} from {coeffs}"
    return True, f"{p.roundtrip_count} random combinations on N={N} recovered exactly, residual 0"


def scalar_identities(p: Params, rng: random.Random) -> tuple[bool, str]:
    rep = czero.identity_suite(p.ident_max, p.ident_max)
    if not rep.ok:
        name, n, k, v, e = rep.failures[0]
        return False, f"{len(rep.failures)} failures, first {name}(n={n}, k={k}) = {v} != {e}"
    return True, f"{rep.checked} exact evaluations, n, k <= {p.ident_max}"


def forward_inclusion(p: Params, rng: random.Random) -> tuple[bool, str]:
    J = p.forward_J
    fams = []
    for n in range(0, min(p.forward_nmax, J) + 1):
        fams.append((f"u{n}", czero.make_u_bar(n, J)))
    for n in range(1, min(p.forward_nmax, J + 1) + 1):
        fams.append((f"v{n}", czero.make_v_bar(n, J)))
    multiples = [(f"a^{k}*{name}", f.scale(czero.FIN_ALPHA ** k)) for name, f in fams for k in range(1, p.forward_kmax + 1)]
    randoms = [(f"random#{i}", random_span_family(rng, J, p.forward_nmax)) for i in range(p.forward_random)]
    checked = 0
    for name, f in fams + multiples + randoms:
        rep = czero.check_congruences(f, J)
        checked += 1
        if not rep.ok:
            return False, f"{name} fails at m={rep.failures()[0].m}"
    return True, f"{checked} families pass all relations m <= {J}"


GOLDEN_11 = [(1, 1, 1, 1), (0, 0, -1, 1), (0, 1, 0, 1)]


def truncated_equivalence(p: Params, rng: random.Random) -> tuple[bool, str]:
    import sympy

    dim, sol = czero.oracle_solution_space(1, 1)
    golden = sympy.Matrix(GOLDEN_11)
    joint = golden.col_join(sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in v] for v in sol]))
    if dim != 3 or golden.rank() != 3 or joint.rank() != 3:
        return False, f"golden (1,1): dimension {dim}, expected 3 spanned by {GOLDEN_11}"
    bad = []
    count = 0
    for J in range(0, p.oracle_max + 1):
        for d in range(0, J + 1):
            r = czero.oracle_compare(J, d)
            count += 1
            if not (r.forward_ok and r.equal):
                bad.append(f"(J={J}, d={d}): dim {r.solution_dim} vs span {r.span_rank}")
    if bad:
        return False, "; ".join(bad[:3])
    return True, f"golden (1,1) dim 3 reproduced; span = solution space on {count} grid points d <= J <= {p.oracle_max}"


def multiplicative_closure(p: Params, rng: random.Random) -> tuple[bool, str]:
    J = p.closure_J
    for t in range(p.closure_count):
        f = random_span_family(rng, J, J)
        g = random_span_family(rng, J, J)
        rep = czero.closure_check(f, g, J)
        if not rep.ok:
            return False, f"product #{t} fails at m={rep.failures()[0].m}"
    return True, f"{p.closure_count} random products pass at J = m_max = {J}"


def _coset_length(n: int) -> int:
    # n*alpha = (s0 s1)^(n-1) s0 (0) for n > 0, (s1 s0)^|n| (0) for n <= 0
    word = (0, 1) * (n - 1) + (0,) if n > 0 else (1, 0) * abs(n)
    return len(graph.reduce_word(word))


def _reflection_label(n: int, n2: int, search: int) -> tuple[int, int]:
    """(a, b) of the unique coroot beta^vee with s_beta(n alpha) = n2 alpha."""
    hits = []
    for sign in (1, -1):
        for k in range(0 if sign > 0 else 1, search):
            # s_{sign*alpha + k delta}(x alpha) = x alpha - (sign*2x + k) * sign * alpha
            image = n - (sign * 2 * n + k) * sign
            if image == n2:
                hits.append((sign, k))
    assert len(hits) == 1, hits
    return hits[0]


def graph_combinatorics(p: Params, rng: random.Random) -> tuple[bool, str]:
    R = p.grid
    idx = [n for n in range(-R, R + 1) if n]
    for n in idx:
        for n2 in idx:
            expect_leq = n == n2 or _coset_length(n) < _coset_length(n2)
            if graph.bruhat_leq(n, n2) != expect_leq:
                return False, f"bruhat_leq({n}, {n2}) disagrees with coset lengths"
            if n != n2:
                a, b = _reflection_label(n, n2, 4 * R + 2)
                lab = parabolic_label(n, n2)
                if (lab.a, lab.b) != (a, b):
                    return False, f"parabolic_label({n}, {n2}) = {lab}, reflection gives ({a}, {b})"
    for N in range(1, R + 1):
        st, par = build_stable(N), build_parabolic(N)
        if len(st.edges) != N * N:
            return False, f"build_stable({N}) has {len(st.edges)} edges"
        if any((e.src > 0) == (e.dst > 0) for e in st.edges):
            return False, f"build_stable({N}) has a same-column edge"
        if not st.is_subgraph_of(par):
            return False, f"build_stable({N}) is not a subgraph of build_parabolic({N})"
    return True, f"order and labels match on |n|, |n'| <= {R}; N^2 opposite-column edges for N <= {R}"


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "sectionhood of u_n, v_n", sectionhood),
    (2, "stable edge set is forced", stable_edges_forced),
    (3, "basis round-trip", basis_roundtrip),
    (4, "scalar binomial identities", scalar_identities),
    (5, "congruences hold on the span (forward inclusion)", forward_inclusion),
    (6, "truncated equivalence with the linear-algebra oracle", truncated_equivalence),
    (7, "multiplicative closure", multiplicative_closure),
    (8, "graph combinatorics", graph_combinatorics),
]


def run_criterion(number: int, params: Params = FULL, seed: int = 0) -> CriterionResult:
    _, name, fn = CRITERIA[number - 1]
    rng = random.Random(seed * 1000 + number)
    t0 = time.perf_counter()
    try:
        ok, detail = fn(params, rng)
    except Exception as exc:  # a crash is a failed criterion, reported as such
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(number, name, ok, detail, time.perf_counter() - t0)


def run_all(params: Params = FULL, seed: int = 0, jobs: int = 1) -> list[CriterionResult]:
    numbers = [c[0] for c in CRITERIA]
    if jobs <= 1:
        return [run_criterion(n, params, seed) for n in numbers]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_criterion, numbers, [params] * len(numbers), [seed] * len(numbers)))
