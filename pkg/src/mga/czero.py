"""Setting c = 0: row families, higher-order congruences and the oracle.

A stable-graph section specializes to rows a_j = (w_{(j+1)a}, w_{-(j+1)a})
with c = 0, each a pair in Z^fin = {(z1, z2) : alpha | z1 - z2}.  The
image of the structure algebra is cut out by the relations

    sum_{j<=m} (-1)^j C(m, j) a_j  in  ((-alpha)^m, alpha^m) Z^fin,   m >= 0.

``oracle_solution_space`` solves these relations by brute-force linear
algebra on homogeneous slices, independently of ``check_congruences``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple

import sympy

from . import basis
from .basis import coeff_ab, coeff_k
from .poly import FIN_ALPHA, FinPoly, finpoly_from_json, finpoly_to_json, specialize_c0
from .sections import Section


class FinPair(NamedTuple):
    z1: FinPoly
    z2: FinPoly

    def in_zfin(self) -> bool:
        return (self.z1 - self.z2).coeff(0) == 0

    def __add__(self, other: FinPair) -> FinPair:
        return FinPair(self.z1 + other.z1, self.z2 + other.z2)

    def __sub__(self, other: FinPair) -> FinPair:
        return FinPair(self.z1 - other.z1, self.z2 - other.z2)

    def scale(self, k) -> FinPair:
        return FinPair(self.z1 * k, self.z2 * k)

    def mul(self, other: FinPair) -> FinPair:
        return FinPair(self.z1 * other.z1, self.z2 * other.z2)

    def is_zero(self) -> bool:
        return not self.z1 and not self.z2

    def to_json(self) -> dict:
        return {"z1": finpoly_to_json(self.z1), "z2": finpoly_to_json(self.z2)}

    @classmethod
    def from_json(cls, obj: dict) -> FinPair:
        return cls(finpoly_from_json(obj["z1"]), finpoly_from_json(obj["z2"]))


def pair(z1, z2) -> FinPair:
    as_fin = lambda z: z if isinstance(z, FinPoly) else FinPoly.const(z)
    return FinPair(as_fin(z1), as_fin(z2))


ZERO_PAIR = pair(0, 0)


@dataclass(frozen=True)
class RowFamily:
    rows: tuple[FinPair, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for j, a in enumerate(self.rows):
            if not a.in_zfin():
                raise ValueError(f"row {j} = ({a.z1}, {a.z2}) is not in Z^fin")

    @property
    def J(self) -> int:
        return len(self.rows) - 1

    def __add__(self, other: RowFamily) -> RowFamily:
        self._same_length(other)
        return RowFamily(tuple(a + b for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: RowFamily) -> RowFamily:
        self._same_length(other)
        return RowFamily(tuple(a - b for a, b in zip(self.rows, other.rows)))

    def scale(self, f: FinPoly | int | Fraction) -> RowFamily:
        """Diagonal action of S^fin."""
        return RowFamily(tuple(a.scale(f) for a in self.rows))

    def __mul__(self, other: RowFamily) -> RowFamily:
        self._same_length(other)
        return RowFamily(tuple(a.mul(b) for a, b in zip(self.rows, other.rows)))

    def _same_length(self, other: RowFamily) -> None:
        if len(self.rows) != len(other.rows):
            raise ValueError("row families of different lengths")

    def truncate(self, J: int) -> RowFamily:
        return RowFamily(self.rows[: J + 1])

    def to_json(self) -> dict:
        return {"rows": [a.to_json() for a in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> RowFamily:
        return cls(tuple(FinPair.from_json(r) for r in obj["rows"]))


def zero_family(J: int) -> RowFamily:
    return RowFamily((ZERO_PAIR,) * (J + 1))


def specialize_section(s: Section, check: bool = True) -> RowFamily:
    g = s.graph
    if g.kind != "stable":
        raise ValueError("specialize_section needs a stable-graph section")
    if check:
        bad = s.violations()
        if bad:
            raise ValueError(f"input is not a section ({len(bad)} violated edges)")
    N = g.param
    return RowFamily(
        tuple(FinPair(specialize_c0(s[r]), specialize_c0(s[-r])) for r in range(1, N + 1))
    )


def _neg_alpha_pow(n: int) -> FinPoly:
    return FinPoly.monomial(n, (-1) ** n)


def _u_bar_rows(n: int, J: int) -> tuple[FinPair, ...]:
    lead = FinPair(_neg_alpha_pow(n), FinPoly.monomial(n))
    rows = []
    for j in range(J + 1):
        r = j + 1
        rows.append(ZERO_PAIR if r <= n else lead.scale(coeff_k(r - n - 1, n)))
    return tuple(rows)


def _v_bar_rows(n: int, J: int) -> tuple[FinPair, ...]:
    rows = []
    for j in range(J + 1):
        r = j + 1
        if r < n:
            rows.append(ZERO_PAIR)
        elif r == n:
            rows.append(FinPair(FinPoly(), FinPoly.monomial(n)))
        else:
            a, b = coeff_ab(r - n, n)
            rows.append(FinPair(_neg_alpha_pow(n) * (-a), FinPoly.monomial(n, b)))
    return tuple(rows)


def make_u_bar(n: int, J: int, cross_check: bool = True) -> RowFamily:
    """Closed form of u_n with c = 0, rows 0..J."""
    if n < 0 or J < n:
        raise ValueError(f"u_bar_{n} needs 0 <= n <= J (got J={J})")
    fam = RowFamily(_u_bar_rows(n, J))
    if cross_check:
        via = specialize_section(basis.make_u(n, J + 1), check=False)
        if via != fam:
            raise AssertionError(f"u_bar_{n}: closed form disagrees with specialization")
    return fam


def make_v_bar(n: int, J: int, cross_check: bool = True) -> RowFamily:
    """Closed form of v_n with c = 0, rows 0..J."""
    if n < 1 or J < n - 1:
        raise ValueError(f"v_bar_{n} needs 1 <= n <= J+1 (got J={J})")
    fam = RowFamily(_v_bar_rows(n, J))
    if cross_check:
        via = specialize_section(basis.make_v(n, J + 1), check=False)
        if via != fam:
            raise AssertionError(f"v_bar_{n}: closed form disagrees with specialization")
    return fam


@dataclass(frozen=True)
class IdealVerdict:
    ok: bool
    witness: FinPair | None = None
    reason: str = ""
    remainder: FinPoly | None = None

    def __bool__(self) -> bool:
        return self.ok


def ideal_member(m: int, p: FinPair) -> IdealVerdict:
    """Membership of ``p`` in ((-alpha)^m, alpha^m) Z^fin, with witness."""
    q1, r1 = p.z1.shift_down(m)
    q2, r2 = p.z2.shift_down(m)
    if r1:
        return IdealVerdict(False, reason=f"alpha^{m} does not divide first component", remainder=r1)
    if r2:
        return IdealVerdict(False, reason=f"alpha^{m} does not divide second component", remainder=r2)
    w = FinPair(q1 * (-1) ** m, q2)
    if not w.in_zfin():
        diff = (w.z1 - w.z2).coeff(0)
        return IdealVerdict(False, reason="alpha does not divide z1 - z2", remainder=FinPoly.const(diff))
    return IdealVerdict(True, witness=w)


def alternating_combination(fam: RowFamily, m: int) -> FinPair:
    out = ZERO_PAIR
    for j in range(m + 1):
        out = out + fam.rows[j].scale((-1) ** j * comb(m, j))
    return out


@dataclass(frozen=True)
class RelationResult:
    m: int
    combination: FinPair
    verdict: IdealVerdict

    def to_json(self) -> dict:
        out = {"m": self.m, "status": "pass" if self.verdict.ok else "fail", "combination": self.combination.to_json()}
        if self.verdict.ok:
            out["witness"] = self.verdict.witness.to_json()
        else:
            out["reason"] = self.verdict.reason
            out["remainder"] = finpoly_to_json(self.verdict.remainder)
        return out


@dataclass(frozen=True)
class CongruenceReport:
    results: tuple[RelationResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.verdict.ok for r in self.results)

    def failures(self) -> list[RelationResult]:
        return [r for r in self.results if not r.verdict.ok]

    def to_json(self) -> dict:
        return {"status": "pass" if self.ok else "fail", "relations": [r.to_json() for r in self.results]}


def check_congruences(fam: RowFamily, m_max: int) -> CongruenceReport:
    if m_max > fam.J:
        raise ValueError(f"m_max={m_max} exceeds the last row index J={fam.J}")
    results = []
    for m in range(m_max + 1):
        comb_m = alternating_combination(fam, m)
        verdict = ideal_member(m, comb_m)
        if verdict.ok:
            # a pass must come with a factorization that rebuilds the combination
            w = verdict.witness
            rebuilt = FinPair(w.z1 * _neg_alpha_pow(m), w.z2 * FinPoly.monomial(m))
            assert rebuilt == comb_m, f"witness for m={m} does not reconstruct"
        results.append(RelationResult(m, comb_m, verdict))
    return CongruenceReport(tuple(results))


# scalar identities behind the forward inclusion


def _bnmzero(n: int, k: int) -> Fraction:
    return Fraction(sum((-1) ** j * comb(n + k, j) * comb(j, n) for j in range(n, n + k + 1)))


def _bnmzeroo(n: int, k: int) -> Fraction:
    return sum(((-1) ** j * comb(n + k, j) * coeff_ab(j - n + 1, n)[0] for j in range(n, n + k + 1)), Fraction(0))


def _bnmzerooo(n: int, k: int) -> Fraction:
    head = Fraction((-1) ** (n - 1) * comb(n + k, n - 1))
    return head + sum(((-1) ** j * comb(n + k, j) * coeff_ab(j - n + 1, n)[1] for j in range(n, n + k + 1)), Fraction(0))


def _bullet(k: int) -> Fraction:
    return sum((Fraction((-1) ** l * comb(k, l) * l, l + 1) for l in range(k + 1)), Fraction(0))


def _bullet2(k: int) -> Fraction:
    return Fraction(sum((-1) ** l * comb(k + 1, l) * l for l in range(1, k + 2)))


def _bullet3(k: int) -> Fraction:
    return Fraction(sum((-1) ** l * comb(k + 1, l) for l in range(1, k + 2)))


@dataclass
class IdentityReport:
    checked: int = 0
    failures: list[tuple[str, int | None, int, Fraction, Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "status": "pass" if self.ok else "fail",
            "checked": self.checked,
            "failures": [
                {"identity": name, "n": n, "k": k, "value": str(v), "expected": str(e)}
                for name, n, k, v, e in self.failures
            ],
        }


def identity_suite(n_max: int, k_max: int) -> IdentityReport:
    """Evaluate the binomial identities exactly.

    The a/b identities start at n = 1, where a_{i,n} and b_{i,n} are defined.
    """
    rep = IdentityReport()

    def expect(name, n, k, value, expected):
        rep.checked += 1
        if value != expected:
            rep.failures.append((name, n, k, value, Fraction(expected)))

    for k in range(1, k_max + 1):
        for n in range(0, n_max + 1):
            expect("bnmzero", n, k, _bnmzero(n, k), 0)
            if n >= 1:
                expect("bnmzeroo", n, k, _bnmzeroo(n, k), 0)
                expect("bnmzerooo", n, k, _bnmzerooo(n, k), 0)
        expect("bullet", None, k, _bullet(k), Fraction(-1, k + 1))
        expect("bullet2", None, k, _bullet2(k), 0)
        expect("bullet3", None, k, _bullet3(k), -1)
    return rep


# brute-force oracle on homogeneous slices


def _relation_matrix(J: int, d: int) -> sympy.Matrix:
    """Linear conditions on (x_0, y_0, ..., x_J, y_J) for rows (x_j a^d, y_j a^d)."""
    ncols = 2 * (J + 1)
    rows: list[list[int]] = []

    def xs(m):
        v = [0] * ncols
        for j in range(m + 1):
            v[2 * j] = (-1) ** j * comb(m, j)
        return v

    def ys(m):
        v = [0] * ncols
        for j in range(m + 1):
            v[2 * j + 1] = (-1) ** j * comb(m, j)
        return v

    if d == 0:
        for j in range(J + 1):
            v = [0] * ncols
            v[2 * j], v[2 * j + 1] = 1, -1
            rows.append(v)
    for m in range(J + 1):
        if m < d:
            continue
        if m == d:
            sx, sy = xs(m), ys(m)
            rows.append([(-1) ** m * a - b for a, b in zip(sx, sy)])
        else:
            rows.append(xs(m))
            rows.append(ys(m))
    if not rows:
        return sympy.zeros(0, ncols)
    return sympy.Matrix(rows)


def _to_fraction(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def oracle_solution_space(J: int, d: int) -> tuple[int, list[tuple[Fraction, ...]]]:
    if J < 0 or d < 0:
        raise ValueError("oracle needs J >= 0, d >= 0")
    M = _relation_matrix(J, d)
    ncols = 2 * (J + 1)
    if M.rows == 0:
        basis_vecs = [tuple(Fraction(int(i == c)) for i in range(ncols)) for c in range(ncols)]
    else:
        basis_vecs = [tuple(_to_fraction(x) for x in v) for v in M.nullspace()]
    return len(basis_vecs), basis_vecs


def slice_vector(fam: RowFamily, d: int) -> tuple[Fraction, ...]:
    """Coordinates (x_0, y_0, ...) of a family whose rows are multiples of alpha^d."""
    out = []
    for a in fam.rows:
        for z in (a.z1, a.z2):
            if z and set(z.coeffs) != {d}:
                raise ValueError(f"row entry {z} is not a multiple of alpha^{d}")
            out.append(z.coeff(d))
    return tuple(out)


def span_slices(J: int, d: int) -> dict[str, RowFamily]:
    """Degree-d slices alpha^(d-n) u_bar_n, alpha^(d-n) v_bar_n visible on rows 0..J."""
    out = {}
    for n in range(0, min(d, J) + 1):
        out[f"u{n}"] = make_u_bar(n, J).scale(FIN_ALPHA ** (d - n))
    for n in range(1, min(d, J + 1) + 1):
        out[f"v{n}"] = make_v_bar(n, J).scale(FIN_ALPHA ** (d - n))
    return out


def predicted_dimension(J: int, d: int) -> int:
    return (min(d, J) + 1) + min(d, J + 1)


@dataclass(frozen=True)
class OracleResult:
    J: int
    d: int
    solution_dim: int
    span_rank: int
    predicted: int
    forward_ok: bool
    equal: bool

    @property
    def ok(self) -> bool:
        """Forward inclusion always; equality required only for J >= d."""
        return self.forward_ok and (self.equal or self.J < self.d)

    def to_json(self) -> dict:
        return {
            "rows": self.J, "deg": self.d, "solution_dim": self.solution_dim, "span_rank": self.span_rank,
            "predicted": self.predicted, "forward": self.forward_ok, "equal": self.equal,
            "status": "pass" if self.ok else "fail",
        }


def oracle_compare(J: int, d: int) -> OracleResult:
    dim, sol = oracle_solution_space(J, d)
    M = _relation_matrix(J, d)
    span = [slice_vector(f, d) for f in span_slices(J, d).values()]
    S = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in v] for v in span])
    forward = M.rows == 0 or all(x == 0 for x in (M * S.T))
    span_rank = S.rank()
    if sol:
        B = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in v] for v in sol])
        joint = S.col_join(B).rank()
    else:
        joint = span_rank
    equal = span_rank == dim == joint
    return OracleResult(J, d, dim, span_rank, predicted_dimension(J, d), forward, equal)


def closure_check(f: RowFamily, g: RowFamily, m_max: int) -> CongruenceReport:
    """Rowwise product of two congruence-satisfying families, checked."""
    for name, fam in (("first", f), ("second", g)):
        if not check_congruences(fam, m_max).ok:
            raise ValueError(f"{name} factor violates the congruences")
    return check_congruences(f * g, m_max)


def combine(terms: Iterable[tuple[FinPoly, RowFamily]], J: int) -> RowFamily:
    out = zero_family(J)
    for coeff, fam in terms:
        out = out + fam.scale(coeff)
    return out
