"""Exact sparse polynomials in ``a`` (alpha) and ``c`` over the rationals.

``Poly2`` is the ambient ring S = Q[a, c]; ``FinPoly`` is its image
Q[a] under ``c -> 0``.  Both are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]
Exponent = tuple[int, int]


class UnsupportedForm(ValueError):
    """Raised for linear forms the division routines do not handle."""


def _frac(x: Number | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_rational(q: Fraction) -> str:
    # str(Fraction) already drops "/1" for integers
    return str(q)


def _monomial(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("a" if i == 1 else f"a^{i}")
    if j:
        parts.append("c" if j == 1 else f"c^{j}")
    return "*".join(parts)


class Poly2:
    """Polynomial in a, c with rational coefficients.

    ``terms`` maps ``(a_exp, c_exp)`` to a nonzero ``Fraction``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Number] | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for (i, j), coeff in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent {(i, j)}")
                q = _frac(coeff)
                if q:
                    clean[(int(i), int(j))] = q
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction]) -> Poly2:
        # trusted constructor: caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, x: Number) -> Poly2:
        return cls({(0, 0): x})

    @classmethod
    def monomial(cls, i: int, j: int, coeff: Number = 1) -> Poly2:
        return cls({(i, j): coeff})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Natural total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._terms), default=-1)

    def graded_degree(self) -> int:
        """Degree in the doubled grading (S_2 = linear forms); display only."""
        d = self.degree()
        return 2 * d if d >= 0 else d

    def alpha_degree(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({i + j for i, j in self._terms}) <= 1

    def constant_value(self) -> Fraction | None:
        """The coefficient if ``self`` is a constant, else None."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {(0, 0)}:
            return self._terms[(0, 0)]
        return None

    # ring operations

    def _coerce(self, other) -> Poly2:
        if isinstance(other, Poly2):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly2.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Poly2._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Poly2:
        return Poly2._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for (i1, j1), v1 in self._terms.items():
            for (i2, j2), v2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + v1 * v2
        return Poly2._raw({k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> Poly2:
        if e < 0:
            raise ValueError("negative power")
        out = Poly2.const(1)
        for _ in range(e):
            out = out * self
        return out

    def scale(self, k: Number) -> Poly2:
        k = _frac(k)
        if not k:
            return Poly2()
        return Poly2._raw({m: v * k for m, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly2.const(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending lexicographic ``(a, c)`` order."""
        return sorted(self._terms.items(), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for (i, j), q in self.sorted_terms():
            mono = _monomial(i, j)
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Poly2({self})"

    def substitute_alpha(self, rho: Fraction) -> Poly2:
        """Evaluate at a = rho*c; the result is a polynomial in c alone."""
        out: dict[Exponent, Fraction] = {}
        for (i, j), v in self._terms.items():
            k = (0, i + j)
            out[k] = out.get(k, 0) + v * rho**i
        return Poly2._raw({k: v for k, v in out.items() if v})


ZERO = Poly2()
ONE = Poly2.const(1)
ALPHA = Poly2.monomial(1, 0)
C = Poly2.monomial(0, 1)


@dataclass(frozen=True)
class LinearForm:
    """The linear form ``a*alpha + b*c``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        if not self.a and not self.b:
            raise ValueError("linear form must be nonzero")

    def to_poly(self) -> Poly2:
        return Poly2({(1, 0): self.a, (0, 1): self.b})

    def root(self) -> Fraction:
        """rho with the form vanishing at alpha = rho*c."""
        if not self.a:
            raise UnsupportedForm(f"form {self} has no alpha term")
        return -self.b / self.a

    def is_proportional(self, other: LinearForm) -> bool:
        return self.a * other.b == self.b * other.a

    def __str__(self) -> str:
        # e.g. "-a+3c", "a", "a-c"
        parts = []
        if self.a:
            parts.append({1: "a", -1: "-a"}.get(self.a, f"{self.a}a"))
        if self.b:
            coeff = {1: "", -1: "-"}.get(self.b, str(self.b))
            term = f"{coeff}c"
            if parts and not term.startswith("-"):
                term = "+" + term
            parts.append(term)
        return "".join(parts)


def arith(op: str, p: Poly2, q: Poly2 | Number) -> Poly2:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` by name."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        if isinstance(q, Poly2):
            k = q.constant_value()
            if k is None:
                raise ValueError("scale expects a rational")
            q = k
        return p.scale(q)
    raise ValueError(f"unknown op {op!r}")


def product(factors: Iterable[Poly2]) -> Poly2:
    out = ONE
    for f in factors:
        out = out * f
    return out


def divrem_linear(p: Poly2, f: LinearForm) -> tuple[Poly2, Poly2]:
    """Divide ``p`` by ``f`` viewed as polynomials in alpha over Q[c].

    Returns ``(q, r)`` with ``p == q*f + r`` and ``r`` free of alpha.
    """
    if not f.a:
        raise UnsupportedForm(f"cannot divide by pure-c form {f}")
    rho = f.root()
    deg = p.alpha_degree()
    if deg <= 0:
        return ZERO, p
    # rows[i] = coefficient of alpha^i as {c_exp: coeff}
    rows: list[dict[int, Fraction]] = [{} for _ in range(deg + 1)]
    for (i, j), v in p.items():
        rows[i][j] = v
    # synthetic division by (alpha - rho*c)
    q_rows: list[dict[int, Fraction]] = [{} for _ in range(deg)]
    carry: dict[int, Fraction] = {}
    for i in range(deg, 0, -1):
        cur = dict(rows[i])
        for j, v in carry.items():
            cur[j + 1] = cur.get(j + 1, 0) + rho * v
        cur = {j: v for j, v in cur.items() if v}
        q_rows[i - 1] = cur
        carry = cur
    rem = dict(rows[0])
    for j, v in carry.items():
        rem[j + 1] = rem.get(j + 1, 0) + rho * v
    inv_a = 1 / f.a
    quotient = Poly2._raw(
        {(i, j): v * inv_a for i, row in enumerate(q_rows) for j, v in row.items() if v}
    )
    remainder = Poly2._raw({(0, j): v for j, v in rem.items() if v})
    return quotient, remainder


def remainder_linear(p: Poly2, f: LinearForm) -> Poly2:
    """Remainder of ``p`` modulo ``f``; zero iff ``f`` divides ``p``."""
    if not f.a:
        raise UnsupportedForm(f"cannot divide by pure-c form {f}")
    return p.substitute_alpha(f.root())


def divides(f: LinearForm, p: Poly2) -> bool:
    return remainder_linear(p, f).is_zero()


def exact_div_linear(p: Poly2, f: LinearForm) -> Poly2:
    q, r = divrem_linear(p, f)
    if r:
        raise ArithmeticError(f"{f} does not divide {p} (remainder {r})")
    return q


def divides_product(p: Poly2, forms: list[LinearForm]) -> bool:
    """True iff every form (pairwise non-proportional) divides ``p``."""
    for f, g in combinations(forms, 2):
        if f.is_proportional(g):
            raise ValueError(f"proportional forms {f} and {g}")
    return all(divides(f, p) for f in forms)


def homogeneous_components(p: Poly2) -> dict[int, Poly2]:
    parts: dict[int, dict[Exponent, Fraction]] = {}
    for (i, j), v in p.items():
        parts.setdefault(i + j, {})[(i, j)] = v
    return {d: Poly2._raw(parts[d]) for d in sorted(parts)}


class FinPoly:
    """Univariate polynomial in alpha with rational coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        clean = {}
        for d, v in (coeffs or {}).items():
            if d < 0:
                raise ValueError("negative degree")
            q = _frac(v)
            if q:
                clean[int(d)] = q
        self._coeffs = clean

    @classmethod
    def const(cls, x: Number) -> FinPoly:
        return cls({0: x})

    @classmethod
    def monomial(cls, d: int, coeff: Number = 1) -> FinPoly:
        return cls({d: coeff})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def coeff(self, d: int) -> Fraction:
        return self._coeffs.get(d, Fraction(0))

    def degree(self) -> int:
        return max(self._coeffs, default=-1)

    def valuation(self) -> int | None:
        """Largest power of alpha dividing self; None for zero."""
        return min(self._coeffs, default=None)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FinPoly.const(other)
        if not isinstance(other, FinPoly):
            return NotImplemented
        out = dict(self._coeffs)
        for d, v in other._coeffs.items():
            out[d] = out.get(d, 0) + v
        return FinPoly(out)

    __radd__ = __add__

    def __neg__(self) -> FinPoly:
        return FinPoly({d: -v for d, v in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FinPoly({d: v * other for d, v in self._coeffs.items()})
        if not isinstance(other, FinPoly):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for d1, v1 in self._coeffs.items():
            for d2, v2 in other._coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + v1 * v2
        return FinPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FinPoly:
        out = FinPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def shift_down(self, m: int) -> tuple[FinPoly, FinPoly]:
        """Divide by alpha^m: returns (quotient, remainder)."""
        q = {d - m: v for d, v in self._coeffs.items() if d >= m}
        r = {d: v for d, v in self._coeffs.items() if d < m}
        return FinPoly(q), FinPoly(r)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FinPoly.const(other)
        if not isinstance(other, FinPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        return str(Poly2({(d, 0): v for d, v in self._coeffs.items()}))

    def __repr__(self) -> str:
        return f"FinPoly({self})"

    def to_poly2(self) -> Poly2:
        return Poly2({(d, 0): v for d, v in self._coeffs.items()})


FIN_ALPHA = FinPoly.monomial(1)


def specialize_c0(p: Poly2) -> FinPoly:
    """Image of ``p`` under c -> 0."""
    return FinPoly({i: v for (i, j), v in p.items() if j == 0})


# JSON encodings


def poly_to_json(p: Poly2) -> dict:
    return {
        "terms": [
            {"a": i, "c": j, "coeff": format_rational(v)} for (i, j), v in p.sorted_terms()
        ]
    }


def poly_from_json(obj: dict) -> Poly2:
    terms: dict[Exponent, Fraction] = {}
    for t in obj["terms"]:
        key = (int(t["a"]), int(t["c"]))
        if key in terms:
            raise ValueError(f"duplicate term {key}")
        terms[key] = Fraction(str(t["coeff"]))
    return Poly2(terms)


def finpoly_to_json(p: FinPoly) -> dict:
    return {"coeffs": {str(d): format_rational(v) for d, v in sorted(p.coeffs.items(), reverse=True)}}


def finpoly_from_json(obj: dict) -> FinPoly:
    return FinPoly({int(d): Fraction(str(v)) for d, v in obj["coeffs"].items()})
