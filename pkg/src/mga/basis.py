"""The basis sections u_n, v_n of the stable graph's structure algebra.

Entries are indexed by row j (vertices +j*alpha and -j*alpha); u_n has
rows 1..n zero, v_n rows 1..n-1 zero and only its right entry at row n.
``decompose`` writes any section as an S-combination of them by
eliminating rows bottom-up, one homogeneous degree at a time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

from . import poly
from .graph import build_stable
from .poly import ZERO, LinearForm, Poly2
from .sections import Section, section_from_json, section_to_json, zero_section


class DivisibilityError(ArithmeticError):
    """A divisibility the elimination relies on failed (input is not a section)."""


class BasisId(NamedTuple):
    kind: str  # "u" or "v"
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    @classmethod
    def parse(cls, text: str) -> BasisId:
        m = re.fullmatch(r"([uv])(\d+)", text)
        if not m:
            raise ValueError(f"bad basis id {text!r}")
        b = cls(m.group(1), int(m.group(2)))
        b.validate()
        return b

    def validate(self) -> None:
        if self.kind == "u" and self.index >= 0:
            return
        if self.kind == "v" and self.index >= 1:
            return
        raise ValueError(f"no basis element {self.kind}{self.index}")

    def sort_key(self):
        return (self.kind, self.index)


def coeff_k(i: int, n: int) -> Fraction:
    """k_{i,n} = C(n+i, n); k_{0,n} = 1."""
    if i < 0 or n < 0:
        raise ValueError("coeff_k needs i, n >= 0")
    return Fraction(comb(n + i, n))


def coeff_ab(i: int, n: int) -> tuple[Fraction, Fraction]:
    """(a_{i,n}, b_{i,n}) = (C(n+i-1,n)(n-1), C(n+i-1,n)(i-(i-1)n)/i)."""
    if i < 1 or n < 1:
        raise ValueError("coeff_ab needs i, n >= 1")
    k = comb(n + i - 1, n)
    return Fraction(k * (n - 1)), Fraction(k * (i - (i - 1) * n), i)


def minus_form(l: int) -> Poly2:
    return LinearForm(-1, l).to_poly()


def plus_form(l: int) -> Poly2:
    return LinearForm(1, l).to_poly()


def _prod_minus(lo: int, hi: int) -> Poly2:
    """prod_{l=lo}^{hi} (-alpha + l c); empty product is 1."""
    return poly.product(minus_form(l) for l in range(lo, hi + 1))


def _prod_plus(lo: int, hi: int) -> Poly2:
    return poly.product(plus_form(l) for l in range(lo, hi + 1))


def u_entry(n: int, j: int) -> Poly2:
    """(u_n) at vertex j*alpha."""
    r = abs(j)
    if r <= n:
        return ZERO
    if j == n + 1:
        return _prod_minus(1, n)
    if j == -n - 1:
        return _prod_plus(1, n)
    k = coeff_k(r - n - 1, n)
    if j > 0:
        return _prod_minus(j - n, j - 1).scale(k)
    return _prod_plus(r - n, r - 1).scale(k)


def v_entry(n: int, j: int) -> Poly2:
    """(v_n) at vertex j*alpha."""
    r = abs(j)
    if r <= n - 1 or j == n:
        return ZERO
    if j == -n:
        return _prod_plus(0, n - 1)
    i = r - n
    a, b = coeff_ab(i, n)
    if j > 0:
        lead = Poly2({(1, 0): a, (0, 1): i * b})
        return lead * _prod_minus(j - n + 1, j - 1)
    return _prod_plus(r - n, r - 1).scale(b)


@lru_cache(maxsize=512)
def make_u(n: int, N: int) -> Section:
    if n < 0:
        raise ValueError("u_n needs n >= 0")
    if N <= n:
        raise ValueError(f"u_{n} vanishes on the window N={N}; need N >= {n + 1}")
    g = build_stable(N)
    return Section(g, {j: u_entry(n, j) for j in g.vertices})


@lru_cache(maxsize=512)
def make_v(n: int, N: int) -> Section:
    if n < 1:
        raise ValueError("v_n needs n >= 1")
    if N < n:
        raise ValueError(f"v_{n} vanishes on the window N={N}; need N >= {n}")
    g = build_stable(N)
    return Section(g, {j: v_entry(n, j) for j in g.vertices})


def make_basis(b: BasisId, N: int) -> Section:
    return make_u(b.index, N) if b.kind == "u" else make_v(b.index, N)


@dataclass
class Decomposition:
    coefficients: dict[BasisId, Poly2]
    residual: Section
    window: int = field(default=0)

    def reconstruct(self) -> Section:
        out = self.residual
        for b, p in self.coefficients.items():
            out = out + make_basis(b, self.window).scalar_mul(p)
        return out

    def to_json(self) -> dict:
        return {
            "coefficients": {
                str(b): poly.poly_to_json(self.coefficients[b])
                for b in sorted(self.coefficients, key=BasisId.sort_key)
            },
            "residual": section_to_json(self.residual),
        }

    @classmethod
    def from_json(cls, obj: dict) -> Decomposition:
        residual = section_from_json(obj["residual"])
        coeffs = {BasisId.parse(k): poly.poly_from_json(v) for k, v in obj["coefficients"].items()}
        return cls(coeffs, residual, residual.graph.param)


def _exact_div(p: Poly2, forms: list[LinearForm], what: str) -> Poly2:
    for f in forms:
        q, r = poly.divrem_linear(p, f)
        if r:
            raise DivisibilityError(f"{what}: {f} does not divide {p} (remainder {r})")
        p = q
    return p


def _zero_rows(w: dict[int, Poly2], N: int) -> int:
    n = 0
    while n < N and not w[n + 1] and not w[-(n + 1)]:
        n += 1
    return n


def _eliminate_degree(w: dict[int, Poly2], m: int, N: int, coeffs: dict[BasisId, Poly2]) -> dict[int, Poly2]:
    """Clear a homogeneous degree-m section row by row; returns what is left."""
    while any(w.values()):
        n = _zero_rows(w, N)
        if n >= N:
            break
        f, g = w[n + 1], w[-(n + 1)]
        minus = [LinearForm(-1, l) for l in range(1, n + 1)]
        plus = [LinearForm(1, l) for l in range(1, n + 1)]
        x = _exact_div(f, minus, f"row {n + 1} left entry over prod(-a+lc), l<={n}")
        gx = _exact_div(g, plus, f"row {n + 1} right entry over prod(a+lc), l<={n}")
        if m < n:
            raise DivisibilityError(f"nonzero row {n + 1} of degree {m} below its {n} zero rows")
        if m == n:
            s = x.constant_value()
            if s is None or gx != x:
                raise DivisibilityError(f"row {n + 1}: left and right scalars disagree ({x} vs {gx})")
            terms = [(BasisId("u", n), x)]
        else:
            y = _exact_div(gx - x, [LinearForm(1, 0)], f"row {n + 1}: alpha over the entry difference")
            terms = [(BasisId("u", n), x), (BasisId("v", n + 1), y)]
        for b, p in terms:
            if not p:
                continue
            coeffs[b] = coeffs.get(b, ZERO) + p
            basis = make_basis(b, N)
            for j in w:
                w[j] = w[j] - p * basis.entries[j]
    return w


def decompose(s: Section, check: bool = True) -> Decomposition:
    """Write ``s`` as sum coeff(b) * b + residual over the stable window."""
    g = s.graph
    if g.kind != "stable" or g != build_stable(g.param):
        raise ValueError("decompose works on build_stable(N) sections")
    if check:
        bad = s.violations()
        if bad:
            raise DivisibilityError(f"input is not a section: {len(bad)} violated edge(s), first {bad[0].edge}")
    N = g.param
    by_degree: dict[int, dict[int, Poly2]] = {}
    for j, p in s.entries.items():
        for d, comp in poly.homogeneous_components(p).items():
            by_degree.setdefault(d, {v: ZERO for v in g.vertices})[j] = comp
    coeffs: dict[BasisId, Poly2] = {}
    residual = {v: ZERO for v in g.vertices}
    for m in sorted(by_degree):
        left = _eliminate_degree(by_degree[m], m, N, coeffs)
        for j, p in left.items():
            residual[j] = residual[j] + p
    coeffs = {b: coeffs[b] for b in sorted(coeffs, key=BasisId.sort_key) if coeffs[b]}
    return Decomposition(coeffs, Section(g, residual), N)


def combination(coeffs: dict[BasisId, Poly2], N: int) -> Section:
    out = zero_section(build_stable(N))
    for b, p in coeffs.items():
        out = out + make_basis(b, N).scalar_mul(p)
    return out

