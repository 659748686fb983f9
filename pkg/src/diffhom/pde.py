"""Polynomial solutions of the Newton power-sum system of PDEs.

The operators sum_i d^l/dX_i^l for l = 1..d cut out a solution space of
dimension d! inside polynomials in X_1..X_d; the span of all partial
derivatives of the Vandermonde determinant provides an independent witness
of the same dimension.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import ONE, ZERO, SparseMatrix, echelon, nullspace_basis, rank_of_rows

Expo = tuple[int, ...]


class MultiPoly:
    """Sparse polynomial in X_1..X_d over Q; keys are exponent vectors."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Expo, Fraction] | None = None):
        self.nvars = nvars
        clean: dict[Expo, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent vector {e}")
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def const(cls, c: Fraction, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): ONE})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    __hash__ = None

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(self.nvars, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        terms: dict[Expo, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, ZERO) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return MultiPoly(self.nvars, terms)

    def derivative(self, i: int, times: int = 1) -> "MultiPoly":
        terms = self.terms
        for _ in range(times):
            new: dict[Expo, Fraction] = {}
            for e, c in terms.items():
                if e[i] == 0:
                    continue
                out = list(e)
                out[i] -= 1
                new[tuple(out)] = c * e[i]
            terms = new
        return MultiPoly(self.nvars, terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __repr__(self) -> str:
        return f"MultiPoly(nvars={self.nvars}, {len(self.terms)} terms)"


def newton_operator(p: MultiPoly, ell: int) -> MultiPoly:
    """Apply the power-sum operator sum_i d^ell/dX_i^ell."""
    if not 1 <= ell <= p.nvars:
        raise ValueError(f"ell must lie in 1..{p.nvars}")
    out = MultiPoly(p.nvars)
    for i in range(p.nvars):
        out = out + p.derivative(i, ell)
    return out


def distinct_tuple_operator(p: MultiPoly, ell: int) -> MultiPoly:
    """Apply the operator summing mixed derivatives over ordered tuples of ell
    pairwise distinct variables (ell! times the elementary symmetric operator)."""
    if not 1 <= ell <= p.nvars:
        raise ValueError(f"ell must lie in 1..{p.nvars}")
    out = MultiPoly(p.nvars)
    for subset in itertools.combinations(range(p.nvars), ell):
        q = p
        for i in subset:
            q = q.derivative(i)
        out = out + MultiPoly(p.nvars, {e: c * math.factorial(ell) for e, c in q.terms.items()})
    return out


def monomials_of_degree(nvars: int, deg: int) -> list[Expo]:
    out = []
    for bars in itertools.combinations(range(deg + nvars - 1), nvars - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(deg + nvars - 2 - prev)
        out.append(tuple(e))
    return sorted(out)


def _graded_solution_dims(d: int, bound: int,
                          apply_op) -> list[int]:
    """Per-degree kernel dimensions of the stacked operators l = 1..d.

    The operators are homogeneous, so the stacked coefficient matrix is a
    direct sum over the input degree; solving degree by degree is exact.
    """
    dims = []
    for deg in range(bound + 1):
        monos = monomials_of_degree(d, deg)
        col = {e: j for j, e in enumerate(monos)}
        rows: dict[tuple[int, Expo], dict[int, Fraction]] = {}
        for e, j in col.items():
            p = MultiPoly(d, {e: ONE})
            for ell in range(1, d + 1):
                for out_e, c in apply_op(p, ell).terms.items():
                    rows.setdefault((ell, out_e), {})[j] = c
        row_list = [rows[key] for key in sorted(rows)]
        r = len(echelon(row_list, len(monos), reduce_back=False))
        dims.append(len(monos) - r)
    return dims


def solution_space_dim(d: int, bound: int | None = None) -> int:
    """Dimension of polynomial solutions of the power-sum system, searched up
    to total degree d(d-1)/2 (the Vandermonde degree) by default."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if bound is None:
        bound = d * (d - 1) // 2
    return sum(_graded_solution_dims(d, bound, newton_operator))


def solution_space_dim_distinct(d: int, bound: int | None = None) -> int:
    """Same count for the ordered-distinct-tuple system; the two systems agree."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if bound is None:
        bound = d * (d - 1) // 2
    return sum(_graded_solution_dims(d, bound, distinct_tuple_operator))


def vandermonde(d: int) -> MultiPoly:
    """The product of X_i - X_j over i < j."""
    out = MultiPoly.const(ONE, d)
    for i in range(d):
        for j in range(i + 1, d):
            out = out * (MultiPoly.var(i, d) - MultiPoly.var(j, d))
    return out


def vandermonde_derivative_basis(d: int) -> list[MultiPoly]:
    """All nonzero partial derivatives of the Vandermonde determinant.

    A spanning set of the d!-dimensional solution space of the power-sum
    system: the Vandermonde is annihilated by every symmetric constant
    coefficient operator without constant term, and derivatives commute.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    v = vandermonde(d)
    deg = v.degree()
    out = []
    for total in range(deg + 1):
        for beta in monomials_of_degree(d, total):
            p = v
            for i, times in enumerate(beta):
                if times:
                    p = p.derivative(i, times)
                if not p:
                    break
            if p:
                out.append(p)
    return out


def poly_family_rank(polys: Sequence[MultiPoly]) -> int:
    """Exact rank of a family of multivariate polynomials."""
    monos = sorted({e for p in polys for e in p.terms})
    col = {e: j for j, e in enumerate(monos)}
    rows = [{col[e]: c for e, c in p.terms.items()} for p in polys]
    return rank_of_rows(rows, len(monos))


def solution_space_rows(d: int, bound: int | None = None,
                        apply_op=newton_operator) -> tuple[list[dict[int, Fraction]], list[Expo]]:
    """A basis (as sparse coefficient rows) of the polynomial solution space,
    with the monomial column index it refers to."""
    if bound is None:
        bound = d * (d - 1) // 2
    monos: list[Expo] = []
    for deg in range(bound + 1):
        monos.extend(monomials_of_degree(d, deg))
    col = {e: j for j, e in enumerate(monos)}
    rows_out: list[dict[int, Fraction]] = []
    for deg in range(bound + 1):
        degree_monos = monomials_of_degree(d, deg)
        local = {e: j for j, e in enumerate(degree_monos)}
        op_rows: dict[tuple[int, Expo], dict[int, Fraction]] = {}
        for e, j in local.items():
            p = MultiPoly(d, {e: ONE})
            for ell in range(1, d + 1):
                for out_e, c in apply_op(p, ell).terms.items():
                    op_rows.setdefault((ell, out_e), {})[j] = c
        row_list = [op_rows[key] for key in sorted(op_rows)]
        m = SparseMatrix(len(row_list), len(degree_monos),
                         {(r, c): v for r, row in enumerate(row_list) for c, v in row.items()})
        for vec in nullspace_basis(m):
            rows_out.append({col[degree_monos[j]]: c for j, c in enumerate(vec) if c})
    return rows_out, monos
