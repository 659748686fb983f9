"""Exact scalars, parametric polynomials, and deterministic sparse linear algebra.

The ground field is Q, realized by :class:`fractions.Fraction`; symbolic
parameters extend it to the polynomial ring Q[params] via :class:`ParamPoly`.
Everything here is exact (no floats) and deterministic (fixed pivot rules),
so ranks, kernels and determinants are reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# A parameter monomial: ((name, exponent), ...) sorted by name, exponents > 0.
PMono = tuple[tuple[str, int], ...]

_EMPTY: PMono = ()


def _pmono_mul(a: PMono, b: PMono) -> PMono:
    if not a:
        return b
    if not b:
        return a
    exps: dict[str, int] = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


class ParamPoly:
    """Sparse multivariate polynomial over Q in named parameters.

    Immutable by convention: no method mutates ``terms`` after construction.
    Mixed arithmetic with int/Fraction coerces the scalar to a constant.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PMono, Fraction] | None = None):
        clean: dict[PMono, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean

    @classmethod
    def const(cls, c) -> "ParamPoly":
        c = c if isinstance(c, Fraction) else Fraction(c)
        return cls({_EMPTY: c} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "ParamPoly":
        if exp < 0:
            raise ValueError("negative exponent")
        if exp == 0:
            return cls.const(1)
        return cls({((name, exp),): ONE})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _EMPTY in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return ZERO
        if self.is_constant():
            return self.terms[_EMPTY]
        raise ValueError("not a constant polynomial")

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    __hash__ = None  # mutable-dict backed; never used as a key

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, ZERO) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        out = ParamPoly.__new__(ParamPoly)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = ParamPoly.__new__(ParamPoly)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[PMono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _pmono_mul(m1, m2)
                s = terms.get(m, ZERO) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        out = ParamPoly.__new__(ParamPoly)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if exp < 0:
            raise ValueError("negative exponent")
        out = ParamPoly.const(1)
        for _ in range(exp):
            out = out * self
        return out

    def substitute(self, values: Mapping[str, "Coeff"]) -> "ParamPoly":
        """Replace named parameters by scalars or polynomials; others stay formal."""
        out = ParamPoly.const(0)
        for mono, c in self.terms.items():
            acc = ParamPoly.const(c)
            for name, e in mono:
                if name in values:
                    v = values[name]
                    v = v if isinstance(v, ParamPoly) else ParamPoly.const(v)
                    acc = acc * v ** e
                else:
                    acc = acc * ParamPoly.var(name, e)
            out = out + acc
        return out

    def names(self) -> set[str]:
        return {name for mono in self.terms for name, _ in mono}

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in mono) for mono in self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            factors = [f"{n}^{e}" if e > 1 else n for n, e in mono]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(c) + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


Coeff = Union[Fraction, ParamPoly]


def _coerce(v) -> ParamPoly:
    if isinstance(v, ParamPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return ParamPoly.const(v)
    return NotImplemented


def divexact(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    """Exact polynomial quotient a / b; raises if the division has a remainder."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if b.is_constant():
        inv = 1 / b.constant_value()
        return ParamPoly({m: c * inv for m, c in a.terms.items()})
    names = sorted(a.names() | b.names())
    index = {n: i for i, n in enumerate(names)}

    def expvec(mono: PMono) -> tuple[int, ...]:
        v = [0] * len(names)
        for n, e in mono:
            v[index[n]] = e
        return tuple(v)

    def from_expvec(v: Sequence[int]) -> PMono:
        return tuple((names[i], e) for i, e in enumerate(v) if e)

    rem = {expvec(m): c for m, c in a.terms.items()}
    bterms = {expvec(m): c for m, c in b.terms.items()}
    blead = max(bterms)
    bcoef = bterms[blead]
    qterms: dict[PMono, Fraction] = {}
    while rem:
        lead = max(rem)
        if any(l < bl for l, bl in zip(lead, blead)):
            raise ArithmeticError("inexact polynomial division")
        qv = tuple(l - bl for l, bl in zip(lead, blead))
        qc = rem[lead] / bcoef
        qterms[from_expvec(qv)] = qc
        for bm, bc in bterms.items():
            m = tuple(q + b_ for q, b_ in zip(qv, bm))
            s = rem.get(m, ZERO) - qc * bc
            if s:
                rem[m] = s
            else:
                rem.pop(m, None)
    return ParamPoly(qterms)


class SparseMatrix:
    """Sparse exact matrix; entries are Fraction or ParamPoly, zeros never stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], Coeff] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], Coeff] = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"index ({r},{c}) out of range")
                if v:
                    clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[Coeff]], cols: int | None = None) -> "SparseMatrix":
        nrows = len(data)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        entries = {}
        for r, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        return cls(nrows, ncols, entries)

    def row_dicts(self) -> list[dict[int, Coeff]]:
        rows: list[dict[int, Coeff]] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    __hash__ = None


def echelon(rows: list[dict[int, Fraction]], ncols: int,
            reduce_back: bool = True) -> list[tuple[int, dict[int, Fraction]]]:
    """Row reduction with the fixed pivot rule: leftmost column, then smallest
    current row support, then lowest original row index.

    Consumes ``rows`` (dicts col -> nonzero Fraction). Returns the pivot rows
    as (pivot_col, row) with ascending pivot columns, pivots normalized to 1;
    with ``reduce_back`` the result is the reduced echelon form.
    """
    remaining = [(i, r) for i, r in enumerate(rows) if r]
    pivots: list[tuple[int, dict[int, Fraction]]] = []
    for col in range(ncols):
        best = None
        for i, r in remaining:
            if col in r:
                key = (len(r), i)
                if best is None or key < best[0]:
                    best = (key, i, r)
        if best is None:
            continue
        _, pi, prow = best
        remaining = [(i, r) for i, r in remaining if i != pi]
        inv = 1 / prow[col]
        prow = {c: v * inv for c, v in prow.items()}
        for i, r in remaining:
            f = r.get(col)
            if f:
                for c, v in prow.items():
                    s = r.get(c, ZERO) - f * v
                    if s:
                        r[c] = s
                    else:
                        r.pop(c, None)
        remaining = [(i, r) for i, r in remaining if r]
        if reduce_back:
            for _, pr in pivots:
                f = pr.get(col)
                if f:
                    for c, v in prow.items():
                        s = pr.get(c, ZERO) - f * v
                        if s:
                            pr[c] = s
                        else:
                            pr.pop(c, None)
        pivots.append((col, prow))
    return pivots


def rank(m: SparseMatrix) -> int:
    """Rank over Q, deterministic."""
    return len(echelon(m.row_dicts(), m.cols, reduce_back=False))


def rank_of_rows(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> int:
    return len(echelon([dict(r) for r in rows], ncols, reduce_back=False))


def nullspace_basis(m: SparseMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel, returned in reduced echelon form."""
    pivots = echelon(m.row_dicts(), m.cols, reduce_back=True)
    pivot_cols = {col for col, _ in pivots}
    free_cols = [c for c in range(m.cols) if c not in pivot_cols]
    raw: list[dict[int, Fraction]] = []
    for f in free_cols:
        v: dict[int, Fraction] = {f: ONE}
        for col, row in pivots:
            coef = row.get(f)
            if coef:
                v[col] = -coef
        raw.append(v)
    reduced = echelon(raw, m.cols, reduce_back=True)
    out = []
    for _, row in reduced:
        out.append(tuple(row.get(c, ZERO) for c in range(m.cols)))
    return out


def nullity(m: SparseMatrix) -> int:
    return m.cols - rank(m)


def solve(m: SparseMatrix, rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """One exact solution of m x = rhs (free variables set to 0), or None."""
    if len(rhs) != m.rows:
        raise ValueError("rhs length mismatch")
    rows = m.row_dicts()
    aug = m.cols  # extra column holding -rhs, treated as a fixed variable = 1
    for r, row in enumerate(rows):
        if rhs[r]:
            row[aug] = -Fraction(rhs[r])
    pivots = echelon(rows, m.cols, reduce_back=True)  # never pivots on column `aug`
    x = [ZERO] * m.cols
    for col, row in pivots:
        x[col] = -row.get(aug, ZERO)
    # consistency: every equation must hold (cheap re-check, exact)
    check = [ZERO] * m.rows
    for (r, c), v in m.entries.items():
        if x[c]:
            check[r] += v * x[c]
    if any(check[r] != rhs[r] for r in range(m.rows)):
        return None
    return x


def det(m: SparseMatrix) -> ParamPoly:
    """Exact determinant by fraction-free Bareiss elimination.

    Entries may be Fraction or ParamPoly; the result is a ParamPoly
    (constant when the input is rational).
    """
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ParamPoly.const(1)
    a: list[list[ParamPoly]] = [[ParamPoly.const(0)] * n for _ in range(n)]
    for (r, c), v in m.entries.items():
        a[r][c] = v if isinstance(v, ParamPoly) else ParamPoly.const(v)
    sign = 1
    prev = ParamPoly.const(1)
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            return ParamPoly.const(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
            a[i][k] = ParamPoly.const(0)
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return -result if sign < 0 else result


def det_expansion(rows: Sequence[Sequence], zero, one):
    """Division-free determinant by memoized minor expansion.

    Works over any commutative ring whose elements support +, -, * and
    truthiness; used for matrices of differential polynomials and as an
    independent cross-check of :func:`det`.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("non-square matrix")
    memo: dict[tuple[int, ...], object] = {(): one}

    def minor(cols: tuple[int, ...]):
        if cols in memo:
            return memo[cols]
        r = n - len(cols)
        acc = zero
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if not entry:
                continue
            sub = minor(tuple(x for x in cols if x != c))
            term = entry * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return minor(tuple(range(n)))


def stack_rows(groups: Iterable[Iterable[Mapping[int, Fraction]]]) -> list[dict[int, Fraction]]:
    out = []
    for g in groups:
        out.extend(dict(r) for r in g)
    return out


def intersection_dim(rows_a: Sequence[Mapping[int, Fraction]],
                     rows_b: Sequence[Mapping[int, Fraction]], ncols: int) -> int:
    """dim(span A  intersect  span B) = dim A + dim B - dim(A + B)."""
    ra = rank_of_rows(rows_a, ncols)
    rb = rank_of_rows(rows_b, ncols)
    rub = rank_of_rows(list(rows_a) + list(rows_b), ncols)
    return ra + rb - rub
