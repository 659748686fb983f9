"""Highest weight vectors of spaces of differential polynomials.

Products of column determinants D_T indexed by Young tableaux filled with
derivative orders {0..k} realize the highest weight vectors; on the tensor
side, (Q^{k+1})^(x d) carries the right symmetric-group action, Young
symmetrizer projections, and the Leibniz spreadings J^(l) of the lowering
map x[i] -> i * x[i-1].  The simultaneous kernels of the J^(l) compute the
differentially homogeneous part of each isotypic block.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .exact import (Coeff, ONE, ZERO, ParamPoly, SparseMatrix, det_expansion,
                    intersection_dim, nullspace_basis, rank)
from .dpoly import DiffPoly, derivative_shift, solve_in_span
from .tableaux import (GroupAlgebraElem, Partition, Permutation, Tableau,
                       canonical_tableau, semistandard_tableaux, young_symmetrizer)

Index = tuple[int, ...]


def column_det(seq: Sequence[int], n: int) -> DiffPoly:
    """Determinant of the (r+1)x(r+1) matrix with entry (a, b) = x_b[seq[a]]."""
    size = len(seq)
    if size == 0:
        raise ValueError("empty derivative sequence")
    if size > n + 1:
        raise ValueError(f"{size} rows need at least {size - 1} for the variable bound, got {n}")
    rows = [[DiffPoly.var(b, seq[a], n) for b in range(size)] for a in range(size)]
    return det_expansion(rows, DiffPoly.zero(n), DiffPoly.const(ONE, n))


def d_t(t: Tableau, n: int) -> DiffPoly:
    """Product of the column determinants of a tableau filled with derivative orders."""
    if t.shape.nparts > n + 1:
        raise ValueError(f"shape with {t.shape.nparts} rows is too tall for variable bound {n}")
    out = DiffPoly.const(ONE, n)
    for col in t.columns():
        out = out * column_det(col, n)
    return out


def hwv_basis(lam: Partition, k: int, n: int) -> list[tuple[Tableau, DiffPoly]]:
    """The D_T for semi-standard T of shape lam filled with {0..k}.

    Empty when lam has more than n+1 parts (the corresponding space is zero).
    """
    if lam.nparts > n + 1:
        return []
    return [(t, d_t(t, n)) for t in semistandard_tableaux(lam, k + 1, lo=0)]


class Tensor:
    """Sparse element of the d-fold tensor power of the span of x[0..k]."""

    __slots__ = ("d", "k", "terms")

    def __init__(self, d: int, k: int, terms: Mapping[Index, Coeff] | None = None):
        self.d = d
        self.k = k
        clean: dict[Index, Coeff] = {}
        if terms:
            for idx, c in terms.items():
                if len(idx) != d or any(not 0 <= a <= k for a in idx):
                    raise ValueError(f"index {idx} out of bounds for d={d}, k={k}")
                if c:
                    clean[idx] = c
        self.terms = clean

    @classmethod
    def basis(cls, idx: Index, k: int) -> "Tensor":
        return cls(len(idx), k, {tuple(idx): ONE})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Tensor) and self.d == other.d
                and self.k == other.k and self.terms == other.terms)

    __hash__ = None

    def _require_same(self, other: "Tensor"):
        if self.d != other.d or self.k != other.k:
            raise ValueError("tensor shape mismatch")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._require_same(other)
        terms = dict(self.terms)
        for idx, c in other.terms.items():
            s = terms.get(idx, ZERO) + c
            if s:
                terms[idx] = s
            else:
                terms.pop(idx, None)
        out = Tensor.__new__(Tensor)
        out.d, out.k, out.terms = self.d, self.k, terms
        return out

    def __neg__(self) -> "Tensor":
        out = Tensor.__new__(Tensor)
        out.d, out.k = self.d, self.k
        out.terms = {idx: -c for idx, c in self.terms.items()}
        return out

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, c: Coeff) -> "Tensor":
        if not c:
            return Tensor(self.d, self.k)
        out = Tensor.__new__(Tensor)
        out.d, out.k = self.d, self.k
        out.terms = {idx: v * c for idx, v in self.terms.items()}
        return out

    def __repr__(self) -> str:
        return f"Tensor(d={self.d}, k={self.k}, {len(self.terms)} terms)"


def tensor_of_tableau(t: Tableau, k: int) -> Tensor:
    """Basis tensor whose index vector is the row-major reading of the tableau."""
    if any(not 0 <= v <= k for v in t.filling):
        raise ValueError("tableau entries must lie in {0..k}")
    return Tensor.basis(t.filling, k)


def tensor_sigma_action(t: Tensor, sigma: Permutation) -> Tensor:
    """Right action: the i-th factor of t.sigma is the sigma(i)-th factor of t."""
    if sigma.d != t.d:
        raise ValueError("permutation size mismatch")
    terms: dict[Index, Coeff] = {}
    for idx, c in t.terms.items():
        new = tuple(idx[sigma(i) - 1] for i in range(1, t.d + 1))
        s = terms.get(new, ZERO) + c
        if s:
            terms[new] = s
        else:
            terms.pop(new, None)
    return Tensor(t.d, t.k, terms)


def tensor_algebra_action(t: Tensor, u: GroupAlgebraElem) -> Tensor:
    if u.d != t.d:
        raise ValueError("size mismatch")
    out = Tensor(t.d, t.k)
    for sigma, c in u.terms.items():
        out = out + tensor_sigma_action(t, sigma).scale(c)
    return out


@lru_cache(maxsize=None)
def _symmetrizer(lam: Partition) -> GroupAlgebraElem:
    return young_symmetrizer(canonical_tableau(lam))


def symmetrizer_projection(t: Tensor, lam: Partition) -> Tensor:
    """Right multiplication by the Young symmetrizer of the canonical tableau."""
    if lam.size != t.d:
        raise ValueError("partition size must match the tensor degree")
    return tensor_algebra_action(t, _symmetrizer(lam))


def j_ell(t: Tensor, ell: int) -> Tensor:
    """Sum over ordered tuples of ell distinct factors of applying the lowering
    map x[i] -> i * x[i-1] in those factors (so each factor subset counts ell!)."""
    if not 1 <= ell <= t.d:
        raise ValueError(f"ell must lie in 1..{t.d}")
    fact = math.factorial(ell)
    terms: dict[Index, Coeff] = {}
    for idx, c in t.terms.items():
        support = [i for i, a in enumerate(idx) if a > 0]
        for subset in itertools.combinations(support, ell):
            mult = fact
            for i in subset:
                mult *= idx[i]
            new = list(idx)
            for i in subset:
                new[i] -= 1
            key = tuple(new)
            s = terms.get(key, ZERO) + c * mult
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
    return Tensor(t.d, t.k, terms)


# ---------------------------------------------------------------------------
# Simultaneous kernels of the J^(l).

def _basis_index(d: int, k: int) -> dict[Index, int]:
    return {idx: j for j, idx in enumerate(itertools.product(range(k + 1), repeat=d))}


def stacked_operator_rows(d: int, k: int) -> tuple[list[dict[int, Fraction]], int]:
    """Rows of all J^(l), l = 1..d, as one sparse matrix over the tensor basis."""
    index = _basis_index(d, k)
    rows: dict[tuple[int, Index], dict[int, Fraction]] = {}
    for idx, col in index.items():
        t = Tensor.basis(idx, k)
        for ell in range(1, d + 1):
            for out, c in j_ell(t, ell).terms.items():
                rows.setdefault((ell, out), {})[col] = c
    ordered = [rows[key] for key in sorted(rows)]
    return ordered, len(index)


def kernel_dim_full(d: int, k: int) -> int:
    """Dimension of the simultaneous kernel of all J^(l) on the full tensor power."""
    rows, ncols = stacked_operator_rows(d, k)
    m = SparseMatrix(len(rows), ncols,
                     {(r, c): v for r, row in enumerate(rows) for c, v in row.items()})
    return ncols - rank(m)


@lru_cache(maxsize=None)
def full_kernel_vectors(d: int, k: int) -> tuple[tuple[Fraction, ...], ...]:
    rows, ncols = stacked_operator_rows(d, k)
    m = SparseMatrix(len(rows), ncols,
                     {(r, c): v for r, row in enumerate(rows) for c, v in row.items()})
    return tuple(nullspace_basis(m))


def isotypic_image_rows(lam: Partition, k: int) -> list[dict[int, Fraction]]:
    """Spanning rows (over the tensor basis) of the image of right multiplication
    by the canonical Young symmetrizer of shape lam."""
    d = lam.size
    index = _basis_index(d, k)
    out = []
    for idx in index:
        v = symmetrizer_projection(Tensor.basis(idx, k), lam)
        if v:
            out.append({index[j]: c for j, c in v.terms.items()})
    return out

def kernel_dim_isotypic(lam: Partition, k: int) -> int:
    """Dimension of (simultaneous kernel of the J^(l)) inside the isotypic image,
    computed by exact intersection of the two subspaces."""
    d = lam.size
    ncols = (k + 1) ** d
    kernel_rows = [{j: c for j, c in enumerate(vec) if c} for vec in full_kernel_vectors(d, k)]
    image = isotypic_image_rows(lam, k)
    return intersection_dim(kernel_rows, image, ncols)


# ---------------------------------------------------------------------------
# Straightening and the tableau-to-tensor comparison map.

def straighten(t: Tableau, k: int, n: int) -> list[tuple[Fraction, Tableau]]:
    """Expand D_T in the semi-standard basis of its shape, by exact linear solve.

    The empty combination encodes D_T = 0 (repeated entries in a column).
    """
    target = d_t(t, n)
    if not target:
        return []
    ss = list(semistandard_tableaux(t.shape, k + 1, lo=0))
    coeffs = solve_in_span([d_t(s, n) for s in ss], target)
    if coeffs is None:
        raise ArithmeticError("column-determinant product escaped the semi-standard span")
    return [(c, s) for c, s in zip(coeffs, ss) if c]


def e_iso(p: DiffPoly, lam: Partition, k: int) -> Tensor:
    """Comparison map into the tensor power: D_T -> (tableau tensor) . c_lam,
    extended linearly via the semi-standard expansion of p."""
    if lam.nparts > p.n + 1:
        raise ValueError(f"shape with {lam.nparts} rows is too tall for variable bound {p.n}")
    ss = list(semistandard_tableaux(lam, k + 1, lo=0))
    if not ss:
        if p:
            raise ValueError("nonzero input in a zero tableau space")
        return Tensor(lam.size, k)
    coeffs = solve_in_span([d_t(s, p.n) for s in ss], p)
    if coeffs is None:
        raise ValueError("input is not a combination of column-determinant products")
    out = Tensor(lam.size, k)
    for c, s in zip(coeffs, ss):
        if c:
            out = out + symmetrizer_projection(tensor_of_tableau(s, k), lam).scale(c)
    return out


def tableau_projection(t: Tensor, lam: Partition, n: int) -> DiffPoly:
    """The surjection sending each basis tensor with index vector a to the
    column-determinant product of the shape-lam tableau filled row-major by a."""
    if lam.size != t.d:
        raise ValueError("partition size must match the tensor degree")
    out = DiffPoly.zero(n)
    for idx, c in t.terms.items():
        out = out + d_t(Tableau(lam, idx), n).scale(c)
    return out


def functional_solution_dim(lam: Partition, k: int, n: int) -> int:
    """Dimension of solutions, inside the span of the D_T, of the one-parameter
    substitution identity  (a Id + lowering) . P = a^d P  with a formal."""
    ss = list(semistandard_tableaux(lam, k + 1, lo=0))
    if lam.nparts > n + 1 or not ss:
        return 0
    d = lam.size
    al = ParamPoly.var("al")
    cols = len(ss)
    eqs: dict[tuple, dict[int, Fraction]] = {}
    for j, s in enumerate(ss):
        p = d_t(s, n)
        delta = derivative_shift(p, [al, ONE]) - p.scale(al ** d)
        for mono, c in delta.terms.items():
            cp = c if isinstance(c, ParamPoly) else ParamPoly.const(c)
            for pmono, frac in cp.terms.items():
                eqs.setdefault((mono, pmono), {})[j] = frac
    rows = [eqs[key] for key in sorted(eqs)]
    m = SparseMatrix(len(rows), cols,
                     {(r, c): v for r, row in enumerate(rows) for c, v in row.items()})
    return cols - rank(m)
