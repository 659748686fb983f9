"""Verification suites: every structural identity the library is built on,
re-checked by exact computation at configurable size caps.

Each check is a pure top-level function returning a :class:`CheckResult`, so
suites can run in a process pool.  A check passes iff its expected and
computed strings agree; observation-only entries (values recorded without a
reference) use the computed value on both sides.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .exact import ONE, ZERO, ParamPoly, rank_of_rows
from .dpoly import is_diff_homogeneous, matrix_action, solve_in_span, span_rank
from .tableaux import (Partition, canonical_tableau, count_semistandard,
                       count_standard, group_algebra_mul, kostka, partitions_of,
                       young_symmetrizer)
from .wronskian import (_det_fraction, build_formal_wronskian,
                        enumerate_canonical_basis, expand_combination,
                        reduce_to_triangular, standard_nilpotent,
                        verify_wedge_identity)
from .hwv import (Tensor, e_iso, functional_solution_dim, hwv_basis, j_ell,
                  kernel_dim_full, kernel_dim_isotypic,
                  symmetrizer_projection, tableau_projection)
from .pde import (distinct_tuple_operator, newton_operator, poly_family_rank,
                  solution_space_dim, solution_space_rows,
                  vandermonde_derivative_basis)
from .jets import census, classify_basis, verify_theorem2

DEFAULT_SEED = 20240817

SUITE_NAMES = ("all", "basis", "rsk", "kernel", "pde", "appendixA", "hwv", "jets")


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    params: dict
    expected: str
    computed: str

    @property
    def passed(self) -> bool:
        return self.expected == self.computed


@dataclass
class VerificationReport:
    suite: str
    seed: int
    results: list[CheckResult]
    wall_time: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def _result(check_id: str, params: dict, expected, computed) -> CheckResult:
    return CheckResult(check_id, params, str(expected), str(computed))


def _observe(check_id: str, params: dict, computed) -> CheckResult:
    return CheckResult(check_id, params, str(computed), str(computed))


# ---------------------------------------------------------------------------
# basis suite

def check_basis_rank(n: int, d: int) -> CheckResult:
    basis = enumerate_canonical_basis(n, d)
    r = span_rank([p for _, p in basis])
    return _result("basis_rank", {"N": n, "d": d},
                   (n + 1) ** d, r if len(basis) == (n + 1) ** d else f"{r} of {len(basis)}")


def check_basis_diffhom(n: int, d: int) -> CheckResult:
    bad = []
    for datum, poly in enumerate_canonical_basis(n, d):
        verdict = is_diff_homogeneous(poly)
        if verdict != (True, d):
            bad.append(datum)
    return _result("basis_diffhom", {"N": n, "d": d}, "all degree d",
                   "all degree d" if not bad else f"{len(bad)} failures, first {bad[0]}")


def _random_invertible(size: int, rng: random.Random) -> list[list[Fraction]]:
    while True:
        a = [[Fraction(rng.randint(-5, 5)) for _ in range(size)] for _ in range(size)]
        if _det_fraction([row[:] for row in a]):
            return a


def check_basis_gl_stability(n: int, d: int, seed: int, matrices: int = 5) -> CheckResult:
    rng = random.Random(seed * 1000003 + n * 1009 + d)
    basis = [p for _, p in enumerate_canonical_basis(n, d)]
    base_rank = span_rank(basis)
    ok = True
    note = "stable"
    for trial in range(matrices):
        a = _random_invertible(n + 1, rng)
        images = [matrix_action(a, p) for p in basis]
        joint = span_rank(basis + images)
        if joint != base_rank:
            ok = False
            note = f"trial {trial}: span grew to {joint}"
            break
        # explicit exact coordinates for a few elements
        for idx in (0, len(basis) // 2, len(basis) - 1):
            if solve_in_span(basis, images[idx]) is None:
                ok = False
                note = f"trial {trial}: element {idx} did not solve"
                break
        if not ok:
            break
    return _result("basis_gl_stability", {"N": n, "d": d, "matrices": matrices, "seed": seed},
                   "stable", note if not ok else "stable")


def suite_basis(max_d: int, max_n: int, seed: int) -> list:
    tasks = []
    for n in range(0, max_n + 1):
        for d in range(1, max_d + 1):
            tasks.append((f"basis_rank[N={n},d={d}]", check_basis_rank, {"n": n, "d": d}))
            tasks.append((f"basis_diffhom[N={n},d={d}]", check_basis_diffhom, {"n": n, "d": d}))
            if n >= 1:
                tasks.append((f"basis_gl_stability[N={n},d={d}]", check_basis_gl_stability,
                              {"n": n, "d": d, "seed": seed}))
    return tasks


# ---------------------------------------------------------------------------
# rsk suite

def check_rsk_squares(d: int) -> CheckResult:
    total = sum(count_standard(lam) ** 2 for lam in partitions_of(d))
    return _result("rsk_squares", {"d": d}, math.factorial(d), total)


def check_rsk_mixed(d: int, n: int) -> CheckResult:
    total = sum(count_standard(lam) * count_semistandard(lam, n) for lam in partitions_of(d))
    return _result("rsk_mixed", {"d": d, "n": n}, n ** d, total)


def check_kostka_sum(parts: tuple, n: int) -> CheckResult:
    lam = Partition(parts)
    d = lam.size
    total = 0
    for a in itertools.product(range(d + 1), repeat=n):
        if sum(a) == d:
            total += kostka(lam, a)
    return _result("kostka_sum", {"lam": parts, "n": n}, count_semistandard(lam, n), total)


def check_standard_is_kostka(parts: tuple) -> CheckResult:
    lam = Partition(parts)
    return _result("standard_is_kostka", {"lam": parts},
                   count_standard(lam), kostka(lam, (1,) * lam.size))


def suite_rsk(max_d: int, max_n: int, seed: int) -> list:
    tasks = []
    for d in range(1, max_d + 1):
        tasks.append((f"rsk_squares[d={d}]", check_rsk_squares, {"d": d}))
    for d in range(1, min(max_d, 6) + 1):
        for n in range(1, 5):
            tasks.append((f"rsk_mixed[d={d},n={n}]", check_rsk_mixed, {"d": d, "n": n}))
    for d in range(1, min(max_d, 5) + 1):
        for lam in partitions_of(d):
            for n in range(1, 5):
                tasks.append((f"kostka_sum[lam={lam.parts},n={n}]", check_kostka_sum,
                              {"parts": lam.parts, "n": n}))
            tasks.append((f"standard_is_kostka[lam={lam.parts}]", check_standard_is_kostka,
                          {"parts": lam.parts}))
    return tasks


# ---------------------------------------------------------------------------
# kernel suite

def check_kernel_full(d: int) -> CheckResult:
    return _result("kernel_full", {"d": d, "k": d - 1},
                   math.factorial(d), kernel_dim_full(d, d - 1))


def check_kernel_isotypic(parts: tuple) -> CheckResult:
    lam = Partition(parts)
    return _result("kernel_isotypic", {"lam": parts, "k": lam.size - 1},
                   count_standard(lam), kernel_dim_isotypic(lam, lam.size - 1))


def observe_kernel_low(d: int, k: int) -> CheckResult:
    return _observe("observe_kernel_full", {"d": d, "k": k}, kernel_dim_full(d, k))


def suite_kernel(max_d: int, max_n: int, seed: int) -> list:
    tasks = []
    for d in range(1, max_d + 1):
        tasks.append((f"kernel_full[d={d}]", check_kernel_full, {"d": d}))
        for lam in partitions_of(d):
            tasks.append((f"kernel_isotypic[lam={lam.parts}]", check_kernel_isotypic,
                          {"parts": lam.parts}))
        for k in range(0, d - 1):
            tasks.append((f"observe_kernel_full[d={d},k={k}]", observe_kernel_low,
                          {"d": d, "k": k}))
    return tasks


# ---------------------------------------------------------------------------
# pde suite

def check_pde_dimension(d: int) -> CheckResult:
    return _result("pde_dimension", {"d": d}, math.factorial(d), solution_space_dim(d))


def check_pde_oracle(d: int) -> CheckResult:
    basis = vandermonde_derivative_basis(d)
    r = poly_family_rank(basis)
    annihilated = all(not newton_operator(p, ell)
                      for p in basis for ell in range(1, d + 1))
    computed = f"rank={r}, annihilated={annihilated}"
    return _result("pde_oracle", {"d": d}, f"rank={math.factorial(d)}, annihilated=True", computed)


def check_pde_stability(d: int) -> CheckResult:
    base = solution_space_dim(d)
    wider = solution_space_dim(d, d * (d - 1) // 2 + 2)
    return _result("pde_degree_stability", {"d": d}, base, wider)


def check_pde_system_equivalence(d: int) -> CheckResult:
    rows_a, monos_a = solution_space_rows(d, apply_op=newton_operator)
    rows_b, monos_b = solution_space_rows(d, apply_op=distinct_tuple_operator)
    same_span = (monos_a == monos_b
                 and len(rows_a) == len(rows_b)
                 and rank_of_rows(rows_a + rows_b, len(monos_a)) == len(rows_a))
    return _result("pde_system_equivalence", {"d": d}, True, same_span)


def suite_pde(max_d: int, max_n: int, seed: int) -> list:
    tasks = []
    for d in range(1, max_d + 1):
        tasks.append((f"pde_dimension[d={d}]", check_pde_dimension, {"d": d}))
        tasks.append((f"pde_oracle[d={d}]", check_pde_oracle, {"d": d}))
        tasks.append((f"pde_degree_stability[d={d}]", check_pde_stability, {"d": d}))
        if d <= 3:
            tasks.append((f"pde_system_equivalence[d={d}]", check_pde_system_equivalence, {"d": d}))
    return tasks


# ---------------------------------------------------------------------------
# appendixA suite: triangular rewriting and wedge identities

def check_triangular_reduction(d: int) -> CheckResult:
    failures = 0
    first = None
    for alpha in itertools.product(range(d), repeat=d):
        direct = build_formal_wronskian(alpha)
        reduced = expand_combination(reduce_to_triangular(alpha), d)
        if direct != reduced:
            failures += 1
            first = first or alpha
    return _result("triangular_reduction", {"d": d, "cases": d ** d},
                   "all identities hold", "all identities hold" if not failures
                   else f"{failures} failures, first {first}")


def check_wedge_basis_tuples(d: int, i: int) -> CheckResult:
    nil = standard_nilpotent(d)
    count = d - i + 1
    basis = [tuple(ONE if r == j else ZERO for r in range(d)) for j in range(d)]
    for tup in itertools.product(range(d), repeat=count):
        vectors = [basis[j] for j in tup]
        if not verify_wedge_identity(nil, vectors, i):
            return _result("wedge_basis_tuples", {"d": d, "i": i}, "all vanish",
                           f"failure at tuple {tup}")
    return _result("wedge_basis_tuples", {"d": d, "i": i}, "all vanish", "all vanish")


def check_wedge_random(d: int, i: int, seed: int, count: int = 20) -> CheckResult:
    rng = random.Random(seed * 1000003 + d * 1009 + i)
    nil = standard_nilpotent(d)
    nvec = d - i + 1
    for trial in range(count):
        vectors = [tuple(Fraction(rng.randint(-9, 9)) for _ in range(d)) for _ in range(nvec)]
        if not verify_wedge_identity(nil, vectors, i):
            return _result("wedge_random", {"d": d, "i": i, "seed": seed},
                           "all vanish", f"failure at trial {trial}")
    return _result("wedge_random", {"d": d, "i": i, "seed": seed, "count": count},
                   "all vanish", "all vanish")


def suite_appendixA(max_d: int, max_n: int, seed: int) -> list:
    tasks = []
    for d in range(1, max_d + 1):
        tasks.append((f"triangular_reduction[d={d}]", check_triangular_reduction, {"d": d}))
        for i in range(1, d + 1):
            tasks.append((f"wedge_basis_tuples[d={d},i={i}]", check_wedge_basis_tuples,
                          {"d": d, "i": i}))
            tasks.append((f"wedge_random[d={d},i={i}]", check_wedge_random,
                          {"d": d, "i": i, "seed": seed}))
    return tasks


# ---------------------------------------------------------------------------
# hwv suite

def check_hwv_counts(parts: tuple, k: int, n: int) -> CheckResult:
    lam = Partition(parts)
    basis = hwv_basis(lam, k, n)
    expected = count_semistandard(lam, k + 1) if lam.nparts <= n + 1 else 0
    r = span_rank([p for _, p in basis]) if basis else 0
    return _result("hwv_counts", {"lam": parts, "k": k, "N": n},
                   f"count={expected}, rank={expected}", f"count={len(basis)}, rank={r}")


def check_hwv_weight(parts: tuple, k: int, n: int) -> CheckResult:
    lam = Partition(parts)
    xs = [ParamPoly.var(f"x{i}") for i in range(n + 1)]
    diag = [[xs[i] if i == j else ParamPoly.const(0) for j in range(n + 1)]
            for i in range(n + 1)]
    monomial = ParamPoly.const(1)
    for row, part in enumerate(lam.parts):
        monomial = monomial * xs[row] ** part
    for t, p in hwv_basis(lam, k, n):
        if matrix_action(diag, p) != p.scale(monomial):
            return _result("hwv_weight", {"lam": parts, "k": k, "N": n},
                           "weight vector", f"failure at tableau {t.filling}")
    return _result("hwv_weight", {"lam": parts, "k": k, "N": n},
                   "weight vector", "weight vector")


def check_hwv_unipotent(parts: tuple, k: int, n: int) -> CheckResult:
    lam = Partition(parts)
    tparam = ParamPoly.var("t")
    for t, p in hwv_basis(lam, k, n):
        for q in range(1, n + 1):
            for pp in range(q):
                a = [[ParamPoly.const(1) if i == j else ParamPoly.const(0)
                      for j in range(n + 1)] for i in range(n + 1)]
                a[q][pp] = tparam
                if matrix_action(a, p) != p:
                    return _result("hwv_unipotent", {"lam": parts, "k": k, "N": n},
                                   "invariant", f"failure at tableau {t.filling}, (q,p)=({q},{pp})")
    return _result("hwv_unipotent", {"lam": parts, "k": k, "N": n}, "invariant", "invariant")


def check_e_iso_injective(parts: tuple, k: int) -> CheckResult:
    lam = Partition(parts)
    n = lam.nparts - 1
    basis = hwv_basis(lam, k, n)
    expected = count_semistandard(lam, k + 1)
    index = {}
    rows = []
    for t, p in basis:
        v = e_iso(p, lam, k)
        row = {}
        for idx, c in v.terms.items():
            row[index.setdefault(idx, len(index))] = c
        rows.append(row)
    r = rank_of_rows(rows, len(index)) if rows else 0
    return _result("e_iso_injective", {"lam": parts, "k": k}, expected, r)


def check_commutative_diagram(parts: tuple, k: int) -> CheckResult:
    lam = Partition(parts)
    d = lam.size
    n = lam.nparts - 1
    for a in itertools.product(range(k + 1), repeat=d):
        pa = tableau_projection(Tensor.basis(a, k), lam, n)
        lhs = e_iso(pa, lam, k) if pa else Tensor(d, k)
        rhs = symmetrizer_projection(Tensor.basis(a, k), lam)
        if lhs != rhs:
            return _result("commutative_diagram", {"lam": parts, "k": k},
                           "commutes", f"failure at index {a}")
    return _result("commutative_diagram", {"lam": parts, "k": k}, "commutes", "commutes")


def check_symmetrizer_scalar(parts: tuple) -> CheckResult:
    lam = Partition(parts)
    c = young_symmetrizer(canonical_tableau(lam))
    square = group_algebra_mul(c, c)
    m = Fraction(math.factorial(lam.size), count_standard(lam))
    return _result("symmetrizer_scalar", {"lam": parts},
                   f"c^2 = ({m}) c", f"c^2 = ({m}) c" if square == c.scale(m)
                   else "square is not the expected multiple")


def check_leibniz_expansion(d: int, k: int) -> CheckResult:
    """(a Id + lowering)^(tensor d) v = sum_l a^(d-l)/l! J^(l) v + a^d v."""
    al = ParamPoly.var("al")
    for idx in itertools.product(range(k + 1), repeat=d):
        v = Tensor.basis(idx, k)
        lhs = Tensor(d, k)
        # expand the factorwise substitution x[i] -> al x[i] + i x[i-1]
        choices = []
        for i in idx:
            opts = [(al, i)]
            if i > 0:
                opts.append((ParamPoly.const(i), i - 1))
            choices.append(opts)
        for pick in itertools.product(*choices):
            coeff = ParamPoly.const(1)
            out = []
            for c, j in pick:
                coeff = coeff * c
                out.append(j)
            lhs = lhs + Tensor(d, k, {tuple(out): coeff})
        rhs = v.scale(al ** d)
        for ell in range(1, d + 1):
            rhs = rhs + j_ell(v, ell).scale(al ** (d - ell) * Fraction(1, math.factorial(ell)))
        if lhs != rhs:
            return _result("leibniz_expansion", {"d": d, "k": k},
                           "identity holds", f"failure at {idx}")
    return _result("leibniz_expansion", {"d": d, "k": k}, "identity holds", "identity holds")


def check_functional_iso(parts: tuple, k: int) -> CheckResult:
    lam = Partition(parts)
    n = lam.nparts - 1
    return _result("functional_iso", {"lam": parts, "k": k},
                   kernel_dim_isotypic(lam, k), functional_solution_dim(lam, k, n))


def suite_hwv(max_d: int, max_n: int, seed: int) -> list:
    tasks = []
    max_k = 3
    for d in range(1, max_d + 1):
        for lam in partitions_of(d):
            for k in range(0, max_k + 1):
                tasks.append((f"hwv_counts[lam={lam.parts},k={k}]", check_hwv_counts,
                              {"parts": lam.parts, "k": k, "n": max_n}))
            k = min(d - 1, max_k)
            tasks.append((f"hwv_weight[lam={lam.parts},k={k}]", check_hwv_weight,
                          {"parts": lam.parts, "k": k, "n": max_n}))
            tasks.append((f"hwv_unipotent[lam={lam.parts},k={k}]", check_hwv_unipotent,
                          {"parts": lam.parts, "k": k, "n": max_n}))
            tasks.append((f"e_iso_injective[lam={lam.parts},k={k}]", check_e_iso_injective,
                          {"parts": lam.parts, "k": k}))
            if d <= 3:
                tasks.append((f"commutative_diagram[lam={lam.parts},k={k}]",
                              check_commutative_diagram, {"parts": lam.parts, "k": k}))
                tasks.append((f"functional_iso[lam={lam.parts},k={k}]",
                              check_functional_iso, {"parts": lam.parts, "k": k}))
    for d in range(1, min(max_d, 5) + 1):
        for lam in partitions_of(d):
            tasks.append((f"symmetrizer_scalar[lam={lam.parts}]", check_symmetrizer_scalar,
                          {"parts": lam.parts}))
    for d in range(1, min(max_d, 3) + 1):
        tasks.append((f"leibniz_expansion[d={d}]", check_leibniz_expansion,
                      {"d": d, "k": min(d - 1, 2) if d > 1 else 1}))
    return tasks


# ---------------------------------------------------------------------------
# jets suite

def check_theorem2(n: int, d: int) -> CheckResult:
    rep = verify_theorem2(n, d)
    detail = "; ".join(f"{item.name}:{'pass' if item.passed else item.witness}"
                       for item in rep.items)
    return _result("theorem2", {"N": n, "d": d},
                   "k_stability:pass; total_dimension:pass; weight_vanishing:pass", detail)


def check_census_order_zero(n: int, d: int) -> CheckResult:
    entries = census(n, d, 0)
    forms = math.comb(n + d, d)
    computed = {e.n: e.count for e in entries}
    return _result("census_order_zero", {"N": n, "d": d},
                   {0: forms}, computed)


def check_census_cotangent() -> CheckResult:
    entries = {e.n: e.count for e in census(1, 2, 1)}
    return _result("census_cotangent", {"N": 1, "d": 2, "k": 1}, 1, entries.get(1, 0))


def check_order_weight_audit(n: int, d: int) -> CheckResult:
    weight_bad = 0
    order_over = 0
    discrepancies = []
    for c in classify_basis(n, d):
        if c.weight != c.weight_formula:
            weight_bad += 1
        if c.order > c.order_bound:
            order_over += 1
        if c.order < c.order_bound:
            discrepancies.append((c.datum.m, c.datum.flat_alpha))
    computed = f"weight_mismatches={weight_bad}, order_over_bound={order_over}"
    return _result("order_weight_audit",
                   {"N": n, "d": d, "order_discrepancies": len(discrepancies)},
                   "weight_mismatches=0, order_over_bound=0", computed)


def suite_jets(max_d: int, max_n: int, seed: int) -> list:
    tasks = []
    grid = [(1, d) for d in range(1, min(max_d, 4) + 1)]
    if max_n >= 2:
        grid += [(2, d) for d in range(1, min(max_d, 3) + 1)]
    for n, d in grid:
        tasks.append((f"theorem2[N={n},d={d}]", check_theorem2, {"n": n, "d": d}))
        tasks.append((f"census_order_zero[N={n},d={d}]", check_census_order_zero,
                      {"n": n, "d": d}))
        tasks.append((f"order_weight_audit[N={n},d={d}]", check_order_weight_audit,
                      {"n": n, "d": d}))
    tasks.append(("census_cotangent", check_census_cotangent, {}))
    return tasks


# ---------------------------------------------------------------------------
# runner

_SUITES = {
    "basis": (suite_basis, {"max_d": 4, "max_n": 2}),
    "rsk": (suite_rsk, {"max_d": 8, "max_n": 4}),
    "kernel": (suite_kernel, {"max_d": 4, "max_n": 2}),
    "pde": (suite_pde, {"max_d": 4, "max_n": 2}),
    "appendixA": (suite_appendixA, {"max_d": 4, "max_n": 2}),
    "hwv": (suite_hwv, {"max_d": 4, "max_n": 3}),
    "jets": (suite_jets, {"max_d": 4, "max_n": 2}),
}


def _run_task(task):
    check_id, fn, kwargs = task
    return fn(**kwargs)


def run_suite(suite: str, max_d: int | None = None, max_n: int | None = None,
              seed: int = DEFAULT_SEED, jobs: int = 1) -> VerificationReport:
    if suite not in SUITE_NAMES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITE_NAMES}")
    names = [s for s in SUITE_NAMES if s != "all"] if suite == "all" else [suite]
    tasks = []
    for name in names:
        builder, defaults = _SUITES[name]
        tasks.extend(builder(max_d if max_d is not None else defaults["max_d"],
                             max_n if max_n is not None else defaults["max_n"],
                             seed))
    start = time.monotonic()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    return VerificationReport(suite=suite, seed=seed, results=results,
                              wall_time=time.monotonic() - start)
