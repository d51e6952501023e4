from fractions import Fraction

import pytest

from superw22 import poly as P
from superw22.classify import (
    TARGETS, ModuleParams, OutOfCaseTable, Stage1Solution, _relations, assemble_stage1, case_tags,
    classify, core_indices, match_patterns, solve_polynomial_system, solve_stage1, stage1_all,
    stage2_filter,
)
from superw22.repmod import CoefficientTable, SuperModuleSpec, VirasoroFamily, module_axiom_check
from superw22.scalar import ONE, Scalar

F = Fraction
H = F(1, 2)


def mp(a, b, a2, b2):
    return ModuleParams.ab(F(a), F(b), F(a2), F(b2))


def admissible(N):
    return sum(1 for m in range(-2 * N, 2 * N + 1) for n in range(-N, N + 1) for t in range(-N, N + 1)
               if abs(m + n) <= N and abs(m + t) <= N)


def evaluate(sys, fn):
    """Each row of ``sys`` evaluated on a closed form."""
    for k, row in enumerate(sys.matrix.data):
        total = Scalar()
        for c, coef in row.items():
            total = total + coef * fn(*sys.index(c))
        yield sys.row_labels[k], total


# ---------------------------------------------------------------- assembly

def test_f_system_shape():
    sys = assemble_stage1("f", mp(F(2, 3), F(5, 7), F(2, 3), F(5, 7)), 6)
    assert sys.matrix.cols == 169
    assert sys.matrix.rows == admissible(6) == len(sys.row_labels)
    assert sys.row_labels == sorted(sys.row_labels)


def test_f_row_110():
    a, b = F(2, 3), F(5, 7)
    sys = assemble_stage1("f", mp(a, b, a, b), 6)
    assert sys.row(1, 1, 0) == {(1, 0): Scalar(a + b - 1), (1, 1): Scalar(-(a + b))}


def test_g_row_encodes_shift_by_2j():
    a, b = F(2, 3), F(5, 7)
    b2 = b + H
    sys = assemble_stage1("g", mp(a, b, a, b2), 6)
    for j in (-2, 1, 2):
        for k in (-1, 0, 1):
            if abs(k + 2 * j) > 6 or abs(3 * j) > 6:
                continue
            assert sys.row(2 * j, j, k) == {(j, k): Scalar(a - (k + j) + 2 * j * b2),
                                            (j, k + 2 * j): Scalar(-(a - k + 2 * j * b))}


@pytest.mark.parametrize("a,b", [(F(2, 3), F(5, 7)), (F(3, 5), F(-2, 9)), (F(1, 4), F(7, 3))])
def test_f_rows_vanish_on_closed_form(a, b):
    sys = assemble_stage1("f", mp(a, b, a, b), 6)
    for label, value in evaluate(sys, lambda n, m: Scalar((a + b * n - m) / a)):
        assert value == 0, label


@pytest.mark.parametrize("a,b,b2,form", [
    (F(2, 3), F(5, 7), F(5, 7) + H, lambda a, i, j: ONE),
    (F(2, 3), F(-1), H, lambda a, i, j: ONE / (a - j)),
    (F(2, 3), F(-3, 2), F(0), lambda a, i, j: ONE / (a - i - j)),
])
def test_g_rows_vanish_on_closed_form(a, b, b2, form):
    sys = assemble_stage1("g", mp(a, b, a, b2), 6)
    for label, value in evaluate(sys, lambda i, j: form(a, i, j)):
        assert value == 0, label


def test_h_system_matches_g_system():
    p = mp(F(2, 3), F(5, 7), F(2, 3), F(17, 14))
    assert assemble_stage1("h", p, 5).matrix == assemble_stage1("g", p, 5).matrix


def test_window_precondition():
    with pytest.raises(ValueError):
        assemble_stage1("q", mp(0, 0, 0, 0), 5)
    with pytest.raises(ValueError):
        classify(mp(0, 0, 0, 0), 3)


# ---------------------------------------------------------------- stage 1

def test_f_dimension_one_with_closed_form_basis():
    a, b = F(2, 3), F(5, 7)
    sol = solve_stage1(assemble_stage1("f", mp(a, b, a, b), 6))
    assert sol.dimension == 1
    for (n, m) in core_indices(sol.core):
        assert sol.value(0, n, m) == (a + b * n - m) / a
    assert sol.rank + sol.nullity == 169


def test_g_constant_case():
    a, b = F(2, 3), F(5, 7)
    p = mp(a, b, a, b + H)
    sol = solve_stage1(assemble_stage1("g", p, 6))
    assert sol.dimension == 1
    assert all(sol.value(0, i, j) == 1 for i, j in core_indices(sol.core))
    assert match_patterns(sol, p) == ["constant"]


def test_g_inverse_a_minus_i_minus_j_case():
    p = mp(F(2, 3), F(-3, 2), F(2, 3), 0)
    sol = solve_stage1(assemble_stage1("g", p, 6))
    assert sol.dimension == 1 and match_patterns(sol, p) == ["1/(a-i-j)"]


def test_g_inverse_a_minus_j_case():
    p = mp(F(2, 3), -1, F(2, 3), H)
    sol = solve_stage1(assemble_stage1("g", p, 6))
    assert sol.dimension == 1 and match_patterns(sol, p) == ["1/(a-j)"]


def test_g_unrelated_is_zero():
    sol = solve_stage1(assemble_stage1("g", mp(F(2, 3), F(5, 7), F(2, 3), F(1, 3)), 6))
    assert sol.dimension == 0


@pytest.mark.parametrize("p", [
    mp(F(2, 3), F(5, 7), F(2, 3), F(17, 14)),
    mp(0, -1, 0, H),
    mp(F(2, 3), F(-3, 2), F(2, 3), 0),
])
def test_dimensions_monotone_in_window(p):
    dims = [{t: s.dimension for t, s in stage1_all(p, N, core=2).items()} for N in (4, 5, 6)]
    for lo, hi in zip(dims[1:], dims):
        assert all(lo[t] <= hi[t] for t in TARGETS)


def test_case_tags():
    assert case_tags(mp(1, F(5, 7), 1, F(17, 14))) == {"g": ["b'=b+1/2"], "gt": ["b'=b-1/2"]}
    assert case_tags(mp(1, F(-3, 2), 1, 0))["g"] == ["b'=-b-3/2"]
    assert case_tags(mp(1, F(5, 7), 1, F(1, 3))) == {"g": [], "gt": []}


# ---------------------------------------------------------------- polynomial solver

def test_solver_product_branches():
    x, y = P.var(0), P.var(1)
    branches = solve_polynomial_system([P.mul(x, y)], 2)
    assert sorted(sorted(b.values) for b in branches) == [[0], [1]]


def test_solver_linear():
    x = P.var(0)
    (br,) = solve_polynomial_system([P.add(x, P.const(3), -1)], 1)
    assert br.values[0] == {(): Scalar(3)}


def test_solver_inconsistent():
    x = P.var(0)
    assert solve_polynomial_system([x, P.add(x, P.const(1))], 1) == []


def test_solver_splits_over_gaussian_rationals():
    x, y = P.var(0), P.var(1)
    branches = solve_polynomial_system([P.add(P.mul(x, x), P.mul(y, y))], 2)
    roots = sorted(str(b.values[0][(1,)]) for b in branches)
    assert roots == ["0+1i", "0-1i"]


def test_solver_reports_irrational_split():
    x, y = P.var(0), P.var(1)
    with pytest.raises(OutOfCaseTable):
        solve_polynomial_system([P.add(P.mul(x, x), P.scale(P.mul(y, y), Scalar(2)), -1)], 2)


# ---------------------------------------------------------------- stage 2

def test_f_only_oracle():
    # f(i,j) = c (a + b i - j)/a in [I_m, I_n] = 0 on u_k gives c^2 (m-n)(a-k+b(m+n))/a^2
    a, b = F(2, 3), F(5, 7)

    def val(t, i, j):
        if t in ("f", "ft"):
            return P.scale(P.var(0), Scalar((a + b * i - j) / a))
        return {}

    seen = 0
    for name, (m, n, k), p in _relations(val, 3):
        if name == "[I,I] on u":
            want = (m - n) * (a - k + b * (m + n)) / (a * a)
            assert p == ({(0, 0): Scalar(want)} if want else {})
            seen += 1
    assert seen > 0


def test_zero_spaces_are_trivial():
    p = mp(F(5, 7), F(1, 3), F(5, 7), F(1, 3))
    empty = {t: Stage1Solution(t, 6, 3, 0, 0, []) for t in TARGETS}
    v = stage2_filter(empty, p, 6)
    assert v.final == "trivial-IGH" and v.violations == []


def test_overflowing_stage1_is_reported():
    p = mp(F(5, 7), F(1, 3), F(5, 7), F(1, 3))
    basis = [{(i, 0): ONE} for i in range(3)]
    sols = {t: Stage1Solution(t, 6, 3, 0, 3, basis if t == "g" else []) for t in TARGETS}
    v = stage2_filter(sols, p, 6)
    assert v.final == "out-of-case-table"
    assert v.violations[0]["relation"] == "stage1-dimension"


def test_generic_verdict_details():
    v = classify(mp(F(2, 3), F(5, 7), F(2, 3), F(5, 7) + H), 6)
    assert v.final == "trivial-IGH"
    assert all(v.forced_zero[t] for t in ("f", "ft", "h", "ht"))
    assert v.gg_product_zero and v.gg_constraint_found
    assert v.patterns["f"] == ["(a+b*i-j)/a"] and v.patterns["g"] == ["constant"]


def test_integer_a_b_zero_forces_f():
    v = classify(mp(0, 0, 0, H), 6)
    assert v.final == "trivial-IGH" and v.forced_zero["f"]
    assert v.patterns["f"] == ["j"]


def test_b_minus_one_half_pattern():
    v = classify(mp(F(2, 3), -1, F(2, 3), H), 6)
    assert v.patterns["g"] == ["1/(a-j)"] and v.final == "trivial-IGH"


@pytest.mark.parametrize("p", [
    mp(F(2, 3), F(5, 7), F(2, 3), F(17, 14)),
    mp(F(3, 5), F(2, 9), F(3, 5), F(-5, 18)),
    mp(0, 0, 0, H),
    mp(0, -1, 0, H),
])
def test_mirror_symmetry(p):
    v, w = classify(p, 5), classify(p.mirrored(), 5)
    assert v.final == w.final
    for t, tt in (("f", "ft"), ("g", "gt"), ("h", "ht")):
        assert v.dims[t] == w.dims[tt] and v.dims[tt] == w.dims[t]
        assert v.forced_zero[t] == w.forced_zero[tt]
    assert v.case_tag["g"] == w.case_tag["gt"]


def test_integer_grid_witnesses():
    # a in Z, b in {0,-1}, b' over the case list: exactly the reducible points survive
    found = set()
    for a in (0, 1):
        for b in (F(0), F(-1)):
            for b2 in {b + H, -(b + H), -b - F(3, 2), b - H}:
                if classify(mp(a, b, a, b2), 5).final == "witness":
                    found.add((a, b, b2))
    assert found == {(0, 0, F(-3, 2)), (1, 0, F(-3, 2)), (0, -1, H), (1, -1, H)}


def test_reducible_witness_is_a_genuine_module():
    p = mp(0, -1, 0, H)
    v = classify(p, 6)
    assert v.final == "witness" and not v.gg_product_zero
    sols = stage1_all(p, 8)
    g, gt = sols["g"].basis[0], sols["gt"].basis[0]
    assert set(g) == {(i, 0) for i in range(-4, 5)}
    assert all(gt.get((1, j), 0) == gt[(1, 0)] * (1 - j * j) for j in range(-4, 5))
    spec = SuperModuleSpec(p.even, p.odd, CoefficientTable(4, {"g": g, "gt": gt}))
    assert module_axiom_check(spec, 2).passed


def test_special_families_run():
    v = classify(ModuleParams(VirasoroFamily.Aalpha(1), VirasoroFamily.Aalpha(1)), 5)
    assert v.final == "trivial-IGH"
    v = classify(ModuleParams(VirasoroFamily.Bbeta(0), VirasoroFamily.Bbeta(H)), 5)
    assert v.final == "trivial-IGH"
