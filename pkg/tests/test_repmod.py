from fractions import Fraction

import pytest

from superw22.algebra import GeneratorId
from superw22.expr import parse_element
from superw22.repmod import (
    CoefficientTable, ModuleVector, OddPartMissing, SuperModuleSpec, TableSyntaxError, VirasoroFamily,
    WindowExhausted, act, load_coefficients, module_axiom_check,
)
from superw22.scalar import Scalar

F = Fraction
u, v = ModuleVector.u, ModuleVector.v


def spec_of(fam, odd=None, table=None):
    return SuperModuleSpec(fam, odd, table or CoefficientTable.zero())


def test_aab_zero():
    assert act(parse_element("L[1]"), u(0), spec_of(VirasoroFamily.Aab(0, 0))).is_zero()


def test_aab_action():
    out = act(parse_element("L[2]"), u(1), spec_of(VirasoroFamily.Aab(F(2, 3), F(5, 7))))
    assert out == u(3, F(23, 21))
    assert str(out) == "23/21*u[3]"


def test_aalpha_action():
    assert act(parse_element("L[1]"), u(0), spec_of(VirasoroFamily.Aalpha(1))) == u(1, -3)


def test_bbeta_action():
    assert act(parse_element("L[2]"), u(-2), spec_of(VirasoroFamily.Bbeta(0))) == u(0, 2)


def test_zero_table_acts_trivially():
    spec = SuperModuleSpec.trivial_extension(F(2, 3), F(5, 7))
    for x in ("G[1]", "I[-2]", "H[0]"):
        assert act(parse_element(x), u(0), spec).is_zero()


def test_parity_swap_and_linearity():
    even, odd = VirasoroFamily.Aab(F(1, 3), 0), VirasoroFamily.Aab(F(1, 3), F(1, 2))
    tab = CoefficientTable.from_functions(None, g=lambda i, j: i + 2 * j, gt=lambda i, j: 1)
    spec = spec_of(even, odd, tab)
    assert act(parse_element("G[1]"), u(2), spec) == v(3, 5)
    assert act(parse_element("G[1]"), v(2), spec) == u(3, 1)
    x = parse_element("2*G[1] - L[0]")
    w = u(2) + v(1, 3)
    assert act(x, w, spec) == act(parse_element("G[1]"), w, spec).scale(2) - act(parse_element("L[0]"), w, spec)


def test_degree_additivity():
    spec = spec_of(VirasoroFamily.Aab(F(2, 3), F(5, 7)))
    for i in range(-3, 4):
        for j in range(-3, 4):
            out = act(parse_element(f"L[{i}]"), u(j), spec)
            assert set(out.even) <= {i + j}


def test_window_exhausted_names_lookup():
    tab = CoefficientTable(2, {"f": {(1, 1): 1}})
    spec = spec_of(VirasoroFamily.Aab(0, 0), None, tab)
    with pytest.raises(WindowExhausted) as exc:
        act(parse_element("I[3]"), u(0), spec)
    assert (exc.value.name, exc.value.i, exc.value.j) == ("f", 3, 0)


def test_odd_part_missing():
    tab = CoefficientTable(None, {"g": {(0, 0): 1}})
    with pytest.raises(OddPartMissing):
        act(parse_element("G[0]"), u(0), spec_of(VirasoroFamily.Aab(0, 0), None, tab))


def test_trivial_extension_is_a_module():
    res = module_axiom_check(SuperModuleSpec.trivial_extension(F(2, 3), F(5, 7)), 5)
    assert res.passed and res.checked == (4 * 11) ** 2 * 11


def test_constant_f_violates_at_l_i_pairs():
    a, b = F(2, 3), F(5, 7)
    fam = VirasoroFamily.Aab(a, b)
    tab = CoefficientTable.from_functions(None, f=lambda i, j: 1, ft=lambda i, j: 1)
    res = module_axiom_check(spec_of(fam, fam, tab), 2, limit=None)
    assert not res.passed
    assert any(vi.indices["x"].startswith("L") and vi.indices["y"].startswith("I") for vi in res.violations)


def test_closed_form_f_passes_l_i_but_not_i_i():
    # f(n,m) = (a + b n - m)/a satisfies the L-I equivariance rows but not [I,I] = 0
    a, b = F(2, 3), F(5, 7)
    fam = VirasoroFamily.Aab(a, b)
    f = lambda n, m: (a + b * n - m) / a
    tab = CoefficientTable.from_functions(None, f=f)
    spec = spec_of(fam, None, tab)
    res = module_axiom_check(spec, 2, limit=None, families=("L", "I"))
    assert not res.passed
    assert all(x.indices["x"].startswith("I") and x.indices["y"].startswith("I") for x in res.violations)


def test_g_constant_with_zero_gt_is_a_module():
    # b' = b + 1/2, g constant, everything else zero: g * gt = 0 holds
    a, b = F(2, 3), F(5, 7)
    spec = spec_of(VirasoroFamily.Aab(a, b), VirasoroFamily.Aab(a, b + F(1, 2)),
                   CoefficientTable.from_functions(None, g=lambda i, j: 3))
    assert module_axiom_check(spec, 3).passed


def test_vacuous_on_zero_vector():
    spec = SuperModuleSpec.trivial_extension(1, 1)
    assert act(parse_element("L[1] + G[2]"), ModuleVector(), spec).is_zero()


@pytest.mark.parametrize("kind,params", [("Aab", ("2/3", "5/7")), ("Aalpha", ("1/3",)), ("Bbeta", ("-2",))])
def test_virasoro_families_are_modules(kind, params):
    fam = VirasoroFamily(kind, tuple(params))
    assert module_axiom_check(spec_of(fam), 4, families=("L",)).passed


def test_load_coefficients():
    text = "# sample\nwindow 3\nf 1 2 1/2\ngt -1 0 1+2i\n\n"
    tab = load_coefficients(text)
    assert tab.radius == 3
    assert tab("f", 1, 2) == F(1, 2)
    assert tab("gt", -1, 0) == Scalar(1, 2)
    assert tab("h", 0, 0) == 0
    assert load_coefficients(tab.dumps())("gt", -1, 0) == Scalar(1, 2)


@pytest.mark.parametrize("text", ["q 1 2 3", "f 1 2", "f a 2 3", "f 1 2 1/0"])
def test_load_coefficients_rejects(text):
    with pytest.raises(TableSyntaxError):
        load_coefficients(text)
