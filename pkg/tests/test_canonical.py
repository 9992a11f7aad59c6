import math
import random

import pytest
import sympy

from ladderkit.canonical import (
    Family,
    ParamPoint,
    RationalFn,
    StepKind,
    chg,
    chg_alpha_step,
    chg_beta_step,
    coeff_residuals,
    elementary_step,
    embed_scalar,
    generating_fn_eval,
    hamiltonian_eval,
    hg,
    hg_alpha_step,
    hg_beta_step,
    hg_zeta_step,
    invariance_residual,
    invert,
    matrix_coeff_residuals,
    model_at,
)
from ladderkit.canonical.residuals import mat_mul, transpose
from ladderkit.errors import FamilyMismatchError
from ladderkit import specfun

T = RationalFn.t()
S = RationalFn.one_minus_t()
ONE = RationalFn.const(1)


def test_chg_alpha_closed_form():
    c = chg_alpha_step(2, 1)
    assert (c.a, c.b, c.c) == (T, RationalFn.const(2), T + 2)
    assert c.gamma == 2 and not c.degenerate
    assert chg_alpha_step(1, 2).degenerate


def test_chg_beta_closed_form():
    c = chg_beta_step(1, 2)
    assert (c.a, c.b, c.c) == (ONE, RationalFn.const(-1), RationalFn.const(-2))
    assert c.gamma == 1
    assert chg_beta_step(1.5, 1.5).degenerate


def test_hg_alpha_and_beta_closed_forms():
    c = hg_alpha_step(2, 1, 1)
    assert (c.a, c.b, c.c) == (T, RationalFn.const(2), T + 2)
    assert c.gamma == 2
    assert hg_alpha_step(1, 1, 2).degenerate
    swapped = hg_beta_step(1, 2, 1)
    assert (swapped.a, swapped.b, swapped.c, swapped.gamma) == (c.a, c.b, c.c, c.gamma)
    assert swapped.step is StepKind.BETA_UP and swapped.target == hg(1, 3, 1)


def test_hg_zeta_closed_form():
    c = hg_zeta_step(1, 3, 2)
    assert (c.a, c.b, c.c) == (S, RationalFn.const(-2), RationalFn.const(-2))
    assert c.gamma == 1
    assert hg_zeta_step(2, 3, 2).degenerate


def test_mass_ratios():
    assert model_at(chg(1, 2)).mass_ratio(StepKind.ALPHA_UP) == ONE
    assert model_at(chg(1, 2)).mass_ratio(StepKind.BETA_UP) == RationalFn.t(-1)
    assert model_at(chg(1, 2)).mass_ratio(StepKind.BETA_DOWN) == T
    h = model_at(hg(1, 2, 3))
    assert h.mass_ratio(StepKind.ALPHA_UP) == S.inverse()
    assert h.mass_ratio(StepKind.ZETA_UP) == S * T.inverse()


def test_mass_ratio_matches_closed_form_mass():
    for point, kind in [(chg(1.3, 2.2), StepKind.BETA_UP), (hg(0.4, 1.2, 2.1), StepKind.ZETA_UP),
                        (hg(0.4, 1.2, 2.1), StepKind.BETA_DOWN)]:
        t = 0.37
        ratio = model_at(point).mass(t) / model_at(point.step(kind)).mass(t)
        assert model_at(point).mass_ratio(kind)(t) == pytest.approx(ratio, rel=1e-13)


GRID = (0.5, 1.5, 2.5, 3.5)


def _all_steps():
    for family in Family:
        for values in __import__("itertools").product(GRID, repeat=len(family.params)):
            point = ParamPoint(family, *values)
            for kind in StepKind:
                if kind.param in family.params:
                    yield point, kind


@pytest.mark.parametrize("point,kind", list(_all_steps())[::7])
def test_coefficient_system_is_exact(point, kind, random_ts):
    exact = point.as_exact()
    assert coeff_residuals(model_at(exact), kind, elementary_step(exact, kind)).is_zero()
    res = coeff_residuals(model_at(point), kind, elementary_step(point, kind))
    assert max(abs(r(t)) for r in res for t in random_ts) < 1e-10


def test_perturbed_b_gives_constant_r1():
    c = chg_alpha_step(2, 1)
    res = coeff_residuals(model_at(chg(2, 1)), StepKind.ALPHA_UP, c.with_(b=c.b + 1))
    assert res.r1 == ONE


def test_trivial_coefficients_have_zero_residual():
    zero = RationalFn()
    c = chg_alpha_step(2, 1).with_(a=zero, b=zero, c=zero, gamma_sq=0)
    assert coeff_residuals(model_at(chg(2, 1)), StepKind.ALPHA_UP, c).is_zero()


def test_residuals_reject_foreign_coefficients():
    with pytest.raises(FamilyMismatchError):
        coeff_residuals(model_at(hg(1, 2, 3)), StepKind.ALPHA_UP, chg_alpha_step(1, 2))
    with pytest.raises(FamilyMismatchError):
        coeff_residuals(model_at(chg(1, 2)), StepKind.BETA_UP, chg_alpha_step(1, 2))


def test_printed_chg_beta_variant_fails_the_system():
    # the alternative a = t, b = beta - t, c = ... does not solve the system;
    # keep a witness that the residual check discriminates
    c = chg_beta_step(1, 2)
    bad = c.with_(a=T, b=RationalFn.const(2) - T)
    assert not coeff_residuals(model_at(chg(1, 2)), StepKind.BETA_UP, bad).is_zero()


def test_inverse_steps_solve_the_system_too():
    for point, kind in [(chg(2, 1), StepKind.BETA_UP), (hg(1, 3, 2), StepKind.ZETA_UP)]:
        up = elementary_step(point.as_exact(), kind)
        down = invert(up)
        assert down.step is kind.inverse and down.source == up.target
        assert coeff_residuals(model_at(down.source), down.step, down).is_zero()


def test_generating_function_and_hamiltonian_values():
    c = chg_alpha_step(2, 1)
    assert generating_fn_eval(c, model_at(chg(2, 1)), 0, 0, 0.5) == 0
    assert generating_fn_eval(c, model_at(chg(2, 1)), 1, 0, 1) == pytest.approx(-math.exp(-1))
    assert hamiltonian_eval(0, 0, 0.5, model_at(chg(1, 2))) == 0
    assert hamiltonian_eval(0, 1, 1, model_at(chg(1, 2))) == pytest.approx(-math.exp(-1) / 2)


def test_generating_function_swap_symmetry():
    # swapping q and q~ swaps the roles of b and c
    c = chg_alpha_step(2.5, 1.5)
    m = model_at(chg(2.5, 1.5))
    swapped = c.with_(b=c.c, c=c.b)
    assert generating_fn_eval(c, m, 0.3, 0.8, 0.6) == pytest.approx(
        generating_fn_eval(swapped, m, 0.8, 0.3, 0.6))


def test_hamilton_equation_on_series_data():
    # q' = p / m with p = m q'
    point, t = chg(1.5, 2.5), 0.7
    m = model_at(point).mass(t)
    dq = specfun.kummer(1.5, 2.5, t, deriv=1).value
    p = m * dq
    h = 1e-6
    q = specfun.kummer(1.5, 2.5, t).value
    dH_dp = (hamiltonian_eval(p + h, q, t, model_at(point))
             - hamiltonian_eval(p - h, q, t, model_at(point))) / (2 * h)
    assert dH_dp == pytest.approx(dq, rel=1e-8)


def test_invariance_residual_grid():
    c = chg_alpha_step(2, 1)
    m = model_at(chg(2, 1))
    vals = [abs(invariance_residual(c, m, q, qn, 0.7))
            for q in (-1, -0.5, 0, 0.5, 1) for qn in (-1, -0.5, 0, 0.5, 1)]
    assert max(vals) < 1e-9
    assert invariance_residual(c, m, 0, 0, 0.7) == 0


def test_invariance_residual_detects_wrong_coefficients():
    rng = random.Random(3)
    m = model_at(hg(1.5, 0.5, 2.5))
    c = hg_zeta_step(1.5, 0.5, 2.5)
    for _ in range(5):
        bad = c.with_(b=c.b + rng.uniform(0.5, 2), c=c.c - rng.uniform(0.5, 2))
        assert abs(invariance_residual(bad, m, 0.7, -0.4, 0.3)) > 1e-3


def test_matrix_system_reduces_to_scalar_identities():
    coeffs = hg_alpha_step(*(sympy.Rational(x) for x in ("3/2", "1/2", "5/2")))
    r_cross, r_qq, r_nn = matrix_coeff_residuals(**embed_scalar(coeffs))
    assert r_cross[0][0].is_zero() and r_qq[0][0].is_zero() and r_nn[0][0].is_zero()


def test_matrix_identities_on_a_wrong_step():
    # with b perturbed the 1x1 residuals are exact multiples of r1, r3
    c = chg_alpha_step(sympy.Integer(2), sympy.Integer(1))
    bad = c.with_(b=c.b + 1)
    res = coeff_residuals(model_at(c.source), c.step, bad)
    r_cross, r_qq, _ = matrix_coeff_residuals(**embed_scalar(bad))
    a2 = bad.a * bad.a
    assert r_cross[0][0] * a2 == -(res.r1.scale(bad.gamma))
    assert r_qq[0][0] * a2 == bad.b * res.r1 - res.r3


def test_matrix_system_trivial_cases():
    one, zero = [[ONE]], [[RationalFn()]]
    r = matrix_coeff_residuals(one, zero, one, zero, zero, zero, zero)
    assert all(m[0][0].is_zero() for m in r)
    lam = 3
    r = matrix_coeff_residuals(one, [[RationalFn.const(lam)]], one, [[RationalFn.const(lam)]],
                               zero, zero, zero, lam=lam, lam_next=lam)
    assert r[1][0][0].is_zero()


def _blockdiag(x, y):
    z = RationalFn()
    return [[x, z], [z, y]]


def test_two_dimensional_mixed_system_stays_solved():
    beta = sympy.Rational(1, 2)
    e1 = embed_scalar(chg_alpha_step(sympy.Rational(3, 2), beta))
    e2 = embed_scalar(chg_alpha_step(sympy.Rational(5, 2), beta))
    P = [[ONE, RationalFn.const(2)], [RationalFn(), ONE]]
    Pn = [[ONE, RationalFn()], [RationalFn.const(3), ONE]]

    def conj(left, m, right):
        return mat_mul(mat_mul(transpose(left), m), right)

    blocks = {k: _blockdiag(e1[k][0][0], e2[k][0][0])
              for k in ("g", "U", "g_next", "U_next", "gamma", "b", "c")}
    mixed = dict(
        g=conj(P, blocks["g"], P), U=conj(P, blocks["U"], P),
        g_next=conj(Pn, blocks["g_next"], Pn), U_next=conj(Pn, blocks["U_next"], Pn),
        gamma=conj(P, blocks["gamma"], Pn), b=conj(P, blocks["b"], P), c=conj(Pn, blocks["c"], Pn),
    )
    for residual in matrix_coeff_residuals(**mixed, weight_log_deriv=e1["weight_log_deriv"]):
        assert all(e.is_zero() for row in residual for e in row)
    bad = dict(mixed, b=conj(P, _blockdiag(e1["b"][0][0] + 1, e2["b"][0][0]), P))
    residuals = matrix_coeff_residuals(**bad, weight_log_deriv=e1["weight_log_deriv"])
    assert not all(e.is_zero() for m in residuals for row in m for e in row)


def test_param_point_validation():
    with pytest.raises(FamilyMismatchError):
        ParamPoint(Family.CHG, 1, 2, 3)
    with pytest.raises(FamilyMismatchError):
        ParamPoint(Family.HG, 1, 2)
    with pytest.raises(FamilyMismatchError):
        elementary_step(chg(1, 2), StepKind.ZETA_UP)
    assert chg(1, 2).step(StepKind.BETA_DOWN) == chg(1, 1)
    assert StepKind.from_token("z-") is StepKind.ZETA_DOWN
