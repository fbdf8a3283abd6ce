from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apostol_lab.apostol import ChangheeContext, DaeheeContext
from apostol_lab.classical import bernoulli_numbers, euler_poly
from apostol_lab.dirichlet import enumerate_characters, kronecker_character, trivial_character
from apostol_lab.padic import (
    SUMMAND_BUDGET,
    BudgetError,
    Distance,
    IntegrandSpec,
    PadicPreconditionError,
    QpNumber,
    binomial_poly,
    fermionic_partial,
    fermionic_shift_check,
    golden_key,
    integral_rep_check,
    is_prime,
    load_witt_golden,
    logexpr_eval_padic,
    mahler_coefficients,
    mahler_integral,
    padic_log,
    q_functional_equation_check,
    q_volkenborn_partial,
    translation_check,
    volkenborn_partial,
    vp,
    witt_report,
)
from apostol_lab.rings import LogExpr

F = Fraction
Lq = LogExpr.symbol("Lq")
Ll = LogExpr.symbol("Lλ")


def _log_oracle(u: Fraction, terms: int) -> Fraction:
    x = u - 1
    return sum((F((-1) ** (k + 1), k) * x ** k for k in range(1, terms + 1)), F(0))


# --- QpNumber ---

def test_vp():
    assert vp(F(50, 3), 5) == 2 and vp(F(3, 125), 5) == -3 and vp(0, 5) is None


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_qp_from_rational():
    x = QpNumber.from_rational(F(50, 3), 5)
    assert x.valuation == 2 and (x.unit * 3) % 5 ** x.prec == 2
    assert x.to_fraction() != F(50, 3)  # representative, not the rational itself
    assert x.distance(F(50, 3)).value >= x.abs_prec


small_rationals = st.fractions(min_value=-500, max_value=500, max_denominator=200).filter(lambda v: v != 0)


@given(small_rationals, small_rationals, st.sampled_from([3, 5, 7]))
def test_qp_arithmetic_is_a_homomorphism(a, b, p):
    A, B = QpNumber.from_rational(a, p), QpNumber.from_rational(b, p)
    for got, exact in ((A + B, a + b), (A * B, a * b), (A - B, a - b), (A / B, a / b)):
        assert got.distance(exact).at_least(20)


def test_distance_infinite_flag():
    d = Distance.infinite()
    assert d.is_infinite and str(d) == "inf"
    assert str(Distance(4, exact=False)) == ">=4" and str(Distance(3)) == "3"


# --- logarithm ---

def test_log_of_one():
    assert padic_log(1, 5).is_zero


def test_log_against_series_oracle():
    L = padic_log(6, 5)
    assert L.valuation == 1
    assert L.distance(_log_oracle(F(6), 40)).at_least(30)
    assert padic_log(F(1, 4), 3).distance(_log_oracle(F(1, 4), 70)).at_least(30)


@given(st.integers(1, 40), st.integers(1, 40))
def test_log_homomorphism(a, b):
    u, w = 1 + 5 * a, 1 + 5 * b
    assert padic_log(u * w, 5).distance(padic_log(u, 5) + padic_log(w, 5)).at_least(30)


def test_log_precondition():
    with pytest.raises(PadicPreconditionError):
        padic_log(2, 5)


def test_logexpr_eval_examples():
    one = logexpr_eval_padic(LogExpr.const(1), 6, 6, 5)
    assert one.valuation == 0 and one.distance(1).at_least(30)
    assert logexpr_eval_padic(Lq, 6, 6, 5).valuation == 1
    assert logexpr_eval_padic(LogExpr.const(5) / Lq, 6, 6, 5).valuation == 0
    mixed = logexpr_eval_padic((Ll + Lq) / Lq, 11, 6, 5)
    assert mixed.distance(padic_log(66, 5) / padic_log(6, 5)).at_least(30)


# --- partial sums ---

def test_constant_integrand_is_exact():
    one = IntegrandSpec("monomial", 0)
    for N in (1, 3, 5):
        assert volkenborn_partial(one, 5, N).to_fraction() == 1
        assert fermionic_partial(one, 5, N).to_fraction() == 1


def test_volkenborn_monomial_one():
    assert volkenborn_partial(IntegrandSpec("monomial", 1), 5, 6).distance(F(-1, 2), 5).at_least(5)


def test_volkenborn_binomial_two():
    assert volkenborn_partial(IntegrandSpec("binomial", 2), 5, 6).distance(F(1, 3), 5).at_least(5)


def test_fermionic_examples():
    assert fermionic_partial(IntegrandSpec("monomial", 1), 5, 6).distance(F(-1, 2), 5).at_least(5)
    assert fermionic_partial(IntegrandSpec("binomial", 3), 5, 6).distance(F(-1, 8), 5).at_least(5)


def test_partial_sum_matches_direct_sum():
    chi = kronecker_character(-3)
    spec = IntegrandSpec("falling-lambda-chi", n=2, lam=F(6), chi=chi)
    M = 3 * 5 ** 2
    direct_b = sum((spec(x) for x in range(M)), F(0)) / M
    assert volkenborn_partial(spec, 5, 2).to_fraction() == direct_b
    direct_f = sum((spec(x) * (-6) ** x for x in range(M)), F(0)) * F(7) / (1 + F(6) ** M)
    assert fermionic_partial(spec, 5, 2, 6).to_fraction() == direct_f
    direct_q = sum((spec(x) * 6 ** x for x in range(M)), F(0)) * F(5) / (F(6) ** M - 1)
    assert q_volkenborn_partial(spec, 5, 2, 6).to_fraction() == direct_q


def test_preconditions():
    with pytest.raises(PadicPreconditionError):
        volkenborn_partial(IntegrandSpec("monomial", 1), 4, 2)
    with pytest.raises(PadicPreconditionError):
        fermionic_partial(IntegrandSpec("monomial", 1), 2, 2)
    with pytest.raises(PadicPreconditionError):
        volkenborn_partial(IntegrandSpec("falling-lambda-chi", n=1, lam=F(2)), 5, 2)
    with pytest.raises(PadicPreconditionError):
        volkenborn_partial(IntegrandSpec("falling-lambda-chi", n=1, lam=F(6), chi=kronecker_character(5)), 5, 2)
    with pytest.raises(PadicPreconditionError):
        volkenborn_partial(IntegrandSpec("falling-lambda-chi", n=1, chi=enumerate_characters(7)[1]), 5, 2)
    with pytest.raises(PadicPreconditionError):
        q_volkenborn_partial(IntegrandSpec("monomial", 1), 5, 2, F(2))
    with pytest.raises(BudgetError):
        volkenborn_partial(IntegrandSpec("monomial", 1), 3, 20)
    assert SUMMAND_BUDGET == 10 ** 6
    with pytest.raises(ValueError):
        IntegrandSpec("cubic")


# --- Witt tables ---

def test_witt_examples():
    t = witt_report("bosonic", 2, 3, 8)
    assert t.nondecreasing and t.valuations[-1] >= 4
    assert all(d.is_infinite for _, d in witt_report("fermionic", 0, 5, 4).rows)
    t1 = witt_report("bosonic", 1, 5, 4, z=1)
    assert t1.target == "1/2" and t1.nondecreasing and t1.valuations[-1] >= 3


def test_witt_targets():
    assert witt_report("bosonic", 4, 5, 1).target == str(bernoulli_numbers(4)[4])
    assert witt_report("fermionic", 3, 5, 1).target == str(euler_poly(0, 3)[3])
    with pytest.raises(ValueError):
        witt_report("other", 1, 5, 2)


def test_golden_file_shape():
    golden = load_witt_golden()
    for kind in ("bosonic", "fermionic"):
        for p in (3, 5, 7):
            for n in range(7):
                assert golden_key(kind, p, n) in golden


# --- Mahler expansion ---

def test_mahler_examples():
    assert mahler_integral([1]) == 1
    assert mahler_integral([0, 0, 1]) == F(1, 6)
    for j in range(11):
        assert mahler_integral(binomial_poly(j)) == F((-1) ** j, j + 1)
        assert mahler_integral(binomial_poly(j), "fermionic") == F((-1) ** j, 2 ** j)


def test_mahler_coefficients_are_finite_differences():
    coeffs = [F(3), F(-1), F(0), F(2)]
    a = mahler_coefficients(coeffs)
    # f(x) = sum a_n C(x, n) at integer points
    from math import comb

    for x in range(8):
        f = sum(c * x ** k for k, c in enumerate(coeffs))
        assert f == sum(an * comb(x, n) for n, an in enumerate(a))


def test_mahler_monomials_give_bernoulli_and_euler():
    B = bernoulli_numbers(10)
    E = euler_poly(0, 10)
    for k in range(11):
        mono = [0] * k + [1]
        assert mahler_integral(mono) == B[k]
        assert mahler_integral(mono, "fermionic") == E[k]


# --- integral representations ---

def test_daehee_integral_constant_case():
    t = integral_rep_check("daehee", DaeheeContext(trivial_character(), 1), 0, 5, 4)
    assert all(d.is_infinite for _, d in t.rows)


@pytest.mark.parametrize("chi", [trivial_character(), kronecker_character(-4), kronecker_character(-3)], ids=str)
def test_daehee_integral_representation(chi):
    t = integral_rep_check("daehee", DaeheeContext(chi, 6, 6), 1, 5, 4, Nmin=2)
    assert t.strictly_increasing


def test_changhee_integral_representation_odd_modulus():
    t = integral_rep_check("changhee", ChangheeContext(kronecker_character(-3), 6, 6), 2, 5, 4, Nmin=2)
    assert t.strictly_increasing


def test_integral_rep_type_checks():
    with pytest.raises(TypeError):
        integral_rep_check("daehee", ChangheeContext(trivial_character(), 6, 6), 0, 5, 2)
    with pytest.raises(ValueError):
        integral_rep_check("other", DaeheeContext(trivial_character(), 6, 6), 0, 5, 2)


# --- functional equations ---

def test_translation_examples():
    r = translation_check([0, 0, 1], 1, 3, 8)
    assert r.passed
    assert translation_check([0, 0, 1], 0, 5, 3).distance.is_infinite
    r3 = translation_check([0, 1], 3, 5, 4)
    assert r3.detail == "rhs=3" and r3.passed


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=4), min_size=1, max_size=7))
def test_fermionic_shift_identity_is_exact(coeffs):
    lhs, exact = fermionic_shift_check(coeffs, 3, 8)
    assert lhs == exact


@pytest.mark.parametrize("chi", [trivial_character(), kronecker_character(-4), kronecker_character(-3)], ids=str)
def test_q_functional_equation(chi):
    r = q_functional_equation_check(chi, 6, 5, 6, 5, 4)
    assert r.passed


def test_q_functional_equation_needs_small_t():
    with pytest.raises(PadicPreconditionError):
        q_functional_equation_check(trivial_character(), 6, F(1, 2), 6, 5, 3)
