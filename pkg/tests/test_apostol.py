from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apostol_lab.apostol import (
    ChangheeContext,
    DaeheeContext,
    binomial_transfer,
    changhee_closed_form,
    changhee_numbers,
    changhee_polynomials,
    daehee_closed_form,
    daehee_da4,
    daehee_da5,
    daehee_numbers,
    daehee_polynomials,
)
from apostol_lab.classical import (
    PoleError,
    apostol_euler,
    gen_chi_values,
    gen_euler_alternating,
    stirling1,
    stirling2,
)
from apostol_lab.dirichlet import enumerate_characters, kronecker_character, parse_character, trivial_character
from apostol_lab.rings import LogExpr

F = Fraction
Ll = LogExpr.symbol("Lλ")
Lq = LogExpr.symbol("Lq")
triv = trivial_character()
k4 = kronecker_character(-4)
k3 = kronecker_character(-3)
m3 = parse_character("mod:3:1")

# Independent oracle: sympy series expansion of the two generating functions
# with symbols for log(lam) and log(q), frozen here.
ORACLE_DAEHEE = {
    (k4, F(2), F(3, 2)): [
        F(3, 20) * (-Ll - Lq) / Lq,
        F(3, 50) * (4 * Ll + 4 * Lq - 5) / Lq,
        F(3, 125) * (-27 * Ll - 27 * Lq + 65) / Lq,
        F(6, 625) * (189 * Ll + 189 * Lq - 955) / Lq,
        F(24, 3125) * (243 * Ll + 243 * Lq + 7790) / Lq,
    ],
    (k3, F(-3), None): [
        F(3, 7) * Ll,
        F(72, 49) * Ll - F(9, 7),
        F(3078, 343) * Ll - F(621, 49),
        F(170586, 2401) * Ll - F(49248, 343),
        F(9762768, 16807) * Ll - F(4472658, 2401),
    ],
    (triv, F(1, 2), F(3)): [
        4 * Ll / Lq + 4,
        2 * (-3 * Ll - 3 * Lq + 1) / Lq,
        (18 * Ll + 18 * Lq - 7) / Lq,
        (-162 * Ll - 162 * Lq + 65) / (2 * Lq),
    ],
}
ORACLE_CHANGHEE = {
    (k3, F(2), F(3, 2)): [F(-15, 14), F(120, 49), F(-3420, 343), F(126360, 2401), F(-4821120, 16807), F(86313600, 117649)],
    (k4, F(-3), F(2)): [
        F(-630, 1297),
        F(-2303694, 1682209),
        F(-16148703024, 2181825073),
        F(-159788710211184, 2829827119681),
        F(-1905409018202837760, 3670285774226257),
    ],
}

GRID_CHARS = (triv, k4, k3, m3)
GRID_LAMBDAS = (F(2), F(1, 2), F(-3))
GRID_QS = (F(2), F(3, 2), None)


def _daehee_contexts():
    for chi in GRID_CHARS:
        for lam in GRID_LAMBDAS:
            for q in GRID_QS:
                if q is not None and (lam * q) ** chi.modulus == 1:
                    continue
                yield DaeheeContext(chi, lam, q)


def _changhee_contexts():
    for chi in GRID_CHARS:
        for lam in GRID_LAMBDAS:
            for q in (F(2), F(3, 2), F(1)):
                if (lam * q) ** chi.modulus == -1:
                    continue
                yield ChangheeContext(chi, lam, q)


@pytest.mark.parametrize("key", list(ORACLE_DAEHEE), ids=str)
def test_daehee_matches_oracle(key):
    chi, lam, q = key
    expected = ORACLE_DAEHEE[key]
    assert daehee_numbers(DaeheeContext(chi, lam, q), len(expected) - 1) == expected


@pytest.mark.parametrize("key", list(ORACLE_CHANGHEE), ids=str)
def test_changhee_matches_oracle(key):
    chi, lam, q = key
    expected = ORACLE_CHANGHEE[key]
    assert changhee_numbers(ChangheeContext(chi, lam, q), len(expected) - 1) == expected


def test_daehee_reduction():
    vals = daehee_numbers(DaeheeContext(triv, 1), 12)
    assert vals == [F((-1) ** n * factorial(n), n + 1) for n in range(13)]


def test_changhee_reduction():
    vals = changhee_numbers(ChangheeContext(triv, 1, 1), 12)
    assert vals == [F((-1) ** n * factorial(n), 2 ** n) for n in range(13)]


def test_reduction_polynomials_at_one():
    assert daehee_polynomials(DaeheeContext(triv, 1), 1, 1)[1] == F(1, 2)
    assert changhee_polynomials(ChangheeContext(triv, 1, 1), 1, 1)[1] == F(1, 2)


def test_polynomials_at_zero_are_numbers():
    ctx = DaeheeContext(k4, F(2), F(3, 2))
    assert daehee_polynomials(ctx, 0, 6) == daehee_numbers(ctx, 6)
    cctx = ChangheeContext(k3, F(-3), F(2))
    assert changhee_polynomials(cctx, 0, 6) == changhee_numbers(cctx, 6)


def test_first_order_transfer():
    for ctx in (DaeheeContext(k4, F(1, 2), F(3, 2)), DaeheeContext(m3, F(-3))):
        D = daehee_numbers(ctx, 1)
        for z in (F(1), F(2), F(1, 2)):
            assert daehee_polynomials(ctx, z, 1)[1] == D[1] + ctx.lam * z * D[0]
    cctx = ChangheeContext(k3, F(2), F(3, 2))
    C = changhee_numbers(cctx, 1)
    assert changhee_polynomials(cctx, 3, 1)[1] == C[1] + 2 * 3 * C[0]


def test_changhee_constant_term():
    for ctx in _changhee_contexts():
        base = ctx.lam * ctx.q
        d = ctx.chi.modulus
        expected = ctx.bracket2 * sum(((-1) ** j * ctx.chi(j) * base ** j for j in range(d)), F(0)) / (base ** d + 1)
        assert changhee_numbers(ctx, 0)[0] == expected


def test_daehee_constant_term_at_limit():
    # F(0) = (log lam) sum_j lam^j chi(j) / (lam^d - 1) in the q -> 1 mode
    ctx = DaeheeContext(k3, F(2))
    assert daehee_numbers(ctx, 0)[0] == Ll * F(2 - 4, 8 - 1)


def test_da5_example():
    assert daehee_numbers(DaeheeContext(k4, 1), 10) == daehee_da5(k4, 10)
    B = gen_chi_values("bernoulli", k4, 1, 4)
    D = daehee_numbers(DaeheeContext(k4, 1), 4)
    for n in range(5):
        assert D[n] == sum((B[k] * stirling1(n, k) for k in range(n + 1)), F(0))


def test_da4_example():
    assert daehee_da4(m3, 4) == daehee_numbers(DaeheeContext(m3, 1), 4)


def test_trivial_closed_form_start():
    assert daehee_closed_form(DaeheeContext(triv, 1), 0)[0] == 1


def test_stirling_round_trip():
    for chi in GRID_CHARS:
        D = daehee_numbers(DaeheeContext(chi, 1), 10)
        B = gen_chi_values("bernoulli", chi, 1, 10)
        back = [sum((D[k] * stirling2(m, k) for k in range(m + 1)), LogExpr()) for m in range(11)]
        assert back == B


@pytest.mark.parametrize("ctx", list(_daehee_contexts()), ids=lambda c: str(c.describe()))
def test_daehee_dual_path(ctx):
    assert daehee_numbers(ctx, 10) == daehee_closed_form(ctx, 10, "corrected")


@pytest.mark.parametrize("ctx", list(_changhee_contexts()), ids=lambda c: str(c.describe()))
def test_changhee_dual_path(ctx):
    assert changhee_numbers(ctx, 10) == changhee_closed_form(ctx, 10, "corrected")


def test_changhee_stirling_transform_of_alternating_euler():
    ctx = ChangheeContext(k3, 2, 1)
    E = gen_euler_alternating(k3, 2, 6)
    expected = [2 ** m * sum((E[n] * stirling1(m, n) for n in range(m + 1)), F(0)) for m in range(7)]
    assert changhee_numbers(ctx, 6) == expected


def test_changhee_trivial_is_euler_transform():
    for lam in (F(1), F(2), F(1, 2)):
        ctx = ChangheeContext(triv, lam, 1)
        E = apostol_euler(0, lam, 8)
        expected = [lam ** m * sum((E[n] * stirling1(m, n) for n in range(m + 1)), F(0)) for m in range(9)]
        assert changhee_numbers(ctx, 8) == expected
    assert changhee_closed_form(ChangheeContext(triv, 1, 1), 2)[2] == F(1, 2)


def test_closed_form_as_written_differs_away_from_one():
    ctx = ChangheeContext(k3, F(2), F(3, 2))
    assert changhee_closed_form(ctx, 4, "as-written") != changhee_numbers(ctx, 4)
    with pytest.raises(ValueError):
        changhee_closed_form(ctx, 4, "other")


@pytest.mark.parametrize("ctx", [DaeheeContext(k4, F(2), F(3, 2)), DaeheeContext(m3, F(-3))], ids=str)
@pytest.mark.parametrize("z", [F(0), F(1), F(2), F(1, 2), F(-1)])
def test_binomial_transfer(ctx, z):
    assert daehee_polynomials(ctx, z, 8) == binomial_transfer(daehee_numbers(ctx, 8), ctx.lam, z, 8)


@given(st.fractions(min_value=-4, max_value=4, max_denominator=4))
def test_changhee_binomial_transfer_random_z(z):
    ctx = ChangheeContext(k4, F(1, 2), F(2))
    assert changhee_polynomials(ctx, z, 6) == binomial_transfer(changhee_numbers(ctx, 6), ctx.lam, z, 6)


def test_pole_contexts():
    with pytest.raises(PoleError):
        DaeheeContext(triv, F(1, 2), F(2))
    with pytest.raises(PoleError):
        ChangheeContext(triv, F(1), F(-1))
    with pytest.raises(ValueError):
        DaeheeContext(triv, F(2), F(1))
    with pytest.raises(ValueError):
        DaeheeContext(triv, F(0))


def test_truncation_guard():
    with pytest.raises(ValueError):
        daehee_numbers(DaeheeContext(triv, 1, T=4), 10)


def test_context_metadata():
    ctx = DaeheeContext(k4, F(2), F(3, 2))
    assert ctx.mode == "symbolic-q" and ctx.prefactor() == F(1, 2) / Lq
    assert ctx.log_lam_q() == Ll + Lq
    assert DaeheeContext(k4, 1).log_lam_q().is_zero()
    assert ctx.describe() == {"chi": k4.label, "lambda": "2", "q": "3/2"}
    assert ChangheeContext(k3, 2, 3).bracket2 == 4


def test_complex_character_values():
    chi = enumerate_characters(5)[1]
    ctx = DaeheeContext(chi, F(2), F(3, 2))
    assert daehee_numbers(ctx, 6) == daehee_closed_form(ctx, 6)
    cctx = ChangheeContext(chi, F(2), F(3, 2))
    assert changhee_numbers(cctx, 6) == changhee_closed_form(cctx, 6)
