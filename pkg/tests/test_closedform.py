from fractions import Fraction

import pytest

from coulombwf.closedform import (
    ExpEiForm,
    InvalidQuantumNumbers,
    assemble_R1,
    assemble_R2,
    energy,
    hyp1f1_terminating,
    laguerre_L1,
    make_quantum_numbers,
    p2_doublesum,
    p2_simplified,
    phi2_closedform,
    solution_table,
    symbolic_derivative,
)
from coulombwf.numeval import eval_form_extended
from coulombwf.ratpoly import RatPoly, factorial, pochhammer

from refvals import central_diff

F = Fraction


def P(terms):
    return RatPoly.from_terms(terms)


# -- quantum numbers -----------------------------------------------------------

def test_quantum_numbers_ground_state():
    qn = make_quantum_numbers(1, 0)
    assert (qn.n_r, qn.m, qn.kappa) == (0, 1, F(1))


def test_quantum_numbers_derived_fields():
    qn = make_quantum_numbers(3, 1)
    assert (qn.n_r, qn.m, qn.kappa) == (1, 3, F(1, 3))


@pytest.mark.parametrize("n,l", [(2, 2), (0, 0), (1, -1), (3, 5)])
def test_quantum_numbers_rejects_bad_pairs(n, l):
    with pytest.raises(InvalidQuantumNumbers):
        make_quantum_numbers(n, l)


def test_energy_levels():
    assert energy(make_quantum_numbers(1, 0)) == F(-1, 2)
    assert energy(make_quantum_numbers(2, 1)) == F(-1, 8)
    assert energy(make_quantum_numbers(10, 4)) == F(-1, 200)


# -- Laguerre / confluent polynomial factors -------------------------------------

def test_laguerre_degenerate_is_one():
    for m in range(6):
        assert laguerre_L1(0, m) == RatPoly.one()


def test_laguerre_hand_values():
    assert laguerre_L1(1, 1) == P({0: 2, 1: -1})
    assert laguerre_L1(2, 1) == P({0: 3, 1: -3, 2: F(1, 2)})


def test_laguerre_scaled_argument():
    # L(2,1) at x = 2r/3 gives the factor 3 - 2r + (2/9) r^2
    assert laguerre_L1(2, 1).scale_arg(F(2, 3)) == P({0: 3, 1: -2, 2: F(2, 9)})


def test_laguerre_degree_and_value_at_zero():
    for n_r in range(8):
        for m in range(8):
            poly = laguerre_L1(n_r, m)
            assert poly.degree == n_r
            assert poly.coeff(0) == F(factorial(n_r + m), factorial(n_r) * factorial(m))


def test_hyp1f1_trivial_and_hand_values():
    assert hyp1f1_terminating(0, 3) == RatPoly.one()
    assert hyp1f1_terminating(1, 1) == P({0: 1, 1: F(-1, 2)})


@pytest.mark.parametrize("n_r,m", [(2, 3)] + [(a, b) for a in range(13) for b in range(13)])
def test_laguerre_vs_hyp1f1_relation(n_r, m):
    scale = F(pochhammer(m + 1, n_r), factorial(n_r))
    assert laguerre_L1(n_r, m) == hyp1f1_terminating(n_r, m) * scale


# -- irregular-solution polynomial family ----------------------------------------

def test_p2_hand_values():
    assert p2_doublesum(0, 1) == RatPoly.one()
    assert p2_doublesum(1, 1) == P({0: 1, 1: -1})
    assert p2_doublesum(1, 3) == P({0: 2, 1: 2, 2: 3, 3: -1})


def test_p2_simplified_hand_values():
    assert p2_simplified(0, 3) == P({0: 2, 1: 1, 2: 1})  # (m-p-1)! x^p for n_r = 0
    assert p2_simplified(1, 1) == P({0: 1, 1: -1})
    assert p2_simplified(2, 1) == p2_doublesum(2, 1)


def test_p2_empty_sum_convention():
    # second (oscillating) block contributes nothing at n_r = 0
    for m in (1, 3, 5, 7):
        poly = p2_simplified(0, m)
        assert poly.degree == m - 1
        assert poly == p2_doublesum(0, m)


def test_p2_forms_agree_exactly():
    for n_r in range(9):
        for l in range(9):
            assert p2_doublesum(n_r, 2 * l + 1) == p2_simplified(n_r, 2 * l + 1)


def test_p2_integer_coefficients_and_leading():
    for n_r in range(9):
        for l in range(9):
            m = 2 * l + 1
            poly = p2_doublesum(n_r, m)
            assert poly.degree == n_r + m - 1
            assert all(c.denominator == 1 for _, c in poly.terms())
            assert poly.coeff(n_r + m - 1) == (-1) ** n_r


def test_p2_low_coefficients_positive():
    for n_r in range(7):
        for l in range(7):
            m = 2 * l + 1
            poly = p2_doublesum(n_r, m)
            for p in range(m):
                assert poly.coeff(p) > 0


# -- assembled radial solutions ---------------------------------------------------

def test_assemble_R1_examples():
    f = assemble_R1(make_quantum_numbers(1, 0))
    assert f.q_minus == RatPoly.one() and f.q_plus.is_zero() and f.q_ei.is_zero()
    assert f.kappa == F(1)

    f = assemble_R1(make_quantum_numbers(2, 1))
    assert f.q_minus == P({1: 1})
    assert f.kappa == F(1, 2)

    f = assemble_R1(make_quantum_numbers(3, 1))
    assert f.q_minus == P({1: F(8, 3), 2: F(-4, 9)})


def test_assemble_R2_examples():
    f = assemble_R2(make_quantum_numbers(1, 0))
    assert f.q_plus == P({-1: F(1, 2)})
    assert f.q_ei == RatPoly.one()
    assert f.q_minus.is_zero()

    f = assemble_R2(make_quantum_numbers(3, 2))
    assert f.q_plus == P({-3: 81, -2: F(27, 2), -1: 3, 0: 1, 1: F(2, 3)})
    assert f.q_ei == P({2: F(4, 9)})

    f = assemble_R2(make_quantum_numbers(4, 0))
    assert f.q_plus == P({-1: 2, 0: F(-13, 3), 1: F(11, 12), 2: F(-1, 24)})
    assert f.q_ei == P({0: 4, 1: -3, 2: F(1, 2), 3: F(-1, 48)})


def test_R2_ei_polynomial_matches_R1():
    for n in range(1, 7):
        for l in range(n):
            qn = make_quantum_numbers(n, l)
            assert assemble_R2(qn).q_ei == assemble_R1(qn).q_minus


# -- symbolic differentiation ------------------------------------------------------

def test_derivative_of_pure_decaying_exponential():
    d = symbolic_derivative(assemble_R1(make_quantum_numbers(1, 0)))
    assert d.q_minus == RatPoly.constant(-1)
    assert d.q_plus.is_zero() and d.q_ei.is_zero()


def test_derivative_moves_ei_term_to_growing_bucket():
    f = ExpEiForm(RatPoly.zero(), RatPoly.zero(), RatPoly.one(), F(1))
    d = symbolic_derivative(f)
    assert d.q_ei == RatPoly.constant(-1)
    assert d.q_plus == P({-1: -1})
    assert d.q_minus.is_zero()


@pytest.mark.parametrize("n,l,r", [(1, 0, 0.7), (2, 1, 1.3), (3, 0, 2.5), (4, 2, 3.1)])
def test_symbolic_derivative_matches_finite_differences(n, l, r):
    qn = make_quantum_numbers(n, l)
    for form in (assemble_R1(qn), assemble_R2(qn)):
        d = symbolic_derivative(form)

        def value(t):
            return float(eval_form_extended(form, t, 128))

        fd = central_diff(value, r, 1e-4)
        sym = float(eval_form_extended(d, r, 128))
        assert sym == pytest.approx(fd, rel=1e-10)


def test_derivative_requires_r_convention():
    f = ExpEiForm(RatPoly.zero(), RatPoly.one(), RatPoly.zero(), F(1), variable="x")
    with pytest.raises(ValueError):
        symbolic_derivative(f)


def test_form_addition_guards_conventions():
    a = ExpEiForm(RatPoly.zero(), RatPoly.one(), RatPoly.zero(), F(1))
    b = ExpEiForm(RatPoly.zero(), RatPoly.one(), RatPoly.zero(), F(1, 2))
    with pytest.raises(ValueError):
        a + b


# -- enumeration and the closed-form irregular confluent solution -------------------

def test_solution_table_counts():
    assert len(solution_table(1)) == 1
    assert len(solution_table(2)) == 3
    assert len(solution_table(4)) == 10
    assert [(qn.n, qn.l) for qn, _, _ in solution_table(2)] == [(1, 0), (2, 0), (2, 1)]


def test_solution_table_rejects_bad_nmax():
    with pytest.raises(InvalidQuantumNumbers):
        solution_table(0)


def test_phi2_closedform_split():
    g_exp, g_ei = phi2_closedform(0, 1)
    assert g_exp == P({-1: 1})
    assert g_ei == RatPoly.one()
    g_exp, g_ei = phi2_closedform(1, 1)
    assert g_exp == P({-1: F(1, 2), 0: F(-1, 2)})
    assert g_ei == P({0: 1, 1: F(-1, 2)})
