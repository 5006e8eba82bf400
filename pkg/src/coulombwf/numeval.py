"""Floating-point evaluation of Ei(1, -x) and of symbolic radial forms.

Double precision genuinely loses digits where the growing exponential bucket
cancels against the Ei bucket, so every evaluation carries an error estimate
instead of hiding the loss; callers that need more digits use the
extended-precision evaluator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .closedform import ExpEiForm

# Euler-Mascheroni constant, 30 significant digits.
EULER_GAMMA = 0.577215664901532860606512090082

# Series/asymptotic crossover for Ei(1, -x); both branches are accurate in a
# band around it (tested on [35, 45]).
_BRANCH_SPLIT = 40.0

# exp(x) overflows double precision just above this.
_OVERFLOW_X = 708.0

_EPS = 2.220446049250313e-16


class DomainError(ValueError):
    """Argument outside the function's real domain."""


class OverflowSignal(OverflowError):
    """The unscaled result exceeds double-precision range."""


@dataclass(frozen=True)
class EvalResult:
    value: float
    est_rel_error: float
    method: str


def _ei_series(x: float) -> tuple[float, float]:
    """-(gamma + ln x + sum_k x^k/(k k!)) with a rounding-accumulation estimate."""
    total = EULER_GAMMA + math.log(x)
    term = 1.0
    k = 0
    while k < 1000:
        k += 1
        term *= x / k
        contribution = term / k
        total += contribution
        if contribution < abs(total) * 1e-18 and k > 3:
            break
    est = (k + 4) * _EPS
    return -total, est


def _asymptotic_sum(x: float) -> tuple[float, float, int]:
    """sum_k k!/x^k truncated at the smallest term, with that term and count."""
    total = 1.0
    term = 1.0
    k = 0
    while True:
        nxt = term * (k + 1) / x
        if nxt >= term or nxt < abs(total) * 1e-18:
            break
        k += 1
        term = nxt
        total += term
    return total, term, k


def _ei_asymptotic(x: float) -> tuple[float, float]:
    """-(e^x/x) sum_k k!/x^k truncated at the smallest term."""
    total, last_term, k = _asymptotic_sum(x)
    est = last_term / abs(total) + (k + 4) * _EPS
    return -math.exp(x) / x * total, est


def ei_one_neg(x: float, scaled: bool = False) -> EvalResult:
    """Principal value of integral_{-x}^{infinity} e^{-s}/s ds for x > 0.

    Parameters
    ----------
    x : float
        Positive argument (bound-state evaluations use x = 2 kappa r).
    scaled : bool
        If true, return e^{-x} times the integral, which stays in range for
        arbitrarily large x.

    Returns
    -------
    EvalResult
        Value (equal to -Ei(x) in the classical convention), an estimated
        relative error, and the branch used.
    """
    if not x > 0:
        raise DomainError(f"ei_one_neg requires x > 0, got {x!r}")
    if x <= _BRANCH_SPLIT:
        value, est = _ei_series(x)
        if scaled:
            value *= math.exp(-x)
        return EvalResult(value, est, "series")
    if x > _OVERFLOW_X and not scaled:
        raise OverflowSignal(
            f"e^x overflows double precision at x={x!r}; request scaled=True")
    if scaled:
        total, last_term, k = _asymptotic_sum(x)
        est = last_term / abs(total) + (k + 4) * _EPS
        return EvalResult(-total / x, est, "asymptotic")
    value, est = _ei_asymptotic(x)
    return EvalResult(value, est, "asymptotic")


def _float_exp(t: float) -> float:
    try:
        return math.exp(t)
    except OverflowError as exc:
        raise OverflowSignal(f"exp({t}) overflows double precision") from exc


def _poly_abs_eval(p, r: float) -> float:
    """sum |c_k| r^k, the conditioning envelope of the float evaluation."""
    return sum(abs(float(c)) * r**k for k, c in p.terms())


def eval_form(f: ExpEiForm, r: float) -> EvalResult:
    """Evaluate a symbolic radial form at r > 0 in double precision.

    The error estimate is built from the absolute-coefficient envelope of
    each bucket (which dominates the plain |A| + |C| cancellation penalty
    between the growing-exponential and Ei buckets), the rounding of the
    exponential arguments, and the Ei evaluation error.
    """
    if not r > 0:
        raise DomainError(f"eval_form requires r > 0, got {r!r}")
    if f.variable != "r":
        raise ValueError("eval_form expects an r-variable form")
    kappa = float(f.kappa)
    round_factor = (2 * max(len(f.q_plus.coeffs), len(f.q_minus.coeffs), len(f.q_ei.coeffs))
                    + kappa * r + 6) * _EPS
    a = b = c = 0.0
    abs_err = 0.0
    method = "series"
    if not f.q_plus.is_zero():
        grow = _float_exp(kappa * r)
        a = f.q_plus.eval_float(r) * grow
        abs_err += _poly_abs_eval(f.q_plus, r) * grow * round_factor
    if not f.q_minus.is_zero():
        decay = _float_exp(-kappa * r)
        b = f.q_minus.eval_float(r) * decay
        abs_err += _poly_abs_eval(f.q_minus, r) * decay * round_factor
    if not f.q_ei.is_zero():
        x = 2.0 * kappa * r
        ei = ei_one_neg(x)
        # x*eps covers the argument-rounding sensitivity; the log term floors
        # the error where the series cancels through Ei's zero near x ~ 0.37
        ei_abs_err = (abs(ei.value) * (ei.est_rel_error + x * _EPS)
                      + _EPS * (1.0 + abs(math.log(x))))
        method = ei.method
        decay = _float_exp(-kappa * r)
        c = f.q_ei.eval_float(r) * decay * ei.value
        poly_env = _poly_abs_eval(f.q_ei, r) * decay
        abs_err += poly_env * (abs(ei.value) * round_factor + ei_abs_err)
    value = a + b + c
    est = abs_err / abs(value) if value != 0.0 else math.inf
    return EvalResult(value, est, method)


def _mp_from_fraction(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator)


def _mp_poly(p, r):
    if p.is_zero():
        return mpmath.mpf(0)
    up = mpmath.mpf(0)
    for k in range(p.degree, -1, -1):
        up = up * r + _mp_from_fraction(p.coeff(k))
    down = mpmath.mpf(0)
    if p.low < 0:
        y = 1 / r
        for j in range(-p.low, 0, -1):
            down = down * y + _mp_from_fraction(p.coeff(-j))
        down *= y
    return up + down


def eval_form_extended(f: ExpEiForm, r, precision_bits: int = 256) -> mpmath.mpf:
    """Ground-truth evaluation in software extended precision.

    ``r`` may be a float, int, Fraction, or decimal string; it is converted
    exactly before use.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be >= 64")
    r_exact = Fraction(r) if not isinstance(r, Fraction) else r
    if not r_exact > 0:
        raise DomainError(f"eval_form_extended requires r > 0, got {r!r}")
    if f.variable != "r":
        raise ValueError("eval_form_extended expects an r-variable form")
    with mpmath.workprec(precision_bits):
        rr = _mp_from_fraction(r_exact)
        kk = _mp_from_fraction(f.kappa)
        total = mpmath.mpf(0)
        if not f.q_plus.is_zero():
            total += _mp_poly(f.q_plus, rr) * mpmath.exp(kk * rr)
        if not f.q_minus.is_zero():
            total += _mp_poly(f.q_minus, rr) * mpmath.exp(-kk * rr)
        if not f.q_ei.is_zero():
            ei_val = -mpmath.ei(2 * kk * rr)
            total += _mp_poly(f.q_ei, rr) * mpmath.exp(-kk * rr) * ei_val
        return +total
