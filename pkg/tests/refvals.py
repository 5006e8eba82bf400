"""Independent reference oracles used only by the tests.

These deliberately avoid the code paths they are used to check: the
exponential-integral reference integrates the defining principal-value
integral with mpmath quadrature, and the free-particle reference sums the
modified spherical Bessel series directly.
"""

from __future__ import annotations

import math

import mpmath as mp


def ei_pv_reference(x, dps: int = 50):
    """PV of integral_{-x}^inf e^{-s}/s ds by extended-precision quadrature.

    The pole window [-d, d] is handled analytically: its principal value is
    -2 integral_0^d sinh(t)/t dt, a smooth integral.
    """
    with mp.workdps(dps):
        xm = mp.mpf(x)
        d = min(xm / 2, mp.mpf(1) / 2)
        left_pts = [-xm]
        if xm > 4:
            # geometric refinement toward the pole keeps quad honest when the
            # integrand spans hundreds of orders of magnitude
            k = 1
            while xm * mp.mpf(2) ** (-k) > d:
                left_pts.append(-xm * mp.mpf(2) ** (-k))
                k += 1
        left_pts.append(-d)
        i_left = mp.quad(lambda s: mp.exp(-s) / s, left_pts)
        i_window = -2 * mp.quad(lambda t: mp.sinh(t) / t, [0, d])
        i_right = mp.quad(lambda s: mp.exp(-s) / s, [d, mp.inf])
        return i_left + i_window + i_right


def ei_zero_by_bisection(lo: float = 0.37, hi: float = 0.38, tol: float = 1e-10) -> float:
    """Root of the reference integral between lo and hi, plain bisection."""
    f_lo = float(ei_pv_reference(lo))
    f_hi = float(ei_pv_reference(hi))
    assert f_lo * f_hi < 0, "bracket does not straddle the zero"
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = float(ei_pv_reference(mid))
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def sph_in_series(l: int, z: float, terms: int = 40) -> tuple[float, float]:
    """(i_l(z), i_l'(z)) from the power series z^{l+2k} / (2^k k! (2l+2k+1)!!)."""
    val = 0.0
    der = 0.0
    for k in range(terms):
        denom = 2**k * math.factorial(k) * _double_factorial(2 * l + 2 * k + 1)
        power = l + 2 * k
        val += z**power / denom
        if power > 0:
            der += power * z ** (power - 1) / denom
    return val, der


def central_diff(fn, x: float, h: float) -> float:
    """Fourth-order central finite difference of fn at x."""
    return (-fn(x + 2 * h) + 8 * fn(x + h) - 8 * fn(x - h) + fn(x - 2 * h)) / (12 * h)
