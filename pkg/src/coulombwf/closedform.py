"""Exact closed forms for the hydrogenic bound-state radial problem.

Library units fix the Coulomb strength at 1, so the bound radial equation is

    r^2 R'' + 2 r R' + (-kappa^2 r^2 + 2 r - l(l+1)) R = 0,

lengths are reduced-mass-corrected Bohr radii divided by Z, kappa_n = 1/n, and
E_n = -1/(2 n^2).  Every solution handled here is a sum of three buckets

    q_plus(r) e^{+kappa r}  +  q_minus(r) e^{-kappa r}
                            +  q_ei(r) e^{-kappa r} Ei(1, -2 kappa r),

with Laurent-polynomial q's, where Ei(1, -x) is the principal value of
integral_{-x}^{infinity} e^{-s}/s ds.  That family is closed under d/dr
because d/dr Ei(1, -2 kappa r) = -e^{2 kappa r}/r, which moves the Ei
derivative into the e^{+kappa r} bucket exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ratpoly import RatPoly, factorial, pochhammer

# Coulomb strength in library units; kappa_n = KAPPA0 / n.
KAPPA0 = Fraction(1)


class InvalidQuantumNumbers(ValueError):
    """Quantum numbers outside n >= 1, 0 <= l <= n-1."""


@dataclass(frozen=True)
class QuantumNumbers:
    """Validated (n, l) pair with the derived bound-state bookkeeping."""

    n: int
    l: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or not isinstance(self.l, int):
            raise InvalidQuantumNumbers("n and l must be integers")
        if self.n < 1:
            raise InvalidQuantumNumbers(f"principal quantum number n={self.n} must be >= 1")
        if not 0 <= self.l <= self.n - 1:
            raise InvalidQuantumNumbers(f"orbital l={self.l} must satisfy 0 <= l <= n-1={self.n - 1}")

    @property
    def n_r(self) -> int:
        """Radial quantum number (number of radial nodes)."""
        return self.n - self.l - 1

    @property
    def m(self) -> int:
        """Upper Laguerre index 2l + 1."""
        return 2 * self.l + 1

    @property
    def kappa(self) -> Fraction:
        return KAPPA0 / self.n


def make_quantum_numbers(n: int, l: int) -> QuantumNumbers:
    return QuantumNumbers(n, l)


def energy(qn: QuantumNumbers) -> Fraction:
    """Bound-state energy -1/(2 n^2) in library units."""
    return Fraction(-1, 2 * qn.n * qn.n)


# -- polynomial factors ------------------------------------------------------


def laguerre_L1(n_r: int, m: int) -> RatPoly:
    """Associated Laguerre polynomial of degree n_r, upper index m.

    Coefficient of x^j is (-1)^j (n_r+m)! / ((n_r-j)! (m+j)! j!), so the
    value at 0 is (n_r+m)!/(n_r! m!) and laguerre_L1(0, m) == 1.
    """
    if n_r < 0 or m < 0:
        raise ValueError("laguerre_L1 needs n_r >= 0 and m >= 0")
    top = factorial(n_r + m)
    coeffs = tuple(
        Fraction((-1) ** j * top, factorial(n_r - j) * factorial(m + j) * factorial(j))
        for j in range(n_r + 1)
    )
    return RatPoly(0, coeffs)


def hyp1f1_terminating(n_r: int, m: int) -> RatPoly:
    """The degree-n_r polynomial 1F1(-n_r, m+1, x)."""
    if n_r < 0 or m < 0:
        raise ValueError("hyp1f1_terminating needs n_r >= 0 and m >= 0")
    coeffs = tuple(
        Fraction(pochhammer(-n_r, k), pochhammer(m + 1, k) * factorial(k))
        for k in range(n_r + 1)
    )
    return RatPoly(0, coeffs)


def p2_doublesum(n_r: int, m: int) -> RatPoly:
    """Polynomial factor of the e^{x}/x^m part of the irregular solution.

    Double-sum construction:

        (n_r+m)!/m! * sum_{k=0}^{n_r} sum_{j=0}^{m+k-1}
            (-n_r)_k (m+k-1-j)! / ((m+1)_k k!) * x^j

    Degree n_r + m - 1, all coefficients integers, leading coefficient
    (-1)^{n_r}.
    """
    if n_r < 0:
        raise ValueError("p2_doublesum needs n_r >= 0")
    if m < 1:
        raise ValueError("p2_doublesum needs m >= 1")
    prefactor = Fraction(factorial(n_r + m), factorial(m))
    acc = [Fraction(0)] * (n_r + m)
    for k in range(n_r + 1):
        c_k = Fraction(pochhammer(-n_r, k), pochhammer(m + 1, k) * factorial(k))
        if c_k == 0:
            continue
        for j in range(m + k):
            acc[j] += c_k * factorial(m + k - 1 - j)
    return RatPoly(0, tuple(prefactor * c for c in acc))


def p2_simplified(n_r: int, m: int) -> RatPoly:
    """Same polynomial as :func:`p2_doublesum`, built from the split form.

    The positive part sum_{p<m} (n_r+p)!(m-p-1)!/p! x^p is followed by an
    x^m-prefixed oscillating part whose coefficients combine harmonic tails
    sum 1/k with the products prod_{j=1..p} (n_r+m+j-k).  Empty sums are 0
    and empty products 1, which makes n_r = 0 collapse to the positive part.
    """
    if n_r < 0:
        raise ValueError("p2_simplified needs n_r >= 0")
    if m < 1:
        raise ValueError("p2_simplified needs m >= 1")
    terms: dict[int, Fraction] = {}
    for p in range(m):
        terms[p] = Fraction(factorial(n_r + p) * factorial(m - p - 1), factorial(p))
    lead = Fraction(factorial(n_r + m), factorial(m))
    if n_r >= 1:
        harmonic_tail = sum(Fraction(1, k) for k in range(m + 1, n_r + m + 1))
        terms[m] = -lead * harmonic_tail
        for p in range(1, n_r):
            inner = Fraction(0)
            for k in range(m + p + 1, n_r + m + 1):
                prod = 1
                for j in range(1, p + 1):
                    prod *= n_r + m + j - k
                inner += Fraction(prod, k)
            coeff = -lead * Fraction(factorial(m), factorial(m + p)) * Fraction((-1) ** p, factorial(p)) * inner
            terms[m + p] = coeff
    return RatPoly.from_terms(terms)


def phi2_closedform(n_r: int, m: int) -> tuple[RatPoly, RatPoly]:
    """Closed form of the irregular confluent solution, split by carrier.

    Returns Laurent polynomials (g_exp, g_ei) in x such that the irregular
    solution is g_exp(x) e^{x} + g_ei(x) Ei(1, -x); g_exp carries the
    m!/(n_r+m)! normalization and the x^{-m} prefactor, g_ei is the
    terminating 1F1.
    """
    g_exp = p2_doublesum(n_r, m).shift(-m) * Fraction(factorial(m), factorial(n_r + m))
    g_ei = hyp1f1_terminating(n_r, m)
    return g_exp, g_ei


# -- symbolic radial solutions ----------------------------------------------


@dataclass(frozen=True)
class ExpEiForm:
    """Symbolic radial function q_plus e^{+kr} + q_minus e^{-kr} + q_ei e^{-kr} Ei(1,-2kr)."""

    q_plus: RatPoly
    q_minus: RatPoly
    q_ei: RatPoly
    kappa: Fraction
    variable: str = "r"

    def __post_init__(self) -> None:
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        if self.variable not in ("r", "x"):
            raise ValueError("variable tag must be 'r' or 'x'")

    def is_zero(self) -> bool:
        return self.q_plus.is_zero() and self.q_minus.is_zero() and self.q_ei.is_zero()

    def _like(self, q_plus: RatPoly, q_minus: RatPoly, q_ei: RatPoly) -> ExpEiForm:
        return ExpEiForm(q_plus, q_minus, q_ei, self.kappa, self.variable)

    def __add__(self, other: ExpEiForm) -> ExpEiForm:
        if not isinstance(other, ExpEiForm):
            return NotImplemented
        if other.kappa != self.kappa or other.variable != self.variable:
            raise ValueError("cannot add forms with different kappa or variable conventions")
        return self._like(self.q_plus + other.q_plus,
                          self.q_minus + other.q_minus,
                          self.q_ei + other.q_ei)

    def __neg__(self) -> ExpEiForm:
        return self._like(-self.q_plus, -self.q_minus, -self.q_ei)

    def __sub__(self, other: ExpEiForm) -> ExpEiForm:
        return self + (-other)

    def mul_poly(self, p: RatPoly) -> ExpEiForm:
        """Multiply by a Laurent polynomial in the same variable."""
        return self._like(self.q_plus * p, self.q_minus * p, self.q_ei * p)

    def scale(self, c: Fraction | int) -> ExpEiForm:
        return self._like(self.q_plus * c, self.q_minus * c, self.q_ei * c)

    def derivative(self) -> ExpEiForm:
        """Exact d/dr; the Ei-derivative contribution lands in the e^{+kr} bucket."""
        if self.variable != "r":
            raise ValueError("derivative is defined for the r-variable convention")
        k = self.kappa
        q_plus = self.q_plus.derivative() + self.q_plus * k - self.q_ei.shift(-1)
        q_minus = self.q_minus.derivative() - self.q_minus * k
        q_ei = self.q_ei.derivative() - self.q_ei * k
        return self._like(q_plus, q_minus, q_ei)


def symbolic_derivative(f: ExpEiForm) -> ExpEiForm:
    return f.derivative()


def assemble_R1(qn: QuantumNumbers) -> ExpEiForm:
    """Regular solution (2 kr)^l e^{-kr} L(n_r, 2l+1, 2 kr) as an exact form in r."""
    two_kappa = 2 * qn.kappa
    q_minus = laguerre_L1(qn.n_r, qn.m).shift(qn.l).scale_arg(two_kappa)
    return ExpEiForm(RatPoly.zero(), q_minus, RatPoly.zero(), qn.kappa)


def assemble_R2(qn: QuantumNumbers) -> ExpEiForm:
    """Irregular solution in the normalization that makes the Ei factor the
    plain regular polynomial part:

        1/n_r! (2 kr)^{-l-1} e^{+kr} P(n_r, 2l+1, 2 kr)
        + (2 kr)^l e^{-kr} L(n_r, 2l+1, 2 kr) Ei(1, -2 kr).
    """
    two_kappa = 2 * qn.kappa
    q_plus = p2_doublesum(qn.n_r, qn.m).shift(-qn.l - 1).scale_arg(two_kappa)
    q_plus = q_plus * Fraction(1, factorial(qn.n_r))
    q_ei = laguerre_L1(qn.n_r, qn.m).shift(qn.l).scale_arg(two_kappa)
    return ExpEiForm(q_plus, RatPoly.zero(), q_ei, qn.kappa)


def apply_radial_operator(f: ExpEiForm, qn: QuantumNumbers) -> ExpEiForm:
    """r^2 f'' + 2 r f' + (-kappa^2 r^2 + 2 kappa0 r - l(l+1)) f, exactly."""
    d1 = f.derivative()
    d2 = d1.derivative()
    r2 = RatPoly.monomial(2)
    r1 = RatPoly.monomial(1)
    potential = RatPoly.from_terms({
        2: -(qn.kappa ** 2),
        1: 2 * KAPPA0,
        0: -Fraction(qn.l * (qn.l + 1)),
    })
    return d2.mul_poly(r2) + d1.mul_poly(2 * r1) + f.mul_poly(potential)


def solution_table(n_max: int) -> list[tuple[QuantumNumbers, ExpEiForm, ExpEiForm]]:
    """All (n, l) with n <= n_max, each with its regular and irregular forms."""
    if n_max < 1:
        raise InvalidQuantumNumbers("n_max must be >= 1")
    out = []
    for n in range(1, n_max + 1):
        for l in range(n):
            qn = QuantumNumbers(n, l)
            out.append((qn, assemble_R1(qn), assemble_R2(qn)))
    return out
