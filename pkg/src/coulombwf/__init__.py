"""Exact closed-form regular and irregular Coulomb bound-state radial solutions.

The regular solution decays and is polynomial-times-exponential; its irregular
partner adds a Laurent-polynomial-times-growing-exponential part and a single
exponential-integral term.  Both are constructed in exact rational arithmetic,
verified symbolically against the radial equation and by independent
principal-value quadrature, and evaluated numerically with error estimates.
"""

from .closedform import (
    ExpEiForm,
    InvalidQuantumNumbers,
    QuantumNumbers,
    assemble_R1,
    assemble_R2,
    energy,
    hyp1f1_terminating,
    laguerre_L1,
    make_quantum_numbers,
    p2_doublesum,
    p2_simplified,
    solution_table,
    symbolic_derivative,
)
from .numeval import DomainError, EvalResult, OverflowSignal, ei_one_neg, eval_form, eval_form_extended
from .ratpoly import BigRational, RatPoly, ZeroDenominator, factorial, pochhammer

__version__ = "0.1.0"

__all__ = [
    "BigRational",
    "DomainError",
    "EvalResult",
    "ExpEiForm",
    "InvalidQuantumNumbers",
    "OverflowSignal",
    "QuantumNumbers",
    "RatPoly",
    "ZeroDenominator",
    "assemble_R1",
    "assemble_R2",
    "ei_one_neg",
    "energy",
    "eval_form",
    "eval_form_extended",
    "factorial",
    "hyp1f1_terminating",
    "laguerre_L1",
    "make_quantum_numbers",
    "p2_doublesum",
    "p2_simplified",
    "pochhammer",
    "solution_table",
    "symbolic_derivative",
    "__version__",
]
