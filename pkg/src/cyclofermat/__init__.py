"""Exact arithmetic for the modular method on x^(2p) + y^(2q) = z^r over Q(zeta_r)^+."""

from .criterion import (
    EligibilityRecord,
    NarrowClassTable,
    eligibility,
    load_default_table,
    load_narrow_class_table,
    scan,
)
from .descent import DescentWitness, make_witness, verify_descent
from .frey import FreyCurve, FreyParameters, conductor_and_level, frey_curve, frey_parameters
from .prime_ideals import IdealHNF, PrimeIdealFactor, is_two_inert, split_prime, valuation
from .real_cyclotomic import FieldElement, RealCyclotomicField, build_field, verify_lemma_cycl
from .sunit import (
    certify_field,
    check_valuation_bound,
    default_generators,
    enumerate_solutions,
    legendre_j,
    legendre_j_sym,
    parity_descent_step,
)

__version__ = "0.1.0"

__all__ = [
    "DescentWitness",
    "EligibilityRecord",
    "FieldElement",
    "FreyCurve",
    "FreyParameters",
    "IdealHNF",
    "NarrowClassTable",
    "PrimeIdealFactor",
    "RealCyclotomicField",
    "build_field",
    "certify_field",
    "check_valuation_bound",
    "conductor_and_level",
    "default_generators",
    "eligibility",
    "enumerate_solutions",
    "frey_curve",
    "frey_parameters",
    "is_two_inert",
    "legendre_j",
    "legendre_j_sym",
    "load_default_table",
    "load_narrow_class_table",
    "make_witness",
    "parity_descent_step",
    "scan",
    "split_prime",
    "valuation",
    "verify_descent",
    "verify_lemma_cycl",
]
