"""Reversed Dickson polynomials over odd-characteristic fields and the
Dembowski-Ostrom property."""

from .dickson import (
    DicksonQuery,
    Kind,
    construct,
    eval_reversed_dickson,
    first_kind_closed,
    generate_by_recurrence,
    lucas_binom,
    second_kind_closed,
)
from .doclassify import (
    DOVerdict,
    RuleMatch,
    TwoPowerWitness,
    classify,
    classify_first,
    classify_second,
    decompose_two_powers,
    expected_remark_poly,
    is_do,
    strip_p_powers,
)
from .fieldcore import FieldElement, FieldParams, find_irreducible, pow_element, validate_odd_prime
from .polyring import (
    SparsePoly,
    evaluate_poly,
    poly_add,
    poly_mul,
    poly_pow_p,
    render,
    substitute_monomial,
)
from .verify import (
    SweepReport,
    identity_suite,
    is_planar_map,
    is_permutation_map,
    planarity_survey,
    sweep,
)

__version__ = "0.1.0"
