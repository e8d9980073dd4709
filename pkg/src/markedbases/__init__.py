"""Marked bases over strongly stable monomial ideals.

Exact-arithmetic tools for marked polynomial sets whose heads generate a
strongly stable monomial ideal: terminating normal forms, a Buchberger-like
basis criterion with an independent rank oracle, syzygy lifting, and the
defining equations (with their non-standard grading) of the affine scheme
parameterizing all ideals sharing the sous-escalier as quotient basis.
"""

from .ideals import MonomialIdeal, NotStronglyStableError, SousEscalierSlice, borel_closure
from .groebner import (MarkedBasisExtraction, ReducedGroebnerBasis, gb_member,
                       gb_normal_form, groebner_basis, ideal_equal,
                       marked_basis_from_ideal, quotient_hilbert_function)
from .marked import (BasisCheckResult, MarkedSet, MarkedSetError,
                     ReductionCertificate, ReductionEntry, Syzygy,
                     validate_marked_set)
from .parsing import (ParseError, format_polynomial, parse_polynomial,
                      parse_problem, parse_term)
from .polynomials import MarkedPolynomial, Polynomial
from .rings import (PolyRing, RingMismatchError, Term, cmp_drl, cmp_lex,
                    min_var, max_var, term_divides, term_lcm, term_mul,
                    term_quotient)
from .scheme import (GenericMarkedSet, Parameter, ParameterRing, SchemeIdeal,
                     TangentSpace, family_membership, matrix_a, minors_ideal,
                     parse_naming_map, scheme_ideal, stratum_section,
                     tangent_space)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
