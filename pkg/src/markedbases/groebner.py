"""Classical Groebner engine over the rationals, used as an independent
oracle: reduced bases, normal forms, membership, ideal equality, quotient
Hilbert functions, and extraction of the marked basis of an explicitly given
ideal by degreewise linear algebra.

The heavy lifting is delegated to sympy; everything crossing the boundary is
converted exactly (Fraction <-> Rational), and the reduction machinery of
`marked` is never used here, so oracle-versus-criterion comparisons stay
meaningful.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

from .ideals import MonomialIdeal
from .linalg import eliminate, rref
from .marked import MarkedSet
from .polynomials import MarkedPolynomial, Polynomial
from .rings import PolyRing, Term, drl_key, order_key

_SYMPY_ORDER = {"drl": "grevlex", "lex": "lex"}


def _symbols(ring: PolyRing):
    # sympy expects the largest generator first
    return sp.symbols(list(reversed(ring.variables)))


def to_sympy(poly: Polynomial, symbols=None):
    symbols = symbols or _symbols(poly.ring)
    expr = sp.S.Zero
    for t, c in poly.terms.items():
        if isinstance(c, Polynomial):
            raise TypeError("oracle polynomials must have rational coefficients")
        mono = sp.Rational(c.numerator, c.denominator)
        for s, e in zip(symbols, reversed(t.exponents)):
            if e:
                mono *= s ** e
        expr += mono
    return expr


def from_sympy(expr, ring: PolyRing, symbols=None) -> Polynomial:
    symbols = symbols or _symbols(ring)
    poly = sp.Poly(expr, *symbols, domain="QQ")
    terms = {}
    for exponents, coeff in poly.terms():
        rational = sp.Rational(coeff)
        terms[Term(ring, tuple(reversed(exponents)))] = Fraction(
            int(rational.p), int(rational.q))
    return Polynomial(ring, terms)


@dataclass
class ReducedGroebnerBasis:
    ring: PolyRing
    order: str
    generators: tuple[Polynomial, ...]  # monic, auto-reduced, sorted by leading term

    def leading_terms(self) -> list[Term]:
        key = order_key(self.order)
        return [g.leading_term(key) for g in self.generators]

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def is_unit_ideal(self) -> bool:
        return any(g.degree() == 0 for g in self.generators)


def groebner_basis(generators: list[Polynomial], order: str = "drl") -> ReducedGroebnerBasis:
    nonzero = [g for g in generators if g]
    if not nonzero:
        if not generators:
            raise ValueError("cannot infer the ring from an empty generator list")
        return ReducedGroebnerBasis(generators[0].ring, order, ())
    ring = nonzero[0].ring
    symbols = _symbols(ring)
    basis = sp.groebner([to_sympy(g, symbols) for g in nonzero], *symbols,
                        order=_SYMPY_ORDER[order], domain="QQ")
    key = order_key(order)
    converted = [from_sympy(e, ring, symbols) for e in basis.exprs]
    converted.sort(key=lambda g: key(g.leading_term(key)), reverse=True)
    return ReducedGroebnerBasis(ring, order, tuple(converted))


def gb_normal_form(h: Polynomial, basis: ReducedGroebnerBasis) -> Polynomial:
    if basis.is_zero_ideal() or not h:
        return h
    symbols = _symbols(basis.ring)
    _, remainder = sp.reduced(
        to_sympy(h, symbols), [to_sympy(g, symbols) for g in basis.generators],
        *symbols, order=_SYMPY_ORDER[basis.order], domain="QQ")
    return from_sympy(remainder, basis.ring, symbols)


def gb_member(h: Polynomial, basis: ReducedGroebnerBasis) -> bool:
    return gb_normal_form(h, basis).is_zero()


def ideal_equal(a: list[Polynomial], b: list[Polynomial], order: str = "drl") -> bool:
    """Ideal equality through the uniqueness of the reduced basis."""
    a = [g for g in a if g]
    b = [g for g in b if g]
    if not a or not b:
        return not a and not b
    return groebner_basis(a, order).generators == groebner_basis(b, order).generators


def leading_ideal(basis: ReducedGroebnerBasis) -> MonomialIdeal | None:
    """The monomial ideal of leading terms; None for the zero ideal.  Raises
    for the unit ideal, which has no proper monomial basis."""
    if basis.is_zero_ideal():
        return None
    return MonomialIdeal(basis.ring, basis.leading_terms())


def quotient_hilbert_function(basis: ReducedGroebnerBasis, m: int) -> int:
    """Hilbert function of S/I at degree m, read off the leading terms."""
    if basis.is_zero_ideal():
        n = basis.ring.nvars - 1
        return math.comb(m + n, n)
    if basis.is_unit_ideal():
        return 0
    return leading_ideal(basis).hilbert_function(m)


# -- marked basis extraction -----------------------------------------------------

@dataclass
class MarkedBasisExtraction:
    ok: bool
    marked_set: MarkedSet | None
    failures: list[str] = field(default_factory=list)
    generates_input: bool | None = None
    hilbert_matches: bool | None = None


def _degree_rows(generators: list[Polynomial], ring: PolyRing, m: int,
                 columns: dict[Term, int]) -> list[list[Fraction]]:
    rows = []
    for g in generators:
        d = m - g.degree()
        if d < 0:
            continue
        for multiplier in ring.terms_of_degree(d):
            shifted = g.term_multiple(multiplier)
            row = [Fraction(0)] * len(columns)
            for t, c in shifted.terms.items():
                row[columns[t]] = c
            rows.append(row)
    return rows


def marked_basis_from_ideal(generators: list[Polynomial], ideal: MonomialIdeal,
                            relaxed: bool = False,
                            order: str = "drl") -> MarkedBasisExtraction:
    """Extract the (unique, if any) marked set inside the given homogeneous
    ideal whose heads are the minimal generators of `ideal`, by solving
    head = combination of outside terms modulo each graded piece, then verify
    that it is a marked basis generating exactly the input ideal.

    With relaxed=True the strong-stability requirement and the criterion run
    are skipped and the result only carries diagnostics (used to exhibit
    marked sets that fail to generate the input)."""
    ring = ideal.ring
    failures: list[str] = []
    nonzero = [g for g in generators if g]
    if not nonzero:
        return MarkedBasisExtraction(False, None, ["the zero ideal has no marked basis"])
    for g in nonzero:
        if not g.is_homogeneous():
            return MarkedBasisExtraction(
                False, None, [f"generator {g} is not homogeneous"])
    if not relaxed:
        ideal.require_strongly_stable()

    elements = []
    for head in sorted(ideal.basis, key=drl_key, reverse=True):
        m = head.degree
        inside = ideal.terms_of_degree(m)
        outside = ideal.sous_escalier(m).terms
        ordered = list(inside) + list(outside)
        columns = {t: k for k, t in enumerate(ordered)}
        rows = _degree_rows(nonzero, ring, m, columns)
        reduced, pivots = rref(rows)
        bad = [p for p in pivots if p >= len(inside)]
        if bad:
            failures.append(
                f"degree {m}: the terms outside the ideal are not free modulo "
                f"the input (pivot at {ordered[bad[0]]})")
            continue
        vector = [Fraction(0)] * len(ordered)
        vector[columns[head]] = Fraction(1)
        vector = eliminate(vector, reduced, pivots)
        stuck = [ordered[k] for k in range(len(inside)) if vector[k] != 0]
        if stuck:
            failures.append(
                f"{head} has no expression with tail outside the ideal "
                f"(stuck at {stuck[0]}); the input is too small in degree {m}")
            continue
        terms = {head: Fraction(1)}
        for k in range(len(inside), len(ordered)):
            if vector[k] != 0:
                terms[ordered[k]] = -vector[k]
        elements.append(MarkedPolynomial(Polynomial(ring, terms), head))

    if failures:
        return MarkedBasisExtraction(False, None, failures)
    marked = MarkedSet(ideal, elements, order)
    extracted_polys = [f.poly for f in marked.elements]
    generates = ideal_equal(extracted_polys, nonzero, order)

    if relaxed:
        input_basis = groebner_basis(nonzero, order)
        bound = max(ideal.syzygy_degree_bound(),
                    max(g.degree() for g in nonzero)) + 1
        extracted_basis = groebner_basis(extracted_polys, order)
        hilbert_matches = all(
            quotient_hilbert_function(extracted_basis, m) == ideal.hilbert_function(m)
            for m in range(bound + 1))
        if not generates:
            failures.append("the extracted marked set does not generate the input ideal")
        if not hilbert_matches:
            failures.append("the extracted marked set is not a marked basis "
                            "(Hilbert function differs from the head ideal)")
        return MarkedBasisExtraction(
            not failures, marked, failures, generates, hilbert_matches)

    check = marked.buchberger_check()
    if not check.ok:
        bad_pair = check.failing()[0]
        failures.append(
            f"extracted set fails the basis criterion at pair "
            f"{bad_pair.heads[0]}, {bad_pair.heads[1]} with residual {bad_pair.residual}")
    if not generates:
        failures.append("the extracted marked set does not generate the input ideal")
    return MarkedBasisExtraction(not failures, marked, failures, generates, None)
