"""Shared fixtures and randomized-case generators.

The randomized corpus mixes three sources of marked sets over small strongly
stable ideals: zero-tail sets (always bases), sets with random tails (almost
never bases), and reduced Groebner bases of random homogeneous ideals whose
leading ideal happens to be strongly stable (always bases, produced by a
route independent of the reduction machinery under test).
"""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from markedbases import groebner as gb  # noqa: F401  (submodule import)
from markedbases.ideals import MonomialIdeal, borel_closure
from markedbases.marked import MarkedSet
from markedbases.parsing import parse_polynomial, parse_term
from markedbases.polynomials import MarkedPolynomial, Polynomial
from markedbases.rings import PolyRing, Term


@pytest.fixture
def ring_zyx() -> PolyRing:
    return PolyRing(["z", "y", "x"])


@pytest.fixture
def ring_yx() -> PolyRing:
    return PolyRing(["y", "x"])


def poly(text: str, ring: PolyRing) -> Polynomial:
    return parse_polynomial(text, ring)


def term(text: str, ring: PolyRing) -> Term:
    return parse_term(text, ring)


def marked(head: str, body: str, ring: PolyRing) -> MarkedPolynomial:
    return MarkedPolynomial(parse_polynomial(body, ring), parse_term(head, ring))


def ideal(ring: PolyRing, *gens: str) -> MonomialIdeal:
    return MonomialIdeal(ring, [parse_term(g, ring) for g in gens])


def marked_set(ring: PolyRing, heads_and_bodies: dict[str, str],
               order: str = "drl") -> MarkedSet:
    J = MonomialIdeal(ring, [parse_term(h, ring) for h in heads_and_bodies])
    return MarkedSet(J, [marked(h, b, ring) for h, b in heads_and_bodies.items()],
                     order)


def nogbasis_set(ring: PolyRing) -> MarkedSet:
    gens = ["x^4", "x^3*y", "x^2*y^2", "x*y^3", "x^3*z", "x^2*y*z", "x*y^2*z", "y^5"]
    J = MonomialIdeal(ring, [parse_term(g, ring) for g in gens])
    elements = [marked(g, g, ring) for g in gens if g != "x*y^2*z"]
    elements.append(marked("x*y^2*z", "x*y^2*z - y^4 - x^2*z^2", ring))
    return MarkedSet(J, elements)


# -- random generators ------------------------------------------------------------

def random_term(rng: random.Random, ring: PolyRing, degree: int) -> Term:
    vec = [0] * ring.nvars
    for _ in range(degree):
        vec[rng.randrange(ring.nvars)] += 1
    return Term(ring, tuple(vec))


def random_stable_ideal(rng: random.Random, ring: PolyRing,
                        max_degree: int = 4) -> MonomialIdeal:
    seeds = [random_term(rng, ring, rng.randint(2, max_degree))
             for _ in range(rng.randint(1, 3))]
    return borel_closure(ring, seeds)


def random_coefficient(rng: random.Random) -> Fraction:
    return Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))


def random_tails_set(rng: random.Random, J: MonomialIdeal,
                     density: float = 0.5) -> MarkedSet:
    elements = []
    for head in J.basis:
        terms = {head: Fraction(1)}
        for t in J.sous_escalier(head.degree).terms:
            if rng.random() < density:
                terms[t] = random_coefficient(rng)
        elements.append(MarkedPolynomial(Polynomial(J.ring, terms), head))
    return MarkedSet(J, elements)


def random_homogeneous(rng: random.Random, ring: PolyRing, degree: int,
                       size: int = 3) -> Polynomial:
    p = Polynomial(ring)
    pool = ring.terms_of_degree(degree)
    for t in rng.sample(pool, min(size, len(pool))):
        p = p.add_scaled(Polynomial.from_term(t), random_coefficient(rng))
    return p


def groebner_derived_set(rng: random.Random, ring: PolyRing) -> MarkedSet | None:
    """A reduced Groebner basis of a random homogeneous ideal, reinterpreted
    as a marked set when its leading ideal is strongly stable."""
    gens = [random_homogeneous(rng, ring, 2) for _ in range(2)]
    gens = [g for g in gens if g]
    if not gens:
        return None
    basis = gb.groebner_basis(gens)
    if basis.is_zero_ideal() or basis.is_unit_ideal():
        return None
    J = gb.leading_ideal(basis)
    if not J.is_strongly_stable():
        return None
    elements = [MarkedPolynomial(g, g.leading_term()) for g in basis.generators]
    return MarkedSet(J, elements)


def corpus(seed: int, count: int, ring: PolyRing) -> list[MarkedSet]:
    """A deterministic mix of marked sets; roughly half are bases."""
    rng = random.Random(seed)
    out: list[MarkedSet] = []
    while len(out) < count:
        kind = rng.randrange(4)
        if kind == 0:
            out.append(MarkedSet.monomial(random_stable_ideal(rng, ring)))
        elif kind == 1:
            out.append(random_tails_set(rng, random_stable_ideal(rng, ring)))
        elif kind == 2:
            small = PolyRing(ring.variables[:2])
            out.append(random_tails_set(rng, random_stable_ideal(rng, small, 3)))
        else:
            derived = groebner_derived_set(rng, ring)
            if derived is not None:
                out.append(derived)
    return out
