import random
from fractions import Fraction

import pytest

from markedbases.polynomials import MarkedPolynomial, Polynomial
from markedbases.rings import PolyRing

from conftest import marked, poly, random_coefficient, random_term, term


def test_zero_and_identity(ring_zyx):
    p = poly("x*y + y*z", ring_zyx)
    zero = Polynomial(ring_zyx)
    assert p + zero == p
    assert not zero
    assert zero.degree() == -1


def test_term_multiple(ring_zyx):
    assert poly("x*y + y*z", ring_zyx).term_multiple(term("z", ring_zyx)) == \
        poly("x*y*z + y*z^2", ring_zyx)


def test_cancellation(ring_zyx):
    assert poly("x^2 - y*z", ring_zyx) + poly("y*z", ring_zyx) == poly("x^2", ring_zyx)
    p = poly("x^2 - y*z", ring_zyx)
    assert (p - p).is_zero()


def test_support_and_coefficients(ring_zyx):
    p = poly("2*x^2 - 1/2*y*z", ring_zyx)
    assert {str(t) for t in p.support()} == {"x^2", "y*z"}
    assert p.coefficient(term("y*z", ring_zyx)) == Fraction(-1, 2)
    assert p.coefficient(term("z^2", ring_zyx)) == 0
    assert p.is_homogeneous()
    assert not poly("x^2 + x", ring_zyx).is_homogeneous()


def test_substitute(ring_zyx):
    p = poly("x^2*y - 2*z", ring_zyx)
    q = p.substitute({"x": Fraction(1, 2), "y": 4, "z": 1})
    assert q.constant_value() == Fraction(1) * Fraction(1, 4) * 4 - 2
    partial = p.substitute({"x": 0})
    assert partial == poly("-2*z", ring_zyx)
    with pytest.raises(ValueError):
        partial.constant_value()


def test_ring_axioms_randomized(ring_zyx):
    rng = random.Random(11)

    def random_poly():
        p = Polynomial(ring_zyx)
        for _ in range(rng.randint(0, 5)):
            p = p.add_scaled(Polynomial.from_term(random_term(rng, ring_zyx, rng.randint(0, 3))),
                             random_coefficient(rng))
        return p

    for _ in range(200):
        a, b, c = random_poly(), random_poly(), random_poly()
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a + (-a) == Polynomial(ring_zyx)
        assert a.scale(Fraction(3, 2)).scale(Fraction(2, 3)) == a


def test_marked_polynomial_invariants(ring_zyx):
    f = marked("x*y", "x*y + y*z", ring_zyx)
    assert f.head == term("x*y", ring_zyx)
    assert [str(t) for t in f.tail_terms()] == ["y*z"]
    with pytest.raises(ValueError):
        MarkedPolynomial(poly("x*y + y*z", ring_zyx), term("z^2", ring_zyx))
    with pytest.raises(ValueError):
        MarkedPolynomial(poly("2*x*y + y*z", ring_zyx), term("x*y", ring_zyx))


def test_nested_coefficients():
    # x-polynomials whose coefficients are polynomials in a parameter ring
    cring = PolyRing(["c1", "c2"])
    xring = PolyRing(["y", "x"])
    c1 = Polynomial.from_term(cring.variable_term(0))
    c2 = Polynomial.from_term(cring.variable_term(1))
    x2 = xring.term({"x": 2})
    y2 = xring.term({"y": 2})
    p = Polynomial(xring, {x2: Polynomial.constant(cring, 1), y2: c1})
    q = p.add_scaled(Polynomial.from_term(y2), c2)
    assert q.terms[y2] == c1 + c2
    doubled = q.add_scaled(Polynomial.from_term(y2), -(c1 + c2))
    assert doubled.support() == {x2}
    assert (c1 * c2) * Fraction(2) == c2 * c1 + c1 * c2
