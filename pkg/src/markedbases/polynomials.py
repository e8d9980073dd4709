"""Sparse polynomials over an exact coefficient domain.

Coefficients are `fractions.Fraction` for ordinary polynomials, or another
`Polynomial` (over a ring of parameter variables) for the generic sets used
by the scheme construction.  Either way the arithmetic is exact: zero
coefficients are never stored, and equality is exact equality.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .rings import (PolyRing, RingMismatchError, Term, drl_key, term_mul)


def _as_coeff(c):
    """Normalize ints to Fraction; leave Fraction and Polynomial alone."""
    if isinstance(c, int):
        return Fraction(c)
    return c


class Polynomial:
    """A finite map from terms to nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Term, object] | None = None):
        self.ring = ring
        self.terms: dict[Term, object] = {}
        if terms:
            for t, c in terms.items():
                c = _as_coeff(c)
                if c:
                    if t.ring != ring:
                        raise RingMismatchError(f"term {t} not in {ring}")
                    self.terms[t] = c

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ring: PolyRing) -> Polynomial:
        return cls(ring)

    @classmethod
    def from_term(cls, t: Term, coeff=1) -> Polynomial:
        return cls(t.ring, {t: _as_coeff(coeff)})

    @classmethod
    def constant(cls, ring: PolyRing, coeff) -> Polynomial:
        return cls(ring, {ring.one(): _as_coeff(coeff)})

    # -- queries -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> set[Term]:
        return set(self.terms)

    def coefficient(self, t: Term):
        return self.terms.get(t, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((t.degree for t in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {t.degree for t in self.terms}
        return len(degrees) <= 1

    def sorted_terms(self, key=drl_key) -> list[tuple[Term, object]]:
        return [(t, self.terms[t]) for t in sorted(self.terms, key=key, reverse=True)]

    def leading_term(self, key=drl_key) -> Term:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        return max(self.terms, key=key)

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other: Polynomial) -> None:
        if self.ring != other.ring:
            raise RingMismatchError("polynomials live in different rings")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check_ring(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            acc = out.get(t)
            acc = c if acc is None else acc + c
            if acc:
                out[t] = acc
            elif t in out:
                del out[t]
        result = Polynomial.__new__(Polynomial)
        result.ring = self.ring
        result.terms = out
        return result

    def __neg__(self) -> Polynomial:
        result = Polynomial.__new__(Polynomial)
        result.ring = self.ring
        result.terms = {t: -c for t, c in self.terms.items()}
        return result

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def scale(self, coeff) -> Polynomial:
        coeff = _as_coeff(coeff)
        if not coeff:
            return Polynomial(self.ring)
        result = Polynomial.__new__(Polynomial)
        result.ring = self.ring
        result.terms = {t: c * coeff for t, c in self.terms.items()}
        return result

    def term_multiple(self, t: Term) -> Polynomial:
        """The product t * self (t a term of the same ring)."""
        if t.ring != self.ring:
            raise RingMismatchError(f"term {t} not in {self.ring}")
        result = Polynomial.__new__(Polynomial)
        result.ring = self.ring
        result.terms = {term_mul(t, s): c for s, c in self.terms.items()}
        return result

    def add_scaled(self, other: Polynomial, coeff) -> Polynomial:
        """self + coeff * other in one pass."""
        self._check_ring(other)
        coeff = _as_coeff(coeff)
        if not coeff:
            return self
        out = dict(self.terms)
        for t, c in other.terms.items():
            acc = out.get(t)
            inc = c * coeff
            acc = inc if acc is None else acc + inc
            if acc:
                out[t] = acc
            elif t in out:
                del out[t]
        result = Polynomial.__new__(Polynomial)
        result.ring = self.ring
        result.terms = out
        return result

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_ring(other)
        out: dict[Term, object] = {}
        for s, cs in self.terms.items():
            for t, ct in other.terms.items():
                key = term_mul(s, t)
                acc = out.get(key)
                inc = cs * ct
                acc = inc if acc is None else acc + inc
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        result = Polynomial.__new__(Polynomial)
        result.ring = self.ring
        result.terms = out
        return result

    def __rmul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __radd__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self + Polynomial.constant(self.ring, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            other = _as_coeff(other)
            if not other:
                return not self.terms
            return self.terms == {self.ring.one(): other}
        return NotImplemented

    __hash__ = None  # mutable container semantics

    # -- substitution --------------------------------------------------------

    def substitute(self, assignment: Mapping[str, Fraction | int]) -> Polynomial:
        """Substitute rational values for (some of) the variables."""
        values = {self.ring.index(name): _as_coeff(v) for name, v in assignment.items()}
        out = Polynomial(self.ring)
        for t, c in self.terms.items():
            factor = Fraction(1)
            rest = list(t.exponents)
            for i, v in values.items():
                e = rest[i]
                if e:
                    factor *= v ** e
                    rest[i] = 0
            out = out.add_scaled(
                Polynomial.from_term(Term(self.ring, tuple(rest))), c * factor)
        return out

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (zero or a single 1-term)."""
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {self.ring.one()}:
            value = self.terms[self.ring.one()]
            if not isinstance(value, Polynomial):
                return value
        raise ValueError(f"{self} is not a rational constant")

    # -- display ---------------------------------------------------------------

    def __str__(self):
        from .parsing import format_polynomial
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


class MarkedPolynomial:
    """A polynomial with one designated support term, the head.

    The head coefficient must be exactly 1; every marked-basis computation
    relies on subtracting head multiples without any coefficient division.
    """

    __slots__ = ("poly", "head")

    def __init__(self, poly: Polynomial, head: Term):
        if head not in poly.terms:
            raise ValueError(f"head {head} does not occur in {poly}")
        if poly.terms[head] != 1:
            raise ValueError(f"head {head} must have coefficient 1 in {poly}")
        self.poly = poly
        self.head = head

    @property
    def ring(self) -> PolyRing:
        return self.poly.ring

    def tail(self) -> Polynomial:
        """head - poly, i.e. minus the non-head part."""
        return Polynomial.from_term(self.head) - self.poly

    def tail_terms(self) -> list[Term]:
        return [t for t in self.poly.terms if t != self.head]

    def __eq__(self, other):
        return (isinstance(other, MarkedPolynomial)
                and self.head == other.head and self.poly == other.poly)

    def __str__(self):
        return f"{self.head} : {self.poly}"

    def __repr__(self):
        return f"MarkedPolynomial({self})"

