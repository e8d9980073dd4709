"""Monomial ideals: minimal basis, membership, sous-escalier slices,
Hilbert function, strong stability and the degree data of pair syzygies."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .rings import (PolyRing, Term, drl_key, term_divides, term_lcm,
                    term_quotient)


class NotStronglyStableError(ValueError):
    """Raised when an operation that needs a strongly stable ideal gets one
    that is not.  Marked reduction over such an ideal may rewrite forever
    (e.g. x*y*z -> -y*z^2 -> x*y*z over J = (xy, z^2)), so every reduction
    entry point refuses instead of looping."""

    def __init__(self, ideal: MonomialIdeal, move: tuple[Term, int, int, Term]):
        term, i, j, moved = move
        names = ideal.ring.variables
        self.move = move
        super().__init__(
            f"ideal ({', '.join(map(str, ideal.basis))}) is not strongly stable: "
            f"the elementary move {term} -> {moved} "
            f"(swap {names[i]} for the larger {names[j]}) leaves the ideal; "
            f"marked reduction terminates only over strongly stable ideals")


@dataclass(frozen=True)
class SousEscalierSlice:
    """The degree-m terms outside the ideal, descending by degrevlex."""
    degree: int
    terms: tuple[Term, ...]

    def __len__(self) -> int:
        return len(self.terms)


class MonomialIdeal:
    """A proper nonzero monomial ideal, held by its minimal basis."""

    def __init__(self, ring: PolyRing, generators: Iterable[Term]):
        gens = list(generators)
        if not gens:
            raise ValueError("the zero ideal is not supported")
        for t in gens:
            if t.ring != ring:
                raise ValueError(f"generator {t} is not in {ring}")
            if t.degree == 0:
                raise ValueError("the unit ideal is not supported")
        self.ring = ring
        self.basis = tuple(_minimalize(gens))
        self._stability: tuple[Term, int, int, Term] | None | bool = None

    # -- membership and slices -----------------------------------------------

    def contains_term(self, t: Term) -> bool:
        return any(term_divides(b, t) for b in self.basis)

    def initial_degree(self) -> int:
        return min(b.degree for b in self.basis)

    def terms_of_degree(self, m: int) -> list[Term]:
        """The degree-m terms of the ideal, descending by degrevlex."""
        return [t for t in self.ring.terms_of_degree(m) if self.contains_term(t)]

    def sous_escalier(self, m: int) -> SousEscalierSlice:
        if m < 0:
            raise ValueError("degree must be non-negative")
        outside = tuple(t for t in self.ring.terms_of_degree(m)
                        if not self.contains_term(t))
        return SousEscalierSlice(m, outside)

    def dim(self, m: int) -> int:
        """dim of the degree-m piece of the ideal."""
        n = self.ring.nvars - 1
        return math.comb(m + n, n) - len(self.sous_escalier(m))

    def hilbert_function(self, m: int) -> int:
        """Hilbert function of the quotient: the number of degree-m terms
        outside the ideal."""
        return len(self.sous_escalier(m))

    # -- strong stability -------------------------------------------------------

    def stability_violation(self) -> tuple[Term, int, int, Term] | None:
        """First elementary move that leaves the ideal, or None.

        A move takes a generator, divides by a variable x_i occurring in it
        and multiplies by a larger variable x_j; the ideal is strongly stable
        iff every such move lands back in the ideal.  Checking generators
        suffices (moves of non-generators factor through generator moves).
        """
        if self._stability is not None:
            return None if self._stability is True else self._stability
        for b in sorted(self.basis, key=drl_key, reverse=True):
            for i, e in enumerate(b.exponents):
                if e == 0:
                    continue
                for j in range(i + 1, self.ring.nvars):
                    vec = list(b.exponents)
                    vec[i] -= 1
                    vec[j] += 1
                    moved = Term(self.ring, tuple(vec))
                    if not self.contains_term(moved):
                        self._stability = (b, i, j, moved)
                        return self._stability
        self._stability = True
        return None

    def is_strongly_stable(self) -> bool:
        return self.stability_violation() is None

    def require_strongly_stable(self) -> None:
        violation = self.stability_violation()
        if violation is not None:
            raise NotStronglyStableError(self, violation)

    # -- syzygy degree data ---------------------------------------------------

    def pairs(self, minimal: bool = False) -> list[tuple[int, int]]:
        """Index pairs (i < j) into the basis.

        With minimal=True, drop (a, b) when some other generator c divides
        lcm(a, b) properly with both lcm(a, c) and lcm(c, b) of lower degree;
        the corresponding monomial syzygies still generate.
        """
        gens = self.basis
        out = []
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if minimal and self._pair_redundant(i, j):
                    continue
                out.append((i, j))
        return out

    def _pair_redundant(self, i: int, j: int) -> bool:
        gens = self.basis
        big = term_lcm(gens[i], gens[j])
        for k, c in enumerate(gens):
            if k in (i, j) or not term_divides(c, big):
                continue
            if (term_lcm(gens[i], c).degree < big.degree
                    and term_lcm(c, gens[j]).degree < big.degree):
                return True
        return False

    def pair_syzygy_degrees(self, minimal: bool = False) -> list[tuple[tuple[int, int], int]]:
        return [(p, term_lcm(self.basis[p[0]], self.basis[p[1]]).degree)
                for p in self.pairs(minimal)]

    def syzygy_degree_bound(self, minimal: bool = False) -> int:
        """Upper bound for the maximum degree of generators of the monomial
        syzygies; with no pairs this is just the initial degree."""
        degrees = [d for _, d in self.pair_syzygy_degrees(minimal)]
        return max(degrees, default=self.initial_degree())

    # -- misc -------------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, MonomialIdeal)
                and self.ring == other.ring and set(self.basis) == set(other.basis))

    def __hash__(self):
        return hash((self.ring, frozenset(self.basis)))

    def __repr__(self):
        return f"MonomialIdeal({', '.join(map(str, self.basis))})"


def _minimalize(gens: Sequence[Term]) -> list[Term]:
    unique = sorted(set(gens), key=drl_key)
    out: list[Term] = []
    for t in unique:  # ascending: earlier terms cannot be multiples of later ones
        if not any(term_divides(b, t) for b in out):
            out.append(t)
    out.sort(key=drl_key, reverse=True)
    return out


def borel_closure(ring: PolyRing, terms: Iterable[Term]) -> MonomialIdeal:
    """Smallest strongly stable ideal containing the given terms: saturate
    the generators under all swaps of a variable for a larger one."""
    seen: set[Term] = set()
    queue = list(terms)
    while queue:
        t = queue.pop()
        if t in seen:
            continue
        seen.add(t)
        for i, e in enumerate(t.exponents):
            if e == 0:
                continue
            for j in range(i + 1, ring.nvars):
                vec = list(t.exponents)
                vec[i] -= 1
                vec[j] += 1
                moved = Term(ring, tuple(vec))
                if moved not in seen:
                    queue.append(moved)
    return MonomialIdeal(ring, seen)


def quotient_by_smallest_variable(ideal: MonomialIdeal, t: Term) -> Term:
    """t / min(t), which stays in the ideal when the ideal is strongly stable
    and t is a non-generator (the step behind the reduction-list recursion)."""
    from .rings import min_var
    i = min_var(t)
    return term_quotient(t, ideal.ring.variable_term(i))
