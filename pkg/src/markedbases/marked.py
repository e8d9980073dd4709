"""Marked sets over a monomial ideal and the reduction machinery built on
them: per-degree reduction lists, the single-pass normal form with an exact
certificate, S-polynomials, the Buchberger-like basis criterion, an
independent rank-based basis check, and syzygy lifting.

Everything here requires the ideal of head terms to be strongly stable
before any rewriting is attempted; over other ideals the rewriting relation
need not terminate, so those entry points fail fast instead.
"""
from __future__ import annotations

import functools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .ideals import MonomialIdeal
from .linalg import rank
from .polynomials import MarkedPolynomial, Polynomial
from .rings import (PolyRing, Term, drl_key, max_var, min_var, order_key,
                    term_divides, term_lcm, term_mul, term_quotient)


class MarkedSetError(ValueError):
    """A marked-set invariant failed; .violations lists every failure."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


def validate_marked_set(ideal: MonomialIdeal,
                        elements: list[MarkedPolynomial]) -> list[str]:
    """All invariant violations of a would-be marked set over the ideal:
    heads must enumerate the minimal basis exactly, every element must be
    homogeneous, and every tail term must lie outside the ideal."""
    violations: list[str] = []
    heads = [f.head for f in elements]
    if len(set(heads)) != len(heads):
        violations.append("duplicate head terms")
    missing = set(ideal.basis) - set(heads)
    extra = set(heads) - set(ideal.basis)
    if missing:
        violations.append(
            f"heads missing for generators: {', '.join(map(str, sorted(missing, key=drl_key)))}")
    if extra:
        violations.append(
            f"heads that are not minimal generators: {', '.join(map(str, sorted(extra, key=drl_key)))}")
    for f in elements:
        if not f.poly.is_homogeneous():
            violations.append(f"element with head {f.head} is not homogeneous")
        for t in f.tail_terms():
            if ideal.contains_term(t):
                violations.append(
                    f"tail term {t} of the element with head {f.head} lies in the ideal")
            elif t.degree != f.head.degree:
                violations.append(
                    f"tail term {t} of the element with head {f.head} has a different degree")
    return violations


@dataclass(frozen=True)
class ReductionEntry:
    """One row of a degree-m reduction list: multiplier * generator, keyed by
    its head term.  The multiplier is 1 or uses only variables no larger than
    the smallest variable of the generator head, so it is the canonical
    multiple for that head."""
    head: Term
    polynomial: Polynomial
    multiplier: Term
    generator: int


@dataclass
class ReductionCertificate:
    """h = residual + sum(coeff * multiplier * f_generator), exactly."""
    input: Polynomial
    residual: Polynomial
    combination: list[tuple[object, Term, int]]

    def verify(self, marked_set: "MarkedSet") -> bool:
        total = self.residual
        for coeff, multiplier, index in self.combination:
            total = total.add_scaled(
                marked_set.elements[index].poly.term_multiple(multiplier), coeff)
        return total == self.input


@dataclass
class SPolynomial:
    pair: tuple[int, int]
    polynomial: Polynomial
    lcm: Term
    multipliers: tuple[Term, Term]


@dataclass
class PairResidual:
    pair: tuple[int, int]
    heads: tuple[Term, Term]
    residual: Polynomial
    certificate: ReductionCertificate


@dataclass
class BasisCheckResult:
    ok: bool
    residuals: list[PairResidual]

    def failing(self) -> list[PairResidual]:
        return [r for r in self.residuals if r.residual]


@dataclass
class Syzygy:
    """One homogeneous component per generator; a syzygy when the combination
    sum(components[i] * f_i) vanishes."""
    components: tuple[Polynomial, ...]
    degree: int

    def evaluate(self, marked_set: "MarkedSet") -> Polynomial:
        total = Polynomial(marked_set.ring)
        for h, f in zip(self.components, marked_set.elements):
            total = total + h * f.poly
        return total


def is_canonical_multiplier(multiplier: Term, generator_head: Term) -> bool:
    """True when multiplier * generator is the reduction-list multiple of its
    head: the multiplier is 1 or uses only variables no larger than the
    smallest variable of the generator head."""
    return multiplier.is_one() or max_var(multiplier) <= min_var(generator_head)


def compare_multiples(a: tuple[Term, Term], b: tuple[Term, Term], head_key) -> int:
    """Pairwise comparison of scaled generators (multiplier, generator head).

    Strip the common part of the two multipliers; a proper divisor is
    smaller, and otherwise the side owning the smallest remaining variable is
    smaller.  Equal multipliers fall through to the generator heads under the
    fixed order.  On multipliers of equal degree this is exactly degrevlex.

    The degree-free formulation is what keeps the laws the reduction relies
    on true when generators live in several degrees: the reduction-list entry
    is the minimum of its head class, and every element a reduction step can
    touch is strictly below the element that introduced its head.  The price
    is that the relation is not transitive across unrelated head classes, so
    it is only ever used pairwise (class minima, dominance checks), never as
    a global sort key.
    """
    da, db = a[0].exponents, b[0].exponents
    ia = ib = -1
    for k in range(len(da)):
        x, y = da[k], db[k]
        if x > y and ia < 0:
            ia = k
        elif y > x and ib < 0:
            ib = k
    if ia < 0 and ib < 0:
        ka, kb = head_key(a[1]), head_key(b[1])
        return (ka > kb) - (ka < kb)
    if ia < 0:
        return -1
    if ib < 0:
        return 1
    return -1 if ia < ib else 1


class MarkedSet:
    """A marked set: one marked polynomial per minimal generator of the ideal
    of heads.  Immutable; reduction lists are cached per degree."""

    def __init__(self, ideal: MonomialIdeal, elements: list[MarkedPolynomial],
                 order: str = "drl"):
        violations = validate_marked_set(ideal, elements)
        if violations:
            raise MarkedSetError(violations)
        self.ideal = ideal
        self.ring: PolyRing = ideal.ring
        self.order = order
        self._head_key = order_key(order)
        self.elements = tuple(sorted(
            elements, key=lambda f: self._head_key(f.head), reverse=True))
        self.head_index = {f.head: i for i, f in enumerate(self.elements)}
        self._lists: dict[int, list[ReductionEntry]] = {}
        self._lock = threading.Lock()
        self._verified: bool | None = None

    @classmethod
    def monomial(cls, ideal: MonomialIdeal, order: str = "drl") -> MarkedSet:
        """The marked set with zero tails (the generators themselves)."""
        return cls(ideal, [MarkedPolynomial(Polynomial.from_term(t), t)
                           for t in ideal.basis], order)

    @property
    def initial_degree(self) -> int:
        return self.ideal.initial_degree()

    def __len__(self) -> int:
        return len(self.elements)

    # -- reduction lists -------------------------------------------------------

    def reduction_list(self, m: int) -> list[ReductionEntry]:
        """The degree-m reduction list, sorted strictly descending by its
        total order (all non-generator multiples above the generators; among
        multiples, larger last variable first, then the order of the degree
        m-1 parents; among generators, larger head first)."""
        self.ideal.require_strongly_stable()
        alpha = self.initial_degree
        if m < alpha:
            raise ValueError(f"degree {m} is below the initial degree {alpha}")
        with self._lock:
            top = max(self._lists, default=alpha - 1)
            for k in range(top + 1, m + 1):
                self._lists[k] = self._build_level(k)
            return self._lists[m]

    def reduction_lists(self, up_to: int) -> dict[int, list[ReductionEntry]]:
        self.reduction_list(up_to)
        return {k: self._lists[k] for k in range(self.initial_degree, up_to + 1)}

    def _generator_block(self, m: int) -> list[ReductionEntry]:
        block = [ReductionEntry(f.head, f.poly, self.ring.one(), i)
                 for i, f in enumerate(self.elements) if f.head.degree == m]
        # self.elements is already sorted descending by the fixed order
        return block

    def _build_level(self, m: int) -> list[ReductionEntry]:
        if m == self.initial_degree:
            return self._generator_block(m)
        previous = self._lists[m - 1]
        produced: list[tuple[int, int, ReductionEntry]] = []
        for position, entry in enumerate(previous):
            for i in range(min_var(entry.head) + 1):
                xi = self.ring.variable_term(i)
                produced.append((i, position, ReductionEntry(
                    head=term_mul(xi, entry.head),
                    polynomial=entry.polynomial.term_multiple(xi),
                    multiplier=term_mul(xi, entry.multiplier),
                    generator=entry.generator)))
        produced.sort(key=lambda rec: (-rec[0], rec[1]))
        return [rec[2] for rec in produced] + self._generator_block(m)

    def entry_for(self, head: Term) -> ReductionEntry:
        for entry in self.reduction_list(head.degree):
            if entry.head == head:
                return entry
        raise KeyError(f"{head} is not in the ideal piece of degree {head.degree}")

    def compare_entries(self, a: ReductionEntry, b: ReductionEntry) -> int:
        """The total order the reduction lists are sorted by, as a comparison:
        1, 0 or -1 as a is above, equal to or below b in its list.  Both
        entries must come from the list of one degree."""
        if a.head.degree != b.head.degree:
            raise ValueError("entries of different degrees are not comparable")
        positions = {e.head: k for k, e in enumerate(self.reduction_list(a.head.degree))}
        try:
            pa, pb = positions[a.head], positions[b.head]
        except KeyError as missing:
            raise ValueError(f"entry {missing} is not in the reduction list") from None
        return (pb > pa) - (pa > pb)

    # -- normal form -------------------------------------------------------------

    def normal_form(self, h: Polynomial) -> ReductionCertificate:
        """Single descending pass over the reduction list of deg h.  Each step
        clears one head term; the list order guarantees no cleared head ever
        reappears, so one pass reaches a residual supported outside the ideal."""
        if not h.is_homogeneous():
            raise ValueError("normal form is defined degreewise; h must be homogeneous")
        if h.is_zero() or h.degree() < self.initial_degree:
            return ReductionCertificate(h, h, [])
        running = h
        combination: list[tuple[object, Term, int]] = []
        for entry in self.reduction_list(h.degree()):
            coeff = running.terms.get(entry.head)
            if coeff:
                running = running.add_scaled(entry.polynomial, -coeff)
                combination.append((coeff, entry.multiplier, entry.generator))
        for t in running.terms:
            if self.ideal.contains_term(t):
                raise AssertionError(
                    f"reduction left the ideal term {t}; list order violated")
        return ReductionCertificate(h, running, combination)

    # -- S-polynomials and the basis criterion --------------------------------------

    def s_polynomial(self, i: int, j: int) -> SPolynomial:
        fi, fj = self.elements[i], self.elements[j]
        big = term_lcm(fi.head, fj.head)
        ti = term_quotient(big, fi.head)
        tj = term_quotient(big, fj.head)
        poly = fi.poly.term_multiple(ti) - fj.poly.term_multiple(tj)
        return SPolynomial((i, j), poly, big, (ti, tj))

    def minimal_pairs(self) -> list[tuple[int, int]]:
        """Pairs whose S-polynomial must be checked: those where one of the
        two lcm multiples is the canonical (reduction-list) multiple of the
        lcm.  The S-polynomials of the remaining pairs are combinations of
        these, so they never need separate checking."""
        out = []
        for i in range(len(self.elements)):
            for j in range(i + 1, len(self.elements)):
                s = self.s_polynomial(i, j)
                if (is_canonical_multiplier(s.multipliers[0], self.elements[i].head)
                        or is_canonical_multiplier(s.multipliers[1], self.elements[j].head)):
                    out.append((i, j))
        return out

    def all_pairs(self) -> list[tuple[int, int]]:
        t = len(self.elements)
        return [(i, j) for i in range(t) for j in range(i + 1, t)]

    def select_pairs(self, pairs: str = "minimal") -> list[tuple[int, int]]:
        if pairs == "minimal":
            return self.minimal_pairs()
        if pairs == "all":
            return self.all_pairs()
        raise ValueError(f"unknown pair mode {pairs!r}; use 'minimal' or 'all'")

    def reduce_pair(self, pair: tuple[int, int]) -> PairResidual:
        s = self.s_polynomial(*pair)
        certificate = self.normal_form(s.polynomial)
        return PairResidual(
            pair, (self.elements[pair[0]].head, self.elements[pair[1]].head),
            certificate.residual, certificate)

    def buchberger_check(self, pairs: str = "minimal", threads: int = 1) -> BasisCheckResult:
        """The set generates an ideal with the same Hilbert function as the
        head ideal iff every selected S-polynomial reduces to exactly zero."""
        self.ideal.require_strongly_stable()
        selected = self.select_pairs(pairs)
        if selected:
            top = max(term_lcm(self.elements[i].head, self.elements[j].head).degree
                      for i, j in selected)
            self.reduction_list(top)  # build once, shared by all workers
        if threads > 1 and len(selected) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                residuals = list(pool.map(self.reduce_pair, selected))
        else:
            residuals = [self.reduce_pair(p) for p in selected]
        return BasisCheckResult(all(not r.residual for r in residuals), residuals)

    def is_basis(self, pairs: str = "minimal") -> bool:
        if self._verified is None:
            self._verified = self.buchberger_check(pairs).ok
        return self._verified

    def require_basis(self) -> None:
        if not self.is_basis():
            raise MarkedSetError(["the marked set is not a marked basis"])

    # -- independent oracle: ranks of the scaled-generator matrices -----------------

    def scaled_generators(self, m: int) -> list[tuple[Term, int]]:
        """All (multiplier, generator index) with deg(multiplier * head) = m.
        The listing order (multiplier degrevlex descending, then head order)
        is only a deterministic presentation, not the reduction order."""
        out = []
        for i, f in enumerate(self.elements):
            d = m - f.head.degree
            if d < 0:
                continue
            for multiplier in self.ring.terms_of_degree(d):
                out.append((multiplier, i))
        out.sort(key=lambda rec: (drl_key(rec[0]),
                                  self._head_key(self.elements[rec[1]].head)),
                 reverse=True)
        return out

    def rank_check(self, up_to: int | None = None) -> tuple[bool, list[tuple[int, int, int]]]:
        """Compare dim of the generated ideal (by exact row reduction of all
        degree-m scaled generators) with dim of the head ideal, for every
        degree up to the syzygy degree bound.  Equal everywhere iff the set
        is a marked basis; this never runs the rewriting machinery."""
        self.ideal.require_strongly_stable()
        bound = self.ideal.syzygy_degree_bound() if up_to is None else up_to
        report = []
        ok = True
        for m in range(self.initial_degree, bound + 1):
            columns = {t: k for k, t in enumerate(self.ring.terms_of_degree(m))}
            rows = []
            for multiplier, i in self.scaled_generators(m):
                poly = self.elements[i].poly.term_multiple(multiplier)
                row = [Fraction(0)] * len(columns)
                for t, c in poly.terms.items():
                    row[columns[t]] = c
                rows.append(row)
            r = rank(rows)
            expected = self.ideal.dim(m)
            report.append((m, r, expected))
            ok = ok and r == expected
        return ok, report

    # -- membership ------------------------------------------------------------------

    def contains(self, h: Polynomial) -> bool:
        """Ideal membership for a verified basis: the normal form is zero."""
        self.require_basis()
        return self.normal_form(h).residual.is_zero()

    # -- syzygies ---------------------------------------------------------------------

    def pair_syzygy(self, pair: tuple[int, int]) -> Syzygy:
        """The monomial syzygy of the pair of head terms."""
        s = self.s_polynomial(*pair)
        components = [Polynomial(self.ring) for _ in self.elements]
        components[pair[0]] = Polynomial.from_term(s.multipliers[0])
        components[pair[1]] = Polynomial.from_term(s.multipliers[1], -1)
        return Syzygy(tuple(components), s.lcm.degree)

    def lift_syzygy(self, pair: tuple[int, int]) -> Syzygy:
        """Lift the pair's monomial syzygy: subtract the reduction certificate
        of the S-polynomial, which must reduce to zero."""
        s = self.s_polynomial(*pair)
        certificate = self.normal_form(s.polynomial)
        if certificate.residual:
            raise MarkedSetError(
                [f"S-polynomial of {self.elements[pair[0]].head}, "
                 f"{self.elements[pair[1]].head} has nonzero reduction "
                 f"{certificate.residual}; the set is not a marked basis"])
        components = [Polynomial(self.ring) for _ in self.elements]
        components[pair[0]] = Polynomial.from_term(s.multipliers[0])
        components[pair[1]] = Polynomial.from_term(s.multipliers[1], -1)
        for coeff, multiplier, index in certificate.combination:
            components[index] = components[index].add_scaled(
                Polynomial.from_term(multiplier), -coeff)
        lifted = Syzygy(tuple(components), s.lcm.degree)
        if lifted.evaluate(self):
            raise AssertionError("lifted syzygy does not evaluate to zero")
        return lifted

    def syzygy_head(self, syzygy: Syzygy) -> tuple[Term, Syzygy]:
        """Head term of a syzygy: the head of the scaled generator in its
        support that dominates every other one pairwise under the multiple
        comparison, together with the head component data."""
        support = [(t, i) for i, h in enumerate(syzygy.components) for t in h.terms]
        if not support:
            raise ValueError("the zero syzygy has no head")
        cmp = functools.partial(compare_multiples, head_key=self._head_key)
        as_pair = lambda rec: (rec[0], self.elements[rec[1]].head)
        best = support[0]
        for candidate in support[1:]:
            if cmp(as_pair(candidate), as_pair(best)) > 0:
                best = candidate
        for other in support:
            if other is not best and cmp(as_pair(best), as_pair(other)) <= 0:
                raise AssertionError(
                    "no dominant scaled generator in the syzygy support; "
                    "the head data is not well defined")
        eta = term_mul(best[0], self.elements[best[1]].head)
        plus = []
        for i, h in enumerate(syzygy.components):
            head_i = self.elements[i].head
            if term_divides(head_i, eta):
                beta = term_quotient(eta, head_i)
                coeff = h.terms.get(beta)
                plus.append(Polynomial.from_term(beta, coeff) if coeff
                            else Polynomial(self.ring))
            else:
                plus.append(Polynomial(self.ring))
        return eta, Syzygy(tuple(plus), syzygy.degree)

    def __repr__(self):
        return f"MarkedSet({', '.join(str(f.head) for f in self.elements)})"
