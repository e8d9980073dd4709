"""The parametric construction: a generic marked set whose tail coefficients
are fresh parameters, the scheme ideal cut out by the reductions of its
S-polynomials, the equivalent bordered-minor presentation, the non-standard
grading that makes every equation homogeneous, tangent-space data at the
origin, and term-order sections (strata).

Sign convention: internally every generic element is head minus a linear
combination of outside terms.  A naming map may relabel the parameters and
flip signs per parameter (a map entry with sign `-` makes the printed tail
coefficient `+c`), so published coordinate conventions can be reproduced
exactly; all computations happen directly in the named coordinates.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .ideals import MonomialIdeal
from .linalg import LinearSpan
from .marked import MarkedSet, is_canonical_multiplier
from .parsing import ParseError, parse_term
from .polynomials import MarkedPolynomial, Polynomial
from .rings import PolyRing, Term, drl_key, order_key, term_lcm, term_mul


@dataclass(frozen=True)
class Parameter:
    """One generic tail coefficient: the polynomial with head `head` carries
    `- sign * name` as its coefficient of `tail`."""
    name: str
    head: Term
    tail: Term
    sign: int = 1

    def lambda_degree(self) -> tuple[int, ...]:
        return tuple(a - g for a, g in zip(self.head.exponents, self.tail.exponents))


class ParameterRing:
    """The polynomial ring on the tail parameters, with their labels."""

    def __init__(self, parameters: list[Parameter]):
        seen = set()
        for p in parameters:
            if (p.head, p.tail) in seen:
                raise ValueError(f"duplicate parameter for ({p.head}, {p.tail})")
            if p.tail.degree != p.head.degree:
                raise ValueError(f"parameter {p.name}: tail {p.tail} and head "
                                 f"{p.head} have different degrees")
            seen.add((p.head, p.tail))
        self.parameters = tuple(parameters)
        self.ring = PolyRing([p.name for p in parameters])
        self.by_name = {p.name: p for p in parameters}
        self.by_label = {(p.head, p.tail): p for p in parameters}

    def __len__(self) -> int:
        return len(self.parameters)

    def variable(self, p: Parameter) -> Polynomial:
        return Polynomial.from_term(self.ring.variable_term(self.ring.index(p.name)))

    def lambda_degree_of(self, t: Term) -> tuple[int, ...]:
        """lambda-degree of a parameter monomial: the sum of the per-parameter
        degrees; constants get the zero vector."""
        n = self.parameters[0].head.ring.nvars if self.parameters else 0
        total = [0] * n
        for p, e in zip(self.parameters, t.exponents):
            if e:
                for k, v in enumerate(p.lambda_degree()):
                    total[k] += e * v
        return tuple(total)

    def linear_form(self, coefficients: Mapping[str, Fraction | int]) -> Polynomial:
        poly = Polynomial(self.ring)
        for name, c in coefficients.items():
            poly = poly.add_scaled(self.variable(self.by_name[name]), c)
        return poly


def default_parameters(ideal: MonomialIdeal) -> list[Parameter]:
    """Default labeling c1..cN: heads descending by degrevlex, tails
    descending by degrevlex within each head, all signs positive."""
    params: list[Parameter] = []
    for head in sorted(ideal.basis, key=drl_key, reverse=True):
        for tail in ideal.sous_escalier(head.degree).terms:
            params.append(Parameter(f"c{len(params) + 1}", head, tail))
    return params


def parse_naming_map(text: str, ideal: MonomialIdeal) -> list[Parameter]:
    """Naming-map file: one line `c<index> <sign> <head term> <tail term>` per
    parameter; indices must be 1..N, and the (head, tail) labels must cover
    exactly the tail positions of the generic set."""
    ring = ideal.ring
    entries: dict[int, Parameter] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4 or fields[1] not in "+-":
            raise ParseError("expected 'c<index> <sign> <head> <tail>'", lineno, 1)
        name, sign, head_text, tail_text = fields
        if not (name.startswith("c") and name[1:].isdigit()):
            raise ParseError(f"bad parameter name {name!r}", lineno, 1)
        index = int(name[1:])
        if index in entries:
            raise ParseError(f"duplicate parameter {name}", lineno, 1)
        entries[index] = Parameter(name, parse_term(head_text, ring, lineno),
                                   parse_term(tail_text, ring, lineno),
                                   1 if sign == "+" else -1)
    params = [entries[i] for i in sorted(entries)]
    if sorted(entries) != list(range(1, len(params) + 1)):
        raise ParseError("parameter indices must be 1..N without gaps", 1, 1)
    expected = {(p.head, p.tail) for p in default_parameters(ideal)}
    got = {(p.head, p.tail) for p in params}
    if got != expected:
        missing = expected - got
        extra = got - expected
        detail = []
        if missing:
            h, t = next(iter(missing))
            detail.append(f"missing ({h}, {t})")
        if extra:
            h, t = next(iter(extra))
            detail.append(f"unexpected ({h}, {t})")
        raise ParseError(f"naming map does not match the generic set: "
                         f"{'; '.join(detail)}", 1, 1)
    return params


class GenericMarkedSet:
    """The marked set whose tails carry one fresh parameter each; any point
    of the parameter space specializes it to an ordinary marked set."""

    def __init__(self, ideal: MonomialIdeal, parameters: list[Parameter] | None = None,
                 order: str = "drl"):
        ideal.require_strongly_stable()
        self.ideal = ideal
        self.parameter_ring = ParameterRing(parameters or default_parameters(ideal))
        self.order = order
        elements = []
        for head in ideal.basis:
            terms: dict[Term, object] = {
                head: Polynomial.constant(self.parameter_ring.ring, 1)}
            for tail in ideal.sous_escalier(head.degree).terms:
                p = self.parameter_ring.by_label[(head, tail)]
                terms[tail] = self.parameter_ring.variable(p).scale(-p.sign)
            elements.append(MarkedPolynomial(Polynomial(ideal.ring, terms), head))
        self.marked_set = MarkedSet(ideal, elements, order)

    def __len__(self) -> int:
        return len(self.parameter_ring)

    def specialize(self, point: Mapping[str, Fraction | int],
                   order: str | None = None) -> MarkedSet:
        """The marked set at a rational point; unnamed parameters default 0."""
        assignment = {p.name: point.get(p.name, 0)
                      for p in self.parameter_ring.parameters}
        unknown = set(point) - set(assignment)
        if unknown:
            raise KeyError(f"unknown parameters: {sorted(unknown)}")
        elements = []
        for f in self.marked_set.elements:
            terms = {t: c.substitute(assignment).constant_value()
                     for t, c in f.poly.terms.items()}
            elements.append(MarkedPolynomial(Polynomial(self.ideal.ring, terms), f.head))
        return MarkedSet(self.ideal, elements, order or self.order)


@dataclass
class SchemeGenerator:
    """One defining equation: the coefficient of `monomial` in the reduction
    of the S-polynomial (or scaled generator) described by `provenance`."""
    polynomial: Polynomial            # in the parameter ring
    lambda_degree: tuple[int, ...]
    provenance: tuple[Term, ...]      # heads of the S-pair, or (multiplier, head)
    monomial: Term

    def is_lambda_homogeneous(self, parameters: ParameterRing) -> bool:
        degrees = {parameters.lambda_degree_of(t) for t in self.polynomial.terms}
        return degrees <= {self.lambda_degree}


@dataclass
class SchemeIdeal:
    parameters: ParameterRing
    ideal: MonomialIdeal
    generators: list[SchemeGenerator]
    mode: str

    def polynomials(self) -> list[Polynomial]:
        return [g.polynomial for g in self.generators]

    def homogeneity_check(self) -> bool:
        return all(g.is_lambda_homogeneous(self.parameters) for g in self.generators)

    def evaluate(self, point: Mapping[str, Fraction | int]) -> list[Fraction]:
        assignment = {p.name: point.get(p.name, 0) for p in self.parameters.parameters}
        return [g.polynomial.substitute(assignment).constant_value()
                for g in self.generators]

    def vanishes_at(self, point: Mapping[str, Fraction | int]) -> bool:
        return all(v == 0 for v in self.evaluate(point))

    def to_json(self) -> list[dict]:
        out = []
        for g in self.generators:
            monomials = []
            for t, c in g.polynomial.sorted_terms():
                exponents = {name: e for name, e in
                             zip(self.parameters.ring.variables, t.exponents) if e}
                monomials.append({"coefficient": str(c), "exponents": exponents})
            out.append({
                "monomials": monomials,
                "lambda": list(g.lambda_degree),
                "provenance": {"pair": [str(t) for t in g.provenance],
                               "monomial": str(g.monomial)},
            })
        return out


def _pair_generators(generic: GenericMarkedSet,
                     pair: tuple[int, int]) -> list[SchemeGenerator]:
    ms = generic.marked_set
    s = ms.s_polynomial(*pair)
    certificate = ms.normal_form(s.polynomial)
    heads = (ms.elements[pair[0]].head, ms.elements[pair[1]].head)
    out = []
    for t in sorted(certificate.residual.terms, key=drl_key, reverse=True):
        coeff = certificate.residual.terms[t]
        lam = tuple(a - g for a, g in zip(s.lcm.exponents, t.exponents))
        out.append(SchemeGenerator(coeff, lam, heads, t))
    return out


def scheme_ideal(generic: GenericMarkedSet, mode: str = "minimal",
                 threads: int = 1) -> SchemeIdeal:
    """Defining equations of the marked scheme: reduce each selected
    S-polynomial of the generic set and collect the coefficient of every
    outside monomial in the residual.  mode='minimal' uses only pairs where
    one side is the canonical multiple of the lcm; mode='all_pairs' uses all
    pairs.  Both generate the same ideal."""
    ms = generic.marked_set
    if mode == "minimal":
        pairs = ms.minimal_pairs()
    elif mode == "all_pairs":
        pairs = ms.all_pairs()
    else:
        raise ValueError(f"unknown mode {mode!r}; use 'minimal' or 'all_pairs'")
    if pairs:
        top = max(term_lcm(ms.elements[i].head, ms.elements[j].head).degree
                  for i, j in pairs)
        ms.reduction_list(top)
    worker = lambda pair: _pair_generators(generic, pair)
    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(worker, pairs))
    else:
        chunks = [worker(p) for p in pairs]
    generators = [g for chunk in chunks for g in chunk if g.polynomial]
    return SchemeIdeal(generic.parameter_ring, generic.ideal, generators, mode)


# -- tangent space ----------------------------------------------------------------

@dataclass
class TangentSpace:
    parameters: ParameterRing
    span: LinearSpan
    forms: list[Polynomial] = field(default_factory=list)

    @property
    def codimension(self) -> int:
        return self.span.rank

    @property
    def dimension(self) -> int:
        return len(self.parameters) - self.span.rank

    def _vector(self, form: Polynomial) -> list[Fraction]:
        v = [Fraction(0)] * len(self.parameters)
        for t, c in form.terms.items():
            if t.degree != 1:
                raise ValueError(f"{form} is not a linear form")
            v[t.exponents.index(1)] = c
        return v

    def contains(self, form: Polynomial) -> bool:
        """Whether a linear form lies in the span of the equations' linear
        parts (i.e. vanishes on the tangent space)."""
        return self.span.contains(self._vector(form))


def tangent_space(scheme: SchemeIdeal) -> TangentSpace:
    """Row-reduce the degree-1 parts of the defining equations; the tangent
    space at the origin is their common zero locus, of dimension N - rank."""
    parameters = scheme.parameters
    span = LinearSpan(len(parameters))
    for g in scheme.generators:
        vector = [Fraction(0)] * len(parameters)
        nonzero = False
        for t, c in g.polynomial.terms.items():
            if t.degree == 0:
                raise AssertionError(
                    "scheme equation with a constant term; grading violated")
            if t.degree == 1:
                vector[t.exponents.index(1)] = c
                nonzero = True
        if nonzero:
            span.add(vector)
    cring = parameters.ring
    forms = []
    for row in span.rows:
        terms = {}
        for i, c in enumerate(row):
            if c:
                terms[cring.variable_term(i)] = c
        forms.append(Polynomial(cring, terms))
    return TangentSpace(parameters, span, forms)


# -- the matrix presentation --------------------------------------------------------

@dataclass
class CoefficientMatrix:
    """Rows are all degree-m multiples of the generic elements, columns all
    degree-m terms (ideal terms first, in the reduction-list order, then the
    outside terms descending).  The leading square block on the canonical
    rows is triangular with unit diagonal."""
    degree: int
    rows: list[tuple[Term, int]]          # (multiplier, generator index)
    columns: list[Term]
    block_size: int                       # = dim of the ideal in this degree
    entries: list[list[Polynomial]]


def matrix_a(generic: GenericMarkedSet, m: int,
             max_entries: int = 200_000) -> CoefficientMatrix:
    ms = generic.marked_set
    vlist = ms.reduction_list(m)
    inside = [e.head for e in vlist]
    outside = list(generic.ideal.sous_escalier(m).terms)
    columns = inside + outside
    canonical = [(e.multiplier, e.generator) for e in vlist]
    rest = [(mult, i) for mult, i in ms.scaled_generators(m)
            if not is_canonical_multiplier(mult, ms.elements[i].head)]
    rows = canonical + rest
    if len(rows) * len(columns) > max_entries:
        raise ValueError(f"matrix for degree {m} has {len(rows)}x{len(columns)} "
                         f"entries, over the limit {max_entries}")
    zero = Polynomial(generic.parameter_ring.ring)
    index = {t: k for k, t in enumerate(columns)}
    entries = []
    for mult, i in rows:
        poly = ms.elements[i].poly.term_multiple(mult)
        row = [zero] * len(columns)
        for t, c in poly.terms.items():
            row[index[t]] = c
        entries.append(row)
    return CoefficientMatrix(m, rows, columns, len(inside), entries)


def _determinant(entries: list[list[Polynomial]], zero: Polynomial) -> Polynomial:
    n = len(entries)
    if n == 0:
        return zero
    # expansion along the first row, memoized on the surviving column set
    cache: dict[tuple[int, tuple[int, ...]], Polynomial] = {}

    def minor(row: int, cols: tuple[int, ...]) -> Polynomial:
        if row == n:
            one = Polynomial.constant(zero.ring, 1)
            return one
        key = (row, cols)
        if key in cache:
            return cache[key]
        total = zero
        sign = 1
        for k, c in enumerate(cols):
            entry = entries[row][c]
            if entry:
                sub = minor(row + 1, cols[:k] + cols[k + 1:])
                total = total.add_scaled(entry * sub, sign)
            sign = -sign
        cache[key] = total
        return total

    return minor(0, tuple(range(n)))


def minors_ideal(generic: GenericMarkedSet, degrees: Iterable[int] | None = None,
                 full: bool = False, max_entries: int = 200_000,
                 max_minor_order: int = 8, threads: int = 1) -> SchemeIdeal:
    """The ideal generated by the minors of the degree-m coefficient matrices
    one larger than the ideal dimension.  By default only the bordered minors
    of the distinguished triangular block are enumerated, each computed as a
    residual coefficient of the reduction of its extra row (their common value
    by Gaussian elimination); full=True enumerates every minor on tiny inputs.
    """
    ms = generic.marked_set
    ideal = generic.ideal
    if degrees is None:
        degrees = range(ideal.initial_degree(), ideal.syzygy_degree_bound() + 1)
    generators: list[SchemeGenerator] = []
    for m in degrees:
        if full:
            generators.extend(_full_minors(generic, m, max_entries, max_minor_order))
            continue
        vlist = ms.reduction_list(m)
        extra = [(mult, i) for mult, i in ms.scaled_generators(m)
                 if not is_canonical_multiplier(mult, ms.elements[i].head)]
        for mult, i in extra:
            poly = ms.elements[i].poly.term_multiple(mult)
            certificate = ms.normal_form(poly)
            head = ms.elements[i].head
            row_head = term_mul(mult, head)
            for t in sorted(certificate.residual.terms, key=drl_key, reverse=True):
                lam = tuple(a - g for a, g in zip(row_head.exponents, t.exponents))
                generators.append(SchemeGenerator(
                    certificate.residual.terms[t], lam, (mult, head), t))
    generators = [g for g in generators if g.polynomial]
    return SchemeIdeal(generic.parameter_ring, ideal, generators, "minors")


def _full_minors(generic: GenericMarkedSet, m: int, max_entries: int,
                 max_minor_order: int) -> list[SchemeGenerator]:
    from itertools import combinations
    matrix = matrix_a(generic, m, max_entries)
    order = matrix.block_size + 1
    if order > max_minor_order:
        raise ValueError(f"minor order {order} exceeds the limit {max_minor_order}; "
                         "full enumeration is only for tiny inputs")
    zero = Polynomial(generic.parameter_ring.ring)
    out = []
    nrows = len(matrix.rows)
    ncols = len(matrix.columns)
    if nrows < order or ncols < order:
        return out
    for row_set in combinations(range(nrows), order):
        for col_set in combinations(range(ncols), order):
            sub = [[matrix.entries[r][c] for c in col_set] for r in row_set]
            det = _determinant(sub, zero)
            if det:
                mult, gen = matrix.rows[row_set[-1]]
                out.append(SchemeGenerator(
                    det, generic.parameter_ring.lambda_degree_of(
                        next(iter(det.terms))),
                    (mult, generic.marked_set.elements[gen].head),
                    matrix.columns[col_set[-1]]))
    return out


# -- strata -----------------------------------------------------------------------

@dataclass
class StratumSection:
    killed: list[Parameter]
    generators: list[SchemeGenerator]
    order: str

    def killed_names(self) -> list[str]:
        return [p.name for p in self.killed]


def stratum_section(scheme: SchemeIdeal, order: str = "drl") -> StratumSection:
    """Section of the scheme by the subspace killing every parameter whose
    tail term beats its head term under the chosen term order; the result
    parameterizes the ideals with the head ideal as initial ideal."""
    key = order_key(order)
    killed = [p for p in scheme.parameters.parameters if key(p.head) < key(p.tail)]
    assignment = {p.name: 0 for p in killed}
    out = []
    for g in scheme.generators:
        substituted = g.polynomial.substitute(assignment) if killed else g.polynomial
        if substituted:
            out.append(SchemeGenerator(substituted, g.lambda_degree,
                                       g.provenance, g.monomial))
    return StratumSection(killed, out, order)


def is_segment(ideal: MonomialIdeal, m: int, order: str = "drl") -> bool:
    """Whether the degree-m piece of the ideal consists of the top dim terms
    for the order (no inside term below an outside term)."""
    key = order_key(order)
    inside = ideal.terms_of_degree(m)
    outside = ideal.sous_escalier(m).terms
    if not inside or not outside:
        return True
    return min(key(t) for t in inside) > max(key(t) for t in outside)


def family_membership(generators: list[Polynomial], ideal: MonomialIdeal,
                      order: str = "drl"):
    """Whether the given homogeneous ideal belongs to the marked family of the
    head ideal, i.e. has a marked basis over it; the witness is the basis."""
    from .groebner import marked_basis_from_ideal
    return marked_basis_from_ideal(generators, ideal, relaxed=False, order=order)
