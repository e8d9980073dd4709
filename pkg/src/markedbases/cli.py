"""Command-line front end.

Input files are sectioned: a `ring` line (ascending variables), `J:` with the
monomial generators, an optional `G:` block of `HEAD : POLYNOMIAL` lines and
any number of `query:` lines.  Exit codes: 0 for mathematical success, 1 for
a mathematical "no" (failed basis check, non-membership, instability, ...),
2 for malformed or inadmissible input.
"""
from __future__ import annotations

import argparse
import json
import sys

from .groebner import marked_basis_from_ideal
from .ideals import MonomialIdeal, NotStronglyStableError
from .marked import MarkedSet, MarkedSetError, ReductionCertificate
from .parsing import ParseError, ProblemInput, parse_problem, parse_term
from .polynomials import MarkedPolynomial, Polynomial
from .scheme import (GenericMarkedSet, SchemeIdeal, minors_ideal,
                     parse_naming_map, scheme_ideal, stratum_section,
                     tangent_space)

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _load_problem(path: str) -> ProblemInput:
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_problem(handle.read())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _ideal(problem: ProblemInput) -> MonomialIdeal:
    if not problem.ideal_terms:
        raise InputError("the input file has no 'J:' section")
    try:
        return MonomialIdeal(problem.ring, problem.ideal_terms)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _marked_set(problem: ProblemInput, order: str) -> MarkedSet:
    ideal = _ideal(problem)
    try:
        if not problem.marked_lines:
            return MarkedSet.monomial(ideal, order)
        elements = [MarkedPolynomial(poly, head)
                    for head, poly in problem.marked_lines]
        return MarkedSet(ideal, elements, order)
    except (ValueError, MarkedSetError) as exc:
        raise InputError(str(exc)) from None


def _generic(problem: ProblemInput, args) -> GenericMarkedSet:
    ideal = _ideal(problem)
    naming = None
    if args.naming:
        try:
            with open(args.naming, encoding="utf-8") as handle:
                naming = parse_naming_map(handle.read(), ideal)
        except OSError as exc:
            raise InputError(f"{args.naming}: {exc.strerror}") from None
        except ParseError as exc:
            raise InputError(f"{args.naming}: {exc}") from None
    return GenericMarkedSet(ideal, naming, args.order)


def _queries(problem: ProblemInput) -> list[Polynomial]:
    if not problem.queries:
        raise InputError("the input file has no 'query:' lines")
    return problem.queries


def _head_argument(text: str, marked: MarkedSet) -> int:
    try:
        head = parse_term(text, marked.ring)
    except ParseError as exc:
        raise InputError(str(exc)) from None
    if head not in marked.head_index:
        raise InputError(f"{head} is not a generator head")
    return marked.head_index[head]


def _certificate_json(cert: ReductionCertificate, marked: MarkedSet) -> dict:
    return {
        "input": str(cert.input),
        "residual": str(cert.residual),
        "combination": [{"coefficient": str(c), "multiplier": str(m),
                         "head": str(marked.elements[i].head)}
                        for c, m, i in cert.combination],
    }


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


# -- commands -------------------------------------------------------------------

def cmd_stable_check(args) -> int:
    ideal = _ideal(_load_problem(args.input))
    violation = ideal.stability_violation()
    if violation is None:
        _emit(args, {"strongly_stable": True}, ["strongly stable: yes"])
        return EXIT_OK
    term, i, j, moved = violation
    names = ideal.ring.variables
    _emit(args, {"strongly_stable": False,
                 "move": {"from": str(term), "to": str(moved),
                          "swap": [names[i], names[j]]}},
          ["strongly stable: no",
           f"missing move: {term} -> {moved} (swap {names[i]} for {names[j]})"])
    return EXIT_NO


def cmd_hilbert(args) -> int:
    ideal = _ideal(_load_problem(args.input))
    top = args.max_degree if args.max_degree is not None else \
        ideal.syzygy_degree_bound() + 1
    values = [(m, ideal.hilbert_function(m)) for m in range(top + 1)]
    _emit(args, {"hilbert_function": [{"degree": m, "value": v} for m, v in values]},
          [f"{m} {v}" for m, v in values])
    return EXIT_OK


def cmd_vm(args) -> int:
    problem = _load_problem(args.input)
    marked = _marked_set(problem, args.order)
    top = args.max_degree if args.max_degree is not None else \
        marked.ideal.syzygy_degree_bound()
    lists = marked.reduction_lists(top)
    payload = []
    lines = []
    for m in sorted(lists):
        lines.append(f"degree {m}:")
        level = []
        for e in lists[m]:
            head = str(marked.elements[e.generator].head)
            lines.append(f"  {e.head} = {e.multiplier} * f[{head}]")
            level.append({"head": str(e.head), "multiplier": str(e.multiplier),
                          "generator": head})
        payload.append({"degree": m, "entries": level})
    _emit(args, {"reduction_lists": payload}, lines)
    return EXIT_OK


def cmd_nf(args) -> int:
    problem = _load_problem(args.input)
    marked = _marked_set(problem, args.order)
    payload = []
    lines = []
    for query in _queries(problem):
        if not query.is_homogeneous():
            raise InputError(f"query {query} is not homogeneous")
        cert = marked.normal_form(query)
        payload.append(_certificate_json(cert, marked))
        lines.append(f"normal form of {query}: {cert.residual}")
        for c, m, i in cert.combination:
            lines.append(f"  - ({c}) * {m} * f[{marked.elements[i].head}]")
    _emit(args, {"normal_forms": payload}, lines)
    return EXIT_OK


def cmd_spoly(args) -> int:
    problem = _load_problem(args.input)
    marked = _marked_set(problem, args.order)
    i = _head_argument(args.head1, marked)
    j = _head_argument(args.head2, marked)
    s = marked.s_polynomial(*sorted((i, j)))
    _emit(args, {"lcm": str(s.lcm),
                 "multipliers": [str(t) for t in s.multipliers],
                 "s_polynomial": str(s.polynomial)},
          [f"lcm: {s.lcm}",
           f"S = {s.multipliers[0]} * f[{marked.elements[s.pair[0]].head}]"
           f" - {s.multipliers[1]} * f[{marked.elements[s.pair[1]].head}]",
           f"S-polynomial: {s.polynomial}"])
    return EXIT_OK


def cmd_basis_check(args) -> int:
    problem = _load_problem(args.input)
    marked = _marked_set(problem, args.order)
    mode = "all" if args.pairs == "all" else "minimal"
    result = marked.buchberger_check(pairs=mode, threads=args.threads)
    payload = {
        "marked_basis": result.ok,
        "pairs": [{"heads": [str(h) for h in r.heads],
                   "residual": str(r.residual)} for r in result.residuals],
    }
    lines = [f"marked basis: {'yes' if result.ok else 'no'}"]
    for r in result.residuals:
        status = "0" if not r.residual else str(r.residual)
        lines.append(f"  S({r.heads[0]}, {r.heads[1]}) -> {status}")
    _emit(args, payload, lines)
    return EXIT_OK if result.ok else EXIT_NO


def cmd_lift_syzygy(args) -> int:
    problem = _load_problem(args.input)
    marked = _marked_set(problem, args.order)
    i = _head_argument(args.head1, marked)
    j = _head_argument(args.head2, marked)
    pair = tuple(sorted((i, j)))
    try:
        lifted = marked.lift_syzygy(pair)
    except MarkedSetError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NO
    payload = {"components": [{"head": str(f.head), "component": str(h)}
                              for f, h in zip(marked.elements, lifted.components)]}
    lines = [f"lifting of the pair syzygy of {marked.elements[i].head}, "
             f"{marked.elements[j].head}:"]
    for f, h in zip(marked.elements, lifted.components):
        lines.append(f"  f[{f.head}]: {h}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_member(args) -> int:
    problem = _load_problem(args.input)
    marked = _marked_set(problem, args.order)
    if not marked.buchberger_check(threads=args.threads).ok:
        raise InputError("the marked set is not a marked basis; "
                         "membership needs a verified basis")
    payload = []
    lines = []
    all_in = True
    for query in _queries(problem):
        if not query.is_homogeneous():
            raise InputError(f"query {query} is not homogeneous")
        inside = marked.normal_form(query).residual.is_zero()
        all_in = all_in and inside
        payload.append({"query": str(query), "member": inside})
        lines.append(f"{query}: {'yes' if inside else 'no'}")
    _emit(args, {"membership": payload}, lines)
    return EXIT_OK if all_in else EXIT_NO


def _scheme(args, problem: ProblemInput) -> tuple[GenericMarkedSet, SchemeIdeal]:
    generic = _generic(problem, args)
    mode = "all_pairs" if args.pairs == "all" else "minimal"
    return generic, scheme_ideal(generic, mode, threads=args.threads)


def _scheme_lines(scheme: SchemeIdeal) -> list[str]:
    lines = [f"parameters: {len(scheme.parameters)}",
             f"generators: {len(scheme.generators)}"]
    for g in scheme.generators:
        provenance = ", ".join(str(t) for t in g.provenance)
        lines.append(f"  [{provenance} @ {g.monomial}] lambda={list(g.lambda_degree)}: "
                     f"{g.polynomial}")
    return lines


def cmd_scheme(args) -> int:
    problem = _load_problem(args.input)
    _, scheme = _scheme(args, problem)
    _emit(args, {"parameters": list(scheme.parameters.ring.variables),
                 "generators": scheme.to_json()}, _scheme_lines(scheme))
    return EXIT_OK


def cmd_tangent(args) -> int:
    problem = _load_problem(args.input)
    _, scheme = _scheme(args, problem)
    tangent = tangent_space(scheme)
    forms = [str(f) for f in tangent.forms]
    _emit(args, {"dimension": tangent.dimension, "rank": tangent.codimension,
                 "vanishing_forms": forms},
          [f"dimension {tangent.dimension}", f"rank {tangent.codimension}"]
          + [f"  {f}" for f in forms])
    return EXIT_OK


def cmd_minors(args) -> int:
    problem = _load_problem(args.input)
    generic = _generic(problem, args)
    degrees = None
    if args.max_degree is not None:
        degrees = range(generic.ideal.initial_degree(), args.max_degree + 1)
    scheme = minors_ideal(generic, degrees, full=args.full_minors,
                          max_entries=args.minor_limit)
    _emit(args, {"parameters": list(scheme.parameters.ring.variables),
                 "generators": scheme.to_json()}, _scheme_lines(scheme))
    return EXIT_OK


def cmd_stratum(args) -> int:
    problem = _load_problem(args.input)
    _, scheme = _scheme(args, problem)
    section = stratum_section(scheme, args.order)
    lines = [f"killed parameters: {', '.join(section.killed_names()) or '(none)'}"]
    for g in section.generators:
        provenance = ", ".join(str(t) for t in g.provenance)
        lines.append(f"  [{provenance} @ {g.monomial}]: {g.polynomial}")
    _emit(args, {"killed": section.killed_names(),
                 "generators": [{"polynomial": str(g.polynomial)}
                                for g in section.generators]}, lines)
    return EXIT_OK


def cmd_family_member(args) -> int:
    problem = _load_problem(args.input)
    ideal = _ideal(problem)
    result = marked_basis_from_ideal(_queries(problem), ideal, order=args.order)
    if result.ok:
        lines = ["member of the marked family: yes", "marked basis:"]
        lines += [f"  {f.head} : {f.poly}" for f in result.marked_set.elements]
        _emit(args, {"member": True,
                     "witness": [{"head": str(f.head), "polynomial": str(f.poly)}
                                 for f in result.marked_set.elements]}, lines)
        return EXIT_OK
    _emit(args, {"member": False, "failures": result.failures},
          ["member of the marked family: no"] +
          [f"  {f}" for f in result.failures])
    return EXIT_NO


# -- wiring -----------------------------------------------------------------------

_COMMANDS = {
    "stable-check": (cmd_stable_check, "check strong stability of J"),
    "hilbert": (cmd_hilbert, "Hilbert function of the quotient by J"),
    "vm": (cmd_vm, "print the reduction lists per degree"),
    "nf": (cmd_nf, "reduce the query polynomials to normal form"),
    "spoly": (cmd_spoly, "S-polynomial of two generators"),
    "basis-check": (cmd_basis_check, "run the basis criterion on G"),
    "lift-syzygy": (cmd_lift_syzygy, "lift the pair syzygy of two generators"),
    "member": (cmd_member, "ideal membership of the query polynomials"),
    "scheme": (cmd_scheme, "defining equations of the marked scheme"),
    "tangent": (cmd_tangent, "tangent space of the marked scheme at the origin"),
    "minors": (cmd_minors, "matrix-minor presentation of the scheme ideal"),
    "stratum": (cmd_stratum, "term-order section of the marked scheme"),
    "family-member": (cmd_family_member,
                      "does the ideal of the queries belong to the marked family"),
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="sectioned input file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--order", choices=["drl", "lex"], default="drl",
                        help="fixed term order for heads and strata")
    common.add_argument("--max-degree", type=int, default=None, metavar="N")
    common.add_argument("--pairs", choices=["all", "minimal"], default="minimal")
    common.add_argument("--naming", metavar="FILE",
                        help="parameter naming map for scheme commands")
    common.add_argument("--threads", type=int, default=1, metavar="N")
    common.add_argument("--minor-limit", type=int, default=200_000, metavar="N",
                        help="entry-count limit for coefficient matrices")
    common.add_argument("--full-minors", action="store_true",
                        help="enumerate every minor (tiny inputs only)")

    parser = argparse.ArgumentParser(
        prog="markedbases",
        description="marked bases over strongly stable monomial ideals")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name in ("spoly", "lift-syzygy"):
            p.add_argument("head1", help="head term of the first generator")
            p.add_argument("head2", help="head term of the second generator")
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotStronglyStableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, MarkedSetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
