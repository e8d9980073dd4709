"""Text format for polynomials and for the sectioned input files.

Polynomial grammar: rational coefficients (`p/q` or integers), variables by
their declared names, `^` for powers, `*` optional between factors, `+`/`-`
between monomials.  Whitespace is insignificant.  Variable tokens are
matched greedily against the declared names, so single-letter variables may
be juxtaposed (`x*y` and `xy` both work in K[x,y,z]) while multi-letter
names such as `c12` stay unambiguous.

Canonical printing orders monomials descending by degrevlex so that
parse -> print -> parse is the identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .polynomials import MarkedPolynomial, Polynomial
from .rings import PolyRing, Term, drl_key, term_mul


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class _Token:
    kind: str  # 'int' | 'name' | 'op'
    text: str
    line: int
    column: int


def _tokenize(text: str, names: tuple[str, ...], start_line: int = 1) -> list[_Token]:
    # longest declared name first so that e.g. 'c12' wins over 'c1'
    by_length = sorted(names, key=len, reverse=True)
    tokens: list[_Token] = []
    line, col = start_line, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^(),:":
            tokens.append(_Token("op", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isalpha() or ch == "_":
            for name in by_length:
                if text.startswith(name, i):
                    tokens.append(_Token("name", name, line, col))
                    col += len(name)
                    i += len(name)
                    break
            else:
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                raise ParseError(f"unknown variable {text[i:j]!r}", line, col)
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    return tokens


class _PolyParser:
    def __init__(self, ring: PolyRing, tokens: list[_Token], text_end: tuple[int, int]):
        self.ring = ring
        self.tokens = tokens
        self.pos = 0
        self.text_end = text_end

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _error(self, message: str):
        tok = self._peek()
        if tok is None:
            raise ParseError(message, *self.text_end)
        raise ParseError(message, tok.line, tok.column)

    def parse(self) -> Polynomial:
        result = self._monomial_sum()
        if self._peek() is not None:
            self._error(f"unexpected {self._peek().text!r}")
        return result

    def _monomial_sum(self) -> Polynomial:
        result = Polynomial(self.ring)
        sign = 1
        tok = self._peek()
        if tok and tok.kind == "op" and tok.text in "+-":
            sign = -1 if tok.text == "-" else 1
            self.pos += 1
        while True:
            coeff, term = self._monomial()
            result = result.add_scaled(Polynomial.from_term(term), coeff * sign)
            tok = self._peek()
            if tok is None or not (tok.kind == "op" and tok.text in "+-"):
                return result
            sign = -1 if tok.text == "-" else 1
            self.pos += 1

    def _monomial(self) -> tuple[Fraction, Term]:
        coeff = Fraction(1)
        term = self.ring.one()
        saw_factor = False
        while True:
            tok = self._peek()
            if tok is None:
                break
            if tok.kind == "int":
                coeff *= self._number()
                saw_factor = True
            elif tok.kind == "name":
                term = term_mul(term, self._varpow())
                saw_factor = True
            elif tok.kind == "op" and tok.text == "*":
                if not saw_factor:
                    self._error("'*' without a left factor")
                self.pos += 1
                continue
            else:
                break
            # '*' between factors is optional: loop again
        if not saw_factor:
            self._error("expected a coefficient or a variable")
        return coeff, term

    def _number(self) -> Fraction:
        tok = self.tokens[self.pos]
        self.pos += 1
        value = Fraction(int(tok.text))
        nxt = self._peek()
        if nxt and nxt.kind == "op" and nxt.text == "/":
            self.pos += 1
            den = self._peek()
            if den is None or den.kind != "int":
                self._error("expected a denominator after '/'")
            self.pos += 1
            if int(den.text) == 0:
                raise ParseError("zero denominator", den.line, den.column)
            value /= int(den.text)
        return value

    def _varpow(self) -> Term:
        tok = self.tokens[self.pos]
        self.pos += 1
        exponent = 1
        nxt = self._peek()
        if nxt and nxt.kind == "op" and nxt.text == "^":
            self.pos += 1
            etok = self._peek()
            if etok is None or etok.kind != "int":
                self._error("expected an integer exponent after '^'")
            self.pos += 1
            exponent = int(etok.text)
        vec = [0] * self.ring.nvars
        vec[self.ring.index(tok.text)] = exponent
        return Term(self.ring, tuple(vec))


def parse_polynomial(text: str, ring: PolyRing, start_line: int = 1) -> Polynomial:
    tokens = _tokenize(text, ring.variables, start_line)
    end = (start_line + text.count("\n"), len(text.rsplit("\n", 1)[-1]) + 1)
    return _PolyParser(ring, tokens, end).parse()


def parse_term(text: str, ring: PolyRing, start_line: int = 1) -> Term:
    poly = parse_polynomial(text, ring, start_line)
    items = list(poly.terms.items())
    if len(items) != 1 or items[0][1] != 1:
        raise ParseError(f"expected a single monic term, got {poly}", start_line, 1)
    return items[0][0]


# -- printing ---------------------------------------------------------------

def format_coefficient(c: Fraction) -> str:
    return str(c)


def _coefficient_pieces(c) -> tuple[str, str]:
    """Return (sign, magnitude-text) for a Fraction or Polynomial coefficient."""
    if isinstance(c, Polynomial):
        items = c.sorted_terms()
        if len(items) == 1:
            t, inner = items[0]
            sign, mag = _coefficient_pieces(inner)
            if t.is_one():
                return sign, mag
            if mag == "1":
                return sign, str(t)
            return sign, f"{mag}*{t}"
        return "+", f"({format_polynomial(c)})"
    sign = "-" if c < 0 else "+"
    return sign, format_coefficient(abs(c))


def format_polynomial(p: Polynomial, key=drl_key) -> str:
    if not p.terms:
        return "0"
    pieces: list[str] = []
    for t, c in p.sorted_terms(key):
        sign, mag = _coefficient_pieces(c)
        if t.is_one():
            body = mag
        elif mag == "1":
            body = str(t)
        else:
            body = f"{mag}*{t}"
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f"{'+' if sign == '+' else '-'} {body}")
    return " ".join(pieces)


# -- sectioned input files -----------------------------------------------------

@dataclass
class ProblemInput:
    """Parsed contents of a sectioned input file.

    Sections: `ring NAME < NAME < ...` (required, ascending), `J: t1, t2, ...`,
    `G:` followed by one `HEAD : POLYNOMIAL` line per generator, and any number
    of `query: POLYNOMIAL` lines.
    """
    ring: PolyRing
    ideal_terms: list[Term] = field(default_factory=list)
    marked_lines: list[tuple[Term, Polynomial]] = field(default_factory=list)
    queries: list[Polynomial] = field(default_factory=list)


def parse_problem(text: str) -> ProblemInput:
    ring: PolyRing | None = None
    problem: ProblemInput | None = None
    in_marked_section = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        keyword = head.strip().lower()
        if keyword == "ring" or line.lower().startswith("ring "):
            names = [part.strip() for part in line[4:].split("<")]
            if any(not n for n in names):
                raise ParseError("malformed ring declaration", lineno, 1)
            try:
                ring = PolyRing(names)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 1) from None
            problem = ProblemInput(ring)
            in_marked_section = False
            continue
        if problem is None or ring is None:
            raise ParseError("the 'ring' section must come first", lineno, 1)
        if sep and keyword == "j":
            for chunk in rest.split(","):
                if chunk.strip():
                    problem.ideal_terms.append(parse_term(chunk, ring, lineno))
            in_marked_section = False
            continue
        if sep and keyword == "g" and not rest.strip():
            in_marked_section = True
            continue
        if sep and keyword == "query":
            problem.queries.append(parse_polynomial(rest, ring, lineno))
            in_marked_section = False
            continue
        if in_marked_section:
            if not sep:
                raise ParseError("expected 'HEAD : POLYNOMIAL'", lineno, 1)
            head_term = parse_term(head, ring, lineno)
            poly = parse_polynomial(rest, ring, lineno)
            problem.marked_lines.append((head_term, poly))
            continue
        raise ParseError(f"unrecognized section {line!r}", lineno, 1)
    if problem is None:
        raise ParseError("empty input: no 'ring' section", 1, 1)
    return problem


def marked_polynomials(problem: ProblemInput) -> list[MarkedPolynomial]:
    return [MarkedPolynomial(poly, head) for head, poly in problem.marked_lines]
