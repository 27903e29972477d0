"""Homogeneous polynomials over Z, graded pieces, and multiplication matrices.

A monomial is an exponent tuple of fixed length (the number of variables).
The canonical monomial order is descending lexicographic on exponent
tuples; within a fixed degree this agrees with graded-lex with
y0 > y1 > ... and it is fixed once so every matrix layout is reproducible
byte for byte.

The one piece of linear algebra built here is ``multiplication_matrix``:
the matrix of (g_0,...,g_m) |-> sum_i f_i * g_i between graded pieces,
which drives both the splitting computation and the finiteness test.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import FormSyntaxError, InputError
from .exactla import ExactMatrix, binomial

Monomial = tuple[int, ...]


def graded_dim(num_vars: int, degree: int) -> int:
    """Dimension of the degree-``degree`` piece of Z[y_0..y_{num_vars-1}].

    binomial(degree + num_vars - 1, num_vars - 1) for degree >= 0, else 0.
    """
    if num_vars < 1:
        raise InputError(f"num_vars must be >= 1, got {num_vars}")
    if degree < 0:
        return 0
    return binomial(degree + num_vars - 1, num_vars - 1)


@lru_cache(maxsize=None)
def monomials_of_degree(num_vars: int, degree: int) -> tuple[Monomial, ...]:
    """All exponent tuples of the given degree, in canonical order."""
    if num_vars < 1:
        raise InputError(f"num_vars must be >= 1, got {num_vars}")
    if degree < 0:
        return ()
    if num_vars == 1:
        return ((degree,),)
    out = []
    for e0 in range(degree, -1, -1):
        for rest in monomials_of_degree(num_vars - 1, degree - e0):
            out.append((e0,) + rest)
    return tuple(out)


@dataclass(frozen=True)
class GradedBasis:
    """The canonical ordered monomial basis of one graded piece."""

    num_vars: int
    degree: int
    monomials: tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def index(self, mono: Monomial) -> int:
        return _index_map(self.num_vars, self.degree)[mono]


@lru_cache(maxsize=None)
def graded_basis(num_vars: int, degree: int) -> GradedBasis:
    return GradedBasis(num_vars, degree, monomials_of_degree(num_vars, degree))


@lru_cache(maxsize=None)
def _index_map(num_vars: int, degree: int) -> dict:
    return {m: i for i, m in enumerate(monomials_of_degree(num_vars, degree))}


@dataclass(frozen=True)
class HomogPoly:
    """Homogeneous polynomial with integer coefficients.

    ``terms`` maps monomials (all of degree ``degree``) to nonzero
    coefficients, stored sorted in canonical monomial order.  The zero
    polynomial keeps its declared degree and has no terms.
    """

    num_vars: int
    degree: int
    terms: tuple[tuple[Monomial, int], ...]

    def __post_init__(self):
        for mono, coeff in self.terms:
            if len(mono) != self.num_vars:
                raise InputError(f"monomial {mono} has wrong variable count")
            if sum(mono) != self.degree:
                raise InputError(
                    f"monomial {mono} has degree {sum(mono)}, expected {self.degree}"
                )
            if coeff == 0:
                raise InputError("zero coefficient stored")

    @classmethod
    def from_dict(cls, num_vars: int, degree: int, coeffs: dict) -> "HomogPoly":
        items = tuple(sorted(
            ((m, c) for m, c in coeffs.items() if c != 0),
            key=lambda mc: mc[0], reverse=True))
        return cls(num_vars, degree, items)

    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "HomogPoly":
        return cls(num_vars, degree, ())

    @classmethod
    def variable(cls, num_vars: int, i: int) -> "HomogPoly":
        if not 0 <= i < num_vars:
            raise InputError(f"variable index {i} out of range for {num_vars} variables")
        mono = tuple(1 if j == i else 0 for j in range(num_vars))
        return cls(num_vars, 1, ((mono, 1),))

    @classmethod
    def monomial(cls, exponents: Monomial, coeff: int = 1) -> "HomogPoly":
        if coeff == 0:
            return cls.zero(len(exponents), sum(exponents))
        return cls(len(exponents), sum(exponents), ((tuple(exponents), coeff),))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Monomial) -> int:
        for m, c in self.terms:
            if m == mono:
                return c
        return 0

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        if self.num_vars != other.num_vars or self.degree != other.degree:
            raise InputError("sum of forms of different degree or variable count")
        coeffs = dict(self.terms)
        for m, c in other.terms:
            coeffs[m] = coeffs.get(m, 0) + c
        return HomogPoly.from_dict(self.num_vars, self.degree, coeffs)

    def __neg__(self) -> "HomogPoly":
        return HomogPoly(self.num_vars, self.degree,
                         tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-other)

    def scale(self, c: int) -> "HomogPoly":
        if c == 0:
            return HomogPoly.zero(self.num_vars, self.degree)
        return HomogPoly(self.num_vars, self.degree,
                         tuple((m, c * a) for m, a in self.terms))

    def __mul__(self, other: "HomogPoly") -> "HomogPoly":
        return multiply(self, other)

    def text(self, letter: str = "y") -> str:
        """Render in the input grammar (round-trips through parse_form)."""
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.terms:
            factors = []
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(f"{letter}{i}")
                elif e > 1:
                    factors.append(f"{letter}{i}^{e}")
            mag = abs(coeff)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            piece = "*".join(factors)
            parts.append(("- " if coeff < 0 else "+ ") + piece)
        head = parts[0][2:] if parts[0].startswith("+ ") else "-" + parts[0][2:]
        return " ".join([head] + parts[1:])


def multiply(p: HomogPoly, q: HomogPoly) -> HomogPoly:
    """Product of homogeneous polynomials; degrees add, zero terms pruned."""
    if p.num_vars != q.num_vars:
        raise InputError("product of forms in different variable counts")
    coeffs: dict[Monomial, int] = {}
    for mp, cp in p.terms:
        for mq, cq in q.terms:
            mono = tuple(a + b for a, b in zip(mp, mq))
            coeffs[mono] = coeffs.get(mono, 0) + cp * cq
    return HomogPoly.from_dict(p.num_vars, p.degree + q.degree, coeffs)


def compose(p: HomogPoly, forms) -> HomogPoly:
    """Substitute forms[i] for variable i of ``p``.

    All forms must be homogeneous of one common degree k in one common
    variable count; the result is homogeneous of degree deg(p)*k.
    """
    forms = tuple(forms)
    if len(forms) != p.num_vars:
        raise InputError(
            f"expected {p.num_vars} forms, got {len(forms)}")
    if not forms:
        raise InputError("compose needs at least one form")
    k = forms[0].degree
    v = forms[0].num_vars
    for f in forms:
        if f.degree != k or f.num_vars != v:
            raise InputError("forms must share degree and variable count")
    out = HomogPoly.zero(v, p.degree * k)
    powers: list[dict[int, HomogPoly]] = [dict() for _ in forms]

    def power(i: int, e: int) -> HomogPoly:
        cache = powers[i]
        if e not in cache:
            cache[e] = HomogPoly.monomial((0,) * v) if e == 0 \
                else multiply(power(i, e - 1), forms[i])
        return cache[e]

    for mono, coeff in p.terms:
        piece = HomogPoly.monomial((0,) * v, coeff)
        for i, e in enumerate(mono):
            if e:
                piece = multiply(piece, power(i, e))
        out = out + piece
    return out


def multiplication_matrix(forms, source_degree: int) -> ExactMatrix:
    """Matrix of (g_i)_i |-> sum_i forms[i]*g_i between graded pieces.

    Rows: canonical monomials of degree source_degree + k.  Columns:
    pairs (i, canonical monomial of degree source_degree), i outermost.
    Degrees below zero give empty graded pieces, hence zero columns.
    """
    forms = tuple(forms)
    if not forms:
        raise InputError("at least one form required")
    k = forms[0].degree
    v = forms[0].num_vars
    for f in forms:
        if f.degree != k or f.num_vars != v:
            raise InputError("forms must share degree and variable count")
    source = monomials_of_degree(v, source_degree)
    target_degree = source_degree + k
    nrows = graded_dim(v, target_degree)
    ncols = len(forms) * len(source)
    row_of = _index_map(v, target_degree) if nrows else {}
    triples = []
    for i, f in enumerate(forms):
        base = i * len(source)
        for j, g in enumerate(source):
            for mono, coeff in f.terms:
                prod = tuple(a + b for a, b in zip(mono, g))
                triples.append((row_of[prod], base + j, coeff))
    return ExactMatrix.from_coo(nrows, ncols, triples)


# ---------------------------------------------------------------------------
# parser
#
# form    := ['+'|'-'] term (('+' | '-') term)*
# term    := [natural '*'] factor ('*' factor)*
# factor  := variable ['^' natural]
# variable := letter natural
#
# Whitespace insignificant.  No parentheses, no implicit multiplication;
# constants appear only as leading coefficients of a term.


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def natural(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise FormSyntaxError("expected a number", start)
        return int(self.text[start:self.pos])


def parse_form(text: str, num_vars: int, letter: str = "y") -> HomogPoly:
    """Parse an integer-coefficient homogeneous form.

    Raises FormSyntaxError (with character position) on bad syntax or a
    variable index >= num_vars, InputError if the terms are not all of
    one degree.
    """
    sc = _Scanner(text)
    coeffs: dict[Monomial, int] = {}
    degrees = set()

    def parse_factor() -> tuple[int, int]:
        sc.skip_ws()
        at = sc.pos
        if sc.peek() != letter:
            raise FormSyntaxError(f"expected variable '{letter}<index>'", at)
        sc.take()
        idx = sc.natural()
        if idx >= num_vars:
            raise FormSyntaxError(
                f"variable index {idx} out of range (num_vars={num_vars})", at)
        exp = 1
        if sc.peek() == "^":
            sc.take()
            exp = sc.natural()
        return idx, exp

    def parse_term(sign: int):
        coeff = sign
        if sc.peek().isdigit():
            coeff *= sc.natural()
            sc.skip_ws()
            at = sc.pos
            if sc.take() != "*":
                raise FormSyntaxError("expected '*' after coefficient", at)
        mono = [0] * num_vars
        idx, exp = parse_factor()
        mono[idx] += exp
        while sc.peek() == "*":
            sc.take()
            idx, exp = parse_factor()
            mono[idx] += exp
        mono_t = tuple(mono)
        degrees.add(sum(mono_t))
        coeffs[mono_t] = coeffs.get(mono_t, 0) + coeff

    sign = 1
    if sc.peek() in "+-":
        sign = -1 if sc.take() == "-" else 1
    parse_term(sign)
    while True:
        ch = sc.peek()
        if ch == "":
            break
        at = sc.pos
        if ch not in "+-":
            raise FormSyntaxError("expected '+', '-' or end of form", at)
        sc.take()
        parse_term(-1 if ch == "-" else 1)

    if len(degrees) > 1:
        raise InputError(
            f"form is not homogeneous: term degrees {sorted(degrees)}")
    degree = degrees.pop()
    poly = HomogPoly.from_dict(num_vars, degree, coeffs)
    if poly.is_zero():
        raise InputError("form cancels to zero")
    return poly
