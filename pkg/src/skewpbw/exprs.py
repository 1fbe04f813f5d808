"""Expression parsing and deterministic printing.

One grammar serves element expressions, coefficient expressions, and
bivariate polynomials:

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := base ('^' sint)?
    base    := uint | ident | '(' expr ')'

``*`` is order-preserving (products are evaluated left to right, which is
what noncommutative multiplication needs).  ``/`` divides by an invertible
scalar on the right; a rational literal ``a/b`` is read as such a division
with the same value.  ``^`` with a negative exponent inverts the base and
is legal only where the inverse exists, so negative powers of a coefficient
generator need the rational function field.

Printing emits terms in decreasing deglex order with coefficients on the
left, rationals as ``a/b``, polynomial coefficients in decreasing deglex,
and rational function coefficients as ``(num)/(den)``.  Printed forms parse
back to the same value.
"""

from fractions import Fraction

from .errors import NotDivisibleError, NotInvertibleError, ParseError, RingMismatchError
from .rings import CoeffRing, Poly, RatFn

# ---- tokenizer ----

_OPS = set("+-*/^()")


def _tokenize(text: str, line: int = 1, col_offset: int = 0):
    toks = []
    i = 0
    size = len(text)
    while i < size:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        col = i + 1 + col_offset
        if ch.isdigit():
            j = i
            while j < size and text[j].isdigit():
                j += 1
            toks.append(("INT", text[i:j], line, col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < size and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("IDENT", text[i:j], line, col))
            i = j
        elif ch in _OPS:
            toks.append(("OP", ch, line, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(("END", "", line, size + 1 + col_offset))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect_op(self, ch):
        kind, val, line, col = self.take()
        if kind != "OP" or val != ch:
            raise ParseError(f"expected {ch!r}", line, col)

    def at_op(self, chars):
        kind, val, _, _ = self.peek()
        return val if kind == "OP" and val in chars else None

    def expr(self):
        neg = self.at_op("-")
        if neg:
            self.take()
        node = self.term()
        if neg:
            node = ("neg", node)
        while True:
            op = self.at_op("+-")
            if not op:
                break
            self.take()
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while True:
            op = self.at_op("*/")
            if not op:
                break
            _, _, line, col = self.take()
            rhs = self.factor()
            node = ("mul" if op == "*" else "div", node, rhs, line, col)
        return node

    def factor(self):
        node = self.base()
        if self.at_op("^"):
            _, _, line, col = self.take()
            sign = 1
            if self.at_op("-"):
                self.take()
                sign = -1
            kind, val, eline, ecol = self.take()
            if kind != "INT":
                raise ParseError("expected an integer exponent", eline, ecol)
            node = ("pow", node, sign * int(val), line, col)
        return node

    def base(self):
        kind, val, line, col = self.take()
        if kind == "INT":
            return ("num", Fraction(int(val)))
        if kind == "IDENT":
            return ("sym", val, line, col)
        if kind == "OP" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError("expected a number, a name, or a parenthesized expression", line, col)


def parse_ast(text: str, line: int = 1, col_offset: int = 0):
    parser = _Parser(_tokenize(text, line, col_offset))
    node = parser.expr()
    kind, val, eline, ecol = parser.peek()
    if kind != "END":
        raise ParseError(f"unexpected {val!r} after the expression", eline, ecol)
    return node


# ---- evaluation into an algebra ----

def _scalar_of(element):
    """The coefficient of an exponent-zero element, or None when non-scalar."""
    terms = element.terms
    if not terms:
        return element.algebra.ring.zero()
    zero_vec = (0,) * element.algebra.n
    if set(terms) == {zero_vec}:
        return terms[zero_vec]
    return None


def eval_element(node, algebra):
    kind = node[0]
    if kind == "num":
        return algebra.scalar(node[1])
    if kind == "sym":
        name, line, col = node[1], node[2], node[3]
        if name in algebra.varnames or name in algebra.ring.gens:
            return algebra.gen(name)
        raise ParseError(f"unknown name {name!r}", line, col)
    if kind == "neg":
        return -eval_element(node[1], algebra)
    if kind == "add":
        return eval_element(node[1], algebra) + eval_element(node[2], algebra)
    if kind == "sub":
        return eval_element(node[1], algebra) - eval_element(node[2], algebra)
    if kind == "mul":
        return algebra.multiply(eval_element(node[1], algebra), eval_element(node[2], algebra))
    if kind == "div":
        lhs = eval_element(node[1], algebra)
        rhs = eval_element(node[2], algebra)
        line, col = node[3], node[4]
        value = _scalar_of(rhs)
        if value is None:
            raise ParseError("the divisor must be a scalar", line, col)
        try:
            inv = algebra.ring.invert(value)
        except (NotInvertibleError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), line, col) from None
        return algebra.multiply(lhs, algebra.scalar(inv))
    if kind == "pow":
        base = eval_element(node[1], algebra)
        k, line, col = node[2], node[3], node[4]
        if k >= 0:
            return base ** k
        value = _scalar_of(base)
        if value is None:
            raise ParseError("negative powers apply only to scalars", line, col)
        try:
            return algebra.scalar(algebra.ring.pow(value, k))
        except (NotInvertibleError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), line, col) from None
    raise AssertionError(f"unhandled node {kind}")


def parse_element(text: str, algebra, line: int = 1, col_offset: int = 0):
    return eval_element(parse_ast(text, line, col_offset), algebra)


# ---- evaluation into a coefficient ring ----

def eval_coeff(node, ring: CoeffRing, params: dict | None = None):
    params = params or {}
    kind = node[0]
    if kind == "num":
        return ring.coerce(node[1])
    if kind == "sym":
        name, line, col = node[1], node[2], node[3]
        if name in ring.gens:
            return ring.gen(name)
        if name in params:
            return ring.coerce(params[name])
        raise ParseError(f"unknown name {name!r}", line, col)
    if kind == "neg":
        return ring.neg(eval_coeff(node[1], ring, params))
    if kind == "add":
        return ring.add(eval_coeff(node[1], ring, params), eval_coeff(node[2], ring, params))
    if kind == "sub":
        return ring.sub(eval_coeff(node[1], ring, params), eval_coeff(node[2], ring, params))
    if kind == "mul":
        return ring.mul(eval_coeff(node[1], ring, params), eval_coeff(node[2], ring, params))
    if kind == "div":
        line, col = node[3], node[4]
        try:
            return ring.div(eval_coeff(node[1], ring, params),
                            eval_coeff(node[2], ring, params))
        except (NotDivisibleError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), line, col) from None
    if kind == "pow":
        k, line, col = node[2], node[3], node[4]
        try:
            return ring.pow(eval_coeff(node[1], ring, params), k)
        except (NotInvertibleError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), line, col) from None
    raise AssertionError(f"unhandled node {kind}")


def parse_coeff(text: str, ring: CoeffRing, params: dict | None = None,
                line: int = 1, col_offset: int = 0):
    return eval_coeff(parse_ast(text, line, col_offset), ring, params)


# ---- evaluation into Q[s, t] (plain commuting pair) ----

def _bp_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _bp_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = (e1[0] + e2[0], e1[1] + e2[1])
            s = out.get(e, Fraction(0)) + c1 * c2
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
    return out


def eval_bivariate(node, names=("s", "t")):
    kind = node[0]
    if kind == "num":
        return {(0, 0): node[1]} if node[1] != 0 else {}
    if kind == "sym":
        name, line, col = node[1], node[2], node[3]
        if name == names[0]:
            return {(1, 0): Fraction(1)}
        if name == names[1]:
            return {(0, 1): Fraction(1)}
        raise ParseError(f"unknown name {name!r} (expected {names[0]} or {names[1]})", line, col)
    if kind == "neg":
        return {e: -c for e, c in eval_bivariate(node[1], names).items()}
    if kind == "add":
        return _bp_add(eval_bivariate(node[1], names), eval_bivariate(node[2], names))
    if kind == "sub":
        rhs = {e: -c for e, c in eval_bivariate(node[2], names).items()}
        return _bp_add(eval_bivariate(node[1], names), rhs)
    if kind == "mul":
        return _bp_mul(eval_bivariate(node[1], names), eval_bivariate(node[2], names))
    if kind == "div":
        line, col = node[3], node[4]
        rhs = eval_bivariate(node[2], names)
        if set(rhs) - {(0, 0)}:
            raise ParseError("the divisor must be a rational constant", line, col)
        q = rhs.get((0, 0), Fraction(0))
        if q == 0:
            raise ParseError("division by zero", line, col)
        return {e: c / q for e, c in eval_bivariate(node[1], names).items()}
    if kind == "pow":
        k, line, col = node[2], node[3], node[4]
        base = eval_bivariate(node[1], names)
        if k < 0:
            if set(base) - {(0, 0)}:
                raise ParseError("negative powers apply only to rational constants", line, col)
            q = base.get((0, 0), Fraction(0))
            if q == 0:
                raise ParseError("zero to a negative power", line, col)
            return {(0, 0): Fraction(1) / q ** (-k)}
        out = {(0, 0): Fraction(1)}
        for _ in range(k):
            out = _bp_mul(out, base)
        return out
    raise AssertionError(f"unhandled node {kind}")


def parse_bivariate(text: str, names=("s", "t"), line: int = 1, col_offset: int = 0):
    """Parse a polynomial in two commuting names into {(i, j): Fraction}."""
    return eval_bivariate(parse_ast(text, line, col_offset), names)


# ---- printing ----

def _frac_mag(q: Fraction) -> str:
    q = abs(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _mono_str(names, exps) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _join_terms(pieces) -> str:
    """pieces: list of (negative, magnitude string), already ordered."""
    if not pieces:
        return "0"
    out = []
    for idx, (neg, mag) in enumerate(pieces):
        if idx == 0:
            out.append(f"-{mag}" if neg else mag)
        else:
            out.append(f" - {mag}" if neg else f" + {mag}")
    return "".join(out)


def _poly_pieces(p: Poly, names):
    pieces = []
    for e, c in p.sorted_terms():
        mono = _mono_str(names, e)
        mag = _frac_mag(c)
        if mono:
            mag = mono if mag == "1" else f"{mag}*{mono}"
        pieces.append((c < 0, mag))
    return pieces


def format_poly(p: Poly, names) -> str:
    return _join_terms(_poly_pieces(p, names))


def _coeff_sign_mag(ring: CoeffRing, c):
    """(negative, magnitude) for a nonzero coefficient, parenthesized as needed."""
    if ring.kind == "rational":
        return c < 0, _frac_mag(c)
    if ring.kind == "poly":
        if len(c.terms) == 1:
            return _poly_pieces(c, ring.gens)[0]
        return False, f"({format_poly(c, ring.gens)})"
    num, den = c.num, c.den
    if den.u_degree() == 0:
        if len(num.terms) == 1:
            return _poly_pieces(num, ring.gens)[0]
        return False, f"({format_poly(num, ring.gens)})"
    den_str = format_poly(den, ring.gens)
    if len(num.terms) == 1:
        neg, mag = _poly_pieces(num, ring.gens)[0]
        return neg, f"({mag})/({den_str})"
    return False, f"({format_poly(num, ring.gens)})/({den_str})"


def format_coeff(ring: CoeffRing, value) -> str:
    """Standalone deterministic rendering of a coefficient."""
    value = ring.coerce(value)
    if ring.is_zero(value):
        return "0"
    neg, mag = _coeff_sign_mag(ring, value)
    return f"-{mag}" if neg else mag


def format_element(element) -> str:
    """Terms in decreasing deglex order, coefficients on the left."""
    algebra = element.algebra
    if element.is_zero:
        return "0"
    from .algebra import MonomialOrder
    order = algebra.order
    if order.kind != "deglex":
        order = MonomialOrder.deglex(algebra.n, order.precedence)
    pieces = []
    for e, c in element.sorted_terms(order):
        mono = _mono_str(algebra.varnames, e)
        neg, mag = _coeff_sign_mag(algebra.ring, c)
        if mono:
            mag = mono if mag == "1" else f"{mag}*{mono}"
        pieces.append((neg, mag))
    return _join_terms(pieces)


def format_bivariate(terms: dict, names=("s", "t")) -> str:
    """Polynomial in two commuting names, decreasing deglex, first name major."""
    if not terms:
        return "0"
    pieces = []
    for e in sorted(terms, key=lambda ij: (ij[0] + ij[1], ij[0]), reverse=True):
        c = terms[e]
        mono = _mono_str(names, e)
        mag = _frac_mag(c)
        if mono:
            mag = mono if mag == "1" else f"{mag}*{mono}"
        pieces.append((c < 0, mag))
    return _join_terms(pieces)
