"""Annihilating curves for commuting pairs.

Two commuting elements P, Q of bounded degree always satisfy a nonzero
bivariate polynomial relation f(P, Q) = 0; this module finds one exactly.
The search space f = sum a_ij s^i t^j is finite once the t-degree is
capped at the total degree of P and the s-degree at a deepening bound,
and evaluating every monomial P^i Q^j reduces the problem to a rational
nullspace over the shared coordinate index of those products.  Solutions
are re-evaluated against P and Q before being returned, so a returned
annihilator is verified, never merely solved for.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Element
from .centralizer import commutes, coordinate_rows, deglex_order, monomials_upto
from .errors import CapExhaustedError, ContractError
from .exprs import format_bivariate, parse_bivariate
from .linalg import nullspace, rref

BIVAR_NAMES = ("s", "t")


def _bivar_key(cell):
    # deglex with the first variable dominant
    return (cell[0] + cell[1], cell[0])


class BivariatePoly:
    """Sparse rational polynomial in the two placeholder variables."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = c
        self.terms = clean

    @classmethod
    def from_string(cls, text):
        return cls(parse_bivariate(text, BIVAR_NAMES))

    @property
    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def s_degree(self):
        return max((i for i, _ in self.terms), default=-1)

    def t_degree(self):
        return max((j for _, j in self.terms), default=-1)

    def leading(self):
        """(cell, coefficient) of the deglex-largest term, (None, 0) for zero."""
        if not self.terms:
            return None, Fraction(0)
        cell = max(self.terms, key=_bivar_key)
        return cell, self.terms[cell]

    def normalized(self):
        """Scaled copy with leading coefficient +1."""
        cell, lead = self.leading()
        if cell is None or lead == 1:
            return self
        return BivariatePoly({c: v / lead for c, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_bivariate(self.terms, BIVAR_NAMES)

    def __repr__(self):
        return f"BivariatePoly({self})"


@dataclass
class BoundsConfig:
    """Caps for the annihilator search; None picks the default deepening cap."""

    max_s: int | None = None


@dataclass
class Annihilator:
    """A verified annihilating polynomial together with the bounds that found it."""

    poly: BivariatePoly
    s_bound: int
    t_bound: int
    verified: bool
    residual: Element


def evaluate_bivariate(f, P: Element, Q: Element) -> Element:
    """Exact value of f(P, Q) with s -> P, t -> Q.

    Substitution into a bivariate polynomial is only well defined for a
    commuting pair, so non-commuting inputs raise ContractError.
    """
    if not commutes(P, Q):
        raise ContractError("inputs do not commute")
    terms = f.terms if isinstance(f, BivariatePoly) else f
    alg = P.algebra
    si = max((i for i, _ in terms), default=0)
    tj = max((j for _, j in terms), default=0)
    p_pow = [alg.one]
    for _ in range(si):
        p_pow.append(alg.multiply(p_pow[-1], P))
    q_pow = [alg.one]
    for _ in range(tj):
        q_pow.append(alg.multiply(q_pow[-1], Q))
    total = alg.zero
    for (i, j), c in terms.items():
        total = total + alg.scalar_mul(Fraction(c), alg.multiply(p_pow[i], q_pow[j]))
    return total


def _select_minimal(vectors, cells):
    """Nullspace vector with the deglex-smallest leading cell, leading coeff +1.

    Laying the coordinates out in decreasing deglex cell order and fully
    reducing makes the choice canonical: the last echelon row has the
    rightmost pivot, hence the smallest possible leading cell.
    """
    if not vectors:
        return None
    desc = sorted(range(len(cells)), key=lambda k: _bivar_key(cells[k]), reverse=True)
    reduced, _ = rref([[Fraction(v[k]) for k in desc] for v in vectors], len(cells))
    if not reduced:
        return None
    row = reduced[-1]
    terms = {cells[desc[p]]: c for p, c in enumerate(row) if c}
    return BivariatePoly(terms).normalized()


def annihilating_polynomial(P: Element, Q: Element,
                            caps: BoundsConfig | None = None) -> Annihilator:
    """Minimal-leading verified f with f(P, Q) = 0 for a commuting pair.

    The t-degree is capped at deg P from the start; the s-degree deepens
    from deg Q until a dependence appears or the cap runs out, in which
    case CapExhaustedError carries the bounds that failed.
    """
    if not commutes(P, Q):
        raise ContractError("inputs do not commute")
    alg = P.algebra
    order = deglex_order(alg)
    ep = P.exp(order)
    if ep is None or sum(ep) == 0:
        raise ContractError("the first element must be nonconstant")
    dp = sum(ep)
    eq = Q.exp(order)
    dq = 0 if eq is None else sum(eq)
    caps = caps or BoundsConfig()
    max_s = caps.max_s if caps.max_s is not None else dp * max(dq, 1) + 2
    s_start = max(dq, 0)
    if max_s < s_start:
        raise CapExhaustedError(
            f"the cap max_s = {max_s} is below the starting s-degree {s_start}",
            max_s, dp)

    p_pow = [alg.one]
    q_pow = [alg.one]
    for _ in range(dp):
        q_pow.append(alg.multiply(q_pow[-1], Q))
    products = {}

    def product(cell):
        if cell not in products:
            i, j = cell
            while len(p_pow) <= i:
                p_pow.append(alg.multiply(p_pow[-1], P))
            products[cell] = alg.multiply(p_pow[i], q_pow[j])
        return products[cell]

    for s_bound in range(s_start, max_s + 1):
        cells = sorted(((i, j) for i in range(s_bound + 1) for j in range(dp + 1)),
                       key=lambda c: (c[0] + c[1], c[0], c[1]))
        rows = coordinate_rows([product(c) for c in cells])
        vectors = nullspace(rows, len(cells))
        poly = _select_minimal(vectors, cells)
        if poly is not None:
            residual = evaluate_bivariate(poly, P, Q)
            return Annihilator(poly, s_bound, dp, residual.is_zero, residual)
    raise CapExhaustedError(
        f"no annihilating polynomial with s-degree up to {max_s}", max_s, dp)


def fp_module_dependence(P: Element, elements, s_cap: int):
    """Rows (g_1, ..., g_k) of polynomials with sum g_i(P) * elements[i] = 0.

    Searches coefficients g_i of s-degree at most s_cap.  Each returned row
    is a list of BivariatePoly in s alone, one per input element; the rows
    form an echelon basis of all bounded dependences.  Returns None when no
    dependence exists within the cap.
    """
    if not elements:
        return None
    alg = P.algebra
    for el in elements:
        if not commutes(P, el):
            raise ContractError("every element must commute with the first input")
    p_pow = [alg.one]
    for _ in range(s_cap):
        p_pow.append(alg.multiply(p_pow[-1], P))
    columns = [(idx, k) for idx in range(len(elements)) for k in range(s_cap + 1)]
    prods = [alg.multiply(p_pow[k], elements[idx]) for idx, k in columns]
    rows = coordinate_rows(prods)
    vectors = nullspace(rows, len(columns))
    if not vectors:
        return None
    out = []
    for vec in vectors:
        row = []
        for idx in range(len(elements)):
            terms = {}
            for pos, (jdx, k) in enumerate(columns):
                if jdx == idx and vec[pos]:
                    terms[(k, 0)] = vec[pos]
            row.append(BivariatePoly(terms))
        out.append(row)
    return out


def constants_field_probe(algebra, sample_degree: int = 3):
    """Basis of coefficients fixed by every twist and killed by every derivation.

    Searches the polynomial coefficients of degree at most sample_degree
    (for rational function coefficients, the polynomial part only) and
    returns an exact basis of the constants found there.
    """
    ring = algebra.ring
    if ring.kind == "rational":
        return [ring.one()]
    from .rings import Poly
    nv = 1 if ring.kind == "ratfunc" else ring.nvars
    monos = sorted(monomials_upto(nv, sample_degree), key=lambda e: (sum(e), e))
    if ring.kind == "ratfunc":
        cands = [ring.coerce(Poly.monomial(1, e)) for e in monos]
    else:
        cands = [Poly.monomial(nv, e) for e in monos]
    rows = []
    for i in range(algebra.n):
        sig, dlt = algebra.sigma[i], algebra.delta[i]
        for values in ([ring.sub(sig(v), v) for v in cands],
                       [dlt(v) for v in cands]):
            rows.extend(coordinate_rows([algebra.scalar(v) for v in values]))
    vectors = nullspace(rows, len(cands))
    out = []
    for vec in vectors:
        total = ring.zero()
        for c, v in zip(vec, cands):
            if c:
                total = ring.add(total, ring.mul(ring.coerce(c), v))
        out.append(total)
    return out
