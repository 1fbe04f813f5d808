"""Commutation predicates and bounded centralizer computation.

The centralizer solve is a finite-dimensional exact linear problem: the map
g -> fg - gf is Q-linear in g, so fixing a degree bound on the monomials
and a degree bound on the coefficients turns "fg = gf" into a rational
nullspace computation.  Coordinates are taken over pairs (monomial
exponent, coefficient monomial); rational function coefficients are first
cleared by the monic lcm of every denominator in sight, a Q-linear
injection that preserves dependence exactly.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, Element, MonomialOrder
from .errors import ContractError
from .linalg import nullspace
from .rings import Poly, poly_lcm


def commutes(f: Element, g: Element) -> bool:
    """Exact test of fg = gf."""
    alg = f.algebra
    return (alg.multiply(f, g) - alg.multiply(g, f)).is_zero


def deglex_order(algebra: Algebra) -> MonomialOrder:
    """The algebra's order if degree-compatible, else deglex with the same precedence."""
    order = algebra.order
    if order.kind == "deglex":
        return order
    return MonomialOrder.deglex(algebra.n, order.precedence)


def monomials_upto(n: int, bound: int):
    """All exponent tuples in n variables with total degree <= bound."""
    out = []

    def rec(i, budget, cur):
        if i == n:
            out.append(tuple(cur))
            return
        for k in range(budget + 1):
            cur.append(k)
            rec(i + 1, budget - k, cur)
            cur.pop()

    rec(0, bound, [])
    return out


def element_coordinate_columns(elements):
    """Exact Q-coordinates of elements over a shared (monomial, coefficient) index.

    Returns (keys, cols): sorted coordinate keys and one {key: Fraction}
    column per element.  Linear dependence over Q is preserved exactly.
    """
    if not elements:
        return [], []
    ring = elements[0].algebra.ring
    clear = None
    if ring.kind == "ratfunc":
        clear = Poly.const(1, 1)
        for el in elements:
            for c in el.terms.values():
                clear = poly_lcm(clear, c.den)
    cols = []
    keys = set()
    for el in elements:
        col = {}
        for e, c in el.terms.items():
            if ring.kind == "rational":
                col[(e, ())] = c
            elif ring.kind == "poly":
                for ye, q in c.terms.items():
                    col[(e, ye)] = q
            else:
                num = c.num * clear.exact_div(c.den)
                for ye, q in num.terms.items():
                    col[(e, ye)] = q
        cols.append(col)
        keys.update(col)
    return sorted(keys), cols


def coordinate_rows(elements, ncols=None):
    """Dense constraint matrix whose columns are the given elements."""
    keys, cols = element_coordinate_columns(elements)
    zero = Fraction(0)
    return [[col.get(key, zero) for col in cols] for key in keys]


@dataclass
class CentralizerBasis:
    """Echelon basis of a degree-bounded slice of a centralizer."""

    center_of: Element
    degree_bound: int
    coeff_degree_bound: int
    elements: list = field(default_factory=list)

    def __len__(self):
        return len(self.elements)


def _coefficient_candidates(ring, f: Element, coeff_degree_bound: int):
    if ring.kind == "rational":
        return [ring.one()]
    if ring.kind == "poly":
        monos = sorted(monomials_upto(ring.nvars, coeff_degree_bound),
                       key=lambda e: (sum(e), e))
        return [Poly.monomial(ring.nvars, e) for e in monos]
    # rational functions: numerators of degree <= bound over a fixed power of
    # the monic lcm D of f's coefficient denominators, the largest power
    # whose degree still fits under the same bound
    den = Poly.const(1, 1)
    for c in f.terms.values():
        den = poly_lcm(den, c.den)
    ddeg = den.u_degree()
    k = 0 if ddeg == 0 else coeff_degree_bound // ddeg
    denom = den ** k
    from .rings import RatFn
    return [RatFn(Poly.monomial(1, (e,)), denom) for e in range(coeff_degree_bound + 1)]


def centralizer_bounded(f: Element, degree_bound: int,
                        coeff_degree_bound: int = 0) -> CentralizerBasis:
    """All g with fg = gf, deg g <= degree_bound, coefficient degrees bounded.

    The result is the canonical echelon basis of the solution space over
    the candidate monomials ordered by increasing deglex.
    """
    if degree_bound < 0 or coeff_degree_bound < 0:
        raise ValueError("bounds must be nonnegative")
    alg = f.algebra
    order = deglex_order(alg)
    monos = sorted(monomials_upto(alg.n, degree_bound), key=order.key)
    coeffs = _coefficient_candidates(alg.ring, f, coeff_degree_bound)
    candidates = [alg.monomial(m, cv) for m in monos for cv in coeffs]
    commutators = [alg.multiply(f, b) - alg.multiply(b, f) for b in candidates]
    rows = coordinate_rows(commutators)
    vectors = nullspace(rows, len(candidates))
    basis = []
    for v in vectors:
        g = alg.zero
        for coef, cand in zip(v, candidates):
            if coef:
                g = g + alg.scalar_mul(coef, cand)
        basis.append(g)
    return CentralizerBasis(f, degree_bound, coeff_degree_bound, basis)


def lc_identity_check(f: Element, g: Element) -> bool:
    """Exact check of the leading-coefficient compatibility of a commuting pair.

    With a = lc(f), b = lc(g), alpha = exp(f), beta = exp(g) under deglex,
    commuting f and g must satisfy
        a * sigma^alpha(b) * c(alpha, beta) = b * sigma^beta(a) * c(beta, alpha).
    Raises ContractError when f and g do not commute.
    """
    if not commutes(f, g):
        raise ContractError("inputs do not commute")
    if f.is_zero or g.is_zero:
        return True
    alg = f.algebra
    order = deglex_order(alg)
    alpha, a = f.leading(order)
    beta, b = g.leading(order)
    lhs = a * alg.sigma_alpha(alpha, b) * alg.commutation_constant(alpha, beta)
    rhs = b * alg.sigma_alpha(beta, a) * alg.commutation_constant(beta, alpha)
    return lhs == rhs


def residue_class_profile(f: Element, degree_bound: int,
                          coeff_degree_bound: int = 0) -> set:
    """Degrees mod |exp(f)| realized in the bounded centralizer slice.

    The centralizer of f is spanned, in each slice, by elements whose
    degrees fall into at most |exp(f)| residue classes; this returns the
    classes realized within the given bounds.
    """
    alg = f.algebra
    e = f.exp(deglex_order(alg))
    if e is None or sum(e) == 0:
        raise ContractError("the element must have a nonzero leading exponent")
    m = sum(e)
    basis = centralizer_bounded(f, degree_bound, coeff_degree_bound)
    return {int(g.deg()) % m for g in basis.elements if not g.is_zero}
