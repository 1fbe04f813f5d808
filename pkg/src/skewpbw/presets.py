"""Shipped algebra catalog.

Every preset validates on construction.  Parameters arrive as strings,
numbers, or Fractions; `q` must be a nonzero rational and `p` a polynomial
expression of degree at least two, since degree one would be an ordinary
twist and degree zero would not be injective.
"""

from fractions import Fraction

from .algebra import Algebra
from .errors import SpecValidationError
from .exprs import parse_coeff
from .rings import CoeffRing, Poly, RingMap, SigmaDerivation
from .specfile import unparse

PRESET_NAMES = ("weyl", "weyl-ratfunc", "q-weyl", "quantum-plane",
                "higher-endo", "heisenberg")


def _take_q(params, default=2):
    q = Fraction(params.pop("q", default))
    if q == 0:
        raise ValueError("q must be nonzero")
    return q


def _differential(ring) -> Algebra:
    sigma = RingMap.identity(ring)
    delta = SigmaDerivation(ring, sigma, {"y": ring.one()})
    return Algebra(ring, ("x",), sigma=[sigma], delta=[delta])


def _build(name, params):
    if name == "weyl":
        return _differential(CoeffRing.poly("y"))
    if name == "weyl-ratfunc":
        return _differential(CoeffRing.ratfunc("y"))
    if name == "q-weyl":
        q = _take_q(params)
        ring = CoeffRing.poly("y")
        sigma = RingMap(ring, {"y": ring.coerce(Poly.gen(1, 0) * q)})
        delta = SigmaDerivation(ring, sigma, {"y": ring.one()})
        return Algebra(ring, ("x",), sigma=[sigma], delta=[delta])
    if name == "quantum-plane":
        q = _take_q(params)
        ring = CoeffRing.rational()
        relations = {(0, 1): (q, {})}
        return Algebra(ring, ("x1", "x2"), relations=relations)
    if name == "higher-endo":
        ring = CoeffRing.poly("y")
        p = params.pop("p", "y^2")
        p = p if isinstance(p, Poly) else parse_coeff(str(p), ring)
        if p.degree() < 2:
            raise ValueError("p must have degree at least 2")
        sigma = RingMap(ring, {"y": p})
        return Algebra(ring, ("x",), sigma=[sigma])
    if name == "heisenberg":
        ring = CoeffRing.rational()
        relations = {(0, 1): (ring.one(), {(0, 0, 1): Fraction(-1)})}
        return Algebra(ring, ("x1", "x2", "x3"), relations=relations)
    raise ValueError(f"unknown preset {name!r}")


def preset(name: str, **params) -> Algebra:
    """Build a cataloged algebra by name; see PRESET_NAMES."""
    params = dict(params)
    algebra = _build(name, params)
    if params:
        extra = ", ".join(sorted(params))
        raise ValueError(f"preset {name!r} does not take: {extra}")
    report = algebra.validate()
    if not report.ok:
        raise SpecValidationError(report)
    return algebra


def preset_document(name: str, **params) -> str:
    """The canonical document for a cataloged algebra."""
    return unparse(preset(name, **params))
