"""Skew PBW extension arithmetic in the ordered monomial basis.

An algebra over a coefficient ring R with variables x1..xn stores, per
variable, a twist sigma_i and a twisted derivation delta_i realizing the
commutation rule  x_i r = sigma_i(r) x_i + delta_i(r),  and per variable
pair i < j a nonzero constant c_ij together with a tail of total degree
at most one realizing  x_j x_i = c_ij x_i x_j + tail_ij.

Elements are immutable left-R-linear combinations of the ordered monomials
x1^a1 ... xn^an, held as a mapping from exponent tuples to nonzero
coefficients; every operation renormalizes eagerly, so equal mappings mean
equal elements.  Normal forms of x_i * x^beta are memoized per algebra
instance.  The cache only ever stores finished values and recomputation is
idempotent, so concurrent readers (or a racy double write) cannot observe
anything but the same normal form.

Construction never raises for mathematically inconsistent data; call
:meth:`Algebra.validate` and inspect the report.  Arithmetic assumes a
definition whose report is clean.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

from .rings import CoeffRing, RingMap, SigmaDerivation

NEG_INF = float("-inf")

_PROBE_SEED = 0x5B1D


def _val_is_zero(v) -> bool:
    return v == 0 if isinstance(v, (int, Fraction)) else v.is_zero


class MonomialOrder:
    """Monomial order: 'deglex' or 'lex' plus a precedence permutation.

    ``precedence`` lists 0-based variable indices from most significant to
    least.  deglex compares total degree first and breaks ties by the
    exponents read along the precedence; lex skips the degree comparison.
    """

    KINDS = ("deglex", "lex")
    __slots__ = ("kind", "precedence")

    def __init__(self, kind: str, precedence):
        if kind not in self.KINDS:
            raise ValueError(f"unknown order kind {kind!r}")
        precedence = tuple(precedence)
        if sorted(precedence) != list(range(len(precedence))):
            raise ValueError("precedence must be a permutation of the variable indices")
        self.kind = kind
        self.precedence = precedence

    @classmethod
    def deglex(cls, n: int, precedence=None) -> "MonomialOrder":
        return cls("deglex", precedence if precedence is not None else range(n - 1, -1, -1))

    @classmethod
    def lex(cls, n: int, precedence=None) -> "MonomialOrder":
        return cls("lex", precedence if precedence is not None else range(n - 1, -1, -1))

    def key(self, alpha):
        """Sort key; larger key means larger monomial."""
        if len(alpha) != len(self.precedence):
            raise ValueError("exponent vector length does not match the variable count")
        proj = tuple(alpha[i] for i in self.precedence)
        return (sum(alpha),) + proj if self.kind == "deglex" else proj

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and self.kind == other.kind and self.precedence == other.precedence)

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {self.precedence!r})"


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def summary(self) -> str:
        if self.ok:
            return "ok ({} checks)".format(len(self.checks))
        return "; ".join(f"{i.code}: {i.message}" for i in self.issues)


class Element:
    """Element of a skew PBW extension in normal form.  Immutable."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: "Algebra", terms: dict):
        # internal constructor: terms must already be clean; use Algebra.element
        self.algebra = algebra
        self._terms = terms

    @property
    def terms(self):
        """Read-only view: exponent tuple -> coefficient."""
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, alpha):
        return self._terms.get(tuple(alpha), self.algebra.ring.zero())

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                return None
            return other
        try:
            return self.algebra.scalar(other)
        except Exception:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if _val_is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return Element(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.algebra.multiply(self, o)

    def __rmul__(self, other):
        # scalar on the left: plain module action, no rewriting needed
        try:
            r = self.algebra.ring.coerce(other)
        except Exception:
            return NotImplemented
        return self.algebra.scalar_mul(r, self)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of an algebra element")
        out = self.algebra.one
        base = self
        for _ in range(k):
            out = self.algebra.multiply(out, base)
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __bool__(self):
        return bool(self._terms)

    # leading data; the zero element reports the sentinel triple

    def leading(self, order: MonomialOrder | None = None):
        """(exponent, coefficient) of the largest monomial, (None, 0) for zero."""
        if not self._terms:
            return None, self.algebra.ring.zero()
        order = order or self.algebra.order
        e = max(self._terms, key=order.key)
        return e, self._terms[e]

    def exp(self, order: MonomialOrder | None = None):
        return self.leading(order)[0]

    def lc(self, order: MonomialOrder | None = None):
        return self.leading(order)[1]

    def lm(self, order: MonomialOrder | None = None) -> "Element":
        """Leading monomial with coefficient one; the zero element for zero."""
        e, _ = self.leading(order)
        if e is None:
            return self.algebra.zero
        return Element(self.algebra, {e: self.algebra.ring.one()})

    def lt(self, order: MonomialOrder | None = None) -> "Element":
        e, c = self.leading(order)
        if e is None:
            return self.algebra.zero
        return Element(self.algebra, {e: c})

    def deg(self):
        """Total degree in the variables; -inf marker for the zero element."""
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def sorted_terms(self, order: MonomialOrder | None = None):
        order = order or self.algebra.order
        return sorted(self._terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    def __str__(self):
        from .exprs import format_element
        return format_element(self)

    def __repr__(self):
        return f"<Element {dict(sorted(self._terms.items()))!r}>"


class Algebra:
    """A skew PBW extension: coefficient ring, variables, twists, relations."""

    __slots__ = ("ring", "varnames", "sigma", "delta", "relations", "order",
                 "_mono_cache", "_sigma_pow_maps", "_report")

    def __init__(self, ring: CoeffRing, varnames, sigma=None, delta=None,
                 relations=None, order: MonomialOrder | None = None):
        self.ring = ring
        names = tuple(varnames)
        if not names:
            raise ValueError("at least one variable is required")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if set(names) & set(ring.gens):
            raise ValueError("variable names collide with coefficient generators")
        self.varnames = names
        n = len(names)

        sigma = list(sigma) if sigma is not None else [None] * n
        delta = list(delta) if delta is not None else [None] * n
        if len(sigma) != n or len(delta) != n:
            raise ValueError("need one twist and one derivation per variable")
        self.sigma = tuple(s if s is not None else RingMap.identity(ring) for s in sigma)
        self.delta = tuple(
            d if d is not None else SigmaDerivation.zero(ring, self.sigma[i])
            for i, d in enumerate(delta))

        rels = {}
        for i in range(n):
            for j in range(i + 1, n):
                rels[(i, j)] = (ring.one(), {})
        for key, value in (relations or {}).items():
            i, j = key
            if not (0 <= i < j < n):
                raise ValueError(f"relation key {key!r} is not an ordered variable pair")
            c, tail = value
            clean_tail = {}
            for tau, r in (tail or {}).items():
                tau = tuple(int(t) for t in tau)
                if len(tau) != n or any(t < 0 for t in tau):
                    raise ValueError(f"bad tail monomial {tau!r}")
                rv = ring.coerce(r)
                if not _val_is_zero(rv):
                    clean_tail[tau] = rv
            rels[(i, j)] = (ring.coerce(c), clean_tail)
        self.relations = rels

        self.order = order if order is not None else MonomialOrder.deglex(n)
        if len(self.order.precedence) != n:
            raise ValueError("order precedence does not match the variable count")

        self._mono_cache = {}
        self._sigma_pow_maps = {}
        self._report = None

    # ---- factories ----

    @property
    def n(self) -> int:
        return len(self.varnames)

    @property
    def zero(self) -> Element:
        return Element(self, {})

    @property
    def one(self) -> Element:
        return Element(self, {(0,) * self.n: self.ring.one()})

    def scalar(self, r) -> Element:
        r = self.ring.coerce(r)
        if _val_is_zero(r):
            return self.zero
        return Element(self, {(0,) * self.n: r})

    def var(self, i: int) -> Element:
        e = [0] * self.n
        e[i] = 1
        return Element(self, {tuple(e): self.ring.one()})

    def gen(self, name: str) -> Element:
        """The variable or coefficient generator with this name, as an element."""
        if name in self.varnames:
            return self.var(self.varnames.index(name))
        return self.scalar(self.ring.gen(name))

    def element(self, mapping) -> Element:
        out = {}
        for e, c in mapping.items():
            e = tuple(int(k) for k in e)
            if len(e) != self.n or any(k < 0 for k in e):
                raise ValueError(f"bad exponent vector {e!r}")
            c = self.ring.coerce(c)
            if _val_is_zero(c):
                continue
            prev = out.get(e)
            c = c if prev is None else prev + c
            if _val_is_zero(c):
                out.pop(e, None)
            else:
                out[e] = c
        return Element(self, out)

    def monomial(self, alpha, coeff=1) -> Element:
        return self.element({tuple(alpha): coeff})

    # ---- arithmetic ----

    def add(self, f: Element, g: Element) -> Element:
        return f + g

    def scalar_mul(self, r, f: Element) -> Element:
        r = self.ring.coerce(r)
        if _val_is_zero(r):
            return self.zero
        out = {}
        for e, c in f._terms.items():
            v = r * c
            if not _val_is_zero(v):
                out[e] = v
        return Element(self, out)

    def multiply(self, f: Element, g: Element) -> Element:
        """Product in normal form.  Assumes a valid definition (clean report)."""
        acc = {}
        gterms = g._terms
        for alpha in sorted(f._terms):
            c = f._terms[alpha]
            h = gterms
            for i in range(self.n - 1, -1, -1):
                for _ in range(alpha[i]):
                    h = self._var_times_terms(i, h)
            for gamma, d in h.items():
                v = c * d
                s = acc.get(gamma)
                s = v if s is None else s + v
                if _val_is_zero(s):
                    acc.pop(gamma, None)
                else:
                    acc[gamma] = s
        return Element(self, acc)

    def _var_times_terms(self, i: int, terms: dict) -> dict:
        # x_i * (sum d x^gamma) = sum sigma_i(d) (x_i x^gamma) + delta_i(d) x^gamma
        out = {}
        sig = self.sigma[i]
        dlt = self.delta[i]
        for gamma, d in terms.items():
            sd = sig(d)
            if not _val_is_zero(sd):
                for e2, c2 in self._mono_mul(i, gamma).items():
                    v = sd * c2
                    s = out.get(e2)
                    s = v if s is None else s + v
                    if _val_is_zero(s):
                        out.pop(e2, None)
                    else:
                        out[e2] = s
            dd = dlt(d)
            if not _val_is_zero(dd):
                s = out.get(gamma)
                s = dd if s is None else s + dd
                if _val_is_zero(s):
                    out.pop(gamma, None)
                else:
                    out[gamma] = s
        return out

    def _mono_mul(self, i: int, gamma: tuple) -> dict:
        """Normal form of x_i * x^gamma as a term dict.  Memoized."""
        key = (i, gamma)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        j = None
        for k, e in enumerate(gamma):
            if e:
                j = k
                break
        if j is None or i <= j:
            bumped = list(gamma)
            bumped[i] += 1
            out = {tuple(bumped): self.ring.one()}
        else:
            # x_i x_j = c x_j x_i + tail, applied at the leftmost position
            c, tail = self.relations[(j, i)]
            rest = list(gamma)
            rest[j] -= 1
            rest = tuple(rest)
            inner = self._mono_mul(i, rest)
            out = {}
            for e2, c2 in self._var_times_terms(j, inner).items():
                v = c * c2
                if not _val_is_zero(v):
                    out[e2] = v
            for tau, r in tail.items():
                if not any(tau):
                    pieces = {rest: self.ring.one()}
                else:
                    pieces = self._mono_mul(tau.index(1), rest)
                for e2, c2 in pieces.items():
                    v = r * c2
                    s = out.get(e2)
                    s = v if s is None else s + v
                    if _val_is_zero(s):
                        out.pop(e2, None)
                    else:
                        out[e2] = s
        self._mono_cache[key] = out
        return out

    def commutation_constant(self, alpha, beta):
        """Coefficient of x^(alpha+beta) in the normal form of x^alpha x^beta."""
        alpha, beta = tuple(alpha), tuple(beta)
        prod = self.multiply(self.monomial(alpha), self.monomial(beta))
        target = tuple(a + b for a, b in zip(alpha, beta))
        return prod._terms.get(target, self.ring.zero())

    def sigma_pow_map(self, i: int, m: int) -> RingMap:
        """The m-fold composite of sigma_i, as a ring map."""
        if m == 0:
            return RingMap.identity(self.ring)
        if m == 1:
            return self.sigma[i]
        key = (i, m)
        hit = self._sigma_pow_maps.get(key)
        if hit is None:
            prev = self.sigma_pow_map(i, m - 1)
            images = {g: self.sigma[i](prev.images[g]) for g in self.ring.gens}
            hit = RingMap(self.ring, images)
            self._sigma_pow_maps[key] = hit
        return hit

    def sigma_alpha(self, alpha, r):
        """Apply sigma_1^a1 ... sigma_n^an with the last variable acting first.

        This matches the composite twist a coefficient picks up when it is
        pushed through the monomial x^alpha from the right.
        """
        v = self.ring.coerce(r)
        for i in range(self.n - 1, -1, -1):
            if alpha[i]:
                v = self.sigma_pow_map(i, alpha[i])(v)
        return v

    def is_constant(self, r) -> bool:
        """True when every twist fixes r and every derivation kills it."""
        v = self.ring.coerce(r)
        for i in range(self.n):
            if self.sigma[i](v) != v:
                return False
            if not _val_is_zero(self.delta[i](v)):
                return False
        return True

    # ---- validation ----

    def validate(self) -> ValidationReport:
        """Check the definition; structural failures suppress the probes."""
        if self._report is not None:
            return self._report
        issues = []
        checks = []

        for (i, j), (c, tail) in sorted(self.relations.items()):
            pair = f"{self.varnames[j]}*{self.varnames[i]}"
            if _val_is_zero(c):
                issues.append(ValidationIssue(
                    "pair-constant-zero", f"relation {pair} has a zero constant"))
            for tau in tail:
                if sum(tau) > 1:
                    issues.append(ValidationIssue(
                        "tail-degree", f"relation {pair} has a tail monomial of degree {sum(tau)}"))
        checks.append("pair-relation-shape")

        if issues:
            # rewriting on malformed tails need not terminate; stop here
            report = ValidationReport(issues, checks)
            self._report = report
            return report

        rng = random.Random(_PROBE_SEED)
        for i in range(self.n):
            sig, dlt = self.sigma[i], self.delta[i]
            name = self.varnames[i]
            try:
                for _ in range(40):
                    r = self.ring.random_element(rng)
                    s = self.ring.random_element(rng)
                    if sig(r + s) != sig(r) + sig(s) or sig(r * s) != sig(r) * sig(s):
                        issues.append(ValidationIssue(
                            "sigma-endomorphism", f"twist of {name} breaks the ring laws"))
                        break
                    if dlt(r + s) != dlt(r) + dlt(s) or dlt(r * s) != sig(r) * dlt(s) + dlt(r) * s:
                        issues.append(ValidationIssue(
                            "delta-leibniz", f"derivation of {name} breaks the twisted Leibniz rule"))
                        break
            except (ZeroDivisionError, ArithmeticError) as exc:
                issues.append(ValidationIssue(
                    "map-undefined", f"twist or derivation of {name} is undefined: {exc}"))
            checks.append(f"laws[{name}]")

            inputs = set()
            attempts = 0
            while len(inputs) < 100 and attempts < 2000:
                inputs.add(self.ring.random_element(rng, max_deg=3))
                attempts += 1
            images = {}
            try:
                for r in sorted(inputs, key=repr):
                    img = sig(r)
                    if img in images and images[img] != r:
                        issues.append(ValidationIssue(
                            "sigma-injectivity",
                            f"twist of {name} sends two of {len(inputs)} probe inputs to one value"))
                        break
                    images[img] = r
            except (ZeroDivisionError, ArithmeticError) as exc:
                issues.append(ValidationIssue(
                    "map-undefined", f"twist of {name} is undefined: {exc}"))
            checks.append(f"injectivity[{name}]")

        gens = [self.var(i) for i in range(self.n)]
        assoc_bad = None
        for k in range(self.n):
            for j in range(self.n):
                for i in range(self.n):
                    lhs = self.multiply(self.multiply(gens[k], gens[j]), gens[i])
                    rhs = self.multiply(gens[k], self.multiply(gens[j], gens[i]))
                    if lhs != rhs:
                        assoc_bad = (k, j, i)
                        break
                if assoc_bad:
                    break
            if assoc_bad:
                break
        if assoc_bad:
            k, j, i = assoc_bad
            triple = "*".join(self.varnames[t] for t in (k, j, i))
            issues.append(ValidationIssue(
                "associativity", f"({triple}) reassociates to a different normal form"))
        checks.append("associativity-triples")

        mixed_bad = None
        for i in range(self.n):
            for _ in range(5):
                r = self.scalar(self.ring.random_element(rng))
                s = self.scalar(self.ring.random_element(rng))
                lhs = self.multiply(self.multiply(gens[i], r), s)
                rhs = self.multiply(gens[i], self.multiply(r, s))
                if lhs != rhs:
                    mixed_bad = i
                    break
            if mixed_bad is not None:
                break
        if mixed_bad is not None:
            issues.append(ValidationIssue(
                "associativity",
                f"({self.varnames[mixed_bad]}*r)*s differs from {self.varnames[mixed_bad]}*(r*s)"))
        checks.append("associativity-scalars")

        report = ValidationReport(issues, checks)
        self._report = report
        return report

    def __eq__(self, other):
        return (isinstance(other, Algebra)
                and self.ring == other.ring
                and self.varnames == other.varnames
                and self.sigma == other.sigma
                and self.delta == other.delta
                and self.relations == other.relations
                and self.order == other.order)

    def __repr__(self):
        return f"Algebra({self.ring!r}; {', '.join(self.varnames)})"
