"""Exact coefficient arithmetic for the scalar side of a skew PBW extension.

Three coefficient rings are supported, all over exact rationals:

* the rational numbers themselves (plain ``fractions.Fraction``),
* sparse multivariate polynomial rings Q[y1..ym] (:class:`Poly`),
* the univariate rational function field Q(y) (:class:`RatFn`).

``Poly`` maps exponent tuples to nonzero ``Fraction`` coefficients, so
structural equality is semantic equality.  ``RatFn`` keeps a coprime
numerator/denominator pair with a monic denominator, which again makes the
representation canonical.

Twists of the coefficient ring are :class:`RingMap` objects (endomorphisms
fixing Q, given by generator images) and skew derivations are
:class:`SigmaDerivation` objects extended from generator images by the
twisted Leibniz rule  d(r*s) = sigma(r)*d(s) + d(r)*s.
"""

from fractions import Fraction

from .errors import NotDivisibleError, NotInvertibleError, RingMismatchError

Q = Fraction


def _as_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise RingMismatchError(f"expected a rational number, got {type(v).__name__}")


class Poly:
    """Sparse polynomial over Q in a fixed number of commuting variables.

    ``terms`` maps exponent tuples (one entry per variable, all >= 0) to
    nonzero Fractions.  Instances are treated as immutable; nothing mutates
    ``terms`` after construction.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                q = _as_fraction(coeff)
                if q == 0:
                    continue
                e = tuple(int(k) for k in exps)
                if len(e) != nvars or any(k < 0 for k in e):
                    raise ValueError(f"bad exponent tuple {exps!r} for {nvars} variable(s)")
                prev = clean.get(e)
                if prev is None:
                    clean[e] = q
                else:
                    s = prev + q
                    if s == 0:
                        del clean[e]
                    else:
                        clean[e] = s
        self.terms = clean
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, value) -> "Poly":
        return cls(nvars, {(0,) * nvars: _as_fraction(value)})

    @classmethod
    def gen(cls, nvars: int, index: int) -> "Poly":
        e = [0] * nvars
        e[index] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps, coeff=1) -> "Poly":
        return cls(nvars, {tuple(exps): _as_fraction(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def const_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def sorted_terms(self):
        """Terms in decreasing (total degree, exponent tuple) order."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise RingMismatchError("polynomials over different variable sets")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, _ZERO) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

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
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, _ZERO) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial; use the rational function field")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = _as_fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return Poly(self.nvars, {e: c / q for e, c in self.terms.items()})
        if isinstance(other, Poly):
            return self.exact_div(other)
        return NotImplemented

    def _leading(self):
        # deglex-leading term; variable 0 most significant on ties
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient self/other when other divides exactly; NotDivisibleError otherwise."""
        o = self._coerce(other)
        if o is None or not isinstance(other, Poly):
            raise RingMismatchError("exact division requires a polynomial divisor")
        if o.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        quo = {}
        de, dc = o._leading()
        while rem:
            le = max(rem, key=lambda t: (sum(t), t))
            diff = tuple(a - b for a, b in zip(le, de))
            if any(k < 0 for k in diff):
                raise NotDivisibleError("polynomial division is not exact")
            q = rem[le] / dc
            quo[diff] = quo.get(diff, _ZERO) + q
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(diff, e2))
                s = rem.get(e, _ZERO) - q * c2
                if s == 0:
                    rem.pop(e, None)
                else:
                    rem[e] = s
        return Poly(self.nvars, quo)

    def evaluate(self, values):
        """Substitute values (ring elements supporting + and *) for the variables."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of substitution values")
        pows = [{0: 1} for _ in range(self.nvars)]

        def vpow(i, k):
            cache = pows[i]
            if k not in cache:
                cache[k] = vpow(i, k - 1) * values[i]
            return cache[k]

        total = None
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * vpow(i, k)
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    # univariate helpers (nvars == 1)

    def u_degree(self) -> int:
        return -1 if not self.terms else max(e[0] for e in self.terms)

    def u_lc(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.terms[(self.u_degree(),)]

    def u_coeff(self, k: int) -> Fraction:
        return self.terms.get((k,), Fraction(0))

    def u_monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self / self.u_lc()

    def u_divmod(self, other: "Poly"):
        """Univariate division with remainder."""
        if self.nvars != 1 or other.nvars != 1:
            raise ValueError("univariate division on a multivariate polynomial")
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        quo = {}
        dd, dc = other.u_degree(), other.u_lc()
        while rem:
            rd = max(e[0] for e in rem)
            if rd < dd:
                break
            q = rem[(rd,)] / dc
            quo[(rd - dd,)] = q
            for e2, c2 in other.terms.items():
                e = (rd - dd + e2[0],)
                s = rem.get(e, _ZERO) - q * c2
                if s == 0:
                    rem.pop(e, None)
                else:
                    rem[e] = s
        return Poly(1, quo), Poly(1, rem)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(self.nvars, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(sorted(self.terms.items()))))
        return self._hash

    def __repr__(self):
        return f"Poly({self.nvars}, {dict(sorted(self.terms.items()))!r})"


_ZERO = Fraction(0)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd of univariate polynomials (Euclid with monic remainders)."""
    while not b.is_zero:
        _, r = a.u_divmod(b)
        a, b = b, r.u_monic() if not r.is_zero else r
    return a.u_monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        return Poly.zero(1)
    return (a * b).exact_div(poly_gcd(a, b)).u_monic()


class RatFn:
    """Univariate rational function over Q in canonical coprime/monic-denominator form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=1):
        num = self._to_poly(num)
        den = self._to_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = Poly.const(1, 1)
        else:
            g = poly_gcd(num, den)
            if g.u_degree() > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lc = den.u_lc()
            if lc != 1:
                num = num / lc
                den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _to_poly(v):
        if isinstance(v, Poly):
            if v.nvars != 1:
                raise RingMismatchError("rational functions are univariate")
            return v
        if isinstance(v, (int, Fraction)):
            return Poly.const(1, v)
        raise RingMismatchError(f"cannot build a rational function from {type(v).__name__}")

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_poly(self) -> bool:
        return self.den.u_degree() == 0

    def _coerce(self, other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return RatFn(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den)

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
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero")
        return RatFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            if self.is_zero:
                raise ZeroDivisionError("zero to a negative power")
            return RatFn(self.den ** (-k), self.num ** (-k))
        return RatFn(self.num ** k, self.den ** k)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFn({self.num!r}, {self.den!r})"


class CoeffRing:
    """Descriptor for a coefficient ring: kind plus named generators.

    Kinds: ``rational`` (Q, no generators), ``poly`` (Q[y1..ym]), and
    ``ratfunc`` (Q(y), exactly one generator).  The descriptor owns
    coercion, arithmetic with membership checks, and random sampling used
    by the validation probes.
    """

    KINDS = ("rational", "poly", "ratfunc")
    __slots__ = ("kind", "gens")

    def __init__(self, kind: str, gens=()):
        if kind not in self.KINDS:
            raise ValueError(f"unknown ring kind {kind!r}")
        gens = tuple(gens)
        if kind == "rational" and gens:
            raise ValueError("the rational ring has no generators")
        if kind == "poly" and not gens:
            raise ValueError("a polynomial ring needs at least one generator")
        if kind == "ratfunc" and len(gens) != 1:
            raise ValueError("the rational function field is univariate")
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator names")
        self.kind = kind
        self.gens = gens

    @classmethod
    def rational(cls) -> "CoeffRing":
        return cls("rational")

    @classmethod
    def poly(cls, *names: str) -> "CoeffRing":
        return cls("poly", names)

    @classmethod
    def ratfunc(cls, name: str) -> "CoeffRing":
        return cls("ratfunc", (name,))

    @property
    def nvars(self) -> int:
        return len(self.gens)

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def coerce(self, v):
        """Bring v into this ring or raise RingMismatchError."""
        if self.kind == "rational":
            return _as_fraction(v)
        if self.kind == "poly":
            if isinstance(v, Poly):
                if v.nvars != self.nvars:
                    raise RingMismatchError(
                        f"polynomial in {v.nvars} variable(s) fed to {self!r}")
                return v
            if isinstance(v, (int, Fraction)):
                return Poly.const(self.nvars, v)
            raise RingMismatchError(f"{type(v).__name__} is not in {self!r}")
        if isinstance(v, RatFn):
            return v
        if isinstance(v, (int, Fraction, Poly)):
            return RatFn(v)
        raise RingMismatchError(f"{type(v).__name__} is not in {self!r}")

    def gen(self, name: str):
        try:
            i = self.gens.index(name)
        except ValueError:
            raise RingMismatchError(f"{name!r} is not a generator of {self!r}") from None
        if self.kind == "poly":
            return Poly.gen(self.nvars, i)
        return RatFn(Poly.gen(1, 0))

    def gen_values(self) -> dict:
        return {name: self.gen(name) for name in self.gens}

    def monomial_value(self, exps):
        """The monomial with the given generator exponents as a ring element."""
        if self.kind == "rational":
            if any(exps):
                raise RingMismatchError("the rational ring has no generators")
            return Fraction(1)
        p = Poly.monomial(self.nvars, exps)
        return p if self.kind == "poly" else RatFn(p)

    def add(self, a, b):
        return self.coerce(a) + self.coerce(b)

    def sub(self, a, b):
        return self.coerce(a) - self.coerce(b)

    def mul(self, a, b):
        return self.coerce(a) * self.coerce(b)

    def neg(self, a):
        return -self.coerce(a)

    def div(self, a, b):
        """Exact division: true division in the fields, checked division in Q[y]."""
        a, b = self.coerce(a), self.coerce(b)
        if self.is_zero(b):
            raise ZeroDivisionError("division by zero")
        return a / b

    def invert(self, a):
        a = self.coerce(a)
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "rational":
            return 1 / a
        if self.kind == "ratfunc":
            return RatFn(a.den, a.num)
        if a.is_const():
            return Poly.const(self.nvars, 1 / a.const_value())
        raise NotInvertibleError("only nonzero constants are invertible in a polynomial ring")

    def pow(self, a, k: int):
        a = self.coerce(a)
        if k < 0:
            return self.invert(a) ** (-k) if self.kind != "ratfunc" else a ** k
        return a ** k

    def is_zero(self, a) -> bool:
        a = self.coerce(a)
        return a == 0 if isinstance(a, Fraction) else a.is_zero

    def eq(self, a, b) -> bool:
        return self.coerce(a) == self.coerce(b)

    def random_element(self, rng, max_deg: int = 2, nterms: int = 3, nonzero: bool = False):
        """Small random element, used by probes and randomized tests."""
        def rand_q():
            return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

        def rand_poly(deg):
            terms = {}
            for _ in range(nterms):
                e = [0] * self.nvars
                budget = rng.randint(0, deg)
                for _ in range(budget):
                    e[rng.randrange(self.nvars)] += 1
                terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + rand_q()
            return Poly(self.nvars, terms)

        for _ in range(64):
            if self.kind == "rational":
                v = rand_q()
            elif self.kind == "poly":
                v = rand_poly(max_deg)
            else:
                den = rand_poly(max(1, max_deg - 1))
                while den.is_zero:
                    den = rand_poly(max(1, max_deg - 1))
                v = RatFn(rand_poly(max_deg), den)
            if not nonzero or not self.is_zero(v):
                return v
        return self.one() if nonzero else self.zero()

    def __eq__(self, other):
        return (isinstance(other, CoeffRing)
                and self.kind == other.kind and self.gens == other.gens)

    def __hash__(self):
        return hash((self.kind, self.gens))

    def __repr__(self):
        if self.kind == "rational":
            return "Q"
        inner = ", ".join(self.gens)
        return f"Q[{inner}]" if self.kind == "poly" else f"Q({inner})"


class RingMap:
    """Endomorphism of a coefficient ring fixing Q, determined by generator images.

    Application substitutes the images into the polynomial (or into the
    numerator and denominator).  Generator image powers are cached on the
    instance; the cache is invisible to callers and safe to rebuild.
    """

    __slots__ = ("ring", "images", "_pows")

    def __init__(self, ring: CoeffRing, images: dict | None = None):
        self.ring = ring
        given = dict(images or {})
        fixed = {}
        for name in ring.gens:
            img = given.pop(name, None)
            fixed[name] = ring.gen(name) if img is None else ring.coerce(img)
        if given:
            raise RingMismatchError(f"images given for unknown generators {sorted(given)}")
        self.images = fixed
        self._pows = {name: [ring.one(), fixed[name]] for name in ring.gens}

    @classmethod
    def identity(cls, ring: CoeffRing) -> "RingMap":
        return cls(ring, {})

    def is_identity(self) -> bool:
        return all(self.images[g] == self.ring.gen(g) for g in self.ring.gens)

    def gen_image_pow(self, name: str, k: int):
        pows = self._pows[name]
        while len(pows) <= k:
            pows.append(pows[-1] * pows[1])
        return pows[k]

    def _apply_poly(self, p: Poly):
        total = None
        for e, c in p.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * self.gen_image_pow(self.ring.gens[i], k)
            total = term if total is None else total + term
        return self.ring.zero() if total is None else self.ring.coerce(total)

    def __call__(self, v):
        v = self.ring.coerce(v)
        if self.ring.kind == "rational":
            return v
        if self.ring.kind == "poly":
            return self._apply_poly(v)
        num = self._apply_poly(v.num)
        den = self._apply_poly(v.den)
        if den.is_zero:
            raise ZeroDivisionError("generator image is a pole of the denominator")
        return num / den

    def __eq__(self, other):
        return (isinstance(other, RingMap)
                and self.ring == other.ring and self.images == other.images)

    def __repr__(self):
        imgs = {g: self.images[g] for g in self.ring.gens}
        return f"RingMap({self.ring!r}, {imgs!r})"


class SigmaDerivation:
    """Twisted derivation of a coefficient ring: d(r*s) = sigma(r)*d(s) + d(r)*s.

    Vanishes on Q and is determined by generator images.  Extension to
    monomials follows the Leibniz rule with generators peeled off in
    declaration order; extension to quotients uses the twisted quotient
    rule.  Monomial values are cached per instance.
    """

    __slots__ = ("ring", "sigma", "images", "_mono")

    def __init__(self, ring: CoeffRing, sigma: RingMap, images: dict | None = None):
        if sigma.ring != ring:
            raise RingMismatchError("derivation and twist live over different rings")
        self.ring = ring
        self.sigma = sigma
        given = dict(images or {})
        fixed = {}
        for name in ring.gens:
            img = given.pop(name, None)
            fixed[name] = ring.zero() if img is None else ring.coerce(img)
        if given:
            raise RingMismatchError(f"images given for unknown generators {sorted(given)}")
        self.images = fixed
        self._mono = {}

    @classmethod
    def zero(cls, ring: CoeffRing, sigma: RingMap) -> "SigmaDerivation":
        return cls(ring, sigma, {})

    def is_zero_map(self) -> bool:
        return all(self.ring.is_zero(v) for v in self.images.values())

    def _d_gen_pow(self, i: int, k: int):
        # d(y^k) = sigma(y) d(y^(k-1)) + d(y) y^(k-1)
        name = self.ring.gens[i]
        key = (i, k)
        val = self._mono.get(key)
        if val is None:
            if k == 0:
                val = self.ring.zero()
            elif k == 1:
                val = self.images[name]
            else:
                y = self.ring.gen(name)
                val = self.sigma.images[name] * self._d_gen_pow(i, k - 1) \
                    + self.images[name] * y ** (k - 1)
            self._mono[key] = val
        return val

    def _d_monomial(self, e: tuple):
        key = e
        val = self._mono.get(key)
        if val is not None:
            return val
        first = next((i for i, k in enumerate(e) if k), None)
        if first is None:
            val = self.ring.zero()
        else:
            rest = tuple(0 if i == first else k for i, k in enumerate(e))
            head_d = self._d_gen_pow(first, e[first])
            if not any(rest):
                val = head_d
            else:
                head_sigma = self.sigma.gen_image_pow(self.ring.gens[first], e[first])
                rest_val = self.ring.monomial_value(rest)
                val = head_sigma * self._d_monomial(rest) + head_d * rest_val
        self._mono[key] = val
        return val

    def _d_poly(self, p: Poly):
        total = self.ring.zero()
        for e, c in p.terms.items():
            total = total + c * self._d_monomial(e)
        return total

    def __call__(self, v):
        v = self.ring.coerce(v)
        if self.ring.kind == "rational":
            return Fraction(0)
        if self.ring.kind == "poly":
            return self._d_poly(v)
        if v.den.u_degree() == 0:
            return self._d_poly(v.num)
        n, d = v.num, v.den
        sd = self.sigma._apply_poly(d)
        if sd.is_zero:
            raise ZeroDivisionError("twist image is a pole of the denominator")
        return (sd * self._d_poly(n) - self.sigma._apply_poly(n) * self._d_poly(d)) / (sd * RatFn(d))

    def __eq__(self, other):
        return (isinstance(other, SigmaDerivation)
                and self.ring == other.ring
                and self.sigma == other.sigma
                and self.images == other.images)

    def __repr__(self):
        imgs = {g: self.images[g] for g in self.ring.gens}
        return f"SigmaDerivation({self.ring!r}, {imgs!r})"
