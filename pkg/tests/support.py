"""Shared test helpers: an independent rewriting oracle, random element
samplers, and a synchronous in-process client for the HTTP service.

The oracle deliberately shares no code with the optimized multiply: it
represents products as flat words of coefficient and variable atoms and
applies one rewrite at the first reducible position per step, so any
disagreement with the engine points at a real bug in one of the two.
"""

import asyncio
from fractions import Fraction

import httpx


def _x_atoms(exps):
    atoms = []
    for idx, k in enumerate(exps):
        atoms.extend([("x", idx)] * k)
    return tuple(atoms)


def _first_reducible(word):
    for pos in range(len(word) - 1):
        left, right = word[pos], word[pos + 1]
        if left[0] == "c" and right[0] == "c":
            return pos
        if left[0] == "x" and right[0] == "c":
            return pos
        if left[0] == "x" and right[0] == "x" and left[1] > right[1]:
            return pos
    return None


def _step(algebra, word, pos):
    """All words replacing `word` after one rewrite at position pos."""
    ring = algebra.ring
    head, tail = word[:pos], word[pos + 2:]
    left, right = word[pos], word[pos + 1]
    if left[0] == "c" and right[0] == "c":
        return [head + (("c", ring.mul(left[1], right[1])),) + tail]
    if left[0] == "x" and right[0] == "c":
        i, r = left[1], right[1]
        moved = head + (("c", algebra.sigma[i](r)), ("x", i)) + tail
        lowered = head + (("c", algebra.delta[i](r)),) + tail
        return [moved, lowered]
    j, i = left[1], right[1]
    c, rel_tail = algebra.relations[(i, j)]
    swapped = head + (("c", c), ("x", i), ("x", j)) + tail
    out = [swapped]
    for tau, r in rel_tail.items():
        out.append(head + (("c", r),) + _x_atoms(tau) + tail)
    return out


def _word_is_dead(algebra, word):
    ring = algebra.ring
    return any(atom[0] == "c" and ring.is_zero(atom[1]) for atom in word)


def naive_multiply(f, g):
    """Product of two elements by single-step rewriting; returns {exp: coeff}."""
    algebra = f.algebra
    ring = algebra.ring
    work = []
    for alpha, a in f.terms.items():
        for beta, b in g.terms.items():
            work.append((("c", a),) + _x_atoms(alpha) + (("c", b),) + _x_atoms(beta))
    normal = {}
    while work:
        word = work.pop()
        if _word_is_dead(algebra, word):
            continue
        pos = _first_reducible(word)
        if pos is not None:
            work.extend(_step(algebra, word, pos))
            continue
        coeff = ring.one()
        exps = [0] * algebra.n
        for atom in word:
            if atom[0] == "c":
                coeff = ring.mul(coeff, atom[1])
            else:
                exps[atom[1]] += 1
        key = tuple(exps)
        total = ring.add(normal[key], coeff) if key in normal else coeff
        if ring.is_zero(total):
            normal.pop(key, None)
        else:
            normal[key] = total
    return normal


def assert_same_product(f, g):
    """Engine product must match the oracle exactly."""
    engine = f.algebra.multiply(f, g)
    oracle = naive_multiply(f, g)
    assert dict(engine.terms) == oracle, (
        f"engine {dict(engine.terms)} != oracle {oracle}")


def random_element(algebra, rng, max_deg=2, nterms=2, coeff_deg=1,
                   coeff_terms=2, nonzero=True):
    """Random element with bounded monomial and coefficient degrees."""
    ring = algebra.ring
    while True:
        terms = {}
        for _ in range(rng.randrange(1, nterms + 1)):
            exps = [0] * algebra.n
            for _ in range(rng.randrange(0, max_deg + 1)):
                exps[rng.randrange(algebra.n)] += 1
            coeff = ring.random_element(rng, max_deg=coeff_deg,
                                        nterms=coeff_terms)
            key = tuple(exps)
            terms[key] = ring.add(terms[key], coeff) if key in terms else coeff
        element = algebra.element(terms)
        if element.is_zero and nonzero:
            continue
        return element


def random_nonconstant(algebra, rng, max_deg=2, **kwargs):
    """Random element whose leading exponent has positive total degree."""
    while True:
        element = random_element(algebra, rng, max_deg=max_deg, **kwargs)
        exps = element.exp()
        if exps is not None and sum(exps) > 0:
            return element


def rational_poly_in(element, coeffs):
    """sum coeffs[k] * element^k with rational coeffs, coeffs[0] the constant."""
    algebra = element.algebra
    total = algebra.zero
    power = algebra.one
    for k, c in enumerate(coeffs):
        if k:
            power = algebra.multiply(power, element)
        if c:
            total = total + algebra.scalar_mul(Fraction(c), power)
    return total


class ServiceClient:
    """Synchronous in-process client for the ASGI app (test use only)."""

    def __init__(self, app):
        self._app = app

    def post(self, url, json=None):
        return self._request("POST", url, json)

    def get(self, url):
        return self._request("GET", url, None)

    def _request(self, method, url, body):
        async def go():
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(transport=transport,
                                         base_url="http://svc") as client:
                return await client.request(method, url, json=body)
        return asyncio.run(go())
