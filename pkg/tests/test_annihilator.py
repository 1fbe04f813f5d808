"""Annihilating polynomials: the golden pair, minimality, and the probes.

The classical pair over rational function coefficients is checked against
the single-step rewriting oracle before anything is asserted about the
solver, so the expected values are established independently.
"""

import random
from fractions import Fraction

import pytest

from skewpbw.annihilator import Annihilator, BivariatePoly, BoundsConfig, \
    annihilating_polynomial, constants_field_probe, evaluate_bivariate, \
    fp_module_dependence
from skewpbw.algebra import Algebra
from skewpbw.centralizer import commutes
from skewpbw.errors import CapExhaustedError, ContractError
from skewpbw.exprs import parse_element
from skewpbw.presets import preset
from skewpbw.rings import CoeffRing

from support import naive_multiply, random_nonconstant, rational_poly_in


def golden_pair():
    wr = preset("weyl-ratfunc")
    P = parse_element("x^2 - 2*y^-2", wr)
    Q = parse_element("x^3 - 3*y^-2*x + 3*y^-3", wr)
    return wr, P, Q


class TestGoldenPair:
    def test_oracle_confirms_commutation(self):
        _, P, Q = golden_pair()
        pq = naive_multiply(P, Q)
        qp = naive_multiply(Q, P)
        assert pq == qp

    def test_oracle_confirms_curve(self):
        # Q^2 = P^3 established by the oracle alone
        wr, P, Q = golden_pair()
        q2 = wr.element(naive_multiply(Q, Q))
        p2 = wr.element(naive_multiply(P, P))
        p3 = wr.element(naive_multiply(p2, P))
        assert q2 == p3

    def test_solver_returns_golden_curve(self):
        _, P, Q = golden_pair()
        found = annihilating_polynomial(P, Q)
        assert str(found.poly) == "s^3 - t^2"
        assert found.poly.terms == {(3, 0): Fraction(1), (0, 2): Fraction(-1)}
        assert found.verified
        assert found.residual.is_zero
        assert found.s_bound == 3 and found.t_bound == 2

    def test_polynomial_coefficient_variant(self):
        # the same curve shape with x^2, x^3 over plain polynomial coefficients
        w = preset("weyl")
        x = w.gen("x")
        found = annihilating_polynomial(x ** 2, x ** 3)
        assert str(found.poly) == "s^3 - t^2"
        assert found.verified


class TestMinimality:
    def test_power_families(self):
        w = preset("weyl")
        P = parse_element("x^2 + y", w)
        for k in (1, 2, 3):
            found = annihilating_polynomial(P, P ** k)
            expected = "s - t" if k == 1 else f"s^{k} - t"
            assert str(found.poly) == expected, k
            assert found.verified

    def test_leading_coefficient_is_one(self):
        w = preset("weyl")
        P = parse_element("x^2 + y", w)
        found = annihilating_polynomial(P, 2 * P * P)
        _, lead = found.poly.leading()
        assert lead == Fraction(1)
        assert found.residual.is_zero


class TestQuadraticFamilies:
    def test_random_quadratics_in_p(self):
        rng = random.Random(53)
        for name in ("weyl", "q-weyl", "quantum-plane", "heisenberg"):
            algebra = preset(name)
            for _ in range(3):
                P = random_nonconstant(algebra, rng, max_deg=2)
                coeffs = [Fraction(rng.randrange(-3, 4)) for _ in range(3)]
                if coeffs[2] == 0:
                    coeffs[2] = Fraction(1)
                Q = rational_poly_in(P, coeffs)
                found = annihilating_polynomial(P, Q)
                assert found.verified
                assert found.residual.is_zero
                assert found.t_bound == sum(P.exp())


class TestScalingCovariance:
    def test_substitute_t_over_lambda(self):
        w = preset("weyl")
        P = parse_element("x^2 + y", w)
        Q = P * P + 3 * P
        lam = Fraction(3, 2)
        base = annihilating_polynomial(P, Q)
        scaled_q = w.scalar_mul(lam, Q)
        direct = annihilating_polynomial(P, scaled_q)
        assert direct.verified
        assert evaluate_bivariate(direct.poly, P, scaled_q).is_zero
        # substituting t -> t/lam in the base annihilator kills (P, lam Q)
        substituted = BivariatePoly(
            {(i, j): c / lam ** j for (i, j), c in base.poly.terms.items()})
        assert evaluate_bivariate(substituted, P, scaled_q).is_zero


class TestContracts:
    def test_non_commuting_rejected(self):
        w = preset("weyl")
        with pytest.raises(ContractError):
            annihilating_polynomial(w.gen("x"), w.gen("y"))
        with pytest.raises(ContractError):
            evaluate_bivariate(BivariatePoly({(1, 0): 1}), w.gen("x"), w.gen("y"))

    def test_constant_first_element_rejected(self):
        w = preset("weyl")
        with pytest.raises(ContractError):
            annihilating_polynomial(w.scalar(2), w.gen("x"))

    def test_cap_exhausted(self):
        w = preset("weyl")
        x = w.gen("x")
        with pytest.raises(CapExhaustedError) as err:
            annihilating_polynomial(x, x ** 2, BoundsConfig(max_s=1))
        assert err.value.s_max == 1
        assert err.value.t_bound == 1


class TestEvaluateBivariate:
    def test_matches_direct_expression(self):
        w, P, Q = golden_pair()
        poly = BivariatePoly.from_string("s^3 - t^2")
        assert evaluate_bivariate(poly, P, Q) == P ** 3 - Q ** 2

    def test_constant_term(self):
        w = preset("weyl")
        x = w.gen("x")
        poly = BivariatePoly({(0, 0): Fraction(5), (1, 0): Fraction(1)})
        assert evaluate_bivariate(poly, x, x) == x + 5


class TestBivariatePoly:
    def test_leading_and_normalize(self):
        poly = BivariatePoly.from_string("2*t - 4*s^2")
        cell, lead = poly.leading()
        assert cell == (2, 0) and lead == Fraction(-4)
        normalized = poly.normalized()
        assert normalized.terms == {(2, 0): Fraction(1), (0, 1): Fraction(-1, 2)}

    def test_degrees_and_zero(self):
        poly = BivariatePoly.from_string("s*t^2 + 1")
        assert poly.degree() == 3
        assert poly.s_degree() == 1 and poly.t_degree() == 2
        assert BivariatePoly({}).is_zero
        assert BivariatePoly({}).degree() == -1

    def test_string_round_trip(self):
        text = "s^3 - 2*s*t + 1/2"
        assert str(BivariatePoly.from_string(text)) == text


class TestModuleDependence:
    def test_powers_of_square(self):
        # {1, Q, Q^2} with Q = P^2 is dependent over the polynomials in P
        w = preset("weyl")
        P = w.gen("x") ** 2
        Q = P * P
        elements = [w.one, Q, Q * Q]
        rows = fp_module_dependence(P, elements, 4)
        assert rows
        for row in rows:
            assert all(g.t_degree() <= 0 for g in row)
            total = w.zero
            for g, element in zip(row, elements):
                total = total + w.multiply(evaluate_bivariate(g, P, w.one), element)
            assert total.is_zero

    def test_independent_family_returns_none(self):
        w = preset("weyl")
        P = w.gen("x") ** 2
        assert fp_module_dependence(P, [w.one, w.gen("x")], 3) is None

    def test_non_commuting_element_rejected(self):
        w = preset("weyl")
        with pytest.raises(ContractError):
            fp_module_dependence(w.gen("x"), [w.gen("y")], 2)


class TestConstantsProbe:
    def test_weyl_constants_are_rational(self):
        w = preset("weyl")
        basis = constants_field_probe(w, 3)
        assert len(basis) == 1
        assert w.ring.eq(basis[0], w.ring.one())

    def test_trivial_action_everything_constant(self):
        plain = Algebra(CoeffRing.poly("y"), ("x",))
        basis = constants_field_probe(plain, 3)
        assert len(basis) == 4

    def test_rational_ring(self):
        qp = preset("quantum-plane")
        assert constants_field_probe(qp, 2) == [Fraction(1)]

    def test_ratfunc_polynomial_slice(self):
        wr = preset("weyl-ratfunc")
        basis = constants_field_probe(wr, 2)
        assert len(basis) == 1
