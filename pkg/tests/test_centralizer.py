"""Commutation, bounded centralizer slices, and the leading-coefficient identity."""

import random
from fractions import Fraction

import pytest

from skewpbw.centralizer import centralizer_bounded, commutes, \
    element_coordinate_columns, lc_identity_check, residue_class_profile
from skewpbw.errors import ContractError
from skewpbw.exprs import format_element, parse_element
from skewpbw.presets import PRESET_NAMES, preset

from support import random_element, random_nonconstant, rational_poly_in


def test_commutes_basics():
    w = preset("weyl")
    x, y = w.gen("x"), w.gen("y")
    assert not commutes(x, y)
    assert commutes(x, x * x + 3 * x)
    assert commutes(w.zero, x)
    assert commutes(w.scalar(5), y)


def test_weyl_centralizer_of_x_squared():
    # hand solve: [x^2, g] = 0 with polynomial coefficients of degree 0
    # forces g into the span of the powers of x
    w = preset("weyl")
    x = w.gen("x")
    basis = centralizer_bounded(x * x, 4, 0)
    assert [format_element(g) for g in basis.elements] == \
        ["1", "x", "x^2", "x^3", "x^4"]
    assert basis.degree_bound == 4 and basis.coeff_degree_bound == 0
    assert len(basis) == 5


def test_centralizer_soundness_by_remultiplication():
    rng = random.Random(43)
    for name in ("weyl", "q-weyl", "quantum-plane", "heisenberg"):
        algebra = preset(name)
        f = random_nonconstant(algebra, rng, max_deg=2)
        basis = centralizer_bounded(f, 2, 1)
        for g in basis.elements:
            assert commutes(f, g), (name, format_element(f), format_element(g))


def test_q_weyl_small_slice():
    qw = preset("q-weyl")
    x = qw.gen("x")
    basis = centralizer_bounded(x, 1, 1)
    assert [format_element(g) for g in basis.elements] == ["1", "x"]


def test_ratfunc_centralizer_finds_known_member():
    # P and Q from the classical commuting pair lie in each other's
    # centralizer; the bounded slice around P must contain P itself
    wr = preset("weyl-ratfunc")
    P = parse_element("x^2 - 2*y^-2", wr)
    basis = centralizer_bounded(P, 2, 2)
    coords_keys, cols = element_coordinate_columns(basis.elements + [P])
    # P must be a linear combination of the returned basis: rank unchanged
    from skewpbw.linalg import rref
    rows_basis = [[col.get(key, Fraction(0)) for col in cols[:-1]]
                  for key in coords_keys]
    rows_all = [[col.get(key, Fraction(0)) for col in cols] for key in coords_keys]
    _, pivots_basis = rref(rows_basis, len(basis.elements))
    _, pivots_all = rref(rows_all, len(basis.elements) + 1)
    assert len(pivots_basis) == len(pivots_all)


def test_residue_class_profile():
    w = preset("weyl")
    x = w.gen("x")
    assert residue_class_profile(x * x, 4, 0) == {0, 1}
    assert residue_class_profile(x, 3, 0) == {0}
    with pytest.raises(ContractError):
        residue_class_profile(w.scalar(3), 2, 0)
    with pytest.raises(ContractError):
        residue_class_profile(w.zero, 2, 0)


def test_lc_identity_on_commuting_pairs():
    rng = random.Random(47)
    for name in PRESET_NAMES:
        algebra = preset(name)
        base_deg = 1 if name == "higher-endo" else 2
        for _ in range(10):
            base = random_nonconstant(algebra, rng, max_deg=base_deg)
            f = rational_poly_in(base, [rng.randrange(-3, 4) for _ in range(3)])
            g = rational_poly_in(base, [rng.randrange(-3, 4) for _ in range(3)])
            if f.is_zero or g.is_zero:
                continue
            assert lc_identity_check(f, g), name


def test_lc_identity_rejects_non_commuting():
    w = preset("weyl")
    with pytest.raises(ContractError):
        lc_identity_check(w.gen("x"), w.gen("y"))


def test_lc_identity_zero_inputs():
    w = preset("weyl")
    assert lc_identity_check(w.zero, w.gen("x"))


def test_coordinate_columns_preserve_dependence():
    # 2P - (P + P) flattens to the zero column
    w = preset("weyl")
    x, y = w.gen("x"), w.gen("y")
    P = y * x + y ** 2
    keys, cols = element_coordinate_columns([P, P + P])
    assert all(cols[1][key] == 2 * cols[0][key] for key in keys)


def test_bounds_validation():
    w = preset("weyl")
    with pytest.raises(ValueError):
        centralizer_bounded(w.gen("x"), -1, 0)
