from fractions import Fraction

import mpmath
import pytest

from xhahnjacobi.exact import Poly, X, gauss_quadrature
from xhahnjacobi.legendre import (R_matrix, legendre, legendre_family_spec, legendre_matches,
                                  legendre_R_entry, legendre_reduced_spec, tau, verify_gpe_equivalence,
                                  verify_legendre_equivalence, xle_polynomial)
from xhahnjacobi.params import ParameterError


def test_integrated_products():
    assert legendre_R_entry(0, 0) == X + 1
    assert legendre_R_entry(0, 1) == (X * X - 1) * Fraction(1, 2)
    for k in range(4):
        for l in range(4):
            at_one = legendre_R_entry(k, l)(Fraction(1))
            assert at_one == (Fraction(2, 2 * k + 1) if k == l else 0)


def test_matrix_shape_and_tau():
    m, t = (1, 3), (Fraction(1), Fraction(2))
    mat = R_matrix(m, t)
    assert mat[0][1] == legendre_R_entry(1, 3) * 2
    assert tau((), ()) == Poly.const(1)
    assert tau(m, (0, 0)) == Poly.const(1)
    assert tau((1,), (1,)) == legendre_R_entry(1, 1) + 1


def test_empty_tuple_gives_legendre():
    assert all(xle_polynomial((), (), i) == legendre(i) for i in range(5))


def test_appended_parameter_is_irrelevant():
    for i in (0, 2, 4):
        base = xle_polynomial((1,), (Fraction(1, 2),), i)
        assert xle_polynomial((1,), (Fraction(1, 2),), i, t_i=7) == base


@pytest.mark.parametrize("m1", [1, 2])
def test_degrees(m1):
    for i in range(6):
        if i != m1:
            assert xle_polynomial((m1,), (1,), i).degree == i + 2 * m1 + 1


def test_weighted_orthogonality_and_isometric_norms():
    # the confluent transformation preserves the Legendre norms 2/(2i+1)
    idx = (0, 2, 3, 4)
    polys = [xle_polynomial((1,), (1,), i) for i in idx]
    t = tau((1,), (1,))
    with mpmath.workdps(30):
        for a, (i, p) in enumerate(zip(idx, polys)):
            for b, q in enumerate(polys):
                val = gauss_quadrature(lambda z: p.evalf(z) * q.evalf(z) / t.evalf(z) ** 2, -1, 1, 60, dps=30)
                want = mpmath.mpf(2) / (2 * i + 1) if a == b else 0
                assert abs(val - want) < mpmath.mpf(10) ** -25


def test_input_validation():
    with pytest.raises(ParameterError):
        xle_polynomial((1,), (1, 2), 0)
    with pytest.raises(ParameterError):
        xle_polynomial((1, 1), (1, 2), 0)
    with pytest.raises(ParameterError):
        xle_polynomial((1,), (1,), 1)


def test_legendre_family_spec_shape():
    spec, ones = legendre_family_spec(2, Fraction(1, 2))
    assert (spec.ax, spec.bx, spec.F) == (-3, -3, (3, 4, 5))
    assert spec.M[2] == Fraction(5, 6) and ones == (0, 1)
    reduced = legendre_reduced_spec(2, Fraction(1, 2))
    assert reduced.F == (1, 2, 5) and reduced.escape_hatch


def test_gpe_degenerate_parameters_rejected():
    with pytest.raises(ParameterError):
        legendre_family_spec(1, 0)  # gives M = 1
    with pytest.raises(ParameterError):
        legendre_family_spec(1, Fraction(-3, 2))  # pole of M


@pytest.mark.parametrize("m1", [1, 2, 3])
@pytest.mark.parametrize("t", [Fraction(1), Fraction(1, 2), Fraction(-1, 3)])
def test_gpe_equivalence(m1, t):
    matches = legendre_matches(m1, t, count=5)
    assert len(matches) == 5
    assert all(mt.proportional and mt.jacobi_degree is not None for mt in matches)
    assert verify_legendre_equivalence(m1, t, count=5)
    assert verify_gpe_equivalence(m1, t)
