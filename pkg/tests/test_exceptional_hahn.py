from fractions import Fraction

import pytest

from xhahnjacobi.exact import neg1
from xhahnjacobi.exceptional_hahn import (admissible, admissible_via_omega, difference_operator,
                                          eigen_residual, eigenvalue, f_bx_set, krall_duality_sides,
                                          lambda_hahn, omega_hahn, orthogonality_measure, reindexing_factor,
                                          sigma_N, verify_krall_duality, verify_lemma32_duality,
                                          verify_omega_duality, verify_reindexing, xhahn, xhahn_bar,
                                          xhahn_leading_coefficient, xhahn_norm)
from xhahnjacobi.family import FamilySpec, GuaranteeError, reindex
from xhahnjacobi.params import ParameterError

SPECS = [
    FamilySpec(-2, -1, (1, 2), {0: 2}, 8),
    FamilySpec(-2, -1, (1, 2), {0: Fraction(1, 2)}, 8),
    FamilySpec(-2, -2, (2, 3), {0: 2, 1: 3}, 9),
    FamilySpec(-2, -1, (1, 2, 4, 5), {0: 2}, 8),
    FamilySpec(-3, -2, (1, 2, 3, 4), {0: -3, 1: 2}, 9),
    FamilySpec(-3, -3, (3, 4, 5, 7), {0: 2, 1: 3, 2: 4}, 10),
]
IDS = [f"{s.ax},{s.bx},{s.F},{dict(s.M)}" for s in SPECS]
# the last spec is not admissible for any choice tried; it only enters the exact identities
ADMISSIBLE = SPECS[:5]


@pytest.mark.parametrize("spec", SPECS, ids=IDS)
def test_degree_and_leading_coefficient(spec):
    for n in spec.degrees(spec.uF + 7):
        h = xhahn(n, spec)
        assert h.degree == n and h.lc == xhahn_leading_coefficient(n, spec)
    assert omega_hahn(spec).degree == spec.uF + spec.nF
    assert lambda_hahn(spec).degree == spec.uF + spec.nF


@pytest.mark.parametrize("spec", SPECS, ids=IDS)
def test_eigen_identity(spec):
    op = difference_operator(spec)
    for n in spec.degrees(spec.uF + 7):
        assert eigen_residual(n, spec, op).is_zero()


def test_eigenvalues_are_shifted_classical():
    spec = SPECS[0]
    # lambda(v) = v (v + ax + bx + 1) at v = n - uF
    assert [eigenvalue(n, spec) for n in (0, 3, 4)] == [0, 3, 8]


def test_eigen_residual_detects_wrong_degree():
    spec = SPECS[0]
    with pytest.raises(ParameterError):
        eigen_residual(1, spec)


@pytest.mark.parametrize("spec", ADMISSIBLE, ids=IDS[:5])
def test_gram_matrix_and_norms(spec):
    assert admissible(spec)
    measure = orthogonality_measure(spec)
    assert measure.is_positive()
    assert len(measure) == int(spec.N) - spec.nF + 1
    degrees = sigma_N(spec)
    polys = [xhahn(n, spec) for n in degrees]
    gram = measure.gram(polys)
    for i, n in enumerate(degrees):
        assert gram[i][i] == xhahn_norm(n, spec)
        assert all(gram[i][j] == 0 for j in range(len(degrees)) if j != i)


def test_members_past_the_truncation_have_zero_norm():
    spec = SPECS[0]
    measure = orthogonality_measure(spec)
    extra = [n for n in spec.degrees(int(spec.N) + spec.nF) if n not in sigma_N(spec)]
    assert extra == [9, 10]
    for n in extra:
        h = xhahn(n, spec)
        assert measure.inner(h, h) == 0
    with pytest.raises(ParameterError):
        xhahn_norm(9, spec)


def test_non_admissible_spec_has_no_measure():
    spec = FamilySpec(-2, -1, (1, 2), {0: Fraction(-1, 2)}, 8)
    assert not admissible(spec) and not admissible_via_omega(spec)
    with pytest.raises((ParameterError, ArithmeticError)):
        orthogonality_measure(spec)


@pytest.mark.parametrize("spec", SPECS, ids=IDS)
def test_admissibility_predicates_agree(spec):
    assert admissible(spec) == admissible_via_omega(spec)


@pytest.mark.parametrize("spec", SPECS[:3] + SPECS[4:5], ids=IDS[:3] + IDS[4:5])
def test_omega_and_lambda_duality(spec):
    for n in range(5):
        assert verify_omega_duality(spec, n) == (True, True)


@pytest.mark.parametrize("spec", [
    FamilySpec(-2, -1, (1, 2), {0: 2}, 8),
    FamilySpec(-3, -1, (1, 2, 3), {0: 3}, 10),
    FamilySpec(-1, -1, (1,), {0: Fraction(-1, 2)}, 6),
    FamilySpec(-3, -2, (2, 3, 4), {0: 2, 1: 3}, 9),
    FamilySpec(-4, -1, (1, 2, 3, 4), {0: -2}, 10),
], ids=lambda s: f"a={s.a}")
def test_krall_duality_holds_up_to_sign_of_a(spec):
    # the two sides agree exactly for even a and differ by an overall sign for odd a
    for n in range(4):
        for v in range(5):
            if v in spec.F:
                continue
            lhs, rhs = krall_duality_sides(spec, n, v)
            assert lhs == neg1(spec.a) * rhs and lhs != 0


def test_duality_rejects_v_in_F():
    with pytest.raises(ParameterError):
        krall_duality_sides(SPECS[0], 0, 1)


@pytest.mark.parametrize("spec", SPECS, ids=IDS)
def test_reflection_swaps_parameters(spec):
    swapped = spec.swapped()
    for n in spec.degrees(spec.uF + 5):
        assert xhahn(n, spec) * neg1(n) == xhahn(n, swapped).scale_arg(-1, spec.N - spec.nF)


def test_dependent_parameter_indices():
    assert f_bx_set(FamilySpec(-2, -1, (1, 2), {0: 2})) == {0}
    assert f_bx_set(FamilySpec(-1, -1, (1,), {0: 2})) == {0}
    assert f_bx_set(FamilySpec(-2, -2, (2, 3), {0: 2, 1: 3})) == {0, 1}
    assert f_bx_set(FamilySpec(-2, -2, (1, 2, 3), {0: 2, 1: 3})) == {1}


def test_mandated_alias():
    assert verify_lemma32_duality is verify_krall_duality
    assert verify_krall_duality(FamilySpec(-2, -1, (1, 2), {0: 2}, 8), 0, 0)


@pytest.mark.parametrize("ax,bx,F", [(-2, -1, (1, 2)), (-2, -2, (2, 3)), (-2, -2, (1, 2, 3)),
                                     (-3, -2, (1, 2, 3, 4)), (-3, -3, (3, 4, 5, 7)), (-3, -3, (2, 3, 4, 5))])
def test_parameters_that_matter(ax, bx, F):
    spec = FamilySpec(ax, bx, F, {i: Fraction(i + 2) for i in range(-bx)}, Fraction(17, 2))
    degrees = spec.degrees(spec.uF + 6)
    base = [xhahn(n, spec) for n in degrees]
    used = []
    for i in range(-bx):
        other = spec.with_M(spec.M.with_value(i, Fraction(-7, 3)))
        if any(xhahn(n, other) != b for n, b in zip(degrees, base)):
            used.append(i)
    assert tuple(used) == spec.F_bx


def test_admissibility_needs_containment():
    spec = FamilySpec(-2, -1, (2,), {0: 2}, 8, escape_hatch=True)
    assert xhahn(4, spec).degree == 4
    with pytest.raises(GuaranteeError):
        admissible(spec)
    with pytest.raises(GuaranteeError):
        eigen_residual(4, spec)


REINDEX_CASES = [
    (FamilySpec(-3, -2, (2, 3, 4), {0: 2, 1: 3}, Fraction(19, 2)), 3),
    (FamilySpec(-3, -3, (3, 4, 5), {0: 2, 1: 3, 2: 5}, 11), 3),
    (FamilySpec(-3, -3, (3, 4, 5), {0: 2, 1: 3, 2: 5}, 11), 4),
    (FamilySpec(-2, -3, (2, 3, 4), {0: 2, 1: Fraction(-1, 2), 2: 5}, 10), 3),
]


@pytest.mark.parametrize("spec,f", REINDEX_CASES)
def test_reindexing_identities(spec, f):
    result = verify_reindexing(spec, f, spec.uF + 6)
    assert result == {"renormalized": True, "special_degree": True}


def test_reindexing_factor_sign_convention():
    # the factor is (M - 1)/(...); the opposite sign (1 - M) fails
    spec, f = REINDEX_CASES[0]
    r = reindex(spec, f)
    factor = reindexing_factor(spec, f)
    n = next(d for d in spec.degrees(spec.uF + 6) if d != spec.uF + r.g and d - r.shift >= 0)
    lhs = xhahn_bar(n - r.shift, r.swapped)
    rhs = xhahn_bar(n, spec, ones={r.index})
    assert not lhs.is_zero()
    assert lhs == rhs * factor and lhs != rhs * (-factor)


def test_bar_normalization_matches_plain_family():
    spec = SPECS[2]
    scale = (spec.M[0] - 1) * (spec.M[1] - 1)
    for n in spec.degrees(spec.uF + 5):
        assert xhahn_bar(n, spec) == xhahn(n, spec) * scale
