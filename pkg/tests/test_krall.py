from fractions import Fraction

import pytest

from xhahnjacobi.exceptional_hahn import admissible
from xhahnjacobi.family import FamilySpec
from xhahnjacobi.krall import (KrallSpec, nu_mass, nu_measure, q_norm_closed_form, q_poly,
                               verify_dual_orthogonality, verify_q_orthogonality)
from xhahnjacobi.params import ParameterError

SPECS = [
    FamilySpec(-2, -1, (1, 2), {0: 2}, 8),
    FamilySpec(-2, -1, (1, 2, 5), {0: 2}, 8),
    FamilySpec(-2, -2, (2, 3), {0: 2, 1: 3}, 9),
    FamilySpec(-3, -2, (1, 2, 3, 4), {0: 2, 1: Fraction(1, 2)}, 9),
    FamilySpec(-3, -1, (1, 2, 3), {0: 3}, 10),
]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"{s.ax},{s.bx},{s.F}")
def test_support_and_degrees(spec):
    ks = KrallSpec.from_family(spec)
    nu = nu_measure(ks)
    assert len(nu) == int(spec.N) - spec.nF + 1
    # F = {1, 2, 5} with M_0 = 2 is not admissible; the measure is then signed
    assert nu.is_positive() == admissible(spec)
    assert [q_poly(n, ks).degree for n in range(len(nu))] == list(range(len(nu)))


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"{s.ax},{s.bx},{s.F}")
def test_orthogonality_with_closed_form_norms(spec):
    ks = KrallSpec.from_family(spec)
    assert verify_q_orthogonality(ks, len(nu_measure(ks)) - 2)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"{s.ax},{s.bx},{s.F}")
def test_dual_orthogonality(spec):
    assert verify_dual_orthogonality(KrallSpec.from_family(spec))


def test_norm_uses_shifted_size():
    # with the size N + ax + bx the closed form matches; the unshifted size does not
    ks = KrallSpec.from_family(SPECS[0])
    nu = nu_measure(ks)
    q = q_poly(1, ks)
    assert nu.inner(q, q) == q_norm_closed_form(1, ks)
    assert ks.Nn == SPECS[0].N - 3


def test_mass_lookup_by_either_lattice_label():
    ks = KrallSpec.from_family(SPECS[2])
    s = 2
    assert nu_mass(ks, s) == nu_mass(ks, -s - ks.a - ks.b - 1) != 0


def test_krall_parameters_validated():
    with pytest.raises(ParameterError):
        KrallSpec(1, 2, 5, {0: 2})
