"""Krall dual Hahn polynomials dual to the exceptional Hahn families.

Notation follows the usual Krall dual Hahn conventions: ``a = -ax``,
``b = -bx`` and ``Nn = N + ax + bx``.  The polynomials ``q_n`` are
determinants whose rows are dual Hahn polynomials evaluated at the lattice
points ``lambda(u)``, ``u`` in ``U_F``, plus one row per perturbed Hahn
polynomial ``W_f`` with ``b <= f <= a+b-1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .classical import dual_hahn, dual_hahn_mass, lambda_value
from .exact import DiscreteMeasure, Poly, as_rational, det, det_poly, neg1, pochhammer
from .family import FamilySpec
from .params import ParameterError, ParamSet, as_paramset
from .perturbed import hh

__all__ = [
    "KrallSpec", "w_poly", "q_poly", "nu_measure", "nu_mass", "phi_psi", "q_norm_closed_form",
    "verify_q_orthogonality", "verify_dual_orthogonality",
]


@dataclass(frozen=True)
class KrallSpec:
    a: int
    b: int
    Nn: Fraction
    M: ParamSet
    U_minus: tuple = ()
    U_plus: tuple = ()

    def __post_init__(self):
        if not 1 <= self.b <= self.a:
            raise ParameterError("need 1 <= b <= a")
        object.__setattr__(self, "Nn", as_rational(self.Nn))
        object.__setattr__(self, "M", as_paramset(self.M))
        object.__setattr__(self, "U_minus", tuple(self.U_minus))
        object.__setattr__(self, "U_plus", tuple(self.U_plus))
        if set(self.U_minus) & set(self.U_plus):
            raise ParameterError("U_minus and U_plus must be disjoint")

    @classmethod
    def from_family(cls, spec: FamilySpec) -> "KrallSpec":
        if spec.ax > spec.bx:
            raise ParameterError("the Krall dual Hahn side needs ax <= bx")
        spec.require_guarantees()
        return cls(spec.a, spec.b, spec.Nn, spec.M, spec.U_minus, spec.U_plus)

    @property
    def U(self) -> tuple:
        return self.U_minus + self.U_plus

    @property
    def nU(self) -> int:
        return len(self.U)

    @property
    def nF(self) -> int:
        return self.nU + self.a

    @property
    def N(self) -> Fraction:
        return self.Nn + self.a + self.b

    def lam(self, x):
        return lambda_value(self.a, self.b, x)

    def sign(self, n: int) -> int:
        a, b = self.a, self.b
        return neg1((n + a + b) * (self.nU + 1) + math.comb(a + b, 2) + math.comb(b, 2) + a)


def w_poly(n: int, ks: KrallSpec) -> Poly:
    """Perturbed Hahn polynomial at the reflected size ``-2 - Nn``."""
    return hh(n, -ks.a, -ks.b, -2 - ks.Nn, ks.M)


def _R(m: int, ks: KrallSpec) -> Poly:
    return dual_hahn(m, ks.a, ks.b, ks.Nn) if m >= 0 else Poly()


def _lower_rows(n: int, ks: KrallSpec, cols):
    a, b, Nn = ks.a, ks.b, ks.Nn
    rows = []

    def u_row(u):
        lu = ks.lam(Fraction(u))
        return [neg1(j - 1) * _R(n - a + j - 1, ks)(lu) for j in cols]

    rows += [u_row(u) for u in ks.U_minus]
    for f in range(b, a + b):
        w = w_poly(f, ks)
        rows.append([pochhammer(a + b + Nn - n - j + 2, j - 1) * w(Fraction(-n + a - j)) for j in cols])
    rows += [u_row(u) for u in ks.U_plus]
    return rows


def q_poly(n: int, ks: KrallSpec) -> Poly:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    cols = range(1, ks.nF + 2)
    first = [_R(n - ks.a + j - 1, ks) * neg1(j - 1) for j in cols]
    lower = [[Poly.const(e) for e in row] for row in _lower_rows(n, ks, cols)]
    num = det_poly([first] + lower)
    den = Poly.from_roots(ks.lam(Fraction(u)) for u in ks.U) * ks.sign(n)
    q, r = num.divmod(den)
    if not r.is_zero():
        raise ArithmeticError(f"q_{n}: determinant is not divisible by the U_F product")
    return q


def phi_psi(n: int, ks: KrallSpec):
    """The scalars ``(Phi_n, Psi_n)``: the lower block minus its first row, in two column sets."""
    nF = ks.nF
    phi = det(_lower_rows(n, ks, range(1, nF + 1))) * ks.sign(n)
    psi = det(_lower_rows(n, ks, [j for j in range(1, nF + 2) if j != nF])) * ks.sign(n)
    return Fraction(phi), Fraction(psi)


def _require_integer_Nn(ks: KrallSpec) -> int:
    if ks.Nn.denominator != 1 or ks.Nn < 0:
        raise ParameterError("a finitely supported measure needs Nn to be a nonnegative integer")
    return int(ks.Nn)


def _nu_atoms(ks: KrallSpec):
    a, b = ks.a, ks.b
    Nn = _require_integer_Nn(ks)
    out = []
    for x in range(-b, 0):
        mass = ((2 * x + a + b + 1) * pochhammer(Fraction(Nn + 1 - x), x + b)
                / pochhammer(Fraction(Nn + b + 1), x + a + 1)) * ks.M[x + b]
        out.append((x, mass))
    pre = pochhammer(Fraction(Nn + 1), b) ** 2 / pochhammer(Fraction(b + 1), a - b)
    for x in range(Nn + 1):
        den = 1
        for i in range(b):
            den *= (x + a + i + 1) * (x + b - i)
        out.append((x, pre * dual_hahn_mass(b, a, Nn, x) / den))
    return out


def nu_mass(ks: KrallSpec, s: int) -> Fraction:
    """Mass of the unmodified measure at ``lambda(s)`` (s and ``-s-a-b-1`` name the same point)."""
    target = ks.lam(Fraction(s))
    for x, m in _nu_atoms(ks):
        if ks.lam(Fraction(x)) == target:
            return m
    return Fraction(0)


def nu_measure(ks: KrallSpec, with_U: bool = True) -> DiscreteMeasure:
    """The Krall dual Hahn measure; ``with_U`` multiplies by ``prod (x - lambda(u))``."""
    U = [ks.lam(Fraction(u)) for u in ks.U] if with_U else []
    atoms = []
    for x, m in _nu_atoms(ks):
        p = ks.lam(Fraction(x))
        for lu in U:
            m *= p - lu
        atoms.append((p, m))
    return DiscreteMeasure(atoms)


def q_norm_closed_form(n: int, ks: KrallSpec) -> Fraction:
    """Closed form of ``<q_n, q_n>``; the size parameter here is ``Nn``, not ``N``."""
    a, b, Nn = ks.a, ks.b, ks.Nn
    phi0, _ = phi_psi(n, ks)
    phi1, _ = phi_psi(n + 1, ks)
    num = -math.factorial(n) * _fact(Nn + b) ** 2 * (Nn + a + b - n) ** a
    den = math.factorial(n + ks.nU) * _fact(Nn + a - n) * _fact(Nn + a + b - n)
    return Fraction(num, 1) / den * phi0 * phi1


def _fact(q) -> int:
    q = as_rational(q)
    if q.denominator != 1 or q < 0:
        raise ValueError(f"factorial of {q}")
    return math.factorial(int(q))


def verify_q_orthogonality(ks: KrallSpec, upTo: int) -> bool:
    nu = nu_measure(ks)
    qs = [q_poly(n, ks) for n in range(upTo + 1)]
    G = nu.gram(qs)
    for i in range(upTo + 1):
        for j in range(upTo + 1):
            if i != j and G[i][j] != 0:
                return False
        if G[i][i] != q_norm_closed_form(i, ks):
            return False
    return True


def verify_dual_orthogonality(ks: KrallSpec) -> bool:
    nu = nu_measure(ks)
    size = len(nu)
    qs = [q_poly(n, ks) for n in range(size)]
    norms = [nu.inner(q, q) for q in qs]
    pts = nu.points
    vals = [[q(p) for p in pts] for q in qs]
    for s, ms in enumerate(nu.masses):
        for t in range(size):
            total = sum((vals[n][s] * vals[n][t] / norms[n] for n in range(size)), Fraction(0))
            if total != (1 / ms if s == t else 0):
                return False
    return True
