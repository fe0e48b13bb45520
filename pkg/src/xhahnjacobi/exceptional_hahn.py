"""Exceptional Hahn polynomials built from the perturbed Hahn sequence.

``xhahn(n, spec)`` is the Casoratian determinant whose rows are
``H_{n-uF}`` and ``H_f`` (f in F), with column j shifted by ``j``.  The
companions ``omega_hahn`` and ``lambda_hahn`` build the coefficients of the
second order difference operator and the orthogonality weight.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .classical import lambda_value
from .exact import (DiscreteMeasure, Poly, RationalFunction, X, binom, det_poly, neg1,
                    pochhammer, rising, vandermonde)
from .family import FamilySpec, bar_rows, reindex
from .krall import KrallSpec, nu_mass, phi_psi, q_poly
from .params import ParameterError
from .perturbed import hh_general, hh_leading_coefficient, hh_window2_scaled

__all__ = [
    "xhahn", "xhahn_bar", "xhahn_leading_coefficient", "omega_hahn", "lambda_hahn", "eigenvalue",
    "DifferenceOperator", "difference_operator", "eigen_residual", "admissible",
    "admissible_via_omega", "orthogonality_measure", "xhahn_norm", "sigma_N",
    "krall_duality_sides", "verify_krall_duality", "verify_lemma32_duality", "f_bx_set",
    "verify_omega_duality",
    "window_collapse_constant", "reindexing_factor", "verify_reindexing",
]


def _seq(f: int, spec: FamilySpec) -> Poly:
    return hh_general(f, spec.ax, spec.bx, spec.require_N(), spec.M)


def _casoratian(polys, cols) -> Poly:
    return det_poly([[p.shift(j) for j in cols] for p in polys])


def _check_degree(n: int, spec: FamilySpec):
    if n not in spec.sigma:
        raise ParameterError(f"degree {n} is not in the degree set of F={list(spec.F)}")


def xhahn(n: int, spec: FamilySpec) -> Poly:
    _check_degree(n, spec)
    rows = [_seq(n - spec.uF, spec)] + [_seq(f, spec) for f in spec.F]
    return _casoratian(rows, range(spec.nF + 1))


def xhahn_bar(n: int, spec: FamilySpec, ones=()) -> Poly:
    """``prod_i (M_i - 1) * xhahn(n)``, also defined when ``M_i = 1`` for i in ``ones``."""
    _check_degree(n, spec)
    N, ax, bx = spec.require_N(), spec.ax, spec.bx
    rows, rest = bar_rows(spec, (n - spec.uF,) + spec.F,
                          lambda f: hh_general(f, ax, bx, N, spec.M),
                          lambda f, m: hh_window2_scaled(f, ax, bx, N, m), ones)
    return _casoratian(rows, range(spec.nF + 1)) * rest


def xhahn_leading_coefficient(n: int, spec: FamilySpec) -> Fraction:
    _check_degree(n, spec)
    v = n - spec.uF
    out = vandermonde(spec.F)
    for i in (v,) + spec.F:
        out *= hh_leading_coefficient(i, spec.ax, spec.bx)
    for f in spec.F:
        out *= f - v
    return out


def omega_hahn(spec: FamilySpec) -> Poly:
    return _casoratian([_seq(f, spec) for f in spec.F], range(spec.nF))


def lambda_hahn(spec: FamilySpec) -> Poly:
    """Casoratian of the F rows with the next-to-last shift skipped."""
    cols = [j for j in range(spec.nF + 1) if j != spec.nF - 1]
    return _casoratian([_seq(f, spec) for f in spec.F], cols)


def eigenvalue(n: int, spec: FamilySpec) -> Fraction:
    return Fraction(lambda_value(spec.ax, spec.bx, n - spec.uF))


# --------------------------------------------------------------------------
# the difference operator


@dataclass(frozen=True)
class DifferenceOperator:
    """``D = hm1(x) S_{-1} + h0(x) S_0 + h1(x) S_1`` with rational coefficients."""

    hm1: RationalFunction
    h0: RationalFunction
    h1: RationalFunction

    def apply(self, p: Poly) -> RationalFunction:
        return self.hm1 * p.shift(-1) + self.h0 * p + self.h1 * p.shift(1)


def difference_operator(spec: FamilySpec) -> DifferenceOperator:
    spec.require_guarantees()
    N, nF, ax, bx = spec.require_N(), spec.nF, spec.ax, spec.bx
    om = omega_hahn(spec)
    if om.is_zero():
        raise ArithmeticError("the Casoratian of F vanishes identically")
    om1 = om.shift(1)
    lam = lambda_hahn(spec)
    hm1 = RationalFunction(X * (X - bx - N - 1) * om1, om)
    g = (X + ax + nF) * (X - N - 1 + nF) * lam
    delta = RationalFunction(g.shift(1), om1) - RationalFunction(g, om)
    base = -(X + nF) * (X - bx - N - 1 + nF) - (X + ax + 1 + nF) * (X - N + nF)
    h0 = delta + base
    h1 = RationalFunction((X + ax + nF + 1) * (X - N + nF) * om, om1)
    return DifferenceOperator(hm1, h0, h1)


def eigen_residual(n: int, spec: FamilySpec, op: DifferenceOperator | None = None) -> Poly:
    """``Omega(x) Omega(x+1) (D h_n - eig h_n)`` as a polynomial (zero when the identity holds)."""
    spec.require_guarantees()
    N, nF, ax, bx = spec.require_N(), spec.nF, spec.ax, spec.bx
    h = xhahn(n, spec)
    om = omega_hahn(spec)
    om1 = om.shift(1)
    lam = lambda_hahn(spec)
    g = (X + ax + nF) * (X - N - 1 + nF) * lam
    base = -(X + nF) * (X - bx - N - 1 + nF) - (X + ax + 1 + nF) * (X - N + nF)
    mid = (base - eigenvalue(n, spec)) * om * om1 + g.shift(1) * om - g * om1
    out = (X * (X - bx - N - 1) * om1 * om1 * h.shift(-1) + mid * h
           + (X + ax + nF + 1) * (X - N + nF) * om * om * h.shift(1))
    if op is not None:
        # cross-check against the operator object
        r = op.apply(h) - h * eigenvalue(n, spec)
        if not (r.num * (om * om1) == out * r.den):
            raise ArithmeticError("operator object and cleared identity disagree")
    return out


# --------------------------------------------------------------------------
# admissibility and orthogonality


def _sign(q) -> int:
    return (q > 0) - (q < 0)


def f_bx_set(spec: FamilySpec) -> set:
    """Indices i whose parameter M_i actually enters the family."""
    return set(spec.F_bx)


def admissible(spec: FamilySpec) -> bool:
    """Sign conditions on M and F (ax <= bx, containment condition required)."""
    spec.require_guarantees()
    if spec.ax > spec.bx:
        raise ParameterError("admissibility is stated for ax <= bx")
    ax, bx = spec.ax, spec.bx
    for i in spec.F_bx:
        prod = Fraction(1)
        for f in spec.F_ext:
            prod *= (i - f - ax) * (i + f + bx + 1)
        if _sign(spec.M[i]) != _sign(prod):
            return False
    upper = [f for f in spec.F if f >= -ax - bx]
    if upper:
        top = max(f + ax + bx for f in spec.F)
        for x in range(top + 1):
            prod = 1
            for f in upper:
                prod *= x - f - ax - bx
            if prod < 0:
                return False
    return True


def admissible_via_omega(spec: FamilySpec) -> bool:
    spec.require_guarantees()
    N = spec.require_positive_integer_N()
    om = omega_hahn(spec)
    vals = [om(Fraction(x)) for x in range(N - spec.nF + 2)]
    return all(vals[k] * vals[k + 1] > 0 for k in range(N - spec.nF + 1))


def sigma_N(spec: FamilySpec):
    """Members of the degree set up to ``N + uF``."""
    N = spec.require_positive_integer_N()
    return spec.sigma.members(N + spec.uF)


def orthogonality_measure(spec: FamilySpec) -> DiscreteMeasure:
    spec.require_guarantees()
    N = spec.require_positive_integer_N()
    if spec.ax > spec.bx:
        raise ParameterError("the orthogonality measure is stated for ax <= bx")
    om = omega_hahn(spec)
    vals = [om(Fraction(x)) for x in range(N - spec.nF + 2)]
    if any(v == 0 for v in vals):
        raise ArithmeticError("Omega vanishes at a support node; the spec is not admissible")
    if not admissible(spec):
        raise ParameterError("the spec is not admissible")
    nF, ax, bx = spec.nF, spec.ax, spec.bx
    atoms = []
    for x in range(N - nF + 1):
        mass = binom(Fraction(ax + nF + x), x) * binom(Fraction(bx + N - x), N - nF - x) / (vals[x] * vals[x + 1])
        atoms.append((x, mass))
    return DiscreteMeasure(atoms)


# --------------------------------------------------------------------------
# constants of the duality with the Krall dual Hahn polynomials


def _xi(n: int, spec: FamilySpec) -> Fraction:
    N, nF, ax, bx = spec.N, spec.nF, spec.ax, spec.bx
    out = rising(N - n + 1, n + ax + bx) ** (ax + nF + 1)
    for j in range(1, nF + 2):
        out *= pochhammer(N - n - j + 2, j - 1)
    return Fraction(out)


def _zeta(v: int, spec: FamilySpec) -> Fraction:
    N, ax, bx = spec.N, spec.ax, spec.bx
    return Fraction(rising(-N - ax - bx, v) * pochhammer(Fraction(v + 1), -ax) * math.factorial(v - ax - bx))


def _kappa(spec: FamilySpec) -> Fraction:
    out = Fraction(1)
    for u in spec.U_minus:
        out *= 1 - spec.M[-u + spec.ax - 1]
    for u in spec.U:
        out *= _zeta(u, spec)
    return out


def _tau(v: int, spec: FamilySpec) -> Fraction:
    ax, bx = spec.ax, spec.bx
    out = Fraction(1)
    for u in spec.U:
        out *= lambda_value(-ax, -bx, v + ax + bx) - lambda_value(-ax, -bx, u)
    return out


def _theta(v: int, spec: FamilySpec) -> Fraction:
    if 0 <= v <= -spec.bx - 1:
        return 1 - spec.M[-spec.bx - 1 - v]
    return Fraction(1)


def krall_duality_sides(spec: FamilySpec, n: int, v: int):
    """Both sides of the duality between ``h_{v+uF}`` at ``n`` and ``q_n`` at ``lambda(v+ax+bx)``."""
    spec.require_guarantees()
    if v < 0 or v in spec.F:
        raise ParameterError(f"v={v} must be a nonnegative integer outside F")
    ks = KrallSpec.from_family(spec)
    lhs = _xi(n, spec) * xhahn(v + spec.uF, spec)(Fraction(n))
    s = v + spec.ax + spec.bx
    rhs = (_kappa(spec) * _tau(v, spec) * _zeta(s, spec) * _theta(v, spec)
           * q_poly(n, ks)(ks.lam(Fraction(s))))
    return lhs, rhs


def verify_krall_duality(spec: FamilySpec, n: int, v: int) -> bool:
    lhs, rhs = krall_duality_sides(spec, n, v)
    return lhs == rhs


verify_lemma32_duality = verify_krall_duality


def verify_omega_duality(spec: FamilySpec, n: int) -> tuple:
    """Dualities of Omega with Phi and of Lambda with Psi at the integer n."""
    spec.require_guarantees()
    ks = KrallSpec.from_family(spec)
    N, nF, ax, bx = spec.N, spec.nF, spec.ax, spec.bx
    phi, psi = phi_psi(n, ks)
    xi, kap = _xi(n, spec), _kappa(spec)
    s = neg1(n + bx)
    ok_phi = xi * omega_hahn(spec)(Fraction(n)) == s * rising(N - n - nF + 1, n + ax + bx + nF) * kap * phi
    ok_psi = xi * lambda_hahn(spec)(Fraction(n)) == s * rising(N - n - nF + 2, n + ax + bx + nF - 1) * kap * psi
    return ok_phi, ok_psi


def xhahn_norm(n: int, spec: FamilySpec) -> Fraction:
    """Closed form of the squared norm of ``xhahn(n)`` under the orthogonality measure."""
    spec.require_guarantees()
    N = spec.require_positive_integer_N()
    v = n - spec.uF
    if v < 0 or v in spec.F or v > N:
        raise ParameterError(f"degree {n} is not in the truncated degree set")
    ax, bx = spec.ax, spec.bx
    ks = KrallSpec.from_family(spec)
    nU = ks.nU
    s = v + ax + bx
    top = _tau(v, spec) * _zeta(s, spec) ** 2 * _theta(v, spec) ** 2
    for j in range(1, -bx + 1):
        top *= (N + ax + bx + j) ** 2
    return top / (math.factorial(nU) * math.factorial(-ax + bx + nU) * nu_mass(ks, s))


# --------------------------------------------------------------------------
# swapping a second-window entry of F for its partner


def window_collapse_constant(f: int, ax: int, bx: int, N) -> Fraction:
    """``c`` with ``[(M-1) H_f]_{M=1} = c H_{-f-ax-bx-1}`` for f in the second window."""
    N = Fraction(N)
    return (neg1(bx + f) * math.factorial(f + bx) * math.factorial(f + ax)
            * pochhammer(-N - ax - bx - f - 1, 2 * f + ax + bx + 1))


def reindexing_factor(spec: FamilySpec, f: int) -> Fraction:
    """Ratio ``bar h_{n-shift}[F swapped] / bar h_n[F, M_index = 1]``."""
    r = reindex(spec, f)
    c = window_collapse_constant(f, spec.ax, spec.bx, spec.require_N())
    return (spec.M[r.index] - 1) / (neg1(r.between) * c)


def verify_reindexing(spec: FamilySpec, f: int, degree_max: int) -> dict:
    """Check both reindexing identities for degrees up to ``degree_max``.

    ``renormalized``: the bar families are proportional by ``reindexing_factor``.
    ``special_degree``: at ``uF + g`` the plain families agree up to ``(-1)^(between-1)``,
    and the F side does not depend on the parameter attached to f.
    """
    r = reindex(spec, f)
    factor = reindexing_factor(spec, f)
    special = spec.uF + r.g
    ok = True
    for n in spec.degrees(degree_max):
        if n == special:
            continue
        lhs = xhahn_bar(n - r.shift, r.swapped)
        if lhs != xhahn_bar(n, spec, ones={r.index}) * factor:
            ok = False
            break
    moved = spec.M[r.index] + 2
    other = spec.with_M(spec.M.with_value(r.index, moved if moved not in (0, 1) else moved + 3))
    plain = xhahn(special, spec)
    special_ok = (xhahn(special, r.swapped) == plain * neg1(r.between - 1)
                  and xhahn(special, other) == plain)
    return {"renormalized": ok, "special_degree": special_ok}
