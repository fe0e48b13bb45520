"""Exceptional Jacobi polynomials built from the perturbed Jacobi sequence.

``xjacobi(n, spec)`` is the Wronskian-type determinant whose rows are
``P_{n-uF}`` and ``P_f`` (f in F) and whose column j holds derivatives of
order ``j``.  A spec is a :class:`FamilySpec` without N.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .classical import lambda_value
from .exact import (Poly, RationalFunction, X, det_poly, gauss_legendre_rule, neg1,
                    sturm_roots_in_interval, vandermonde)
from .family import FamilySpec, GuaranteeError, bar_rows, reindex
from .params import ParameterError
from .perturbed import pp_general, pp_leading_coefficient, pp_window2_scaled
from .exceptional_hahn import admissible, omega_hahn, xhahn

__all__ = [
    "JacobiFamilySpec", "xjacobi", "xjacobi_bar", "xjacobi_leading_coefficient", "omega_jacobi",
    "omega_leading_coefficient", "eigenvalue", "DifferentialOperator", "differential_operator",
    "eigen_residual", "upsilon_degree", "upsilon_set", "hahn_to_xjacobi_limit_error",
    "omega_limit_error", "omega_rootfree", "jacobi_weight", "norm_factor", "xjacobi_norm",
    "quadrature_gram", "verify_xjacobi_orthogonality", "ScanRecord", "conjecture_scan",
    "ProvedDirectionViolation", "jacobi_collapse_constant", "jacobi_reindexing_factor",
    "verify_jacobi_reindexing",
]

# The Jacobi side uses the same record; N is simply left unset.
JacobiFamilySpec = FamilySpec


def _seq(f: int, spec: FamilySpec) -> Poly:
    return pp_general(f, spec.ax, spec.bx, spec.M)


def _wronskian(polys, size: int) -> Poly:
    return det_poly([[p.deriv(j) for j in range(size)] for p in polys])


def _check_degree(n: int, spec: FamilySpec):
    if n not in spec.sigma:
        raise ParameterError(f"degree {n} is not in the degree set of F={list(spec.F)}")


def xjacobi(n: int, spec: FamilySpec) -> Poly:
    _check_degree(n, spec)
    rows = [_seq(n - spec.uF, spec)] + [_seq(f, spec) for f in spec.F]
    return _wronskian(rows, spec.nF + 1)


def xjacobi_bar(n: int, spec: FamilySpec, ones=()) -> Poly:
    """``prod_i (M_i - 1) * xjacobi(n)``, also defined when ``M_i = 1`` for i in ``ones``."""
    _check_degree(n, spec)
    ax, bx = spec.ax, spec.bx
    rows, rest = bar_rows(spec, (n - spec.uF,) + spec.F,
                          lambda f: pp_general(f, ax, bx, spec.M),
                          lambda f, m: pp_window2_scaled(f, ax, bx, m), ones)
    return _wronskian(rows, spec.nF + 1) * rest


def xjacobi_leading_coefficient(n: int, spec: FamilySpec) -> Fraction:
    _check_degree(n, spec)
    v = n - spec.uF
    out = vandermonde(spec.F)
    for i in (v,) + spec.F:
        out *= pp_leading_coefficient(i, spec.ax, spec.bx)
    for f in spec.F:
        out *= f - v
    return out


def omega_jacobi(spec: FamilySpec) -> Poly:
    return _wronskian([_seq(f, spec) for f in spec.F], spec.nF)


def omega_leading_coefficient(spec: FamilySpec) -> Fraction:
    out = vandermonde(spec.F)
    for f in spec.F:
        out *= pp_leading_coefficient(f, spec.ax, spec.bx)
    return out


def eigenvalue(n: int, spec: FamilySpec) -> Fraction:
    """Eigenvalue of ``xjacobi(n)``: ``-lambda(n - uF)``."""
    return -Fraction(lambda_value(spec.ax, spec.bx, n - spec.uF))


# --------------------------------------------------------------------------
# the differential operator


@dataclass(frozen=True)
class DifferentialOperator:
    """``D = a2 d^2/dx^2 + a1 d/dx + a0`` with ``a2 = 1 - x^2``."""

    a2: Poly
    a1: RationalFunction
    a0: RationalFunction

    def apply(self, p: Poly) -> RationalFunction:
        return self.a1 * p.deriv() + self.a0 * p + RationalFunction(self.a2 * p.deriv(2))


def _operator_parts(spec: FamilySpec):
    ax, bx, nF = spec.ax, spec.bx, spec.nF
    one_minus_sq = 1 - X * X
    first = Poly((bx - ax, -(ax + bx + 2 * nF + 2)))
    mixed = Poly((ax - bx, 2 * nF + ax + bx))
    const = -Fraction(lambda_value(ax, bx, nF))
    return one_minus_sq, first, mixed, const


def differential_operator(spec: FamilySpec) -> DifferentialOperator:
    spec.require_guarantees()
    om = omega_jacobi(spec)
    if om.is_zero():
        raise ArithmeticError("the Wronskian of F vanishes identically")
    sq, first, mixed, const = _operator_parts(spec)
    d1, d2 = om.deriv(), om.deriv(2)
    a1 = RationalFunction(first) - RationalFunction(sq * d1 * 2, om)
    a0 = RationalFunction(Poly.const(const)) + RationalFunction(mixed * d1 + sq * d2, om)
    return DifferentialOperator(sq, a1, a0)


def eigen_residual(n: int, spec: FamilySpec, op: DifferentialOperator | None = None) -> Poly:
    """``Omega * (D P_n - eig P_n)`` as a polynomial (zero when the identity holds)."""
    spec.require_guarantees()
    p = xjacobi(n, spec)
    om = omega_jacobi(spec)
    sq, first, mixed, const = _operator_parts(spec)
    d1, d2 = om.deriv(), om.deriv(2)
    p1, p2 = p.deriv(), p.deriv(2)
    out = (om * (sq * p2 + first * p1 + p * (const - eigenvalue(n, spec)))
           - sq * d1 * p1 * 2 + (mixed * d1 + sq * d2) * p)
    if op is not None:
        r = op.apply(p) - p * eigenvalue(n, spec)
        if not (r.num * om == out * r.den):
            raise ArithmeticError("operator object and cleared identity disagree")
    return out


# --------------------------------------------------------------------------
# the limit from the exceptional Hahn family


def upsilon_degree(n: int, spec: FamilySpec) -> Fraction:
    """Normalizing constant between the Hahn and Jacobi members of degree n."""
    nF = spec.nF
    out = neg1(n) * 2 ** math.comb(nF + 1, 2) * math.factorial(n - spec.uF)
    for f in spec.F:
        out *= math.factorial(f)
    return Fraction(out)


def upsilon_set(K) -> Fraction:
    """Normalizing constant between the Casoratian and the Wronskian of the rows K."""
    K = tuple(sorted(K))
    nK = len(K)
    gK = sum(K) - nK * (nK + 1) // 2 + nK
    out = neg1(gK) * 2 ** math.comb(nK, 2)
    for k in K:
        out *= math.factorial(k)
    return Fraction(out)


def _scaled_point(sample, N: int) -> Fraction:
    return (1 - Fraction(sample)) * N / 2


def hahn_to_xjacobi_limit_error(n: int, spec: FamilySpec, N: int, sample) -> Fraction:
    """``|xhahn(n)((1-x)N/2) / N^n - upsilon * xjacobi(n)(x)|`` at ``x = sample``."""
    hspec = spec.with_N(N)
    x = Fraction(sample)
    h = xhahn(n, hspec)(_scaled_point(x, N)) / Fraction(N) ** n
    return abs(h - upsilon_degree(n, spec) * xjacobi(n, spec)(x))


def omega_limit_error(spec: FamilySpec, N: int, sample) -> Fraction:
    """Same limit for the companion determinants, with power ``uF + nF``."""
    hspec = spec.with_N(N)
    x = Fraction(sample)
    o = omega_hahn(hspec)(_scaled_point(x, N)) / Fraction(N) ** (spec.uF + spec.nF)
    return abs(o - upsilon_set(spec.F) * omega_jacobi(spec)(x))


# --------------------------------------------------------------------------
# root freeness, the weight and the norms


def omega_rootfree(spec: FamilySpec) -> bool:
    """True iff the companion Wronskian has no root in the closed interval [-1, 1]."""
    om = omega_jacobi(spec)
    if om.is_zero():
        return False
    return sturm_roots_in_interval(om, -1, 1) == 0


def _exponents(spec: FamilySpec):
    return spec.ax + spec.nF, spec.bx + spec.nF


def jacobi_weight(spec: FamilySpec):
    """``x -> (1-x)^(ax+nF) (1+x)^(bx+nF) / Omega(x)^2`` for a root free spec (mpmath in and out)."""
    spec.require_guarantees()
    if not omega_rootfree(spec):
        raise ArithmeticError("Omega has a root in [-1, 1]; there is no weight")
    om = omega_jacobi(spec)
    alpha, beta = _exponents(spec)

    def weight(x):
        x = mpmath.mpf(x) if not isinstance(x, mpmath.mpf) else x
        return (1 - x) ** alpha * (1 + x) ** beta / om.evalf(x) ** 2

    weight.exponents = (alpha, beta)
    weight.omega = om
    return weight


def norm_factor(k: int, spec: FamilySpec) -> Fraction:
    """``-(1-M)^2/M`` with ``M = M_{-bx-1-k}`` for ``0 <= k <= -bx-1``, else 1."""
    if 0 <= k <= -spec.bx - 1:
        m = spec.M[-spec.bx - 1 - k]
        return -(1 - m) ** 2 / m
    return Fraction(1)


def xjacobi_norm(k: int, spec: FamilySpec) -> Fraction:
    """Closed form for the weighted square norm of ``xjacobi(k + uF)``, k not in F."""
    spec.require_guarantees()
    if k < 0 or k in spec.F:
        raise ParameterError(f"{k} must be a nonnegative integer outside F")
    ax, bx = spec.ax, spec.bx
    out = Fraction(2) ** (ax + bx + 1) * norm_factor(k, spec)
    for f in spec.F:
        out *= k - f
    for u in spec.U:
        out *= k + u + 1
    for i in range(1, -ax + 1):
        out *= k + ax + bx + i
    return out / (2 * k + ax + bx + 1)


def quadrature_gram(spec: FamilySpec, degrees, nodes: int, dps: int = 50):
    """Gram matrix of ``xjacobi`` members under the weight, by Gauss-Legendre quadrature."""
    weight = jacobi_weight(spec)
    polys = [xjacobi(n, spec) for n in degrees]
    xs, ws = gauss_legendre_rule(nodes, dps)
    with mpmath.workdps(dps):
        wx = [w * weight(x) for x, w in zip(xs, ws)]
        vals = [[p.evalf(x) for x in xs] for p in polys]
        size = len(polys)
        gram = [[mpmath.mpf(0)] * size for _ in range(size)]
        for i in range(size):
            for j in range(i, size):
                s = mpmath.fsum(a * b * c for a, b, c in zip(wx, vals[i], vals[j]))
                gram[i][j] = gram[j][i] = s
    return gram


@dataclass(frozen=True)
class OrthogonalityReport:
    degrees: tuple
    nodes: int
    orthogonality_residual: float
    norm_residual: float
    doubled_orthogonality_residual: float
    doubled_norm_residual: float
    passed: bool

    def __bool__(self):
        return self.passed


def _residuals(gram, spec, degrees, dps):
    with mpmath.workdps(dps):
        return _residuals_at_precision(gram, spec, degrees)


def _residuals_at_precision(gram, spec, degrees):
    off, nrm = 0.0, 0.0
    for i, n in enumerate(degrees):
        closed = xjacobi_norm(n - spec.uF, spec)
        rel = abs(gram[i][i] - mpmath.mpf(closed.numerator) / closed.denominator) / abs(closed)
        nrm = max(nrm, float(rel))
        for j in range(i):
            scale = mpmath.sqrt(abs(gram[i][i] * gram[j][j]))
            off = max(off, float(abs(gram[i][j]) / scale))
    return off, nrm


def verify_xjacobi_orthogonality(spec: FamilySpec, up_to: int, nodes: int = 200,
                                 orth_tol: float = 1e-10, norm_tol: float = 1e-8,
                                 dps: int = 50) -> OrthogonalityReport:
    """Quadrature check of orthogonality and of the closed-form norms, repeated at twice the nodes.

    The orthogonality residual is ``max |<P_i, P_j>| / sqrt(<P_i,P_i><P_j,P_j>)`` over i != j;
    the norm residual is the largest relative deviation from :func:`xjacobi_norm`.
    """
    degrees = tuple(spec.degrees(up_to))
    off, nrm = _residuals(quadrature_gram(spec, degrees, nodes, dps), spec, degrees, dps)
    off2, nrm2 = _residuals(quadrature_gram(spec, degrees, 2 * nodes, dps), spec, degrees, dps)
    passed = max(off, off2) < orth_tol and max(nrm, nrm2) < norm_tol
    return OrthogonalityReport(degrees, nodes, off, nrm, off2, nrm2, passed)


# --------------------------------------------------------------------------
# admissibility versus root freeness


class ProvedDirectionViolation(AssertionError):
    """A root free spec that is not admissible: this contradicts a proved implication."""


@dataclass(frozen=True)
class ScanRecord:
    spec: FamilySpec
    admissible: bool
    rootfree: bool

    @property
    def counterexample(self) -> bool:
        """Admissible but not root free (would refute the open converse)."""
        return self.admissible and not self.rootfree


def conjecture_scan(specs) -> list:
    """Admissibility and root freeness for each spec; raises on a root free, non-admissible spec."""
    out = []
    for spec in specs:
        if not spec.guarantees:
            raise GuaranteeError("the scan needs specs satisfying the containment condition")
        rec = ScanRecord(spec, admissible(spec), omega_rootfree(spec))
        if rec.rootfree and not rec.admissible:
            raise ProvedDirectionViolation(f"root free but not admissible: {spec.to_json()}")
        out.append(rec)
    return out


# --------------------------------------------------------------------------
# swapping a second-window entry of F for its partner


def jacobi_collapse_constant(f: int, ax: int, bx: int) -> Fraction:
    """``d`` with ``[(M-1) P_f]_{M=1} = d P_{-f-ax-bx-1}`` for f in the second window."""
    return Fraction(math.factorial(f + ax) * math.factorial(f + bx) * math.factorial(-ax - bx - f - 1),
                    neg1(bx + f) * math.factorial(f))


def jacobi_reindexing_factor(spec: FamilySpec, f: int) -> Fraction:
    r = reindex(spec, f)
    return neg1(r.between) * (spec.M[r.index] - 1) / jacobi_collapse_constant(f, spec.ax, spec.bx)


def verify_jacobi_reindexing(spec: FamilySpec, f: int, degree_max: int) -> dict:
    """Jacobi analog of :func:`xhahnjacobi.exceptional_hahn.verify_reindexing`."""
    r = reindex(spec, f)
    factor = jacobi_reindexing_factor(spec, f)
    special = spec.uF + r.g
    ok = True
    for n in spec.degrees(degree_max):
        if n == special:
            continue
        if xjacobi_bar(n - r.shift, r.swapped) != xjacobi_bar(n, spec, ones={r.index}) * factor:
            ok = False
            break
    moved = spec.M[r.index] + 2
    other = spec.with_M(spec.M.with_value(r.index, moved if moved not in (0, 1) else moved + 3))
    plain = xjacobi(special, spec)
    special_ok = (xjacobi(special, r.swapped) == plain * neg1(r.between - 1)
                  and xjacobi(special, other) == plain)
    return {"renormalized": ok, "special_degree": special_ok}
