"""Exceptional Legendre polynomials from confluent Darboux transformations.

This is an independent construction (no Wronskians, no perturbed Jacobi
polynomials) used to cross-check the exceptional Jacobi families.  For a
tuple ``m`` with parameters ``t`` the matrix ``R_m(z)`` has entries
``delta_{kl} + t_l int_{-1}^z P_{m_k} P_{m_l}``; the family member with index
i is the last entry of ``adj(R_{(m,i)}) (P_{m_1}, ..., P_{m_n}, P_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .classical import jacobi
from .exact import Poly, as_rational, det_poly, neg1
from .family import FamilySpec
from .params import ParameterError, ParamSet
from .exceptional_jacobi import xjacobi

__all__ = [
    "legendre", "legendre_R_entry", "R_matrix", "tau", "xle_polynomial", "legendre_family_spec",
    "legendre_reduced_spec",
    "LegendreMatch", "legendre_matches", "verify_legendre_equivalence", "verify_gpe_equivalence",
]


@lru_cache(maxsize=None)
def legendre(n: int) -> Poly:
    return jacobi(n, 0, 0)


@lru_cache(maxsize=None)
def legendre_R_entry(mk: int, ml: int) -> Poly:
    """``int_{-1}^z P_mk(u) P_ml(u) du`` as a polynomial in z."""
    if mk < 0 or ml < 0:
        raise ValueError("indices must be nonnegative")
    prim = (legendre(mk) * legendre(ml)).antideriv()
    return prim - prim(Fraction(-1))


def _params(m, t):
    m = tuple(int(k) for k in m)
    t = tuple(as_rational(v) for v in t)
    if len(m) != len(t):
        raise ParameterError("m and t must have the same length")
    if len(set(m)) != len(m) or any(k < 0 for k in m):
        raise ParameterError("m must contain distinct nonnegative integers")
    return m, t


def R_matrix(m, t):
    m, t = _params(m, t)
    n = len(m)
    return [[legendre_R_entry(m[k], m[l]) * t[l] + (1 if k == l else 0) for l in range(n)]
            for k in range(n)]


def tau(m, t) -> Poly:
    """``det R_m``; the weight of the family is ``1 / tau^2``."""
    if not m:
        return Poly.const(1)
    return det_poly(R_matrix(m, t))


def _minor(mat, row, col):
    return [[e for j, e in enumerate(r) if j != col] for i, r in enumerate(mat) if i != row]


def xle_polynomial(m, t, i: int, t_i=0) -> Poly:
    """Family member with index ``i``.

    ``t_i`` is the parameter attached to the appended index; the last row of
    the adjugate never uses it, so any value gives the same polynomial.
    """
    m, t = _params(m, t)
    if i < 0:
        raise ValueError("index must be nonnegative")
    if i in m:
        raise ParameterError(f"index {i} belongs to m")
    if not m:
        return legendre(i)
    if tau(m, t).is_zero():
        raise ArithmeticError("tau vanishes identically")
    ext, text = m + (i,), t + (as_rational(t_i),)
    mat = R_matrix(ext, text)
    last = len(ext) - 1
    out = Poly()
    for k, mk in enumerate(ext):
        cof = det_poly(_minor(mat, k, last)) if last else Poly.const(1)
        out = out + cof * legendre(mk) * neg1(k + last)
    return out


# --------------------------------------------------------------------------
# comparison with the exceptional Jacobi family


def _legendre_parameter(m1: int, t) -> Fraction:
    if m1 < 1:
        raise ParameterError("m1 must be a positive integer")
    den = 2 * m1 + 1 + 2 * as_rational(t)
    if den == 0:
        raise ParameterError(f"t = {-(2 * m1 + 1)}/2 makes M_{m1} infinite", m1)
    return Fraction(2 * m1 + 1) / den


def legendre_family_spec(m1: int, t) -> tuple:
    """Matching exceptional Jacobi spec and the parameter indices set to 1.

    ``ax = bx = -m1-1``, ``F = {m1+1, ..., 2m1+1}``, ``M_{m1} = (2m1+1)/(2m1+1+2t)``
    and ``M_j = 1`` for ``j < m1``.
    """
    spec = FamilySpec(-m1 - 1, -m1 - 1, tuple(range(m1 + 1, 2 * m1 + 2)),
                      ParamSet({m1: _legendre_parameter(m1, t)}))
    return spec, tuple(range(m1))


def legendre_reduced_spec(m1: int, t, free=2) -> FamilySpec:
    """The same family after swapping each f < 2m1+1 for its partner: ``F = {1, ..., m1, 2m1+1}``.

    The parameters ``M_j``, ``j < m1``, cancel out of every member; they are
    set to ``free * (j+1)`` only so that the rows can be built.
    """
    vals = {j: as_rational(free) * (j + 1) for j in range(m1)}
    vals[m1] = _legendre_parameter(m1, t)
    F = tuple(range(1, m1 + 1)) + (2 * m1 + 1,)
    return FamilySpec(-m1 - 1, -m1 - 1, F, ParamSet(vals), escape_hatch=True)


@dataclass(frozen=True)
class LegendreMatch:
    index: int
    degree: int
    jacobi_degree: int | None
    ratio: Fraction | None

    @property
    def proportional(self) -> bool:
        return self.ratio is not None


def _ratio(p: Poly, q: Poly):
    """The constant c with ``p = c q``, or None."""
    if p.is_zero() or q.is_zero() or p.degree != q.degree:
        return None
    c = p.lc / q.lc
    return c if p == q * c else None


def legendre_matches(m1: int, t, count: int = 4) -> list:
    """Pair the first ``count`` Legendre-side members with the Jacobi member of equal degree.

    The Jacobi side is the reduced family of :func:`legendre_family_spec`: with ``M_j = 1``
    its members either coincide (up to a constant) with the reduced family or
    vanish, and the reduced family also covers the degrees where they vanish.
    """
    spec = legendre_reduced_spec(m1, t)
    t = as_rational(t)
    wanted = [i for i in range(count + 1) if i != m1][:count]
    top = max(wanted) + 2 * m1 + 1
    by_degree = {}
    for n in spec.degrees(top):
        p = xjacobi(n, spec)
        if not p.is_zero():
            by_degree.setdefault(p.degree, (n, p))
    out = []
    for i in wanted:
        q = xle_polynomial((m1,), (t,), i)
        hit = by_degree.get(q.degree)
        if hit is None:
            out.append(LegendreMatch(i, q.degree, None, None))
        else:
            out.append(LegendreMatch(i, q.degree, hit[0], _ratio(q, hit[1])))
    return out


def verify_legendre_equivalence(m1: int, t, count: int = 4) -> bool:
    """True iff each of the first ``count`` members is a nonzero multiple of its Jacobi match."""
    return all(mt.proportional for mt in legendre_matches(m1, t, count))


verify_gpe_equivalence = verify_legendre_equivalence
