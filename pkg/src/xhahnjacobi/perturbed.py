"""Perturbed Hahn and Jacobi families used as building blocks of the
exceptional families.

For negative integers ``ax <= bx`` some Hahn (and Jacobi) polynomials
vanish or drop degree.  The perturbed sequences replace them by exact
first order parameter derivatives, computed here with jets:

* ``ceil((-ax-bx)/2) <= n <= -ax-1``: difference of s-derivatives of a
  normalized Hahn series with ``a = ax - s``;
* ``-ax <= n <= -ax-bx-1``: ``M/(M-1) * d/ds h_n^{ax+s/M, bx-s, N}`` at
  ``s = 0`` (this is where the parameter ``M_{ax+n}`` enters);
* every other degree: the plain Hahn (Jacobi) polynomial.

The long closed-form expansions are kept in separate ``*_expansion``
functions; they are independent routes used to cross-check the jets.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .classical import hahn, jacobi
from .exact import Jet, Poly, X, as_rational, binom, neg1, pochhammer
from .params import ParameterError, ParamSet, as_paramset

__all__ = [
    "windows", "branch", "phi_hahn", "phi_jacobi", "hh", "hh_general", "pp",
    "pp_general", "hh_leading_coefficient", "pp_leading_coefficient",
    "gamma_coefficient", "hh_to_pp_limit_error",
    "hh_expansion", "pp_expansion", "hh_window2_closed_form",
    "pp_window2_closed_form", "hh_window1_limit", "pp_window1_limit",
    "hh_window2_scaled", "pp_window2_scaled",
]

EPS = Jet(0, 1)


def _ceil_half(k: int) -> int:
    return -((-k) // 2)


def windows(ax: int, bx: int):
    """The two special degree windows for ``ax <= bx`` (inclusive ranges)."""
    lo, hi = (ax, bx) if ax <= bx else (bx, ax)
    w1 = range(_ceil_half(-ax - bx), -lo)
    w2 = range(-lo, -ax - bx)
    return w1, w2


def branch(n: int, ax: int, bx: int) -> int:
    """1 or 2 for the special windows, 3 for plain degrees."""
    w1, w2 = windows(ax, bx)
    if n in w1:
        return 1
    if n in w2:
        return 2
    return 3


def _check_ints(ax, bx):
    if int(ax) != ax or int(bx) != bx or ax > -1 or bx > -1:
        raise ParameterError("ax and bx must be negative integers")
    return int(ax), int(bx)


def _check_N(N):
    # Every construction is polynomial in N; nonpositive integers are allowed
    # because the Krall auxiliary sequence evaluates at N = -2 - (N + ax + bx).
    return as_rational(N)


def _jet_deriv(p: Poly) -> Poly:
    return p.jet_parts()[1]


def _jet_value(p: Poly) -> Poly:
    return p.jet_parts()[0]


# --------------------------------------------------------------------------
# normalized hypergeometric seeds


def phi_hahn(u: int, ax: int, bx: int, N, s) -> Poly:
    """Normalized 3F2 seed ``phi_u(s, x)``; a polynomial in x over the ring of ``s``.

    Equal, up to a constant, to the Hahn polynomial with ``a = ax - s``.
    """
    ax, bx = _check_ints(ax, bx)
    if not 0 <= u <= -ax - 1:
        raise ParameterError("phi_hahn needs 0 <= u <= -ax-1")
    N = as_rational(N)
    m = max(u, -ax - bx - u - 1)
    pre = pochhammer(Fraction(ax + 1), m)
    out = Poly()
    mx = Poly.const(1)
    for k in range(u + 1):
        c = (pre * pochhammer(-N + k, m - k) * pochhammer(Fraction(-u), k)
             * pochhammer(u - s + ax + bx + 1, k)
             / (pochhammer(ax - s + 1, k) * math.factorial(k)))
        out = out + mx * c
        mx = mx * Poly((k, -1))
    return out


def phi_jacobi(u: int, ax: int, bx: int, s) -> Poly:
    """Normalized 2F1 seed; up to a constant the Jacobi polynomial with ``alpha = ax - s``."""
    ax, bx = _check_ints(ax, bx)
    if not 0 <= u <= -ax - 1:
        raise ParameterError("phi_jacobi needs 0 <= u <= -ax-1")
    g = -ax - bx - u - 1
    pre = pochhammer(Fraction(ax + 1), max(u, g)) / max(math.factorial(u), math.factorial(g))
    z = Poly((Fraction(1, 2), Fraction(-1, 2)))
    out = Poly()
    zk = Poly.const(1)
    for k in range(u + 1):
        c = (pre * pochhammer(Fraction(-u), k) * pochhammer(u - s + ax + bx + 1, k)
             / (pochhammer(ax - s + 1, k) * math.factorial(k)))
        out = out + zk * c
        zk = zk * z
    return out


# --------------------------------------------------------------------------
# Hahn side


def _hh_window2_scaled(n: int, ax: int, bx: int, N, M) -> Poly:
    p = hahn(n, ax + EPS / M, bx - EPS, N)
    val, der = p.jet_parts()
    if not val.is_zero():
        raise ArithmeticError("expected a vanishing Hahn polynomial in the window")
    return der * M


def _hh_window2_jet(n: int, ax: int, bx: int, N, M: Fraction) -> Poly:
    return _hh_window2_scaled(n, ax, bx, N, M) / (M - 1)


def hh_window2_scaled(n: int, ax: int, bx: int, N, m) -> Poly:
    """``(m - 1)`` times the second-window polynomial; finite (and M-free in one term) at ``m = 1``."""
    ax, bx = _check_ints(ax, bx)
    if branch(n, ax, bx) != 2:
        raise ValueError(f"degree {n} is not in the second window")
    m = as_rational(m)
    if m == 0:
        raise ParameterError("m must be nonzero")
    return _hh_window2_scaled(n, ax, bx, _check_N(N), m)


def _hh_window1_jet(n: int, ax: int, bx: int, N) -> Poly:
    g = -ax - bx - n - 1
    return _jet_deriv(phi_hahn(n, ax, bx, N, EPS)) - _jet_deriv(phi_hahn(g, ax, bx, N, EPS))


def _hh_ordered(n: int, ax: int, bx: int, N, M: ParamSet) -> Poly:
    b = branch(n, ax, bx)
    if b == 1:
        return _hh_window1_jet(n, ax, bx, N)
    if b == 2:
        return _hh_window2_jet(n, ax, bx, N, M[ax + n])
    return hahn(n, ax, bx, N)


def hh(n: int, ax: int, bx: int, N, M=None) -> Poly:
    """Perturbed Hahn polynomial for ``ax <= bx <= -1``."""
    ax, bx = _check_ints(ax, bx)
    if ax > bx:
        raise ParameterError("hh requires ax <= bx; use hh_general")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return _hh_ordered(n, ax, bx, _check_N(N), as_paramset(M))


def _jet_ratio_limit(pf: Poly, pg: Poly, at) -> Poly:
    """d/ds of ``pf - pf(at)/pg(at) * pg`` at s = 0 for jet-coefficient polys."""
    ratio = pf(at) / pg(at)
    combo = pf - pg * ratio
    val, der = combo.jet_parts()
    if not val.is_zero():
        raise ArithmeticError("leading order of the degenerate combination does not cancel")
    return der


def hh_general(n: int, ax: int, bx: int, N, M=None) -> Poly:
    """Perturbed Hahn polynomial for any order of the negative integers ax, bx.

    For ``bx < ax`` the window polynomials are built directly from the
    limits with base point ``N`` and the perturbation of ``bx``; the mirror
    identity ``(-1)^n H(ax,bx,M)(x) = H(bx,ax,1/M)(N-x)`` is a test, not the
    construction.
    """
    ax, bx = _check_ints(ax, bx)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    N, M = _check_N(N), as_paramset(M)
    if ax <= bx:
        return _hh_ordered(n, ax, bx, N, M)
    b = branch(n, ax, bx)
    if b == 1:
        g = -ax - bx - n - 1
        return _jet_ratio_limit(hahn(n, ax, bx - EPS, N), hahn(g, ax, bx - EPS, N), N)
    if b == 2:
        m = M[bx + n]
        return _hh_window2_jet(n, ax, bx, N, m)
    return hahn(n, ax, bx, N)


def hh_window1_limit(n: int, ax: int, bx: int, N) -> Poly:
    """Window-1 polynomial via the limit with base point 0 (``a = ax - s``)."""
    g = -ax - bx - n - 1
    return _jet_ratio_limit(hahn(n, ax - EPS, bx, N), hahn(g, ax - EPS, bx, N), Fraction(0))


def hh_window2_closed_form(n: int, ax: int, bx: int, N, M) -> Poly:
    """Closed combination of two Hahn polynomials for ``-ax <= n <= -ax-bx-1``."""
    N, M = as_rational(N), as_paramset(M)
    m = M[ax + n]
    g = -ax - bx - n - 1
    first = (pochhammer(-X, -ax) * hahn(ax + n, -ax, bx, ax + N).shift(ax)
             * math.factorial(g))
    second = hahn(g, ax, bx, N) * (math.factorial(n + ax) * pochhammer(-N - ax - bx - n - 1, 2 * n + ax + bx + 1)
                                   / (m - 1))
    return (first + second) * (neg1(bx + n) * math.factorial(n + bx))


def hh_expansion(f: int, ax: int, bx: int, N) -> Poly:
    """Explicit double-sum expansion of the window-1 perturbed Hahn polynomial."""
    N = as_rational(N)
    k = -ax - bx - f
    t1 = Poly()
    for j in range(2 * f + ax + bx + 1):
        c = (pochhammer(j - N - ax - bx - f, 2 * f + ax + bx - j)
             * pochhammer(Fraction(j - bx - f + 1), 2 * f + ax + bx - j)
             * pochhammer(Fraction(-2 * f - ax - bx), j)
             / ((-f - ax - bx) * binom(Fraction(j - ax - bx - f), j)))
        t1 = t1 + pochhammer(-X - ax - bx - f, j) * c
    t1 = t1 * pochhammer(-X, k) * (pochhammer(Fraction(-f), k) / neg1(f - ax - bx))
    t2 = Poly()
    for j in range(-ax - bx - f):
        inner = sum((Fraction(2 * f + ax + bx + 1, (-f + i) * (f + ax + bx + 1 + i)) for i in range(j)),
                    Fraction(0))
        c = (pochhammer(j - N, f - j) * pochhammer(Fraction(ax + j + 1), f - j)
             * pochhammer(Fraction(-f), j) * pochhammer(Fraction(f + ax + bx + 1), j)
             / math.factorial(j)) * inner
        t2 = t2 + pochhammer(-X, j) * c
    return t1 + t2


# --------------------------------------------------------------------------
# Jacobi side


def _pp_window2_scaled(n: int, ax: int, bx: int, M) -> Poly:
    p = jacobi(n, ax + EPS / M, bx - EPS)
    val, der = p.jet_parts()
    if not val.is_zero():
        raise ArithmeticError("expected a vanishing Jacobi polynomial in the window")
    return der * M


def _pp_window2_jet(n: int, ax: int, bx: int, M: Fraction) -> Poly:
    return _pp_window2_scaled(n, ax, bx, M) / (M - 1)


def pp_window2_scaled(n: int, ax: int, bx: int, m) -> Poly:
    """Jacobi analogue of :func:`hh_window2_scaled`."""
    ax, bx = _check_ints(ax, bx)
    if branch(n, ax, bx) != 2:
        raise ValueError(f"degree {n} is not in the second window")
    m = as_rational(m)
    if m == 0:
        raise ParameterError("m must be nonzero")
    return _pp_window2_scaled(n, ax, bx, m)


def _pp_window1_jet(n: int, ax: int, bx: int) -> Poly:
    g = -ax - bx - n - 1
    return _jet_deriv(phi_jacobi(n, ax, bx, EPS)) - _jet_deriv(phi_jacobi(g, ax, bx, EPS))


def _pp_ordered(n: int, ax: int, bx: int, M: ParamSet) -> Poly:
    b = branch(n, ax, bx)
    if b == 1:
        return _pp_window1_jet(n, ax, bx)
    if b == 2:
        return _pp_window2_jet(n, ax, bx, M[ax + n])
    return jacobi(n, ax, bx)


def pp(n: int, ax: int, bx: int, M=None) -> Poly:
    """Perturbed Jacobi polynomial for ``ax <= bx <= -1``."""
    ax, bx = _check_ints(ax, bx)
    if ax > bx:
        raise ParameterError("pp requires ax <= bx; use pp_general")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return _pp_ordered(n, ax, bx, as_paramset(M))


def pp_general(n: int, ax: int, bx: int, M=None) -> Poly:
    """Perturbed Jacobi polynomial for any order of ax, bx (see :func:`hh_general`)."""
    ax, bx = _check_ints(ax, bx)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    M = as_paramset(M)
    if ax <= bx:
        return _pp_ordered(n, ax, bx, M)
    b = branch(n, ax, bx)
    if b == 1:
        g = -ax - bx - n - 1
        return _jet_ratio_limit(jacobi(n, ax, bx - EPS), jacobi(g, ax, bx - EPS), Fraction(-1))
    if b == 2:
        return _pp_window2_jet(n, ax, bx, M[bx + n])
    return jacobi(n, ax, bx)


def pp_window1_limit(n: int, ax: int, bx: int) -> Poly:
    """Window-1 polynomial via the limit with base point 1 (``alpha = ax - s``)."""
    g = -ax - bx - n - 1
    return _jet_ratio_limit(jacobi(n, ax - EPS, bx), jacobi(g, ax - EPS, bx), Fraction(1))


def pp_window2_closed_form(n: int, ax: int, bx: int, M) -> Poly:
    M = as_paramset(M)
    m = M[ax + n]
    g = -ax - bx - n - 1
    pre = Fraction(math.factorial(n + ax) * math.factorial(n + bx) * math.factorial(g),
                   neg1(bx + n) * math.factorial(n))
    half = Poly((Fraction(1, 2), Fraction(-1, 2)))
    return (jacobi(g, ax, bx) / (m - 1) + half ** (-ax) * jacobi(ax + n, -ax, bx)) * pre


def pp_expansion(f: int, ax: int, bx: int) -> Poly:
    """Explicit expansion of the window-1 perturbed Jacobi polynomial."""
    xp = Poly((1, 1))
    d = 2 * f + ax + bx
    t1 = Poly()
    for j in range(d + 1):
        c = (pochhammer(Fraction(-d), j) * pochhammer(Fraction(j - ax - f + 1), d - j)
             / (Fraction(2) ** (-ax - bx - f + j) * (-f - ax - bx) * binom(Fraction(j - ax - bx - f), j)))
        t1 = t1 + xp ** j * c
    t1 = t1 * xp ** (-ax - bx - f) * Fraction(neg1(f), math.factorial(d))
    tail = sum((Fraction(1, -ax - f + i) for i in range(d + 1)), Fraction(0))
    t2 = Poly()
    for j in range(-f - ax - bx):
        inner = sum((Fraction(d + 1, (-f + i) * (f + ax + bx + 1 + i)) for i in range(j)), Fraction(0))
        c = (pochhammer(Fraction(bx + j + 1), f - j) * pochhammer(Fraction(-f), j)
             * pochhammer(Fraction(f + ax + bx + 1), j) / (2 ** j * math.factorial(j))) * (inner - tail)
        t2 = t2 + xp ** j * c
    return t1 + t2 * Fraction(neg1(f), math.factorial(f))


# --------------------------------------------------------------------------
# leading coefficients and the gamma constant


def hh_leading_coefficient(n: int, ax: int, bx: int) -> Fraction:
    lo = _ceil_half(-ax - bx)
    if lo <= n <= -ax - bx - 1:
        return Fraction(neg1(n + ax + bx) * math.factorial(2 * n + ax + bx)
                        * math.factorial(-ax - bx - n - 1))
    return pochhammer(Fraction(ax + bx + n + 1), n)


def pp_leading_coefficient(n: int, ax: int, bx: int) -> Fraction:
    lo = _ceil_half(-ax - bx)
    if lo <= n <= -ax - bx - 1:
        return Fraction(math.factorial(2 * n + ax + bx) * math.factorial(-ax - bx - n - 1),
                        neg1(n + ax + bx) * 2 ** n * math.factorial(n))
    return pochhammer(Fraction(ax + bx + n + 1), n) / (2 ** n * math.factorial(n))


def gamma_coefficient(n: int, ax: int, bx: int, N) -> Fraction:
    """The constant relating the two reflections of a window-1 polynomial."""
    ax, bx = _check_ints(ax, bx)
    if n not in windows(ax, bx)[0]:
        raise ValueError(f"gamma is only defined for n in the first window, got n={n}")
    N = as_rational(N)
    d = 2 * n + ax + bx
    total = sum((pochhammer(N - n + 1, d + 1) / (N - n + j + 1) for j in range(d + 1)), Fraction(0))
    return neg1(ax + bx) * pochhammer(Fraction(-n - bx), d + 1) * total


def hh_to_pp_limit_error(n: int, ax: int, bx: int, M, N: int, sample) -> Fraction:
    """``|H_n((1-x)N/2)/N^n - (-1)^n n! P_n(x)|`` at ``x = sample``."""
    x = as_rational(sample)
    h = hh_general(n, ax, bx, N, M)((1 - x) * N / 2) / Fraction(N) ** n
    p = neg1(n) * math.factorial(n) * pp_general(n, ax, bx, M)(x)
    return abs(h - p)
