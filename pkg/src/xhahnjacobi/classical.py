"""Hahn, dual Hahn and Jacobi polynomials, their measures and identities.

All three families are evaluated by direct summation of their terminating
hypergeometric series.  Normalizations:

* Hahn ``h_n^{a,b,N}(x) = sum_j (-n)_j (a+b+n+1)_j (-N+j)_{n-j} (a+j+1)_{n-j} (-x)_j / j!``
* dual Hahn ``R_n^{a,b,N}(x) = sum_j (-n)_j (-N+j)_{n-j} (a+j+1)_{n-j} / (n! (-1)^j j!)
  prod_{i<j} (x - i(a+b+1+i))``
* Jacobi, the standard ``2^{-n} sum_j C(n+alpha, j) C(n+beta, n-j) (x-1)^{n-j} (x+1)^j``.

Parameters may be Fractions or Jets (the latter is how the perturbed
families take exact parameter derivatives).
"""
from __future__ import annotations

import math
from fractions import Fraction

from .exact import DiscreteMeasure, Poly, X, as_rational, binom, neg1, pochhammer

__all__ = [
    "hahn", "dual_hahn", "jacobi", "lambda_map", "lambda_value",
    "dual_hahn_measure", "dual_hahn_mass", "dual_hahn_norm", "verify_duality_hahn_dualhahn",
    "verify_classical_identities", "classical_identity_report", "hahn_jacobi_limit_error",
]


def _ring(v):
    return v if not isinstance(v, (int, str)) else as_rational(v)


def _falling_poly(n: int) -> Poly:
    """``(-x)_n`` as a polynomial in x."""
    p = Poly.const(1)
    for i in range(n):
        p = p * Poly((i, -1))
    return p


def hahn(n: int, a, b, N) -> Poly:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a, b, N = _ring(a), _ring(b), _ring(N)
    out = Poly()
    mx = Poly.const(1)  # (-x)_j
    for j in range(n + 1):
        c = (pochhammer(-n, j) * pochhammer(a + b + n + 1, j) * pochhammer(-N + j, n - j)
             * pochhammer(a + j + 1, n - j)) / math.factorial(j)
        out = out + mx * c
        mx = mx * Poly((j, -1))
    return out


def dual_hahn(n: int, a, b, N) -> Poly:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a, b, N = _ring(a), _ring(b), _ring(N)
    out = Poly()
    prod = Poly.const(1)
    for j in range(n + 1):
        c = (pochhammer(-n, j) * pochhammer(-N + j, n - j) * pochhammer(a + j + 1, n - j)
             / (math.factorial(n) * neg1(j) * math.factorial(j)))
        out = out + prod * c
        prod = prod * (X - Poly.const(j * (a + b + 1 + j)))
    return out


def jacobi(n: int, alpha, beta) -> Poly:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    alpha, beta = _ring(alpha), _ring(beta)
    xm, xp = Poly((-1, 1)), Poly((1, 1))
    out = Poly()
    for j in range(n + 1):
        out = out + (xm ** (n - j)) * (xp ** j) * (binom(n + alpha, j) * binom(n + beta, n - j))
    return out * Fraction(1, 2 ** n)


def lambda_map(a, b) -> Poly:
    """The quadratic lattice ``x (x + a + b + 1)``."""
    return Poly((0, _ring(a) + _ring(b) + 1, 1))


def lambda_value(a, b, x):
    return x * (x + a + b + 1)


def dual_hahn_measure(a, b, N: int) -> DiscreteMeasure:
    a, b = as_rational(a), as_rational(b)
    if int(N) != N or N < 1:
        raise ValueError("the dual Hahn measure needs a positive integer N")
    N = int(N)
    if a in range(-N, 0) or b in range(-N, 0):
        raise ValueError("a and b must avoid -1, ..., -N")
    if a + b in range(-2 * N - 1, 0):
        raise ValueError("a + b must avoid -1, ..., -2N-1")
    return DiscreteMeasure((lambda_value(a, b, Fraction(x)), dual_hahn_mass(a, b, N, x))
                           for x in range(N + 1))


def dual_hahn_mass(a, b, N, x: int) -> Fraction:
    """Mass of the dual Hahn measure at the lattice point ``lambda(x)``."""
    a, b, N = as_rational(a), as_rational(b), as_rational(N)
    return ((2 * x + a + b + 1) * pochhammer(a + 1, x) * pochhammer(-N, x) * math.factorial(int(N))
            / (neg1(x) * pochhammer(x + a + b + 1, int(N) + 1) * pochhammer(b + 1, x)
               * math.factorial(x)))


def dual_hahn_norm(n: int, a, b, N: int) -> Fraction:
    a, b = as_rational(a), as_rational(b)
    return pochhammer(Fraction(-N), n) ** 2 * binom(a + n, n) / binom(b + N - n, N - n)


def verify_duality_hahn_dualhahn(n: int, m: int, a, b, N) -> bool:
    """Hahn/dual Hahn duality at the integer pair (n, m)."""
    a, b, N = as_rational(a), as_rational(b), as_rational(N)
    lhs = pochhammer(a + 1, n) * pochhammer(-N, n) * hahn(m, a, b, N)(Fraction(n))
    rhs = (math.factorial(n) * pochhammer(a + 1, m) * pochhammer(-N, m)
           * dual_hahn(n, a, b, N)(lambda_value(a, b, Fraction(m))))
    return lhs == rhs


def _identity_cp1(a, b, N, n) -> bool:
    lhs = dual_hahn(n, -a, b, N).compose(lambda_map(-a, b))
    rhs = dual_hahn(n, -a, -b, N + b).compose(lambda_map(-a, -b).shift(b))
    return lhs == rhs


def _identity_hcp(a, b, N, n) -> bool:
    lhs = hahn(n, a, b, N) * neg1(n)
    rhs = hahn(n, b, a, N).scale_arg(-1, N)
    return lhs == rhs


def _identity_fi1(a, b, N, n) -> bool:
    lhs = hahn(n, a, b, N) * neg1(n)
    rhs = hahn(n, a, b, -a - b - 2 - N).scale_arg(-1, -a - 1)
    return lhs == rhs


def _identity_cph(a: int, b: int, N, n) -> bool:
    lhs = hahn(n + a + b, -a, -b, N + a + b).shift(a)
    rhs = (hahn(n, a, b, N) * pochhammer(Fraction(n + 1), a + b)
           * pochhammer(X + 1, a) * pochhammer(X - N - b, b))
    return lhs == rhs


def classical_identity_report(a, b, N, n: int, which=None) -> dict:
    """Check the Hahn/dual Hahn structural identities as polynomial equalities.

    Returns a dict ``{name: bool}``.  The ``cph`` identity is only checked
    when ``a`` and ``b`` are nonnegative integers.
    """
    a, b, N = as_rational(a), as_rational(b), as_rational(N)
    checks = {"cp1": _identity_cp1, "hcp": _identity_hcp, "fi1": _identity_fi1}
    if a.denominator == 1 and b.denominator == 1 and a >= 0 and b >= 0:
        checks["cph"] = lambda a_, b_, N_, n_: _identity_cph(int(a_), int(b_), N_, n_)
    names = which or list(checks)
    return {k: checks[k](a, b, N, n) for k in names if k in checks}


def verify_classical_identities(a, b, N, n: int, which=None) -> bool:
    """True iff every applicable identity of :func:`classical_identity_report` holds."""
    return all(classical_identity_report(a, b, N, n, which).values())


def hahn_jacobi_limit_error(n: int, alpha, beta, N: int, sample) -> Fraction:
    """``|h_n((1-x)N/2)/N^n - (-1)^n n! P_n(x)|`` at ``x = sample``."""
    x = as_rational(sample)
    h = hahn(n, alpha, beta, N)((1 - x) * N / 2) / Fraction(N) ** n
    p = neg1(n) * math.factorial(n) * jacobi(n, alpha, beta)(x)
    return abs(h - p)
