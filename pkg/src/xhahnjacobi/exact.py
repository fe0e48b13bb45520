"""Exact arithmetic primitives.

Rationals are :class:`fractions.Fraction`.  On top of them this module
provides first order jets (dual numbers), dense univariate polynomials over
any commutative ring whose elements support ``+ - *``, rational functions,
fraction-free determinants, Sturm root counting and high precision
Gauss-Legendre quadrature.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from numbers import Rational as _RationalABC

import mpmath

Rational = Fraction

__all__ = [
    "Rational", "Jet", "JetInversionError", "Poly", "X", "RationalFunction",
    "DiscreteMeasure", "as_rational", "pochhammer", "rising", "binom",
    "neg1", "det", "det_poly", "det_cofactor", "vandermonde", "sturm_roots_in_interval",
    "gauss_legendre_rule", "gauss_quadrature", "quadrature_error", "rational_to_str",
    "rational_from_str", "poly_to_json", "poly_from_json",
]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return rational_from_str(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rational_to_str(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational literal: {text!r}")
    return Fraction(text)


# --------------------------------------------------------------------------
# jets


class JetInversionError(ZeroDivisionError):
    """Raised when inverting a jet whose value part is zero."""


class Jet:
    """Truncated power series ``val + der*eps`` with ``eps**2 == 0``."""

    __slots__ = ("val", "der")

    def __init__(self, val=0, der=0):
        self.val = val if isinstance(val, Fraction) else Fraction(val)
        self.der = der if isinstance(der, Fraction) else Fraction(der)

    @staticmethod
    def _lift(other):
        if isinstance(other, Jet):
            return other
        if isinstance(other, (int, Fraction)):
            return Jet(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Jet(self.val + o.val, self.der + o.der)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.val, -self.der)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Jet(self.val - o.val, self.der - o.der)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Jet(self.val * other, self.der * other)
        if not isinstance(other, Jet):
            return NotImplemented
        return Jet(self.val * other.val, self.val * other.der + self.der * other.val)

    __rmul__ = __mul__

    def inverse(self) -> "Jet":
        if self.val == 0:
            raise JetInversionError("jet with zero value part has no inverse")
        inv = 1 / self.val
        return Jet(inv, -self.der * inv * inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Jet(self.val / other, self.der / other)
        if not isinstance(other, Jet):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.val == o.val and self.der == o.der

    def __hash__(self):
        return hash((self.val, self.der))

    def __repr__(self):
        return f"Jet({self.val}, {self.der})"


# --------------------------------------------------------------------------
# polynomials


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``x**k``.

    Coefficients may be Fractions, ints or Jets.  Trailing zeros are
    trimmed, so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, (Fraction, Jet)) else Fraction(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = cls.const(1)
        for r in roots:
            p = p * cls((-r, 1))
        return p

    # basic queries ---------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # arithmetic -------------------------------------------------------------
    @staticmethod
    def _lift(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, Jet)):
            return Poly((other,))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Jet)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if _is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Poly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Jet)):
            return Poly(other * c for c in self.coeffs)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Jet)):
            return Poly(c / other for c in self.coeffs)
        if isinstance(other, Poly):
            return self.exquo(other)
        return NotImplemented

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, other: "Poly"):
        """Euclidean division over a field of coefficients."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if _is_zero(c):
                continue
            f = c / lead
            quot[k - dq] = f
            for i, oc in enumerate(other.coeffs):
                rem[k - dq + i] = rem[k - dq + i] - f * oc
        return Poly(quot), Poly(rem[:dq] if dq > 0 else ())

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exquo(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    # calculus and composition -----------------------------------------------
    def __call__(self, x):
        if isinstance(x, Poly):
            return self.compose(x)
        acc = Fraction(0) if isinstance(x, (int, Fraction, Jet)) else 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evalf(self, x):
        """Evaluate at an mpmath number (coefficients converted to mpf)."""
        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def compose(self, q: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * q + Poly((c,))
        return acc

    def shift(self, h) -> "Poly":
        """Return ``p(x + h)``."""
        if h == 0:
            return self
        return self.compose(Poly((h, 1)))

    def scale_arg(self, a, b=0) -> "Poly":
        """Return ``p(a*x + b)``."""
        return self.compose(Poly((b, a)))

    def deriv(self, k: int = 1) -> "Poly":
        p = self
        for _ in range(k):
            p = Poly(c * i for i, c in enumerate(p.coeffs) if i > 0)
        return p

    def antideriv(self) -> "Poly":
        return Poly([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def monic(self) -> "Poly":
        return self / self.lc if self.coeffs else self

    # jet helpers --------------------------------------------------------------
    def jet_parts(self):
        """Split a polynomial with jet coefficients into (value, derivative)."""
        vals = [c.val if isinstance(c, Jet) else Fraction(c) for c in self.coeffs]
        ders = [c.der if isinstance(c, Jet) else Fraction(0) for c in self.coeffs]
        return Poly(vals), Poly(ders)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            terms.append(f"({c})" + ("" if k == 0 else "*x" if k == 1 else f"*x^{k}"))
        return "Poly(" + " + ".join(terms) + ")"


X = Poly((0, 1))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_to_json(p: Poly) -> list:
    return [rational_to_str(c) for c in p.coeffs]


def poly_from_json(data) -> Poly:
    if isinstance(data, str):
        data = json.loads(data)
    return Poly(rational_from_str(s) if isinstance(s, str) else Fraction(s) for s in data)


# --------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Quotient ``num/den`` of polynomials; never reduced automatically."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = Poly.const(1) if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = num, den

    @staticmethod
    def _lift(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.den == self.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def shift(self, h) -> "RationalFunction":
        return RationalFunction(self.num.shift(h), self.den.shift(h))

    def reduced(self) -> "RationalFunction":
        g = poly_gcd(self.num, self.den) if self.num else Poly.const(1)
        num, den = self.num.exquo(g), self.den.exquo(g)
        lc = den.lc
        return RationalFunction(num / lc, den / lc)

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


# --------------------------------------------------------------------------
# scalar combinatorics


def neg1(k: int) -> int:
    """``(-1)**k`` as an int, also for negative k."""
    return -1 if k % 2 else 1


def pochhammer(x, m: int):
    """Rising factorial ``x (x+1) ... (x+m-1)``; works for any ring element."""
    if m < 0:
        raise ValueError("pochhammer length must be nonnegative")
    out = Fraction(1)
    for i in range(m):
        out = out * (x + i)
    return out


def rising(x, m: int):
    """Pochhammer symbol extended to negative lengths by ``Gamma(x+m)/Gamma(x)``.

    For ``m < 0`` this is ``1 / ((x+m)(x+m+1)...(x-1))``.
    """
    if m >= 0:
        return pochhammer(x, m)
    return 1 / pochhammer(x + m, -m)


def binom(top, k: int):
    """Generalized binomial ``top (top-1) ... (top-k+1) / k!``; zero for k < 0."""
    if k < 0:
        return Fraction(0)
    out = Fraction(1)
    for i in range(k):
        out = out * (top - i)
    return out / math.factorial(k)


def vandermonde(xs) -> Fraction:
    xs = [as_rational(x) for x in xs]
    if len(set(xs)) != len(xs):
        raise ValueError("Vandermonde determinant of a set with repeated elements")
    xs = sorted(xs)
    out = Fraction(1)
    for j in range(len(xs)):
        for i in range(j):
            out *= xs[j] - xs[i]
    return out


# --------------------------------------------------------------------------
# determinants


def _exact_div(a, b):
    if isinstance(a, Poly):
        return a.exquo(b if isinstance(b, Poly) else Poly.const(b))
    return a / b


def det(matrix):
    """Determinant by fraction-free (Bareiss) elimination.

    Entries may be Fractions or Polys over the rationals.  The empty matrix
    has determinant one.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    a = [list(row) for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            for r in range(k + 1, n):
                if not _is_zero(a[r][k]):
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = _exact_div(a[i][j] * piv - a[i][k] * a[k][j], prev)
        prev = piv
    out = a[n - 1][n - 1]
    return -out if sign < 0 else out


def det_poly(matrix) -> Poly:
    """Determinant of a square matrix of polynomials."""
    if len(matrix) == 0:
        return Poly.const(1)
    rows = [[e if isinstance(e, Poly) else Poly.const(e) for e in row] for row in matrix]
    return det(rows)


def _perm_sign(p) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_cofactor(matrix):
    """Leibniz-formula determinant; slow, kept as an independent oracle."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    total = None
    for p in permutations(range(n)):
        term = matrix[0][p[0]]
        for i in range(1, n):
            term = term * matrix[i][p[i]]
        term = term if _perm_sign(p) > 0 else -term
        total = term if total is None else total + term
    return total


# --------------------------------------------------------------------------
# real roots


def _sign(q) -> int:
    return (q > 0) - (q < 0)


def _sign_changes(seq, x) -> int:
    signs = [s for s in (_sign(p(x)) for p in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_sequence(p: Poly):
    seq = [p, p.deriv()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def sturm_roots_in_interval(p: Poly, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the closed interval [lo, hi]."""
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    lo, hi = as_rational(lo), as_rational(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if p.degree == 0:
        return 0
    sqfree = p.exquo(poly_gcd(p, p.deriv()))
    seq = sturm_sequence(sqfree)
    count = _sign_changes(seq, lo) - _sign_changes(seq, hi)
    if sqfree(lo) == 0:
        count += 1
    return count


# --------------------------------------------------------------------------
# quadrature


def _legendre_and_deriv(n: int, x):
    p0, p1 = mpmath.mpf(1), x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    return p1, n * (x * p1 - p0) / (x * x - 1)


@lru_cache(maxsize=32)
def _gauss_legendre(nodes: int, dps: int):
    # Newton on the three-term recurrence from the asymptotic guesses; the
    # symmetric eigenvalue route in mpmath is quadratic in the node count.
    xs, ws = [], []
    with mpmath.workdps(dps + 10):
        tol = mpmath.mpf(10) ** (-dps - 5)
        for i in range(1, nodes // 2 + 1):
            x = mpmath.cos(mpmath.pi * (i - mpmath.mpf(1) / 4) / (nodes + mpmath.mpf(1) / 2))
            for _ in range(100):
                p, dp = _legendre_and_deriv(nodes, x)
                step = p / dp
                x -= step
                if abs(step) < tol:
                    break
            _, dp = _legendre_and_deriv(nodes, x)
            w = 2 / ((1 - x * x) * dp * dp)
            xs += [x, -x]
            ws += [w, w]
        if nodes % 2:
            _, dp = _legendre_and_deriv(nodes, mpmath.mpf(0))
            xs.append(mpmath.mpf(0))
            ws.append(2 / (dp * dp))
    with mpmath.workdps(dps):
        order = sorted(range(nodes), key=lambda k: xs[k])
        return tuple(+xs[k] for k in order), tuple(+ws[k] for k in order)


def gauss_legendre_rule(nodes: int, dps: int = 60):
    """Nodes and weights of the ``nodes``-point Gauss-Legendre rule on [-1, 1]."""
    if nodes < 1:
        raise ValueError("at least one quadrature node is required")
    return _gauss_legendre(nodes, dps)


def gauss_quadrature(f, lo, hi, nodes: int, dps: int = 60):
    """Gauss-Legendre approximation of the integral of ``f`` over [lo, hi].

    Nodes and weights are computed with ``dps`` significant digits; ``f`` is
    called with mpmath numbers at that precision.
    """
    if nodes < 1:
        raise ValueError("at least one quadrature node is required")
    xs, ws = _gauss_legendre(nodes, dps)
    with mpmath.workdps(dps):
        lo, hi = mpmath.mpf(as_rational(lo).numerator) / as_rational(lo).denominator, \
            mpmath.mpf(as_rational(hi).numerator) / as_rational(hi).denominator
        half, mid = (hi - lo) / 2, (hi + lo) / 2
        total = mpmath.mpf(0)
        for x, w in zip(xs, ws):
            v = f(mid + half * x)
            if not mpmath.isfinite(v):
                raise ArithmeticError(f"integrand is not finite at {mid + half * x}")
            total += w * v
        return total * half


def quadrature_error(f, lo, hi, nodes: int, dps: int = 60):
    """Node-doubling error estimate ``|Q(2n) - Q(n)|``."""
    with mpmath.workdps(dps):
        return abs(gauss_quadrature(f, lo, hi, 2 * nodes, dps) - gauss_quadrature(f, lo, hi, nodes, dps))


# --------------------------------------------------------------------------
# discrete measures


class DiscreteMeasure:
    """Finite signed measure: sorted distinct points with nonzero rational masses."""

    __slots__ = ("atoms",)

    def __init__(self, atoms):
        merged: dict[Fraction, Fraction] = {}
        for point, mass in atoms:
            point, mass = as_rational(point), as_rational(mass)
            if point in merged:
                raise ValueError(f"repeated support point {point}")
            merged[point] = mass
        self.atoms = tuple(sorted((p, m) for p, m in merged.items() if m != 0))

    @property
    def points(self):
        return [p for p, _ in self.atoms]

    @property
    def masses(self):
        return [m for _, m in self.atoms]

    def __len__(self):
        return len(self.atoms)

    def mass_at(self, point) -> Fraction:
        point = as_rational(point)
        for p, m in self.atoms:
            if p == point:
                return m
        return Fraction(0)

    def total(self) -> Fraction:
        return sum(self.masses, Fraction(0))

    def is_positive(self) -> bool:
        return all(m > 0 for m in self.masses)

    def integrate(self, f) -> Fraction:
        return sum((m * f(p) for p, m in self.atoms), Fraction(0))

    def inner(self, p, q) -> Fraction:
        return sum((m * p(x) * q(x) for x, m in self.atoms), Fraction(0))

    def gram(self, polys):
        values = [[p(x) for x, _ in self.atoms] for p in polys]
        masses = self.masses
        n = len(polys)
        out = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                s = sum((m * a * b for m, a, b in zip(masses, values[i], values[j])), Fraction(0))
                out[i][j] = out[j][i] = s
        return out

    def scaled(self, factor) -> "DiscreteMeasure":
        """Multiply each mass by ``factor(point)``; atoms that become zero vanish."""
        return DiscreteMeasure((p, m * factor(p)) for p, m in self.atoms)

    def to_json(self) -> list:
        return [{"point": rational_to_str(p), "mass": rational_to_str(m)} for p, m in self.atoms]

    @classmethod
    def from_json(cls, data) -> "DiscreteMeasure":
        if isinstance(data, str):
            data = json.loads(data)
        return cls((rational_from_str(a["point"]), rational_from_str(a["mass"])) for a in data)

    def __repr__(self):
        return f"DiscreteMeasure({len(self.atoms)} atoms)"
