"""Family specifications shared by the exceptional Hahn, Jacobi and Krall modules."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import as_rational, rational_to_str
from .params import ParameterError, ParamSet, as_paramset

__all__ = ["SigmaF", "sigma", "FamilySpec", "GuaranteeError", "bar_rows", "Reindexing", "reindex"]


class GuaranteeError(ValueError):
    """Raised when a guarantee-bearing operation is asked of an escape-hatch spec."""


@dataclass(frozen=True)
class SigmaF:
    """The gapped degree set ``{uF, uF+1, ...}`` minus ``{uF + f : f in F}``."""

    uF: int
    excluded: frozenset

    def __contains__(self, n) -> bool:
        return int(n) == n and n >= self.uF and n not in self.excluded

    def members(self, upto: int):
        """Members ``<= upto`` in increasing order."""
        return [n for n in range(self.uF, upto + 1) if n in self]


def _check_set(F) -> tuple:
    vals = [int(f) for f in F]
    if any(f != g for f, g in zip(vals, F)):
        raise ParameterError("F must contain integers")
    if len(set(vals)) != len(vals):
        raise ParameterError("F has repeated entries")
    if any(f <= 0 for f in vals):
        raise ParameterError("F must contain positive integers")
    return tuple(sorted(vals))


def sigma(F) -> SigmaF:
    F = _check_set(F)
    if not F:
        raise ParameterError("F must be nonempty")
    n = len(F)
    uF = sum(F) - n * (n + 1) // 2
    return SigmaF(uF, frozenset(uF + f for f in F))


@dataclass(frozen=True)
class FamilySpec:
    """One exceptional family: negative integers ax, bx, optional N, parameters M and the set F.

    Unless ``escape_hatch`` is set, F must contain ``{-max(ax,bx), ..., -ax-bx-1}``.
    """

    ax: int
    bx: int
    F: tuple
    M: ParamSet = field(default_factory=ParamSet)
    N: Fraction | None = None
    escape_hatch: bool = False

    def __post_init__(self):
        for name in ("ax", "bx"):
            v = getattr(self, name)
            if int(v) != v or v > -1:
                raise ParameterError(f"{name} must be a negative integer, got {v}")
            object.__setattr__(self, name, int(v))
        object.__setattr__(self, "F", _check_set(self.F))
        if not self.F:
            raise ParameterError("F must be nonempty")
        object.__setattr__(self, "M", as_paramset(self.M))
        if self.N is not None:
            object.__setattr__(self, "N", as_rational(self.N))
        if not self.escape_hatch and not self.satisfies_cis:
            missing = sorted(set(self.forced) - set(self.F))
            raise ParameterError(f"F must contain {missing} (use the escape hatch to construct anyway)")

    # derived sets -----------------------------------------------------------
    @property
    def forced(self) -> range:
        return range(-max(self.ax, self.bx), -self.ax - self.bx)

    @property
    def satisfies_cis(self) -> bool:
        return set(self.forced) <= set(self.F)

    @property
    def guarantees(self) -> bool:
        return self.satisfies_cis

    def require_guarantees(self):
        if not self.satisfies_cis:
            raise GuaranteeError("this spec violates the containment condition on F; "
                                 "only construction is supported")

    def require_N(self) -> Fraction:
        if self.N is None:
            raise ParameterError("this operation needs N")
        return self.N

    def require_positive_integer_N(self) -> int:
        N = self.require_N()
        if N.denominator != 1 or N < 1:
            raise ParameterError("this operation needs a positive integer N")
        if N < -min(self.ax, self.bx):
            raise ParameterError("this operation needs -N <= ax, bx")
        return int(N)

    @property
    def nF(self) -> int:
        return len(self.F)

    @property
    def sigma(self) -> SigmaF:
        return sigma(self.F)

    @property
    def uF(self) -> int:
        return self.sigma.uF

    @property
    def F_bx(self) -> tuple:
        """Indices of the parameters the family actually depends on."""
        hi = max(self.ax, self.bx)
        killed = {-hi - f - 1 for f in self.F}
        return tuple(i for i in range(-hi) if i not in killed)

    @property
    def a(self) -> int:
        return -self.ax

    @property
    def b(self) -> int:
        return -self.bx

    @property
    def Nn(self) -> Fraction:
        """``N + ax + bx``."""
        return self.require_N() + self.ax + self.bx

    @property
    def U_minus(self) -> tuple:
        return tuple(f + self.ax + self.bx for f in self.F if 1 <= f <= -self.bx - 1)

    @property
    def U_plus(self) -> tuple:
        return tuple(f + self.ax + self.bx for f in self.F if f >= -self.ax - self.bx)

    @property
    def U(self) -> tuple:
        return self.U_minus + self.U_plus

    @property
    def F_ext(self) -> tuple:
        return tuple(f for f in self.F if f not in self.forced)

    def degrees(self, degree_max: int):
        return self.sigma.members(degree_max)

    def swapped(self) -> "FamilySpec":
        """The spec with ax and bx exchanged and M inverted."""
        return FamilySpec(self.bx, self.ax, self.F, self.M.inverse(), self.N, self.escape_hatch)

    def with_M(self, M) -> "FamilySpec":
        return FamilySpec(self.ax, self.bx, self.F, as_paramset(M), self.N, self.escape_hatch)

    def with_N(self, N) -> "FamilySpec":
        return FamilySpec(self.ax, self.bx, self.F, self.M, N, self.escape_hatch)

    def to_json(self) -> dict:
        out = {"ax": self.ax, "bx": self.bx}
        if self.N is not None:
            out["N"] = rational_to_str(self.N)
        out["F"] = list(self.F)
        out["M"] = self.M.to_json()
        out["escape_hatch"] = self.escape_hatch
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FamilySpec":
        if not isinstance(data, dict):
            raise ParameterError("spec must be a JSON object")
        unknown = set(data) - {"ax", "bx", "N", "F", "M", "escape_hatch"}
        if unknown:
            raise ParameterError(f"unknown spec fields: {sorted(unknown)}")
        try:
            ax, bx, F = data["ax"], data["bx"], data["F"]
        except KeyError as exc:
            raise ParameterError(f"spec is missing field {exc.args[0]!r}") from None
        N = data.get("N")
        M = {int(k): as_rational(v) if not isinstance(v, float) else _reject_float(k)
             for k, v in (data.get("M") or {}).items()}
        return cls(ax, bx, tuple(F), ParamSet(M), None if N is None else as_rational(str(N)),
                   bool(data.get("escape_hatch", False)))


def _reject_float(k):
    raise ParameterError(f"M_{k} must be an exact rational string such as \"3/2\"", int(k))


def bar_rows(spec: FamilySpec, degrees, plain, scaled, ones=()):
    """Rows for the determinant normalized by ``prod_i (M_i - 1)``.

    ``plain(f)`` builds a row polynomial; ``scaled(f, m)`` builds ``(m-1)``
    times a second-window row and must accept ``m = 1``.  Indices in
    ``ones`` take the value 1.  Returns the rows and the scalar made of the
    factors ``(M_i - 1)`` not absorbed into a row.
    """
    ones = set(ones)
    lo, hi = min(spec.ax, spec.bx), max(spec.ax, spec.bx)
    window = range(-lo, -spec.ax - spec.bx)
    rows, absorbed = [], set()
    for f in degrees:
        if f in window:
            i = lo + f
            m = Fraction(1) if i in ones else spec.M[i]
            rows.append(scaled(f, m))
            absorbed.add(i)
        else:
            rows.append(plain(f))
    rest = Fraction(1)
    for i in range(-hi):
        if i not in absorbed:
            rest *= 0 if i in ones else spec.M[i] - 1
    return rows, rest


@dataclass(frozen=True)
class Reindexing:
    """Swap of ``f`` (second window) for its partner ``g = -f-ax-bx-1`` in F.

    ``index`` is the parameter attached to f, ``shift`` the degree offset
    ``2f+ax+bx+1`` between the two families and ``between`` the number of
    entries of F strictly between g and f.
    """

    spec: FamilySpec
    swapped: FamilySpec
    f: int
    g: int
    index: int
    shift: int
    between: int


def reindex(spec: FamilySpec, f: int) -> Reindexing:
    ax, bx = spec.ax, spec.bx
    lo = min(ax, bx)
    if f not in spec.F or not -lo <= f < -ax - bx:
        raise ParameterError(f"{f} is not a second-window entry of F")
    g = -f - ax - bx - 1
    if g in spec.F:
        raise ParameterError(f"the partner {g} of {f} is already in F")
    if g == 0:
        raise ParameterError(f"the partner of {f} is 0, which cannot enter F")
    F2 = tuple(sorted((set(spec.F) - {f}) | {g}))
    swapped = FamilySpec(ax, bx, F2, spec.M, spec.N, escape_hatch=True)
    between = sum(1 for e in spec.F if g < e < f)
    return Reindexing(spec, swapped, f, g, lo + f, 2 * f + ax + bx + 1, between)
