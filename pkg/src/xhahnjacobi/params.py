"""Parameter containers shared by the perturbed and exceptional families."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .exact import as_rational, rational_to_str


__all__ = ["ParameterError", "ParamSet", "as_paramset"]


class ParameterError(ValueError):
    """Invalid or missing family parameter.  ``index`` names the offending M_i."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class ParamSet(Mapping):
    """The continuous parameters ``M_i`` (each different from 0 and 1)."""

    def __init__(self, values=None, **_):
        items = dict(values or {})
        self._values: dict[int, Fraction] = {}
        for k, v in items.items():
            i = int(k)
            if i < 0:
                raise ParameterError(f"parameter index must be nonnegative, got {i}", i)
            m = as_rational(v)
            if m in (0, 1):
                raise ParameterError(f"M_{i} = {m} is not allowed (M_i must differ from 0 and 1)", i)
            self._values[i] = m

    def __getitem__(self, i: int) -> Fraction:
        try:
            return self._values[i]
        except KeyError:
            raise ParameterError(f"parameter M_{i} is required but missing", i) from None

    def __iter__(self):
        return iter(sorted(self._values))

    def __len__(self):
        return len(self._values)

    def inverse(self) -> "ParamSet":
        return ParamSet({i: 1 / m for i, m in self._values.items()})

    def replace(self, **changes) -> "ParamSet":
        vals = dict(self._values)
        vals.update({int(k): v for k, v in changes.items()})
        return ParamSet(vals)

    def with_value(self, i: int, value) -> "ParamSet":
        vals = dict(self._values)
        vals[i] = value
        return ParamSet(vals)

    def to_json(self) -> dict:
        return {str(i): rational_to_str(m) for i, m in sorted(self._values.items())}

    def __eq__(self, other):
        if isinstance(other, ParamSet):
            return self._values == other._values
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._values.items())))

    def __repr__(self):
        inner = ", ".join(f"{i}: {m}" for i, m in sorted(self._values.items()))
        return f"ParamSet({{{inner}}})"


def as_paramset(M) -> ParamSet:
    if isinstance(M, ParamSet):
        return M
    if M is None:
        return ParamSet()
    if isinstance(M, (list, tuple)):
        return ParamSet(dict(enumerate(M)))
    return ParamSet(M)
