"""Parameter vectors and support descriptors."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ParameterArityError, ParameterDomainError


class SupportKind(enum.Enum):
    """Sample space of a family: counts on {0,1,2,...} or sizes on [0, inf)."""

    DISCRETE = "discrete-nonnegative-integers"
    CONTINUOUS = "continuous-nonnegative-reals"

    @property
    def is_discrete(self) -> bool:
        return self is SupportKind.DISCRETE


@dataclass(frozen=True)
class ParamVector:
    """Ordered, named, strictly positive parameter values.

    Every catalog parameter spans the positive reals; zero, negative,
    non-finite values, and duplicate names are rejected at construction.
    """

    names: tuple[str, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.names) != len(self.values):
            raise ParameterArityError(
                f"{len(self.names)} names but {len(self.values)} values"
            )
        if len(self.names) == 0:
            raise ParameterArityError("parameter vector must have k >= 1")
        if len(set(self.names)) != len(self.names):
            raise ParameterDomainError(f"duplicate parameter names in {self.names}")
        for name, value in zip(self.names, self.values):
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ParameterDomainError(f"{name}={value!r} is not a finite number")
            if value <= 0.0:
                raise ParameterDomainError(f"{name}={value} must be > 0")

    @classmethod
    def of(cls, mapping: Mapping[str, float] | Sequence[float], names: Iterable[str] | None = None) -> "ParamVector":
        if isinstance(mapping, Mapping):
            items = tuple(mapping.items())
            return cls(tuple(k for k, _ in items), tuple(float(v) for _, v in items))
        if names is None:
            raise ParameterArityError("names required when passing bare values")
        return cls(tuple(names), tuple(float(v) for v in mapping))

    @property
    def k(self) -> int:
        return len(self.values)

    def __getitem__(self, name: str) -> float:
        try:
            return self.values[self.names.index(name)]
        except ValueError:
            raise KeyError(name) from None

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names, self.values))

    def replace(self, **updates: float) -> "ParamVector":
        vals = dict(zip(self.names, self.values))
        for name, value in updates.items():
            if name not in vals:
                raise KeyError(name)
            vals[name] = float(value)
        return ParamVector(self.names, tuple(vals[n] for n in self.names))
