"""Distribution families, parameterizations, and density evaluation.

A family implementation (`FamilyImpl` subclass) carries the full
parameter roster and vectorized evaluators; a `DistributionSpec` is a
view of an implementation with zero or more canonical parameters frozen
to constants, which is how the one-parameter special cases of the
two-parameter catalog families are represented.

Scores and Fisher information are taken with respect to each family's
*information coordinates*: the identity for almost every parameter, the
logarithm for the lognormal location (the density depends on ``nu`` only
through ``ln(nu)``, and the conventional location parameter is that
logarithm, while the positive quantity ``nu`` is what the parameter
prior is placed on).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from . import symbols
from .errors import (
    CatalogError,
    ParameterArityError,
    ParameterDomainError,
    SupportError,
)
from .params import ParamVector, SupportKind

NEG_INF = float("-inf")


class FamilyImpl:
    """Numeric implementation of one parameterization of a family.

    Subclasses define vectorized ``log_density`` and ``scores`` over the
    full parameter roster; the public layer handles validation and
    parameter freezing.
    """

    family_id: str = ""
    label: str = ""
    support: SupportKind = SupportKind.CONTINUOUS
    param_names: tuple[str, ...] = ()
    # information coordinate per parameter: "identity" or "log"
    info_coords: tuple[str, ...] = ()
    # discrete tail handling: "none", "exp", "log", "stretched"
    tail_kind: str = "none"

    @property
    def k(self) -> int:
        return len(self.param_names)

    def log_density(self, w: np.ndarray, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def scores(self, w: np.ndarray, a: np.ndarray) -> np.ndarray:
        """(k, n) array of d(log f)/d(coord_i); None means use differences."""
        raise NotImplementedError

    def has_scores(self) -> bool:
        return type(self).scores is not FamilyImpl.scores

    def analytic_fisher(self, a: np.ndarray) -> np.ndarray | None:
        return None

    # --- discrete numerics hints -----------------------------------------
    def cut(self, a: np.ndarray) -> int:
        """End of the exact-summation range (start of the smooth tail)."""
        return 512

    def tail_rate(self, a: np.ndarray) -> float:
        """Asymptotic decay rate eta, for f(x) ~ C(x) * exp(-eta x)."""
        raise NotImplementedError

    # --- continuous numerics hints ----------------------------------------
    def peak_hint(self, a: np.ndarray) -> tuple[float, float]:
        """(location, width) of the density mass in v = ln(y) coordinates."""
        return 0.0, 1.0

    # ----------------------------------------------------------------------
    def coords(self, a: np.ndarray) -> np.ndarray:
        """Map canonical parameter values to information coordinates."""
        out = np.asarray(a, dtype=float).copy()
        for i, kind in enumerate(self.info_coords):
            if kind == "log":
                out[i] = math.log(out[i])
        return out

    def from_coords(self, c: np.ndarray) -> np.ndarray:
        out = np.asarray(c, dtype=float).copy()
        for i, kind in enumerate(self.info_coords):
            if kind == "log":
                out[i] = math.exp(out[i])
        return out


@dataclass(frozen=True)
class Parameterization:
    """A concrete density expression for a family, in the counting grammar."""

    family_id: str
    label: str
    expression: str
    variable: str
    param_map: Mapping[str, str]  # expression identifier -> canonical name

    @cached_property
    def ast(self) -> symbols.Node:
        return symbols.parse_text(self.expression, variables=(self.variable,))

    @cached_property
    def symbol_count(self) -> int:
        return symbols.symbol_count(self.ast)

    def density(self, w: float, a: ParamVector) -> float:
        """Evaluate the expression numerically (test oracle for log_density)."""
        env = {self.variable: float(w)}
        for ident, canonical in self.param_map.items():
            env[ident] = a[canonical]
        return evaluate_expression(self.ast, env)


def evaluate_expression(node: symbols.Node, env: Mapping[str, float]) -> float:
    """Numeric evaluation of a grammar AST (plain math semantics)."""
    if isinstance(node, symbols.Number):
        return node.value
    if isinstance(node, symbols.Ref):
        return env[node.name]
    if isinstance(node, symbols.BinOp):
        lhs = evaluate_expression(node.left, env)
        rhs = evaluate_expression(node.right, env)
        if node.op == "+":
            return lhs + rhs
        if node.op == "-":
            return lhs - rhs
        if node.op == "*":
            return lhs * rhs
        if node.op == "/":
            return lhs / rhs
        if node.op == "^":
            return lhs**rhs
        if node.op == "rt":
            return lhs ** (1.0 / rhs)
        raise ValueError(node.op)
    if isinstance(node, symbols.FuncApp):
        arg = evaluate_expression(node.arg, env)
        if node.func == "G":
            return math.gamma(arg)
        fn = {
            "exp": math.exp,
            "ln": math.log,
            "sin": math.sin,
            "cos": math.cos,
            "tan": math.tan,
            "asin": math.asin,
            "acos": math.acos,
            "atan": math.atan,
            "sinh": math.sinh,
            "cosh": math.cosh,
            "tanh": math.tanh,
            "asinh": math.asinh,
            "acosh": math.acosh,
            "atanh": math.atanh,
        }[node.func]
        return fn(arg)
    raise TypeError(node)


@dataclass(frozen=True)
class DistributionSpec:
    """A family parameterization with zero or more parameters frozen.

    ``param_names`` exposes only the free parameters; the Fisher matrix of
    a frozen view is the corresponding principal submatrix of the full
    matrix evaluated at the merged parameter point.
    """

    impl: FamilyImpl
    fixed: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        fixed_names = [n for n, _ in self.fixed]
        for name in fixed_names:
            if name not in self.impl.param_names:
                raise CatalogError(f"cannot fix unknown parameter {name!r}")
        if len(set(fixed_names)) != len(fixed_names):
            raise CatalogError("duplicate fixed parameter")
        if len(fixed_names) == len(self.impl.param_names):
            raise CatalogError("cannot fix every parameter")

    @property
    def family_id(self) -> str:
        return self.impl.family_id

    @property
    def label(self) -> str:
        base = self.impl.label
        if not self.fixed:
            return base
        frozen = ",".join(f"{n}={v:g}" for n, v in self.fixed)
        return f"{base}[{frozen}]"

    @property
    def support(self) -> SupportKind:
        return self.impl.support

    @property
    def param_names(self) -> tuple[str, ...]:
        fixed = {n for n, _ in self.fixed}
        return tuple(n for n in self.impl.param_names if n not in fixed)

    @property
    def k(self) -> int:
        return len(self.param_names)

    @property
    def free_indices(self) -> tuple[int, ...]:
        fixed = {n for n, _ in self.fixed}
        return tuple(
            i for i, n in enumerate(self.impl.param_names) if n not in fixed
        )

    @property
    def info_coords(self) -> tuple[str, ...]:
        return tuple(self.impl.info_coords[i] for i in self.free_indices)

    def fix(self, **values: float) -> "DistributionSpec":
        for name, value in values.items():
            if name not in self.param_names:
                raise CatalogError(f"{name!r} is not a free parameter of {self.label}")
            if value <= 0:
                raise ParameterDomainError(f"{name}={value} must be > 0")
        return DistributionSpec(
            self.impl, self.fixed + tuple((n, float(v)) for n, v in values.items())
        )

    # ------------------------------------------------------------------
    def validate_params(self, a: ParamVector) -> None:
        if a.names != self.param_names:
            if set(a.names) == set(self.param_names):
                return  # order-insensitive match; merge_values reorders
            raise ParameterArityError(
                f"{self.label} expects parameters {self.param_names}, got {a.names}"
            )

    def merge_values(self, a: ParamVector) -> np.ndarray:
        """Full parameter vector in implementation order."""
        self.validate_params(a)
        table = dict(self.fixed)
        table.update(a.as_dict())
        return np.array([table[n] for n in self.impl.param_names], dtype=float)

    def params(self, *values: float, **named: float) -> ParamVector:
        """Convenience builder for this spec's free ParamVector."""
        if values and named:
            raise ParameterArityError("pass positional or named values, not both")
        if named:
            missing = set(self.param_names) - set(named)
            if missing:
                raise ParameterArityError(f"missing parameters: {sorted(missing)}")
            extra = set(named) - set(self.param_names)
            if extra:
                raise ParameterArityError(f"unknown parameters: {sorted(extra)}")
            return ParamVector(
                self.param_names, tuple(float(named[n]) for n in self.param_names)
            )
        if len(values) != self.k:
            raise ParameterArityError(
                f"{self.label} takes {self.k} parameters, got {len(values)}"
            )
        return ParamVector(self.param_names, tuple(float(v) for v in values))

    # ------------------------------------------------------------------
    def _check_support(self, w: np.ndarray) -> None:
        w = np.asarray(w)
        if np.any(w < 0):
            raise SupportError("outcome below 0 is outside the support")
        if self.support.is_discrete and np.any(w != np.floor(w)):
            raise SupportError("discrete support requires integer outcomes")

    def log_density(self, w, a: ParamVector):
        """ln f(w | a); -inf where the density is 0, +inf at a density pole."""
        self._check_support(w)
        full = self.merge_values(a)
        arr = np.asarray(w, dtype=float)
        out = self.impl.log_density(np.atleast_1d(arr), full)
        return float(out[0]) if arr.ndim == 0 else out

    def score(self, w, a: ParamVector):
        """Gradient of ln f in the free information coordinates, (k, n)."""
        self._check_support(w)
        full = self.merge_values(a)
        arr = np.atleast_1d(np.asarray(w, dtype=float))
        if self.impl.has_scores():
            s = self.impl.scores(arr, full)
        else:
            s = _difference_scores(self.impl, arr, full)
        s = s[list(self.free_indices), :]
        return s[:, 0] if np.asarray(w).ndim == 0 else s

    def analytic_fisher(self, a: ParamVector) -> np.ndarray | None:
        full = self.merge_values(a)
        fim = self.impl.analytic_fisher(full)
        if fim is None:
            return None
        idx = list(self.free_indices)
        return fim[np.ix_(idx, idx)]


def _difference_scores(
    impl: FamilyImpl, w: np.ndarray, full: np.ndarray
) -> np.ndarray:
    """Central finite differences of ln f in information coordinates."""
    coords = impl.coords(full)
    out = np.empty((impl.k, w.size))
    for i in range(impl.k):
        h = max(1e-6 * abs(coords[i]), 1e-8)
        up, dn = coords.copy(), coords.copy()
        up[i] += h
        dn[i] -= h
        out[i] = (
            impl.log_density(w, impl.from_coords(up))
            - impl.log_density(w, impl.from_coords(dn))
        ) / (2.0 * h)
    return out
