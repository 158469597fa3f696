"""Family registry: every catalog family with its parameterization(s).

Family identifiers are the stable strings used on the CLI and in JSON
reports: exponential, gamma, weibull, pareto2, lognormal, gengamma,
negbinom, discreteweibull, waring, genpoisson, geometric, poisson.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CatalogError
from ..families import DistributionSpec, Parameterization
from . import continuous as _c
from . import discrete as _d


@dataclass(frozen=True)
class FamilyEntry:
    family_id: str
    specs: tuple[DistributionSpec, ...]
    parameterizations: tuple[Parameterization, ...]

    def spec(self, label: str | None = None) -> DistributionSpec:
        if label is None:
            return self.specs[0]
        for s in self.specs:
            if s.label == label:
                return s
        raise CatalogError(f"{self.family_id} has no parameterization {label!r}")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.specs)


def _entry(*pairs: tuple[DistributionSpec, Parameterization]) -> FamilyEntry:
    specs = tuple(s for s, _ in pairs)
    params = tuple(p for _, p in pairs)
    fam = specs[0].family_id
    assert all(s.family_id == fam for s in specs)
    assert all(p.family_id == fam for p in params)
    assert tuple(p.label for p in params) == tuple(s.label for s in specs)
    return FamilyEntry(fam, specs, params)


def _p(family_id, label, expression, variable, **param_map) -> Parameterization:
    return Parameterization(family_id, label, expression, variable, dict(param_map))


_ENTRIES = (
    _entry(
        (
            DistributionSpec(_c.ExponentialRate()),
            _p("exponential", "rate", "l * exp(~1 * l * y)", "y", l="lam"),
        ),
        (
            DistributionSpec(_c.ExponentialMean()),
            _p("exponential", "mean", "exp(~1 * y / t) / t", "y", t="theta"),
        ),
    ),
    _entry(
        (
            DistributionSpec(_c.Gamma()),
            _p(
                "gamma",
                "standard",
                "l ^ r * y ^ (r - 1) * exp(~1 * l * y) / G(r)",
                "y",
                r="r",
                l="lam",
            ),
        ),
    ),
    _entry(
        (
            DistributionSpec(_c.Weibull()),
            _p(
                "weibull",
                "standard",
                "t * l * y ^ (t - 1) * exp(~1 * l * y ^ t)",
                "y",
                t="tau",
                l="lam",
            ),
        ),
    ),
    _entry(
        (
            DistributionSpec(_c.Pareto2()),
            _p(
                "pareto2",
                "standard",
                "a * h ^ a / (y + h) ^ (a + 1)",
                "y",
                a="alpha",
                h="theta",
            ),
        ),
    ),
    _entry(
        (
            DistributionSpec(_c.Lognormal()),
            _p(
                "lognormal",
                "standard",
                "exp(~1 * (ln(y) - ln(n)) ^ 2 / (2 * s ^ 2)) / ((2 * pi) rt 2 * s * y)",
                "y",
                n="nu",
                s="sigma",
            ),
        ),
    ),
    _entry(
        (
            DistributionSpec(_c.GenGamma()),
            _p(
                "gengamma",
                "standard",
                "t * l ^ r * y ^ (t * r - 1) * exp(~1 * l * y ^ t) / G(r)",
                "y",
                t="tau",
                l="lam",
                r="r",
            ),
        ),
    ),
    _entry(
        (
            DistributionSpec(_d.Poisson()),
            _p("poisson", "standard", "exp(~1 * l) * l ^ x / G(x + 1)", "x", l="lam"),
        ),
    ),
    _entry(
        (
            DistributionSpec(_d.Geometric("mean-inverse")),
            _p(
                "geometric",
                "mean-inverse",
                "m / (m + 1) * (1 / (m + 1)) ^ x",
                "x",
                m="m",
            ),
        ),
        (
            DistributionSpec(_d.Geometric("mean")),
            _p(
                "geometric",
                "mean",
                "1 / (m + 1) * (m / (m + 1)) ^ x",
                "x",
                m="m",
            ),
        ),
    ),
    _entry(
        (
            DistributionSpec(_d.NegBinom("mean-inverse")),
            _p(
                "negbinom",
                "mean-inverse",
                "G(x + r) / (G(r) * G(x + 1)) * (m / (m + 1)) ^ r * (1 / (m + 1)) ^ x",
                "x",
                r="r",
                m="m",
            ),
        ),
        (
            DistributionSpec(_d.NegBinom("mean")),
            _p(
                "negbinom",
                "mean",
                "G(x + r) / (G(r) * G(x + 1)) * (1 / (m + 1)) ^ r * (m / (m + 1)) ^ x",
                "x",
                r="r",
                m="m",
            ),
        ),
    ),
    _entry(
        (
            DistributionSpec(_d.DiscreteWeibull("mean-inverse")),
            _p(
                "discreteweibull",
                "mean-inverse",
                "(1 / (m + 1)) ^ (x ^ t) - (1 / (m + 1)) ^ ((x + 1) ^ t)",
                "x",
                m="m",
                t="tau",
            ),
        ),
        (
            DistributionSpec(_d.DiscreteWeibull("mean")),
            _p(
                "discreteweibull",
                "mean",
                "(m / (m + 1)) ^ (x ^ t) - (m / (m + 1)) ^ ((x + 1) ^ t)",
                "x",
                m="m",
                t="tau",
            ),
        ),
    ),
    _entry(
        (
            DistributionSpec(_d.Waring()),
            _p(
                "waring",
                "standard",
                "a * G(a + h) * G(x + h) / (G(h) * G(x + a + h + 1))",
                "x",
                a="alpha",
                h="theta",
            ),
        ),
    ),
    _entry(
        (
            DistributionSpec(_d.GenPoisson()),
            _p(
                "genpoisson",
                "standard",
                "l * exp(~1 * (c * x + l)) * (c * x + l) ^ (x - 1) / G(x + 1)",
                "x",
                l="lam",
                c="sigma",
            ),
        ),
    ),
)

_BY_ID = {e.family_id: e for e in _ENTRIES}

FAMILY_IDS = tuple(e.family_id for e in _ENTRIES)


def catalog() -> tuple[FamilyEntry, ...]:
    """All registered families with their parameterizations."""
    return _ENTRIES


def get_family(family_id: str) -> FamilyEntry:
    try:
        return _BY_ID[family_id]
    except KeyError:
        raise CatalogError(
            f"unknown family {family_id!r}; known: {', '.join(FAMILY_IDS)}"
        ) from None


def get_spec(family_id: str, label: str | None = None) -> DistributionSpec:
    return get_family(family_id).spec(label)
