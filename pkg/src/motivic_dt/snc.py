"""Motivic integration over combinatorial SNC resolution data.

A model lists the components ``E_i`` of the special fibre with their
multiplicity ``N_i`` and the order ``mu_i`` of the gauge form along them,
together with the class of the cyclic cover of every open stratum
``E_J``.  From that data we get the degree-``m`` integrals, the rational
volume Poincare series, its limit at ``T = infinity`` and the motivic
nearby and vanishing cycles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .parser import parse
from .ring import AtomTable, HalfInt, MotivicClass, one_minus_l_power


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class SncComponent:
    id: str
    mult: int
    order: int = 0

    def __post_init__(self):
        if self.mult < 1:
            raise ModelError(f"component {self.id}: multiplicity must be >= 1")


@dataclass
class SncModel:
    components: list[SncComponent]
    strata: dict[frozenset, MotivicClass] = field(default_factory=dict)
    reldim: int = 1
    ambient: MotivicClass | None = None
    ambient_dim: int | None = None

    def component(self, cid: str) -> SncComponent:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def items(self) -> Iterator[tuple[frozenset, MotivicClass]]:
        """Nonzero strata in a deterministic order (by size, then ids)."""
        for J in sorted(self.strata, key=lambda J: (len(J), sorted(J))):
            if self.strata[J]:
                yield J, self.strata[J]

    @classmethod
    def from_dict(cls, doc: Mapping, table: AtomTable | None = None) -> "SncModel":
        try:
            comps = [SncComponent(str(c["id"]), int(c["N"]), int(c.get("mu", 0)))
                     for c in doc["components"]]
            strata: dict[frozenset, MotivicClass] = {}
            for s in doc.get("strata", []):
                J = frozenset(str(j) for j in s["J"])
                strata[J] = strata.get(J, MotivicClass()) + parse(s["class"], table)
            ambient = ambient_dim = None
            if doc.get("ambient") is not None:
                ambient = parse(doc["ambient"]["expr"], table)
                ambient_dim = int(doc["ambient"]["dimU"])
            model = cls(comps, strata, int(doc["reldim"]), ambient, ambient_dim)
        except (KeyError, TypeError) as exc:
            raise ModelError(f"malformed model document: {exc!r}") from exc
        return model

    def to_dict(self) -> dict:
        doc = {
            "reldim": self.reldim,
            "components": [{"id": c.id, "N": c.mult, "mu": c.order} for c in self.components],
            "strata": [{"J": sorted(J), "class": str(c)} for J, c in self.items()],
        }
        if self.ambient is not None:
            doc["ambient"] = {"expr": str(self.ambient), "dimU": self.ambient_dim}
        return doc

    @classmethod
    def load(cls, path, table: AtomTable | None = None) -> "SncModel":
        with open(path) as fh:
            return cls.from_dict(json.load(fh), table)


def validate(model: SncModel) -> None:
    if model.reldim < 1:
        raise ModelError(f"reldim must be >= 1, got {model.reldim}")
    ids = [c.id for c in model.components]
    if len(set(ids)) != len(ids):
        raise ModelError("duplicate component ids")
    for J in model.strata:
        if not J:
            raise ModelError("stratum keyed by the empty set")
        unknown = sorted(set(J) - set(ids))
        if unknown:
            raise ModelError(f"stratum {sorted(J)} names undeclared components {unknown}")
    if model.ambient is not None and (model.ambient_dim is None or model.ambient_dim < 0):
        raise ModelError("ambient class needs a nonnegative dimU")


def _compositions(weights: list[int], total: int) -> Iterator[tuple[int, ...]]:
    """All ``k`` with every ``k_i >= 1`` and ``sum k_i * weights[i] == total``."""
    if not weights:
        if total == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    floor = sum(rest)
    k = 1
    while k * w + floor <= total:
        for tail in _compositions(rest, total - k * w):
            yield (k,) + tail
        k += 1


def integral(model: SncModel, m: int) -> MotivicClass:
    """Degree-``m`` motivic integral of the gauge form.

    ``L^{-d} sum_J (L-1)^{|J|-1} [E_J] sum_k L^{-sum k_i mu_i}`` where ``k``
    runs over positive integer vectors with ``sum k_i N_i = m``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    out = MotivicClass()
    for J, cls_ in model.items():
        comps = [model.component(j) for j in sorted(J)]
        inner = MotivicClass()
        for ks in _compositions([c.mult for c in comps], m):
            inner = inner + MotivicClass.lefschetz(-sum(k * c.order for k, c in zip(ks, comps)))
        if inner:
            out = out + one_minus_l_power(len(J) - 1) * cls_ * inner
    return out.twist(HalfInt(-2 * model.reldim))


@dataclass(frozen=True)
class VolumeSeries:
    """``sum coefficient * prod L^{-mu}T^N / (1 - L^{-mu}T^N)`` over summands."""

    reldim: int
    summands: tuple[tuple[frozenset, MotivicClass, tuple[tuple[int, int], ...]], ...]

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        lines = []
        for J, coeff, factors in self.summands:
            fs = " * ".join(f"{_mono(mu, N)}/(1 - {_mono(mu, N)})" for mu, N in factors)
            lines.append(f"({coeff}) * {fs}")
        return "\n+ ".join(lines)


def _mono(mu: int, N: int) -> str:
    t = "T" if N == 1 else f"T^{N}"
    return t if mu == 0 else f"L^{{{-mu}}}*{t}"


def volume_series(model: SncModel) -> VolumeSeries:
    summands = []
    for J, cls_ in model.items():
        comps = [model.component(j) for j in sorted(J)]
        coeff = (one_minus_l_power(len(J) - 1) * cls_).twist(HalfInt(-2 * model.reldim))
        summands.append((J, coeff, tuple((c.order, c.mult) for c in comps)))
    return VolumeSeries(model.reldim, tuple(summands))


def _series_mul(a: list[MotivicClass], b: list[MotivicClass], order: int) -> list[MotivicClass]:
    out = [MotivicClass() for _ in range(order + 1)]
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def expand(series: VolumeSeries, order: int) -> list[MotivicClass]:
    """Coefficients of ``T^1 .. T^order``."""
    if order < 1:
        raise ValueError("order must be positive")
    total = [MotivicClass() for _ in range(order + 1)]
    for _, coeff, factors in series.summands:
        prod = [MotivicClass() for _ in range(order + 1)]
        prod[0] = coeff
        for mu, N in factors:
            # x T^N / (1 - x T^N) = sum_{k>=1} x^k T^{kN}
            geo = [MotivicClass() for _ in range(order + 1)]
            for k in range(1, order // N + 1):
                geo[k * N] = MotivicClass.lefschetz(-k * mu)
            prod = _series_mul(prod, geo, order)
        total = [s + p for s, p in zip(total, prod)]
    return total[1:]


def motivic_volume(model: SncModel) -> MotivicClass:
    """``-lim_{T -> oo}`` of the volume series; each factor tends to ``-1``."""
    out = MotivicClass()
    for _, coeff, factors in volume_series(model).summands:
        out = out - coeff.scale((-1) ** len(factors))
    return out


def nearby_cycle(model: SncModel) -> MotivicClass:
    """``sum_J (1-L)^{|J|-1} [E_J]``."""
    out = MotivicClass()
    for J, cls_ in model.items():
        out = out + one_minus_l_power(len(J) - 1, sign=1) * cls_
    return out


def vanishing_cycle(model: SncModel) -> MotivicClass:
    """``L^{-dim U / 2} * ([U] - nearby_cycle)`` at the value 0."""
    if model.ambient is None or model.ambient_dim is None:
        raise ModelError("vanishing cycle needs an ambient class with dimU")
    return (model.ambient - nearby_cycle(model)).twist(HalfInt(-model.ambient_dim))


def piece_volume(open_dims: int, closed_dims: int) -> MotivicClass:
    """Volume of a polydisc open in ``open_dims`` and closed in ``closed_dims`` directions."""
    if open_dims < 0 or closed_dims < 0:
        raise ValueError("dimensions must be nonnegative")
    return MotivicClass.lefschetz(-open_dims)


def annulus_volume() -> MotivicClass:
    return MotivicClass()


def power_model(n: int) -> SncModel:
    """Resolution data of ``x^n`` at the origin of the line."""
    from .ring import mu
    return SncModel([SncComponent("E1", n, 0)],
                    {frozenset({"E1"}): MotivicClass.of_atom(mu(n))},
                    reldim=1, ambient=MotivicClass.one(), ambient_dim=1)
