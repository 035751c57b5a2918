"""Virtual indices and the G_m-localization sum over fixed strata."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .parser import parse
from .ring import AtomTable, HalfInt, MotivicClass, euler_specialize


class NonGenericAction(ValueError):
    """A tangent weight pairs to zero with the chosen one-parameter subgroup."""

    def __init__(self, message: str, weights=(), partition=None):
        self.weights = list(weights)
        self.partition = partition
        super().__init__(message)


@dataclass(frozen=True)
class FixedStratum:
    name: str
    motive: MotivicClass
    index: int


def virtual_index(weights: Iterable[int]) -> int:
    """Number of positive weights minus number of negative weights."""
    weights = list(weights)
    zeros = [i for i, w in enumerate(weights) if w == 0]
    if zeros:
        raise NonGenericAction(f"zero weight at positions {zeros}", weights=[0] * len(zeros))
    return sum(1 if w > 0 else -1 for w in weights)


def localize(strata: Iterable[FixedStratum]) -> MotivicClass:
    out = MotivicClass()
    for s in strata:
        out = out + s.motive.twist(HalfInt(-s.index))
    return out


def isolated_sum(indices: Sequence[int]) -> MotivicClass:
    """Localization at isolated fixed points, each contributing ``L^{-ind/2}``."""
    return localize(FixedStratum(f"P{i}", MotivicClass.one(), ind)
                    for i, ind in enumerate(indices))


def euler_of_localization(strata: Iterable[FixedStratum]) -> int:
    return sum((-1) ** (s.index % 2) * euler_specialize(s.motive) for s in strata)


def load_strata(path, table: AtomTable | None = None) -> list[FixedStratum]:
    with open(path) as fh:
        doc = json.load(fh)
    return strata_from_list(doc, table)


def strata_from_list(doc, table: AtomTable | None = None) -> list[FixedStratum]:
    if not isinstance(doc, list):
        raise ValueError("strata document must be a JSON list")
    out = []
    for i, entry in enumerate(doc):
        try:
            out.append(FixedStratum(str(entry.get("name", f"S{i}")),
                                    parse(entry["motive"], table), int(entry["index"])))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"bad stratum entry {i}: {exc!r}") from exc
    return out


def strata_to_list(strata: Iterable[FixedStratum]) -> list[dict]:
    return [{"name": s.name, "index": s.index, "motive": str(s.motive)} for s in strata]
