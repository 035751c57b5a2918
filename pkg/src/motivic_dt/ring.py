"""Exact arithmetic in the localized equivariant Grothendieck ring.

Elements are finite integer combinations of terms.  A term is a product of
atoms (variety classes, possibly carrying a cyclic monodromy), a half-integer
power of the Lefschetz class ``L`` and a set of Z/2-bundle units.  The
product of the ring is the convolution product, written ``*`` here.

The point class is the multiplicative identity and is never stored as an
atom; ``MU1`` is the same thing.  ``GM`` is shorthand for ``L - 1``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping


class RingError(Exception):
    pass


class UnsupportedSmash(RingError):
    """Both factors of a product carry nontrivial monodromy."""


class MissingData(RingError):
    pass


@dataclass(frozen=True, order=True)
class HalfInt:
    """A number ``p/2``; only the numerator ``twice`` is stored."""

    twice: int = 0

    @classmethod
    def from_fraction(cls, value) -> "HalfInt":
        value = Fraction(value)
        doubled = 2 * value
        if doubled.denominator != 1:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(doubled))

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + other.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice - other.twice)

    def __bool__(self) -> bool:
        return self.twice != 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


@dataclass(frozen=True)
class Atom:
    name: str
    euler: int | None = None
    mu_order: int = 1
    # Laurent polynomial in q as {exponent: coefficient}
    poincare: tuple[tuple[int, int], ...] | None = None
    dim: int | None = None

    def __post_init__(self):
        if self.mu_order < 1:
            raise ValueError(f"atom {self.name}: mu_order must be >= 1")
        if self.dim is not None and self.dim < 0:
            raise ValueError(f"atom {self.name}: dim must be nonnegative")
        if self.poincare is not None:
            object.__setattr__(self, "poincare", tuple(sorted(self.poincare)))

    @property
    def monodromic(self) -> bool:
        return self.mu_order > 1


@dataclass(frozen=True)
class BundleGenerator:
    name: str
    euler_sign: int = 1

    def __post_init__(self):
        if self.euler_sign not in (1, -1):
            raise ValueError(f"bundle {self.name}: euler_sign must be +1 or -1")


_MU_RE = re.compile(r"MU(\d+)$")


def mu(n: int) -> Atom | None:
    """The class of ``n`` points permuted cyclically; ``None`` for n = 1."""
    if n < 1:
        raise ValueError("mu(n) needs n >= 1")
    if n == 1:
        return None
    return Atom(f"MU{n}", euler=n, mu_order=n)


@dataclass(frozen=True)
class Term:
    atoms: tuple[Atom, ...] = ()
    lpow: HalfInt = HalfInt(0)
    units: tuple[BundleGenerator, ...] = ()

    @classmethod
    def make(cls, atoms: Iterable[Atom] = (), lpow: HalfInt = HalfInt(0),
             units: Iterable[BundleGenerator] = ()) -> "Term":
        atoms = tuple(sorted(atoms, key=lambda a: a.name))
        if sum(a.monodromic for a in atoms) > 1:
            raise UnsupportedSmash(
                "a term may carry at most one monodromic atom: "
                + ", ".join(a.name for a in atoms if a.monodromic))
        # F2-reduce the unit support
        counts: dict[str, BundleGenerator] = {}
        for u in units:
            if u.name in counts:
                del counts[u.name]
            else:
                counts[u.name] = u
        return cls(atoms, lpow, tuple(counts[k] for k in sorted(counts)))

    @property
    def key(self) -> tuple:
        return (tuple(a.name for a in self.atoms), self.lpow.twice,
                tuple(u.name for u in self.units))

    @property
    def monodromic(self) -> bool:
        return any(a.monodromic for a in self.atoms)

    def smash(self, other: "Term") -> "Term":
        if self.monodromic and other.monodromic:
            raise UnsupportedSmash(
                f"cannot multiply {_term_str(self)} by {_term_str(other)}: "
                "both carry nontrivial monodromy")
        return Term.make(self.atoms + other.atoms, self.lpow + other.lpow,
                         self.units + other.units)


class MotivicClass:
    """An immutable element of the ring, kept in normal form.

    >>> half = MotivicClass.lefschetz(HalfInt(1))
    >>> str(half * half)
    'L'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Term, int] | None = None):
        clean = {}
        for t, c in (terms or {}).items():
            if c:
                clean[t] = c
        self._terms = dict(sorted(clean.items(), key=lambda tc: tc[0].key))
        self._hash = None

    # constructors

    @classmethod
    def zero(cls) -> "MotivicClass":
        return cls()

    @classmethod
    def one(cls) -> "MotivicClass":
        return cls({Term(): 1})

    @classmethod
    def integer(cls, n: int) -> "MotivicClass":
        return cls({Term(): n})

    @classmethod
    def lefschetz(cls, power: HalfInt | int | Fraction = 1) -> "MotivicClass":
        """``L**power``; plain ints and Fractions are powers, not doubled."""
        if not isinstance(power, HalfInt):
            power = HalfInt.from_fraction(power)
        return cls({Term(lpow=power): 1})

    @classmethod
    def of_atom(cls, atom: Atom | None) -> "MotivicClass":
        if atom is None:
            return cls.one()
        return cls({Term.make([atom]): 1})

    @classmethod
    def unit(cls, g: BundleGenerator) -> "MotivicClass":
        return cls({Term.make(units=[g]): 1})

    # accessors

    @property
    def terms(self) -> dict[Term, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def has_units(self) -> bool:
        return any(t.units for t in self._terms)

    @property
    def monodromic(self) -> bool:
        return any(t.monodromic for t in self._terms)

    # arithmetic

    @staticmethod
    def _coerce(x) -> "MotivicClass":
        if isinstance(x, MotivicClass):
            return x
        if isinstance(x, int):
            return MotivicClass.integer(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for t, c in other._terms.items():
            out[t] = out.get(t, 0) + c
        return MotivicClass(out)

    __radd__ = __add__

    def __neg__(self):
        return MotivicClass({t: -c for t, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return smash(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = MotivicClass.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, n: int) -> "MotivicClass":
        return MotivicClass({t: n * c for t, c in self._terms.items()})

    def twist(self, power: HalfInt) -> "MotivicClass":
        """Multiply by ``L**power``; central against every term."""
        return MotivicClass({Term(t.atoms, t.lpow + power, t.units): c
                             for t, c in self._terms.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        return print_canonical(self)

    def __repr__(self):
        return f"MotivicClass({print_canonical(self)!r})"


def add(a: MotivicClass, b: MotivicClass) -> MotivicClass:
    return a + b


def smash(a: MotivicClass, b: MotivicClass) -> MotivicClass:
    out: dict[Term, int] = {}
    for s, c in a.items():
        for t, d in b.items():
            st = s.smash(t)
            out[st] = out.get(st, 0) + c * d
    return MotivicClass(out)


def one_minus_l_power(k: int, sign: int = -1) -> MotivicClass:
    """``(L - 1)**k`` for sign=-1 or ``(1 - L)**k`` for sign=+1, by binomials."""
    from math import comb
    out: dict[Term, int] = {}
    for j in range(k + 1):
        # coefficient of L**j
        c = comb(k, j)
        if sign == -1:
            c *= (-1) ** (k - j)
        else:
            c *= (-1) ** j
        out[Term(lpow=HalfInt(2 * j))] = c
    return MotivicClass(out)


def upsilon(g: BundleGenerator, base: MotivicClass) -> MotivicClass:
    """Motive of a principal Z/2-bundle with generator ``g`` over ``base``.

    Realized as ``base * U(g)``; since units are reduced mod 2 the square of
    ``U(g)`` is the identity, which is the relation defining the quotient ring.
    """
    if base.has_units:
        raise RingError("upsilon: base class already carries units")
    return base * MotivicClass.unit(g)


def upsilon_from_cover(base: MotivicClass, cover: MotivicClass) -> MotivicClass:
    """``L^{-1/2} * (base - cover)``, the geometric definition for a given cover."""
    return (base - cover).twist(HalfInt(-1))


def rewrite_mu2(x: MotivicClass) -> MotivicClass:
    """Replace every ``[MU2]`` by ``1 - L^{1/2}``."""
    out = MotivicClass()
    for t, c in x.items():
        if not any(a.name == "MU2" for a in t.atoms):
            out = out + MotivicClass({t: c})
            continue
        rest = list(t.atoms)
        rest.remove(next(a for a in rest if a.name == "MU2"))
        base = Term.make(rest, t.lpow, t.units)
        shifted = Term.make(rest, t.lpow + HalfInt(1), t.units)
        out = out + MotivicClass({base: c}) - MotivicClass({shifted: c})
    return out


def euler_specialize(x: MotivicClass) -> int:
    """``L^{1/2} -> -1``, atoms to their Euler characteristic, units to their sign."""
    total = 0
    for t, c in x.items():
        v = -1 if t.lpow.twice % 2 else 1
        for a in t.atoms:
            if a.euler is None:
                raise MissingData(f"atom [{a.name}] has no euler value")
            v *= a.euler
        for u in t.units:
            v *= u.euler_sign
        total += c * v
    return total


def weight_specialize(x: MotivicClass) -> dict[int, int]:
    """Laurent polynomial in ``q^{1/2}`` as ``{twice_exponent: coefficient}``."""
    out: dict[int, int] = {}
    for t, c in x.items():
        if t.units:
            raise RingError("weight specialization undefined on bundle units")
        poly = {t.lpow.twice: c}
        for a in t.atoms:
            if a.monodromic:
                raise RingError(f"weight specialization undefined on monodromic atom [{a.name}]")
            if a.poincare is None:
                raise MissingData(f"atom [{a.name}] has no poincare polynomial")
            nxt: dict[int, int] = {}
            for e, k in poly.items():
                for pe, pk in a.poincare:
                    nxt[e + 2 * pe] = nxt.get(e + 2 * pe, 0) + k * pk
            poly = nxt
        for e, k in poly.items():
            out[e] = out.get(e, 0) + k
    return {e: k for e, k in sorted(out.items()) if k}


def format_q(poly: Mapping[int, int]) -> str:
    """Render a ``weight_specialize`` result, highest power first."""
    if not poly:
        return "0"
    parts = []
    for e in sorted(poly, reverse=True):
        c = poly[e]
        if e == 0:
            mono = ""
        elif e == 2:
            mono = "q"
        elif e % 2 == 0:
            mono = f"q^{e // 2}"
        else:
            mono = f"q^{{{e}/2}}"
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# printing


def _lpow_str(p: HalfInt) -> str:
    if p.twice == 2:
        return "L"
    if p.twice % 2 == 0:
        return f"L^{{{p.twice // 2}}}"
    return f"L^{{{p.twice}/2}}"


def _factors(t: Term) -> list[str]:
    fs = [f"[{a.name}]" for a in t.atoms]
    if t.lpow:
        fs.append(_lpow_str(t.lpow))
    fs.extend(f"U({u.name})" for u in t.units)
    return fs


def _term_str(t: Term) -> str:
    return "*".join(_factors(t)) or "1"


def print_canonical(x: MotivicClass) -> str:
    if not x:
        return "0"
    out = []
    for t, c in x.items():
        fs = _factors(t)
        mag = abs(c)
        if not fs:
            body = str(mag)
        elif mag == 1:
            body = "*".join(fs)
        else:
            body = "*".join([str(mag)] + fs)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# atom tables


@dataclass
class AtomTable:
    atoms: dict[str, Atom] = field(default_factory=dict)
    bundles: dict[str, BundleGenerator] = field(default_factory=dict)

    RESERVED = frozenset({"PT", "GM"})

    def add_atom(self, atom: Atom) -> None:
        if atom.name in self.atoms or atom.name in self.RESERVED or _MU_RE.match(atom.name):
            raise ValueError(f"duplicate or reserved atom name {atom.name!r}")
        self.atoms[atom.name] = atom

    def add_bundle(self, g: BundleGenerator) -> None:
        if g.name in self.bundles:
            raise ValueError(f"duplicate bundle name {g.name!r}")
        self.bundles[g.name] = g

    def resolve_atom(self, name: str) -> MotivicClass:
        """Class named by ``[name]``; raises KeyError if unknown."""
        if name == "PT":
            return MotivicClass.one()
        if name == "GM":
            return MotivicClass.lefschetz(1) - 1
        m = _MU_RE.match(name)
        if m:
            n = int(m.group(1))
            if n < 1:
                raise KeyError(name)
            return MotivicClass.of_atom(mu(n))
        return MotivicClass.of_atom(self.atoms[name])

    def resolve_unit(self, name: str) -> MotivicClass:
        return MotivicClass.unit(self.bundles[name])

    @classmethod
    def from_dict(cls, doc: Mapping) -> "AtomTable":
        table = cls()
        for a in doc.get("atoms", []):
            poincare = a.get("poincare")
            if poincare is not None:
                poincare = _parse_poincare(poincare)
            table.add_atom(Atom(a["name"], a.get("euler"), int(a.get("mu_order", 1)),
                                poincare, a.get("dim")))
        for b in doc.get("bundles", []):
            table.add_bundle(BundleGenerator(b["name"], int(b.get("euler_sign", 1))))
        return table

    def to_dict(self) -> dict:
        atoms = []
        for a in self.atoms.values():
            d = {"name": a.name, "euler": a.euler, "mu_order": a.mu_order}
            if a.poincare is not None:
                d["poincare"] = {str(e): c for e, c in a.poincare}
            if a.dim is not None:
                d["dim"] = a.dim
            atoms.append(d)
        bundles = [{"name": g.name, "euler_sign": g.euler_sign} for g in self.bundles.values()]
        return {"atoms": atoms, "bundles": bundles}

    @classmethod
    def load(cls, path) -> "AtomTable":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def _parse_poincare(raw) -> tuple[tuple[int, int], ...]:
    # {"1": 1, "0": -1} or [[1, 1], [0, -1]]
    items = raw.items() if isinstance(raw, Mapping) else raw
    poly: dict[int, int] = {}
    for e, c in items:
        poly[int(e)] = poly.get(int(e), 0) + int(c)
    return tuple(sorted((e, c) for e, c in poly.items() if c))


def default_table() -> AtomTable:
    """PT, MU2..MU12 and GM are always available; nothing else is declared."""
    return AtomTable()
