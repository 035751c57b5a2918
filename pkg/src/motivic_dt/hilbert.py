"""Torus-fixed points of Hilb^n(A^3) and the degree-zero refined DT series.

Fixed points are monomial ideals of colength ``n`` in ``k[x, y, z]``,
equivalently plane partitions with ``n`` boxes.  The tangent space at a fixed
point is ``Hom(I, S/I)``, which splits into one-dimensional-ish pieces by
``Z^3`` weight; we compute each piece by exact linear algebra.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .linalg import rank
from .localization import NonGenericAction
from .ring import HalfInt, MotivicClass, Term, euler_specialize

DEFAULT_MAX_N = 12
UNITS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

Triple = tuple[int, int, int]


class BoundExceeded(ValueError):
    pass


def max_n() -> int:
    return int(os.environ.get("MOTDT_MAX_N", DEFAULT_MAX_N))


def _check_bound(n: int, bound: int | None) -> None:
    bound = max_n() if bound is None else bound
    if n > bound:
        raise BoundExceeded(f"size {n} exceeds the partition bound {bound} (set MOTDT_MAX_N)")


@dataclass(frozen=True)
class PlanePartition:
    boxes: frozenset

    def __post_init__(self):
        for b in self.boxes:
            if len(b) != 3 or min(b) < 0:
                raise ValueError(f"bad box {b}")
            for i in range(3):
                if b[i] > 0 and _minus(b, i) not in self.boxes:
                    raise ValueError(f"not downward closed at {b}")

    @classmethod
    def from_heights(cls, rows: list[list[int]]) -> "PlanePartition":
        return cls(frozenset((i, j, k) for i, row in enumerate(rows)
                             for j, h in enumerate(row) for k in range(h)))

    @property
    def size(self) -> int:
        return len(self.boxes)

    def heights(self) -> list[list[int]]:
        if not self.boxes:
            return []
        ni = 1 + max(b[0] for b in self.boxes)
        nj = 1 + max(b[1] for b in self.boxes)
        grid = [[0] * nj for _ in range(ni)]
        for i, j, _ in self.boxes:
            grid[i][j] += 1
        return [[h for h in row if h] for row in grid]

    def label(self) -> str:
        rows = self.heights()
        return "/".join(",".join(map(str, r)) for r in rows) if rows else "-"

    def permute(self, perm: tuple[int, int, int]) -> "PlanePartition":
        """Relabel axes: new coordinate ``perm[i]`` is old coordinate ``i``."""
        out = set()
        for b in self.boxes:
            nb = [0, 0, 0]
            for i in range(3):
                nb[perm[i]] = b[i]
            out.add(tuple(nb))
        return PlanePartition(frozenset(out))

    def sort_key(self):
        return tuple(sorted(self.boxes))

    def __str__(self):
        return self.label()


def _minus(b: Triple, i: int) -> Triple:
    return tuple(b[k] - (k == i) for k in range(3))


def _plus(b: Triple, v: Triple) -> Triple:
    return (b[0] + v[0], b[1] + v[1], b[2] + v[2])


def _addable(boxes: frozenset) -> list[Triple]:
    cands = {(0, 0, 0)} | {_plus(b, u) for b in boxes for u in UNITS}
    return sorted(e for e in cands if e not in boxes
                  and all(e[i] == 0 or _minus(e, i) in boxes for i in range(3)))


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[PlanePartition, ...]:
    if n == 0:
        return (PlanePartition(frozenset()),)
    seen = set()
    for p in _level(n - 1):
        for e in _addable(p.boxes):
            seen.add(p.boxes | {e})
    return tuple(sorted((PlanePartition(b) for b in seen), key=PlanePartition.sort_key))


def enumerate_plane_partitions(n: int, bound: int | None = None) -> list[PlanePartition]:
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_bound(n, bound)
    return list(_level(n))


def macmahon_counts(order: int) -> list[int]:
    """Coefficients of q^1..q^order in prod_m (1 - q^m)^{-m}."""
    c = [1] + [0] * order
    for m in range(1, order + 1):
        for _ in range(m):
            for i in range(m, order + 1):
                c[i] += c[i - m]
    return c[1:]


@dataclass(frozen=True)
class MonomialIdeal:
    partition: PlanePartition
    generators: tuple[Triple, ...]

    @classmethod
    def of(cls, partition: PlanePartition) -> "MonomialIdeal":
        return cls(partition, tuple(_addable(partition.boxes)))

    @property
    def colength(self) -> int:
        return self.partition.size

    def contains(self, e: Triple) -> bool:
        return min(e) >= 0 and e not in self.partition.boxes


@dataclass
class TangentCharacter:
    weights: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return sum(self.weights.values())

    def pairing_counts(self, a: int, b: int, c: int) -> tuple[int, int, int]:
        """Dimensions of the positive, zero and negative parts."""
        pos = zero = neg = 0
        for w, mult in self.weights.items():
            s = a * w[0] + b * w[1] + c * w[2]
            if s > 0:
                pos += mult
            elif s < 0:
                neg += mult
            else:
                zero += mult
        return pos, zero, neg


@lru_cache(maxsize=None)
def tangent_character(P: PlanePartition, bound: int | None = None) -> TangentCharacter:
    """Weight decomposition of ``Hom(I, S/I)`` for the ideal of ``P``.

    A homomorphism of weight ``w`` sends each generator ``x^a`` to a multiple
    of ``x^{a+w}``, which is forced to vanish unless ``a + w`` is a box.  The
    multiples are constrained by the pairwise lcm syzygies, which generate
    all syzygies of a monomial ideal.
    """
    _check_bound(P.size, bound)
    boxes = P.boxes
    gens = MonomialIdeal.of(P).generators
    cands = sorted({tuple(b[i] - g[i] for i in range(3)) for b in boxes for g in gens})
    pairs = list(combinations(range(len(gens)), 2))
    lcms = {(g, h): tuple(max(gens[g][i], gens[h][i]) for i in range(3)) for g, h in pairs}
    out = {}
    for w in cands:
        live = [g for g in range(len(gens)) if _plus(gens[g], w) in boxes]
        if not live:
            continue
        col = {g: k for k, g in enumerate(live)}
        rows = []
        for g, h in pairs:
            if _plus(lcms[g, h], w) not in boxes:
                continue
            row = [0] * len(live)
            if g in col:
                row[col[g]] += 1
            if h in col:
                row[col[h]] -= 1
            rows.append(row)
        dim = len(live) - rank(rows)
        if dim:
            out[w] = dim
    return TangentCharacter(out)


def tangent_dimension_direct(P: PlanePartition) -> int:
    """``dim Hom(I, S/I)`` without any grading.

    Unknowns are the coordinates of every generator's image in the monomial
    basis of ``S/I``; each lcm syzygy gives one equation per basis monomial.
    """
    basis = sorted(P.boxes)
    index = {b: k for k, b in enumerate(basis)}
    gens = MonomialIdeal.of(P).generators
    n = len(basis)
    ncols = len(gens) * n
    rows = []
    for g, h in combinations(range(len(gens)), 2):
        lcm = tuple(max(gens[g][i], gens[h][i]) for i in range(3))
        eqs: dict[Triple, list[int]] = {}
        for gen, sign in ((g, 1), (h, -1)):
            shift = tuple(lcm[i] - gens[gen][i] for i in range(3))
            for b in basis:
                t = _plus(b, shift)
                if t in index:
                    eqs.setdefault(t, [0] * ncols)[gen * n + index[b]] += sign
        rows.extend(eqs[t] for t in sorted(eqs))
    return ncols - rank(rows)


def index_of(P: PlanePartition, a: int, b: int, c: int, strict: bool = True) -> int:
    """``dim T_+ - dim T_-`` under the one-parameter subgroup ``(a, b, c)``."""
    char = tangent_character(P)
    if strict:
        bad = sorted(w for w in char.weights if a * w[0] + b * w[1] + c * w[2] == 0)
        if bad:
            raise NonGenericAction(
                f"weights {bad} of partition {P.label()} pair to zero with ({a},{b},{c})",
                weights=bad, partition=P)
    pos, _, neg = char.pairing_counts(a, b, c)
    return pos - neg


def bbs_series(order: int) -> list[MotivicClass]:
    """Coefficients of T^0..T^order of prod_m prod_{k<m} (1 - L^{k+2-m/2} T^m)^{-1}."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    s = [MotivicClass.one()] + [MotivicClass() for _ in range(order)]
    for m in range(1, order + 1):
        for k in range(m):
            x = MotivicClass({Term(lpow=HalfInt(2 * k + 4 - m)): 1})
            # divide by (1 - x T^m): ascending update is the geometric series
            for i in range(m, order + 1):
                if s[i - m]:
                    s[i] = s[i] + x * s[i - m]
    return s


def _indices_for(args):
    P, a, b, c = args
    char = tangent_character(P)
    pos, zero, neg = char.pairing_counts(a, b, c)
    return pos - neg, zero, char.dimension


def _workers() -> int:
    return int(os.environ.get("MOTDT_JOBS", "1"))


def partition_indices(order: int, a: int, b: int, c: int, workers: int | None = None):
    """``[(P, index, zero_dim, tangent_dim)]`` for every ``|P| <= order``, sorted by size."""
    _check_bound(order, None)
    parts = [P for n in range(order + 1) for P in enumerate_plane_partitions(n)]
    workers = _workers() if workers is None else workers
    args = [(P, a, b, c) for P in parts]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_indices_for, args, chunksize=8))
    else:
        results = [_indices_for(x) for x in args]
    return [(P,) + r for P, r in zip(parts, results)]


def conjecture_series(order: int, a: int, b: int, c: int,
                      workers: int | None = None, strict: bool = True) -> list[MotivicClass]:
    """Coefficient of T^n is ``sum_{|P| = n} L^{-index(P)/2}``, for n = 0..order."""
    rows = partition_indices(order, a, b, c, workers)
    if strict:
        for P, _, zero, _ in rows:
            if zero:
                index_of(P, a, b, c)  # raises with the offending weights
    out = [MotivicClass() for _ in range(order + 1)]
    for P, ind, _, _ in rows:
        out[P.size] = out[P.size] + MotivicClass.lefschetz(HalfInt(-ind))
    return out


@dataclass
class CompareRow:
    n: int
    bbs: MotivicClass
    conjecture: MotivicClass
    euler_bbs: int
    euler_conjecture: int
    parity_sum: int
    signed_count: int
    behrend_agree: int
    partitions: int
    nongeneric: list = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.bbs == self.conjecture

    @property
    def euler_equal(self) -> bool:
        return self.euler_bbs == self.euler_conjecture

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "bbs": str(self.bbs),
            "conjecture": str(self.conjecture),
            "equal": self.equal,
            "euler_bbs": self.euler_bbs,
            "euler_conjecture": self.euler_conjecture,
            "euler_equal": self.euler_equal,
            "parity_sum": self.parity_sum,
            "signed_count": self.signed_count,
            "behrend_agree": self.behrend_agree,
            "partitions": self.partitions,
            "nongeneric": self.nongeneric,
        }


@dataclass
class CompareReport:
    order: int
    weights: tuple[int, int, int]
    rows: list[CompareRow]

    @property
    def nongeneric(self) -> bool:
        return any(r.nongeneric for r in self.rows)

    @property
    def status(self) -> str:
        if self.nongeneric:
            return "nongeneric"
        if all(r.equal for r in self.rows):
            return "equal"
        if all(r.euler_equal for r in self.rows):
            return "euler-equal"
        return "differs"

    @property
    def exit_code(self) -> int:
        return {"equal": 0, "euler-equal": 10, "differs": 11, "nongeneric": 2}[self.status]

    def to_dict(self) -> dict:
        return {"order": self.order, "weights": list(self.weights), "status": self.status,
                "rows": [r.to_dict() for r in self.rows]}


def compare(order: int, a: int, b: int, c: int, workers: int | None = None) -> CompareReport:
    """Set the BBS product against the fixed-point sum, coefficient by coefficient.

    Partitions whose tangent space has a zero-weight part are listed under
    ``nongeneric``; their index still counts only the nonzero parts.
    """
    bbs = bbs_series(order)
    rows = partition_indices(order, a, b, c, workers)
    conj = [MotivicClass() for _ in range(order + 1)]
    parity = [0] * (order + 1)
    agree = [0] * (order + 1)
    count = [0] * (order + 1)
    bad: list[list] = [[] for _ in range(order + 1)]
    for P, ind, zero, _ in rows:
        n = P.size
        conj[n] = conj[n] + MotivicClass.lefschetz(HalfInt(-ind))
        parity[n] += (-1) ** (ind % 2)
        agree[n] += (ind - n) % 2 == 0
        count[n] += 1
        if zero:
            bad[n].append({"partition": P.label(), "zero_dim": zero})
    out = []
    for n in range(order + 1):
        pp = count[n]
        out.append(CompareRow(n, bbs[n], conj[n], euler_specialize(bbs[n]),
                              euler_specialize(conj[n]), parity[n], (-1) ** n * pp,
                              agree[n], pp, bad[n]))
    return CompareReport(order, (a, b, c), out)
