"""Root-system and Killing-form data for the compact simple simply connected groups.

Everything here is exact rational arithmetic (``fractions.Fraction``); floating
point enters only in the downstream numerical modules.  Two independent routes
produce the same record: :func:`build_group` works combinatorially from a
standard simple-root realization, while :func:`killing_oracle` recomputes the
same constants from the full root system and the trace form of the adjoint
action on a Cartan basis.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

Vector = Tuple[Fraction, ...]

_VALID_RANKS = {
    "A": range(1, 9),
    "B": range(2, 9),
    "C": range(3, 9),
    "D": range(4, 9),
    "E": (6, 7, 8),
    "F": (4,),
    "G": (2,),
}

_GROUP_RE = re.compile(r"^([A-Ga-g])(\d+)$")


class RootSystemError(ValueError):
    """Invalid series/rank combination or malformed input."""


@dataclass(frozen=True)
class GroupType:
    """A simple Lie type: series letter plus rank."""

    series: str
    rank: int

    def __post_init__(self):
        if self.series not in _VALID_RANKS:
            raise RootSystemError(f"unknown series {self.series!r}")
        if self.rank not in _VALID_RANKS[self.series]:
            raise RootSystemError(
                f"rank {self.rank} is not valid for series {self.series} "
                f"(supported: {list(_VALID_RANKS[self.series])})"
            )

    @classmethod
    def parse(cls, name: str) -> "GroupType":
        m = _GROUP_RE.match(name.strip())
        if not m:
            raise RootSystemError(f"cannot parse group type {name!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


@dataclass(frozen=True)
class GroupData:
    """Constants attached to a simple Lie type.

    ``beta_norm_sq`` is the squared length of the highest root in the
    normalization where the inner product on the dual Cartan subalgebra is
    minus the dual Killing form; in that normalization it equals
    ``1/dual_coxeter``.  ``c_times_pi`` is the exact rational part of the
    3-form normalization constant ``c = c_times_pi / pi``.
    """

    group_type: GroupType
    cartan: Tuple[Tuple[int, ...], ...]
    s_matrix: Tuple[Tuple[int, ...], ...]
    coroot_gram_ratio: Tuple[Tuple[Fraction, ...], ...]
    beta_norm_sq: Fraction
    c_times_pi: Fraction
    dual_coxeter: int

    @property
    def rank(self) -> int:
        return self.group_type.rank

    def coroot_killing_gram(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """Exact Gram matrix of the simple coroots under the Killing form.

        The normalization is pinned by the highest coroot, whose Killing
        square-norm is ``-4/beta_norm_sq``.
        """
        scale = Fraction(-4) / self.beta_norm_sq
        return tuple(
            tuple(scale * entry for entry in row) for row in self.coroot_gram_ratio
        )

    def to_json_dict(self) -> dict:
        def frac(q: Fraction) -> dict:
            return {"num": q.numerator, "den": q.denominator}

        return {
            "group": str(self.group_type),
            "cartan": [list(row) for row in self.cartan],
            "s_matrix": [list(row) for row in self.s_matrix],
            "coroot_gram_ratio": [[frac(q) for q in row] for row in self.coroot_gram_ratio],
            "beta_norm_sq": frac(self.beta_norm_sq),
            "c_times_pi": frac(self.c_times_pi),
            "dual_coxeter": self.dual_coxeter,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def _dot(x: Vector, y: Vector) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def simple_roots(gt: GroupType) -> List[Vector]:
    """Standard orthonormal-coordinate simple roots for each series."""
    n = gt.rank
    Q = Fraction

    def e(i: int, dim: int, coeff=Q(1)) -> List[Fraction]:
        v = [Q(0)] * dim
        v[i] = coeff
        return v

    rows: List[List[Fraction]] = []
    if gt.series == "A":
        dim = n + 1
        for i in range(n):
            v = e(i, dim)
            v[i + 1] = Q(-1)
            rows.append(v)
    elif gt.series in ("B", "C", "D"):
        dim = n
        for i in range(n - 1):
            v = e(i, dim)
            v[i + 1] = Q(-1)
            rows.append(v)
        if gt.series == "B":
            rows.append(e(n - 1, dim))
        elif gt.series == "C":
            rows.append(e(n - 1, dim, Q(2)))
        else:
            v = e(n - 2, dim)
            v[n - 1] = Q(1)
            rows.append(v)
    elif gt.series == "E":
        # Bourbaki numbering for E8; E6, E7 take the leading subsets.
        dim = 8
        a1 = [Q(1, 2), *([Q(-1, 2)] * 6), Q(1, 2)]
        a2 = [Q(1), Q(1)] + [Q(0)] * 6
        rows = [a1, a2]
        for i in range(1, 7):
            v = e(i, dim)
            v[i - 1] = Q(-1)
            rows.append(v)
        rows = rows[: n]
    elif gt.series == "F":
        dim = 4
        rows = [
            [Q(0), Q(1), Q(-1), Q(0)],
            [Q(0), Q(0), Q(1), Q(-1)],
            [Q(0), Q(0), Q(0), Q(1)],
            [Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2)],
        ]
    elif gt.series == "G":
        rows = [
            [Q(1), Q(-1), Q(0)],
            [Q(-2), Q(1), Q(1)],
        ]
    else:  # pragma: no cover - GroupType already validated
        raise RootSystemError(f"unsupported series {gt.series}")
    return [tuple(v) for v in rows]


def cartan_matrix(simple: Sequence[Vector]) -> Tuple[Tuple[int, ...], ...]:
    """C_ij = 2(a_i, a_j)/(a_j, a_j) from the Euclidean realization."""
    k = len(simple)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            q = 2 * _dot(simple[i], simple[j]) / _dot(simple[j], simple[j])
            if q.denominator != 1:
                raise RootSystemError("non-integral Cartan entry; bad realization")
            row.append(int(q))
        rows.append(tuple(row))
    return tuple(rows)


def s_matrix_from_cartan(cartan: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    k = len(cartan)
    return tuple(
        tuple(min(cartan[i][j], cartan[j][i]) for j in range(k)) for i in range(k)
    )


def positive_roots(simple: Sequence[Vector]) -> List[Tuple[Vector, Tuple[int, ...]]]:
    """All positive roots with their simple-root coefficient vectors.

    Grown level by level: r + a_i is a root iff the a_i-string through r
    extends upward, i.e. p - <r, a_i^vee> > 0 where p counts the downward
    steps already present.
    """
    k = len(simple)
    norms = [_dot(a, a) for a in simple]
    known: Dict[Vector, Tuple[int, ...]] = {}
    for i, a in enumerate(simple):
        coeff = tuple(1 if j == i else 0 for j in range(k))
        known[a] = coeff
    frontier = list(known.items())
    while frontier:
        new: List[Tuple[Vector, Tuple[int, ...]]] = []
        for root, coeff in frontier:
            for i, a in enumerate(simple):
                # p = longest chain root - a, root - 2a, ... inside the system
                p = 0
                probe = tuple(x - y for x, y in zip(root, a))
                while probe in known:
                    p += 1
                    probe = tuple(x - y for x, y in zip(probe, a))
                pairing = 2 * _dot(root, a) / norms[i]
                if p - pairing > 0:
                    cand = tuple(x + y for x, y in zip(root, a))
                    if cand not in known:
                        ccoeff = tuple(
                            c + (1 if j == i else 0) for j, c in enumerate(coeff)
                        )
                        known[cand] = ccoeff
                        new.append((cand, ccoeff))
        frontier = new
    return list(known.items())


def highest_root(simple: Sequence[Vector]) -> Tuple[Vector, Tuple[int, ...]]:
    """The unique positive root of maximal height."""
    pos = positive_roots(simple)
    best = max(pos, key=lambda item: sum(item[1]))
    top_height = sum(best[1])
    if sum(1 for _, c in pos if sum(c) == top_height) != 1:
        raise RootSystemError("highest root is not unique; reducible system?")
    return best


@lru_cache(maxsize=None)
def build_group(gt: GroupType) -> GroupData:
    """Default construction: combinatorial route through the root poset.

    The dual Coxeter number comes from the comarks of the highest root; the
    Killing-normalized |beta|^2 is its reciprocal.
    """
    simple = simple_roots(gt)
    cartan = cartan_matrix(simple)
    smat = s_matrix_from_cartan(cartan)
    beta, marks = highest_root(simple)
    beta_sq = _dot(beta, beta)
    comark_sum = sum(
        (m * _dot(a, a) / beta_sq for m, a in zip(marks, simple)), Fraction(0)
    )
    if comark_sum.denominator != 1:
        raise RootSystemError("non-integral comark sum")
    h_dual = 1 + int(comark_sum)
    beta_norm_sq = Fraction(1, h_dual)
    # B(coroot_i, coroot_j)/B(coroot_beta, coroot_beta); equals S_ij/2 off the
    # diagonal, while the diagonal is the integer |beta|^2/|a_i|^2 (1, 2 or 3).
    norms = [_dot(a, a) for a in simple]
    ratio = tuple(
        tuple(
            _dot(simple[i], simple[j]) * beta_sq / (norms[i] * norms[j])
            for j in range(gt.rank)
        )
        for i in range(gt.rank)
    )
    return GroupData(
        group_type=gt,
        cartan=cartan,
        s_matrix=smat,
        coroot_gram_ratio=ratio,
        beta_norm_sq=beta_norm_sq,
        c_times_pi=-beta_norm_sq / 48,
        dual_coxeter=h_dual,
    )


def _solve_rational(mat: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    """Gaussian elimination over the rationals."""
    k = len(mat)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if pivot is None:
            raise RootSystemError("singular linear system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][k] for r in range(k)]


class _DualKillingForm:
    """Exact dual Killing form on the span of the roots.

    The Killing form on the Cartan subalgebra is the trace form of the adjoint
    action, B(H,H') = sum over roots of a(H)a(H'); the dual form is obtained
    by inverting its Gram matrix in the simple-root basis.  Signs follow the
    compact convention in which the dual-form inner product on roots is
    positive definite.
    """

    def __init__(self, simple: Sequence[Vector], roots: Sequence[Vector]):
        self.simple = list(simple)
        k = len(simple)
        # K_ab = sum_alpha <alpha, s_a><alpha, s_b>
        self.K = [
            [
                sum((_dot(r, simple[a]) * _dot(r, simple[b]) for r in roots), Fraction(0))
                for b in range(k)
            ]
            for a in range(k)
        ]
        self._cache: Dict[Vector, List[Fraction]] = {}

    def _solve(self, lam: Vector) -> List[Fraction]:
        if lam not in self._cache:
            rhs = [_dot(lam, s) for s in self.simple]
            self._cache[lam] = _solve_rational(self.K, rhs)
        return self._cache[lam]

    def pair(self, lam: Vector, mu: Vector) -> Fraction:
        x = self._solve(mu)
        rhs = [_dot(lam, s) for s in self.simple]
        return sum((a * b for a, b in zip(rhs, x)), Fraction(0))


@lru_cache(maxsize=None)
def killing_oracle(gt: GroupType) -> GroupData:
    """Brute-force route: full root system plus the adjoint trace form.

    Independent of :func:`build_group`'s comark shortcut; the two must agree
    exactly on every supported type.
    """
    simple = simple_roots(gt)
    pos = positive_roots(simple)
    all_roots = [r for r, _ in pos] + [tuple(-x for x in r) for r, _ in pos]
    form = _DualKillingForm(simple, all_roots)

    k = gt.rank
    cartan_rows = []
    for i in range(k):
        row = []
        for j in range(k):
            q = 2 * form.pair(simple[i], simple[j]) / form.pair(simple[j], simple[j])
            if q.denominator != 1:
                raise RootSystemError("non-integral Cartan entry from trace form")
            row.append(int(q))
        cartan_rows.append(tuple(row))
    cartan = tuple(cartan_rows)
    smat = s_matrix_from_cartan(cartan)

    beta, _ = highest_root(simple)
    beta_norm_sq = form.pair(beta, beta)
    inv = Fraction(1) / beta_norm_sq
    if inv.denominator != 1:
        raise RootSystemError("1/|beta|^2 is not an integer; normalization broken")
    h_dual = int(inv)

    # B(coroot_i, coroot_j) / B(coroot_beta, coroot_beta)
    # = (a_i, a_j) |beta|^2 / (|a_i|^2 |a_j|^2), all in the dual form.
    norms = [form.pair(a, a) for a in simple]
    ratio = tuple(
        tuple(
            form.pair(simple[i], simple[j]) * beta_norm_sq / (norms[i] * norms[j])
            for j in range(k)
        )
        for i in range(k)
    )
    return GroupData(
        group_type=gt,
        cartan=cartan,
        s_matrix=smat,
        coroot_gram_ratio=ratio,
        beta_norm_sq=beta_norm_sq,
        c_times_pi=-beta_norm_sq / 48,
        dual_coxeter=h_dual,
    )


def all_group_types(max_rank: int = 8) -> List[GroupType]:
    """Every supported type with rank at most ``max_rank``."""
    out = []
    for series, ranks in _VALID_RANKS.items():
        for r in ranks:
            if r <= max_rank:
                out.append(GroupType(series, r))
    return out
