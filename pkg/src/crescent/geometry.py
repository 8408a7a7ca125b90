"""Cayley-Menger and squared-distance determinants with general-position margins.

For k points with squared pairwise distances S, the bordered determinant

    | S 1 |
    | 1 0 |

vanishes exactly when the points fit in a (k-2)-dimensional flat, and det(S)
itself vanishes exactly when the points are cospherical in dimension k-2.  In
the plane that gives three families of conditions: 4-subsets must be flat
(planarity), 3-subsets must not be flat (collinearity margin), and 4-subsets
must not be cospherical (concyclicity margin).
"""

from __future__ import annotations

import itertools
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .labelcore import LabelMatrix

Matrix = Sequence[Sequence]


@dataclass(frozen=True)
class DistanceAssignment:
    """Positive value for each label, with the unit label pinned to 1."""

    n: int
    values: Mapping[int, float]

    def __post_init__(self):
        need = set(range(1, self.n))
        have = set(self.values)
        if have != need:
            raise ValueError(f"assignment must cover labels {sorted(need)}, "
                             f"got {sorted(have)}")
        if self.values[1] != 1:
            raise ValueError(f"label 1 must map to exactly 1, got {self.values[1]}")
        if any(v <= 0 for v in self.values.values()):
            raise ValueError("distance values must be strictly positive")

    def value(self, label: int):
        return self.values[label]


def _is_exact(x) -> bool:
    return isinstance(x, numbers.Rational)


def exact_det(rows: Matrix) -> Fraction:
    """Fraction-free Bareiss determinant over exact rational entries."""
    m = [[Fraction(x) for x in row] for row in rows]
    k = len(m)
    if k == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for col in range(k - 1):
        if m[col][col] == 0:
            for r in range(col + 1, k):
                if m[r][col] != 0:
                    m[col], m[r] = m[r], m[col]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(col + 1, k):
            for j in range(col + 1, k):
                m[i][j] = (m[i][j] * m[col][col] - m[i][col] * m[col][j]) / prev
        prev = m[col][col]
    return sign * m[k - 1][k - 1]


def det(rows: Matrix):
    """Determinant: exact over rational entries, floating otherwise."""
    if all(_is_exact(x) for row in rows for x in row):
        return exact_det(rows)
    return float(np.linalg.det(np.asarray(rows, dtype=float)))


def squared_distances(m: LabelMatrix, a: DistanceAssignment,
                      subset: Sequence[int] | None = None) -> list[list]:
    """Squared-distance matrix of the points in subset under the assignment."""
    idx = list(range(m.n)) if subset is None else list(subset)
    for lab in set(m.upper_triangle()):
        if lab not in a.values:
            raise ValueError(f"assignment missing label {lab}")
    out = []
    for i in idx:
        row = []
        for j in idx:
            if i == j:
                row.append(0 * a.values[1])
            else:
                v = a.values[m.entries[i][j]]
                row.append(v * v)
        out.append(row)
    return out


def squared_from_points(points: Sequence[Sequence[float]]) -> list[list[float]]:
    """Squared-distance matrix of explicit coordinates (any dimension)."""
    k = len(points)
    out = [[0.0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            s = sum((float(points[i][t]) - float(points[j][t])) ** 2
                    for t in range(len(points[i])))
            out[i][j] = out[j][i] = s
    return out


def cm_det(sq: Matrix):
    """Determinant of the squared-distance matrix bordered by ones."""
    k = len(sq)
    one = Fraction(1) if all(_is_exact(x) for row in sq for x in row) else 1.0
    bordered = [list(row) + [one] for row in sq]
    bordered.append([one] * k + [0 * one])
    return det(bordered)


def edm_det(sq: Matrix):
    """Plain determinant of the squared-distance matrix."""
    return det(sq)


def _normalized(value, sq: Matrix, degree: int) -> float:
    """|value| / g**degree with g the geometric mean of off-diagonal entries."""
    k = len(sq)
    logs = [math.log(float(sq[i][j])) for i in range(k) for j in range(i + 1, k)
            if float(sq[i][j]) > 0.0]
    if len(logs) < k * (k - 1) // 2:
        # a vanished off-diagonal entry: coincident points, no meaningful scale
        return abs(float(value))
    g = math.exp(sum(logs) / len(logs))
    return abs(float(value)) / g ** degree


@dataclass(frozen=True)
class PositionMargins:
    """Scale-normalized determinant magnitudes per point subset (0-based keys)."""

    planarity: dict[tuple[int, ...], float]
    collinearity: dict[tuple[int, ...], float]
    concyclicity: dict[tuple[int, ...], float]

    def worst_planarity(self) -> float:
        return max(self.planarity.values(), default=0.0)

    def worst_collinearity(self) -> float:
        return min(self.collinearity.values(), default=math.inf)

    def worst_concyclicity(self) -> float:
        return min(self.concyclicity.values(), default=math.inf)

    def to_json_dict(self) -> dict:
        def fmt(d):  # 1-based subset keys
            return {",".join(str(i + 1) for i in k): v for k, v in sorted(d.items())}
        return {"planarity": fmt(self.planarity),
                "collinearity": fmt(self.collinearity),
                "concyclicity": fmt(self.concyclicity)}


def margins_from_squared(sq: Matrix, dim: int = 2) -> PositionMargins:
    """All three margin families for a full squared-distance matrix."""
    k = len(sq)
    flat, line, sphere = {}, {}, {}
    for sub in itertools.combinations(range(k), dim + 2):
        block = [[sq[i][j] for j in sub] for i in sub]
        flat[sub] = _normalized(cm_det(block), block, dim + 1)
        sphere[sub] = _normalized(edm_det(block), block, dim + 2)
    for sub in itertools.combinations(range(k), dim + 1):
        block = [[sq[i][j] for j in sub] for i in sub]
        line[sub] = _normalized(cm_det(block), block, dim)
    return PositionMargins(planarity=flat, collinearity=line, concyclicity=sphere)


def general_position_margins(m: LabelMatrix, a: DistanceAssignment,
                             dim: int = 2) -> PositionMargins:
    return margins_from_squared(squared_distances(m, a), dim=dim)


def margins_from_points(points: Sequence[Sequence[float]], dim: int = 2) -> PositionMargins:
    return margins_from_squared(squared_from_points(points), dim=dim)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    failing_subset: tuple[int, ...] | None = None
    reason: str | None = None


def check_margins(margins: PositionMargins, tol_zero: float, tol_margin: float,
                  require_planarity: bool = True) -> Verdict:
    """First failing subset in the fixed order planarity, collinearity, concyclicity."""
    if require_planarity:
        for sub in sorted(margins.planarity):
            if margins.planarity[sub] > tol_zero:
                return Verdict(False, sub, "planarity")
    for sub in sorted(margins.collinearity):
        if margins.collinearity[sub] < tol_margin:
            return Verdict(False, sub, "collinearity")
    for sub in sorted(margins.concyclicity):
        if margins.concyclicity[sub] < tol_margin:
            return Verdict(False, sub, "concyclicity")
    return Verdict(True)


def verify_realizable(m: LabelMatrix, a: DistanceAssignment,
                      tol_zero: float = 1e-9, tol_margin: float = 1e-6,
                      dim: int = 2) -> Verdict:
    """Realizability test for a value assignment: flat 4-subsets, no collinear
    triples, no concyclic 4-subsets (for dim=2)."""
    return check_margins(general_position_margins(m, a, dim=dim),
                         tol_zero, tol_margin)
