"""Grouping of label matrices into distance-set classes and degeneracy filters.

Two relabelings of the same configuration share the multiset of per-point
distance coordinates, so that multiset is the grouping key.  Three label-level
filters then drop classes that can never sit in general position: a point
seeing the same label four or more times (center of a circle through 4+
points), three apexes equidistant from a common point pair (forced onto the
perpendicular bisector), and any 4-point block whose label pattern forces an
isosceles trapezoid (a cyclic quadrilateral).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .labelcore import LabelMatrix, count_matrices, enumerate_matrices, principal_submatrix

DistanceCoordinate = tuple[int, ...]
DistanceSetKey = tuple[DistanceCoordinate, ...]


def distance_coordinate(m: LabelMatrix, i: int) -> DistanceCoordinate:
    """Sorted multiset of labels seen from point i."""
    return tuple(sorted(m.entries[i][j] for j in range(m.n) if j != i))


def distance_set(m: LabelMatrix) -> DistanceSetKey:
    """Sorted multiset of all distance coordinates; relabeling-invariant key."""
    return tuple(sorted(distance_coordinate(m, i) for i in range(m.n)))


@dataclass(frozen=True)
class IsoClass:
    """One distance-set class with its lexicographically least member."""

    class_id: int
    key: DistanceSetKey
    representative: LabelMatrix
    member_count: int


@dataclass
class ClassificationReport:
    n: int
    total_matrices: int
    class_count: int
    star_rejected: int
    shared_base_rejected: int
    trapezoid_rejected: int
    surviving: list[IsoClass] = field(default_factory=list)

    def summary(self) -> str:
        return (f"n={self.n}: {self.total_matrices} matrices, "
                f"{self.class_count} classes, {len(self.surviving)} surviving")

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total_matrices,
            "classes": self.class_count,
            "rejected": {
                "star": self.star_rejected,
                "shared_base": self.shared_base_rejected,
                "trapezoid": self.trapezoid_rejected,
            },
            "surviving": [
                {
                    "class_id": c.class_id,
                    "representative": c.representative.to_text().strip(),
                    "distance_set": [list(coord) for coord in c.key],
                    "member_count": c.member_count,
                }
                for c in self.surviving
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ClassificationReport":
        surviving = []
        for rec in d["surviving"]:
            rep = LabelMatrix.from_text(rec["representative"])
            surviving.append(IsoClass(
                class_id=int(rec["class_id"]),
                key=tuple(tuple(coord) for coord in rec["distance_set"]),
                representative=rep,
                member_count=int(rec["member_count"]),
            ))
        return cls(
            n=int(d["n"]),
            total_matrices=int(d["total"]),
            class_count=int(d["classes"]),
            star_rejected=int(d["rejected"]["star"]),
            shared_base_rejected=int(d["rejected"]["shared_base"]),
            trapezoid_rejected=int(d["rejected"]["trapezoid"]),
            surviving=surviving,
        )


def group_by_distance_set(stream: Iterable[LabelMatrix]) -> list[IsoClass]:
    """Partition a lexicographic stream into classes keyed by distance set.

    The first member seen is the lexicographically least, hence the
    representative.  Classes come back sorted by representative.
    """
    reps: dict[DistanceSetKey, LabelMatrix] = {}
    counts: Counter[DistanceSetKey] = Counter()
    for m in stream:
        k = distance_set(m)
        if k not in reps:
            reps[k] = m
        counts[k] += 1
    ordered = sorted(reps.values(), key=lambda m: m.upper_triangle())
    return [IsoClass(class_id=i + 1, key=distance_set(m), representative=m,
                     member_count=counts[distance_set(m)])
            for i, m in enumerate(ordered)]


def filter_star(c: IsoClass) -> bool:
    """Reject: some point sees one label 4+ times (4+ points on a circle)."""
    for coord in c.key:
        if any(v >= 4 for v in Counter(coord).values()):
            return True
    return False


def filter_shared_base(c: IsoClass) -> bool:
    """Reject: 3+ points equidistant from both ends of a common base pair."""
    m = c.representative
    n = m.n
    for i in range(n):
        for j in range(i + 1, n):
            apexes = sum(1 for k in range(n)
                         if k != i and k != j and m.entries[k][i] == m.entries[k][j])
            if apexes >= 3:
                return True
    return False


def _block_is_trapezoid(block: tuple[tuple[int, ...], ...]) -> bool:
    """Label pattern of a 4x4 block that always forces an isosceles trapezoid."""
    rows = Counter(tuple(sorted(block[i][j] for j in range(4) if j != i))
                   for i in range(4))
    labels = Counter(block[i][j] for i in range(4) for j in range(i + 1, 4))
    distinct = len(labels)
    if len(rows) == 1:
        return distinct in (2, 3)
    if sorted(rows.values()) == [2, 2]:
        if distinct == 3 and all(v <= 3 for v in labels.values()):
            return True
        if distinct == 4 and all(v <= 2 for v in labels.values()):
            return True
    return False


def filter_trapezoid(c: IsoClass) -> bool:
    """Reject: some 4-point principal block matches a trapezoid pattern."""
    m = c.representative
    for subset in itertools.combinations(range(m.n), 4):
        if _block_is_trapezoid(principal_submatrix(m, subset)):
            return True
    return False


# applied in this fixed order; a class is attributed to the first filter that fires
FILTERS = (("star", filter_star),
           ("shared_base", filter_shared_base),
           ("trapezoid", filter_trapezoid))


def classify_pipeline(n: int) -> ClassificationReport:
    """Enumerate, group, and filter; surviving classes renumbered from 1."""
    classes = group_by_distance_set(enumerate_matrices(n))
    total = count_matrices(n)
    rejected = {name: 0 for name, _ in FILTERS}
    surviving: list[IsoClass] = []
    for c in classes:
        for name, pred in FILTERS:
            if pred(c):
                rejected[name] += 1
                break
        else:
            surviving.append(IsoClass(class_id=len(surviving) + 1, key=c.key,
                                      representative=c.representative,
                                      member_count=c.member_count))
    return ClassificationReport(
        n=n,
        total_matrices=total,
        class_count=len(classes),
        star_rejected=rejected["star"],
        shared_base_rejected=rejected["shared_base"],
        trapezoid_rejected=rejected["trapezoid"],
        surviving=surviving,
    )
