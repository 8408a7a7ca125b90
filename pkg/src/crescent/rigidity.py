"""Infinitesimal rigidity of realized frameworks.

The rigidity matrix has one row per edge and n*dim columns; the row for edge
(i, j) carries p_i - p_j in point i's column block and the negation in j's.
A framework is infinitesimally rigid when the rank reaches
S(n, d) = n*d - d(d+1)/2 (for n >= d), redundantly rigid when every single-edge
deletion preserves that rank, and uniquely realizable when it is additionally
(d+1)-connected.  Verdicts describe the supplied witness framework only.

Edge-count cross-check (not enforced): a complete graph on n >= 4 vertices
carries more than 2n-3 edges, so census frameworks always have dependent rows;
they stay rigid because K_n decomposes into triangles, and redundancy of the
extra rows is what the per-edge deletion ranks measure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import networkx as nx
import numpy as np

from .labelcore import LabelMatrix


def s_allowed(n: int, d: int) -> int:
    """Maximal rigidity-matrix rank: n*d - d(d+1)/2 for n >= d, else n(n-1)/2."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if n >= d:
        return n * d - d * (d + 1) // 2
    return n * (n - 1) // 2


@dataclass(frozen=True)
class Framework:
    """Coordinates plus an explicit edge list (complete for census witnesses)."""

    points: tuple[tuple[float, ...], ...]
    edges: tuple[tuple[int, int, int], ...]  # (i, j, label), i < j
    dim: int = 2

    def __post_init__(self):
        n = len(self.points)
        for (i, j, _lab) in self.edges:
            if not (0 <= i < j < n):
                raise ValueError(f"bad edge ({i},{j}) for {n} points")
        if any(len(p) != self.dim for p in self.points):
            raise ValueError("point dimension mismatch")

    @classmethod
    def from_realization(cls, coordinates: Sequence[Sequence[float]],
                         m: LabelMatrix) -> "Framework":
        edges = tuple((i, j, m.entries[i][j])
                      for i in range(m.n) for j in range(i + 1, m.n))
        return cls(points=tuple(tuple(float(x) for x in p) for p in coordinates),
                   edges=edges, dim=2)


def rigidity_matrix(f: Framework) -> np.ndarray:
    n = len(f.points)
    R = np.zeros((len(f.edges), n * f.dim))
    pts = np.asarray(f.points, dtype=float)
    for row, (i, j, _lab) in enumerate(f.edges):
        diff = pts[i] - pts[j]
        R[row, i * f.dim:(i + 1) * f.dim] = diff
        R[row, j * f.dim:(j + 1) * f.dim] = -diff
    return R


def numeric_rank(M: np.ndarray, rel_tol: float = 1e-8) -> int:
    """Singular values above rel_tol times the largest; 0 for a zero matrix."""
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rel_tol * sv[0]))


def vertex_connectivity(n: int, edges: Sequence[tuple[int, int, int]]) -> int:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((i, j) for i, j, _lab in edges)
    if not nx.is_connected(g):
        return 0
    return int(nx.node_connectivity(g))


@dataclass(frozen=True)
class RigidityReport:
    n: int
    dim: int
    rank: int
    s_allowed: int
    rigid: bool
    deletion_ranks: tuple[int, ...]
    redundantly_rigid: bool
    vertex_connectivity: int
    connectivity_ok: bool
    unique_realization: bool
    class_id: int | None = None

    def to_json_dict(self) -> dict:
        return {"class_id": self.class_id, "n": self.n, "dim": self.dim,
                "rank": self.rank, "s_allowed": self.s_allowed,
                "rigid": self.rigid,
                "deletion_ranks": list(self.deletion_ranks),
                "redundantly_rigid": self.redundantly_rigid,
                "connectivity": self.connectivity_ok,
                "vertex_connectivity": self.vertex_connectivity,
                "unique_realization": self.unique_realization,
                "scope": "witness"}


def rigidity_report(f: Framework, rank_tol: float = 1e-8,
                    class_id: int | None = None) -> RigidityReport:
    """Rank, per-edge deletion ranks, and the unique-realization conjunction."""
    n = len(f.points)
    R = rigidity_matrix(f)
    rank = numeric_rank(R, rank_tol)
    allowed = s_allowed(n, f.dim)
    deletions = tuple(numeric_rank(np.delete(R, row, axis=0), rank_tol)
                      for row in range(len(f.edges)))
    rigid = rank == allowed
    redundant = len(deletions) > 0 and all(r == allowed for r in deletions)
    kappa = vertex_connectivity(n, f.edges)
    connected_enough = kappa >= f.dim + 1
    return RigidityReport(
        n=n, dim=f.dim, rank=rank, s_allowed=allowed, rigid=rigid,
        deletion_ranks=deletions, redundantly_rigid=redundant,
        vertex_connectivity=kappa, connectivity_ok=connected_enough,
        unique_realization=rigid and redundant and connected_enough,
        class_id=class_id,
    )


def census_rigidity(census, rank_tol: float = 1e-8) -> list[tuple[int, RigidityReport]]:
    """One report per realized census class, in class-id order."""
    out = []
    for c in census.classes:
        if not c.realizable:
            continue
        f = Framework.from_realization(c.coordinates, c.representative)
        out.append((c.class_id, rigidity_report(f, rank_tol, class_id=c.class_id)))
    return out
