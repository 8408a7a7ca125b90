"""Planar realizability via multistart damped least squares.

Unknowns are gauge-fixed point coordinates plus the distance values d_2..d_{n-1}
(d_1 = 1); one residual per edge, ||p_i - p_j||^2 - d_label^2.  A class counts
as realizable when some start converges to a witness whose distance values are
positive and pairwise distinct and whose realized points pass the collinearity
and concyclicity margins.  Exhausting the start budget is reported as "no
witness found", never as a proof of non-realizability.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .classify import ClassificationReport, IsoClass, classify_pipeline
from .geometry import (DistanceAssignment, PositionMargins, check_margins,
                       margins_from_points, squared_distances)
from .labelcore import LabelMatrix
from .rigidity import numeric_rank


@dataclass(frozen=True)
class SolverConfig:
    starts: int = 200
    max_iters: int = 500
    residual_tol: float = 1e-10
    margin_tol: float = 1e-6
    rng_seed: int = 42
    coord_box: float = 2.0
    dist_range: tuple[float, float] = (0.2, 3.0)
    # a crescent witness needs strictly positive, pairwise-distinct values
    min_value: float = 1e-3
    distinct_tol: float = 1e-3

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if min(self.residual_tol, self.margin_tol, self.min_value,
               self.distinct_tol) <= 0:
            raise ValueError("tolerances must be positive")
        lo, hi = self.dist_range
        if not 0 < lo < hi:
            raise ValueError("dist_range must be positive and ordered")

    def to_json_dict(self) -> dict:
        return {"starts": self.starts, "max_iters": self.max_iters,
                "residual_tol": self.residual_tol, "margin_tol": self.margin_tol,
                "rng_seed": self.rng_seed, "coord_box": self.coord_box,
                "dist_range": list(self.dist_range), "min_value": self.min_value,
                "distinct_tol": self.distinct_tol}

    @classmethod
    def from_json_dict(cls, d: dict) -> "SolverConfig":
        d = dict(d)
        d["dist_range"] = tuple(d["dist_range"])
        return cls(**d)


@dataclass(frozen=True)
class Realization:
    class_id: int
    coordinates: tuple[tuple[float, float], ...]
    assignment: DistanceAssignment
    residual: float
    margins: PositionMargins
    start_index: int
    solution_family: bool


@lru_cache(maxsize=512)
def _edge_arrays(m: LabelMatrix):
    # shared read-only arrays; the solver inner loop calls this per evaluation
    n = m.n
    ei, ej, lab = [], [], []
    for i in range(n):
        for j in range(i + 1, n):
            ei.append(i)
            ej.append(j)
            lab.append(m.entries[i][j])
    return np.array(ei), np.array(ej), np.array(lab)


def _points_from_theta(theta: np.ndarray, n: int) -> np.ndarray:
    pts = np.zeros((n, 2))
    pts[1, 0] = theta[0]
    pts[2] = theta[1:3]
    if n > 3:
        pts[3:] = theta[3:2 * n - 3].reshape(n - 3, 2)
    return pts


def residual_vector(theta: np.ndarray, m: LabelMatrix) -> np.ndarray:
    n = m.n
    ei, ej, lab = _edge_arrays(m)
    pts = _points_from_theta(theta, n)
    d = np.ones(n)
    d[2:] = theta[2 * n - 3:]
    diff = pts[ei] - pts[ej]
    return np.einsum("ij,ij->i", diff, diff) - d[lab] ** 2


def residual_jacobian(theta: np.ndarray, m: LabelMatrix) -> np.ndarray:
    """Analytic Jacobian of residual_vector, edges by rows."""
    n = m.n
    ei, ej, lab = _edge_arrays(m)
    pts = _points_from_theta(theta, n)
    diff = pts[ei] - pts[ej]
    nparams = (2 * n - 3) + (n - 2)
    J = np.zeros((len(ei), nparams))

    def cols(p: int) -> tuple[int | None, int | None]:
        if p == 0:
            return None, None
        if p == 1:
            return 0, None
        if p == 2:
            return 1, 2
        return 3 + 2 * (p - 3), 4 + 2 * (p - 3)

    for e in range(len(ei)):
        gx, gy = 2.0 * diff[e, 0], 2.0 * diff[e, 1]
        for p, sx, sy in ((ei[e], gx, gy), (ej[e], -gx, -gy)):
            cx, cy = cols(int(p))
            if cx is not None:
                J[e, cx] += sx
            if cy is not None:
                J[e, cy] += sy
        if lab[e] >= 2:
            dk = theta[2 * n - 3 + lab[e] - 2]
            J[e, 2 * n - 3 + lab[e] - 2] = -2.0 * dk
    return J


def levenberg_marquardt(theta0: np.ndarray, m: LabelMatrix, max_iters: int = 500,
                        cost_floor: float = 1e-24) -> tuple[np.ndarray, float] | None:
    """Damped least squares; returns (theta, cost) or None on non-finite math."""
    theta = np.asarray(theta0, dtype=float).copy()
    r = residual_vector(theta, m)
    if not np.all(np.isfinite(r)):
        return None
    cost = float(r @ r)
    lam = 1e-3
    nparams = theta.size
    eye = np.eye(nparams)
    J = residual_jacobian(theta, m)
    g = J.T @ r
    A = J.T @ J
    for _ in range(max_iters):
        if cost <= cost_floor:
            break
        try:
            delta = np.linalg.solve(A + lam * eye, -g)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(delta)):
            return None
        trial = theta + delta
        r_new = residual_vector(trial, m)
        if not np.all(np.isfinite(r_new)):
            return None
        cost_new = float(r_new @ r_new)
        if cost_new < cost:
            theta, r, cost = trial, r_new, cost_new
            if float(np.linalg.norm(delta)) <= 1e-14 * (1.0 + float(np.linalg.norm(theta))):
                break
            J = residual_jacobian(theta, m)
            g = J.T @ r
            A = J.T @ J
            lam = max(lam / 3.0, 1e-12)
        else:
            lam *= 10.0
            if lam > 1e12:
                break
    return theta, cost


def gauge_fix(points: np.ndarray) -> np.ndarray:
    """Point 0 at the origin, point 1 on the positive x-axis, point 2 with y >= 0."""
    pts = np.asarray(points, dtype=float).copy()
    pts -= pts[0]
    x1, y1 = pts[1]
    if y1 == 0.0:
        if x1 < 0.0:
            pts = -pts
    else:
        ang = math.atan2(y1, x1)
        c, s = math.cos(ang), math.sin(ang)
        pts = pts @ np.array([[c, -s], [s, c]])
        pts[1, 1] = 0.0  # absorb rotation roundoff
    if pts.shape[0] > 2 and pts[2, 1] < 0.0:
        pts[:, 1] = -pts[:, 1]
    return pts


def _distinct_enough(values: Sequence[float], tol: float) -> bool:
    full = [1.0] + list(values)
    return all(abs(full[a] - full[b]) >= tol
               for a in range(len(full)) for b in range(a + 1, len(full)))


def solve_realization(c: IsoClass, cfg: SolverConfig) -> Realization | None:
    """First start (in index order) that converges to a valid crescent witness."""
    m = c.representative
    n = m.n
    ncoord = 2 * n - 3
    nvals = n - 2
    lo, hi = cfg.dist_range
    for s in range(cfg.starts):
        rng = np.random.default_rng([cfg.rng_seed, c.class_id, s])
        theta0 = np.concatenate([
            rng.uniform(-cfg.coord_box, cfg.coord_box, ncoord),
            rng.uniform(lo, hi, nvals),
        ])
        out = levenberg_marquardt(theta0, m, max_iters=cfg.max_iters)
        if out is None:
            continue
        theta, cost = out
        if cost > cfg.residual_tol:
            continue
        values = [abs(float(v)) for v in theta[ncoord:]]
        if min(values) < cfg.min_value or not _distinct_enough(values, cfg.distinct_tol):
            continue
        pts = gauge_fix(_points_from_theta(theta, n))
        if pts[1, 0] <= 0.0:
            continue  # coincident gauge points; margins would be meaningless
        margins = margins_from_points(pts)
        verdict = check_margins(margins, tol_zero=cfg.residual_tol,
                                tol_margin=cfg.margin_tol, require_planarity=False)
        if not verdict.ok:
            continue
        J = residual_jacobian(theta, m)
        family = numeric_rank(J) < theta.size
        assignment = DistanceAssignment(
            n, {1: 1.0, **{k + 2: values[k] for k in range(nvals)}})
        return Realization(
            class_id=c.class_id,
            coordinates=tuple((float(x), float(y)) for x, y in pts),
            assignment=assignment,
            residual=cost,
            margins=margins,
            start_index=s,
            solution_family=bool(family),
        )
    return None


def embed_from_distances(m: LabelMatrix, a: DistanceAssignment,
                         rel_tol: float = 1e-8) -> np.ndarray:
    """Planar coordinates from a verified assignment via classical scaling.

    Double-centers the squared-distance matrix, factors the top two spectral
    components, and gauge-fixes.  Raises if the configuration needs a third
    dimension or the distances fail to round-trip.
    """
    S = np.array(squared_distances(m, a), dtype=float)
    n = m.n
    J = np.eye(n) - np.ones((n, n)) / n
    B = -0.5 * J @ S @ J
    w, V = np.linalg.eigh(B)
    order = np.argsort(w)[::-1]
    w, V = w[order], V[:, order]
    if w[0] <= 0:
        raise ValueError("degenerate distance matrix: no positive spread")
    if abs(w[2]) > rel_tol * w[0]:
        raise ValueError(f"assignment is not planar: third Gram eigenvalue "
                         f"{w[2]:.3e} exceeds {rel_tol:.1e} of the largest")
    pts = V[:, :2] * np.sqrt(np.clip(w[:2], 0.0, None))
    pts = gauge_fix(pts)
    realized = np.array([[float(np.sum((pts[i] - pts[j]) ** 2)) for j in range(n)]
                         for i in range(n)])
    scale = float(np.max(S))
    if float(np.max(np.abs(realized - S))) > rel_tol * scale:
        raise ValueError("recovered coordinates do not reproduce the distances")
    return pts


@dataclass
class CensusClass:
    class_id: int
    representative: LabelMatrix
    realizable: bool
    starts_used: int
    assignment: dict[int, float] | None = None
    coordinates: tuple[tuple[float, float], ...] | None = None
    residual: float | None = None
    start_index: int | None = None
    solution_family: bool | None = None


@dataclass
class Census:
    n: int
    seed: int
    config: SolverConfig
    classes: list[CensusClass] = field(default_factory=list)

    @property
    def realizable_count(self) -> int:
        return sum(1 for c in self.classes if c.realizable)

    def summary(self) -> str:
        return f"n={self.n}: {self.realizable_count}/{len(self.classes)} realizable"

    def to_json_dict(self) -> dict:
        recs = []
        for c in self.classes:
            rec: dict = {"class_id": c.class_id,
                         "representative": c.representative.to_text().strip(),
                         "realizable": c.realizable,
                         "starts_used": c.starts_used}
            if c.realizable:
                rec["assignment"] = {str(k): v for k, v in sorted(c.assignment.items())}
                rec["coordinates"] = [list(p) for p in c.coordinates]
                rec["residual"] = c.residual
                rec["start_index"] = c.start_index
                rec["solution_family"] = c.solution_family
            recs.append(rec)
        return {"n": self.n, "seed": self.seed, "config": self.config.to_json_dict(),
                "realizable_count": self.realizable_count, "classes": recs}

    @classmethod
    def from_json_dict(cls, d: dict) -> "Census":
        out = cls(n=int(d["n"]), seed=int(d["seed"]),
                  config=SolverConfig.from_json_dict(d["config"]))
        for rec in d["classes"]:
            cc = CensusClass(
                class_id=int(rec["class_id"]),
                representative=LabelMatrix.from_text(rec["representative"]),
                realizable=bool(rec["realizable"]),
                starts_used=int(rec["starts_used"]),
            )
            if cc.realizable:
                cc.assignment = {int(k): float(v) for k, v in rec["assignment"].items()}
                cc.coordinates = tuple((float(x), float(y)) for x, y in rec["coordinates"])
                cc.residual = float(rec["residual"])
                cc.start_index = int(rec["start_index"])
                cc.solution_family = bool(rec["solution_family"])
            out.classes.append(cc)
        return out


def _solve_to_census_class(c: IsoClass, cfg: SolverConfig) -> CensusClass:
    r = solve_realization(c, cfg)
    if r is None:
        return CensusClass(class_id=c.class_id, representative=c.representative,
                           realizable=False, starts_used=cfg.starts)
    return CensusClass(
        class_id=c.class_id, representative=c.representative, realizable=True,
        starts_used=r.start_index + 1,
        assignment=dict(r.assignment.values),
        coordinates=r.coordinates, residual=r.residual,
        start_index=r.start_index, solution_family=r.solution_family,
    )


def _census_worker(args: tuple[str, int, int, dict]) -> dict:
    text, class_id, member_count, cfg_dict = args
    from .classify import distance_set  # local import keeps worker pickling light
    rep = LabelMatrix.from_text(text)
    c = IsoClass(class_id=class_id, key=distance_set(rep), representative=rep,
                 member_count=member_count)
    cc = _solve_to_census_class(c, SolverConfig.from_json_dict(cfg_dict))
    return {"class_id": cc.class_id, "text": text, "realizable": cc.realizable,
            "starts_used": cc.starts_used, "assignment": cc.assignment,
            "coordinates": cc.coordinates, "residual": cc.residual,
            "start_index": cc.start_index, "solution_family": cc.solution_family}


def realizable_census(n: int, cfg: SolverConfig,
                      report: ClassificationReport | None = None,
                      jobs: int = 1) -> Census:
    """Classify (unless a report is supplied) and solve every surviving class."""
    if report is None:
        report = classify_pipeline(n)
    census = Census(n=n, seed=cfg.rng_seed, config=cfg)
    if jobs <= 1 or len(report.surviving) <= 1:
        for c in report.surviving:
            census.classes.append(_solve_to_census_class(c, cfg))
        return census
    payload = [(c.representative.to_text(), c.class_id, c.member_count,
                cfg.to_json_dict()) for c in report.surviving]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for rec in pool.map(_census_worker, payload, chunksize=1):
            cc = CensusClass(
                class_id=rec["class_id"],
                representative=LabelMatrix.from_text(rec["text"]),
                realizable=rec["realizable"], starts_used=rec["starts_used"])
            if cc.realizable:
                cc.assignment = rec["assignment"]
                cc.coordinates = tuple(tuple(p) for p in rec["coordinates"])
                cc.residual = rec["residual"]
                cc.start_index = rec["start_index"]
                cc.solution_family = rec["solution_family"]
            census.classes.append(cc)
    census.classes.sort(key=lambda c: c.class_id)
    return census
