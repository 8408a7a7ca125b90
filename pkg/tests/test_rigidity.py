from __future__ import annotations

import math
import random

import numpy as np
import pytest

from crescent.rigidity import (Framework, census_rigidity, numeric_rank,
                               rigidity_matrix, rigidity_report, s_allowed,
                               vertex_connectivity)


def K(n: int) -> tuple[tuple[int, int, int], ...]:
    return tuple((i, j, 1) for i in range(n) for j in range(i + 1, n))


EQUILATERAL = Framework(points=((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)),
                        edges=K(3))
COLLINEAR = Framework(points=((0.0, 0.0), (1.0, 0.0), (2.0, 0.0)), edges=K(3))
SQUARE = Framework(points=((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)),
                   edges=K(4))


def test_s_allowed_values():
    assert s_allowed(4, 2) == 5
    assert s_allowed(5, 2) == 7
    assert s_allowed(3, 2) == 3
    assert s_allowed(2, 2) == 1
    assert s_allowed(1, 2) == 0  # n < d branch: n(n-1)/2
    with pytest.raises(ValueError):
        s_allowed(0, 2)


def test_rigidity_matrix_single_edge():
    f = Framework(points=((0.0, 0.0), (1.0, 0.0)), edges=((0, 1, 1),))
    R = rigidity_matrix(f)
    assert R.shape == (1, 4)
    assert R.tolist() == [[-1.0, 0.0, 1.0, 0.0]]


def test_rigidity_matrix_equilateral_rows():
    R = rigidity_matrix(EQUILATERAL)
    assert R.shape == (3, 6)
    pts = np.asarray(EQUILATERAL.points)
    for row, (i, j, _lab) in zip(R, EQUILATERAL.edges):
        diff = pts[i] - pts[j]
        assert row[2 * i:2 * i + 2] == pytest.approx(diff)
        assert row[2 * j:2 * j + 2] == pytest.approx(-diff)
        # only the two endpoint blocks are populated (2*dim slots)
        others = [row[2 * k:2 * k + 2] for k in range(3) if k not in (i, j)]
        assert all(not b.any() for b in others)
        # blockwise sum is zero
        assert row[0::2].sum() == pytest.approx(0.0, abs=1e-14)
        assert row[1::2].sum() == pytest.approx(0.0, abs=1e-14)


def test_numeric_rank_oracles():
    assert numeric_rank(np.diag([1.0, 1.0, 1.0])) == 3
    assert numeric_rank(np.zeros((3, 4))) == 0
    assert numeric_rank(rigidity_matrix(EQUILATERAL)) == 3
    assert numeric_rank(rigidity_matrix(COLLINEAR)) == 2


def test_kernel_contains_trivial_motions():
    rng = random.Random(2)
    for _ in range(20):
        n = rng.randint(2, 6)
        pts = [(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n)]
        f = Framework(points=tuple(pts), edges=K(n))
        R = rigidity_matrix(f)
        tx = np.zeros(2 * n)
        tx[0::2] = 1.0
        ty = np.zeros(2 * n)
        ty[1::2] = 1.0
        rot = np.zeros(2 * n)
        for i, (x, y) in enumerate(pts):
            rot[2 * i], rot[2 * i + 1] = -y, x
        for v in (tx, ty, rot):
            assert float(np.max(np.abs(R @ v))) < 1e-9
        if len({p for p in pts}) >= 2:
            assert 2 * n - numeric_rank(R) >= 3


def test_square_report():
    rep = rigidity_report(SQUARE)
    assert rep.rank == 5 == rep.s_allowed
    assert rep.rigid
    assert rep.deletion_ranks == (5, 5, 5, 5, 5, 5)
    assert rep.redundantly_rigid
    assert rep.vertex_connectivity == 3 and rep.connectivity_ok
    assert rep.unique_realization


def test_equilateral_report_not_redundant():
    rep = rigidity_report(EQUILATERAL)
    assert rep.rank == 3 and rep.rigid
    assert rep.deletion_ranks == (2, 2, 2)
    assert not rep.redundantly_rigid
    assert not rep.unique_realization


def test_collinear_report_not_rigid():
    rep = rigidity_report(COLLINEAR)
    assert rep.rank == 2 < rep.s_allowed
    assert not rep.rigid and not rep.unique_realization


def test_rank_invariance_under_isometries():
    rng = random.Random(4)
    for _ in range(20):
        n = rng.randint(3, 6)
        pts = np.array([(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n)])
        edges = K(n)
        base = numeric_rank(rigidity_matrix(Framework(tuple(map(tuple, pts)), edges)))
        assert base <= min(len(edges), 2 * n)
        assert base <= rigidity_report(Framework(tuple(map(tuple, pts)), edges)).s_allowed
        ang = rng.uniform(0, 2 * math.pi)
        R2 = np.array([[math.cos(ang), -math.sin(ang)], [math.sin(ang), math.cos(ang)]])
        moved = pts @ R2.T + np.array([rng.uniform(-5, 5), rng.uniform(-5, 5)])
        scaled = pts * rng.uniform(0.2, 5.0)
        for q in (moved, scaled):
            f = Framework(tuple(map(tuple, q)), edges)
            assert numeric_rank(rigidity_matrix(f)) == base


def test_vertex_connectivity_cases():
    assert vertex_connectivity(4, K(4)) == 3
    path = ((0, 1, 1), (1, 2, 1), (2, 3, 1))
    assert vertex_connectivity(4, path) == 1
    disconnected = ((0, 1, 1),)
    assert vertex_connectivity(4, disconnected) == 0


def test_path_framework_not_uniquely_realizable():
    f = Framework(points=((0.0, 0.0), (1.0, 0.1), (2.0, -0.2), (3.0, 0.3)),
                  edges=((0, 1, 1), (1, 2, 1), (2, 3, 1)))
    rep = rigidity_report(f)
    assert not rep.connectivity_ok
    assert not rep.unique_realization


def test_census_rigidity_n4(census_n4):
    reports = census_rigidity(census_n4)
    assert len(reports) == 3
    for cid, rep in reports:
        assert rep.class_id == cid
        assert rep.rank == 5 == rep.s_allowed
        assert rep.rank <= 5
        assert rep.deletion_ranks == (5, 5, 5, 5, 5, 5)
        assert rep.redundantly_rigid and rep.unique_realization


def test_report_json_shape():
    d = rigidity_report(SQUARE, class_id=2).to_json_dict()
    assert d["class_id"] == 2
    assert d["scope"] == "witness"
    for key in ("n", "dim", "rank", "s_allowed", "rigid", "deletion_ranks",
                "redundantly_rigid", "connectivity", "unique_realization"):
        assert key in d


def test_framework_validation():
    with pytest.raises(ValueError):
        Framework(points=((0.0, 0.0), (1.0, 0.0)), edges=((1, 0, 1),))
    with pytest.raises(ValueError):
        Framework(points=((0.0, 0.0, 0.0),), edges=(), dim=2)
