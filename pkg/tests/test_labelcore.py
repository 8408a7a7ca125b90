from __future__ import annotations

import itertools
import math
import random

import pytest

from crescent.labelcore import (LabelMatrix, count_by_streaming, count_matrices,
                                edge_multiset, enumerate_matrices,
                                enumerate_uppers, enumerate_uppers_range,
                                principal_submatrix, unrank_upper)
from crescent.refdata import REFERENCE_UPPERS

MATRIX_7 = LabelMatrix.from_upper(5, REFERENCE_UPPERS[7])


def test_edge_multiset_examples():
    assert edge_multiset(3) == {1: 1, 2: 2}
    assert edge_multiset(4) == {1: 1, 2: 2, 3: 3}
    assert edge_multiset(5) == {1: 1, 2: 2, 3: 3, 4: 4}
    assert sum(edge_multiset(4).values()) == 6
    assert sum(edge_multiset(5).values()) == 10


def test_edge_multiset_rejects_small_n():
    with pytest.raises(ValueError):
        edge_multiset(2)


def test_count_matrices_known_values():
    assert count_matrices(3) == 3
    assert count_matrices(4) == 60
    assert count_matrices(5) == 12600
    assert count_matrices(6) == 37837800


def test_count_matches_multinomial_definition():
    # independent recomputation straight from the definition
    for n in (3, 4, 5, 6, 7):
        total = n * (n - 1) // 2
        expect = math.factorial(total)
        for k in range(1, n):
            expect //= math.factorial(k)
        assert count_matrices(n) == expect


def test_streamed_count_matches_formula():
    assert count_by_streaming(4) == 60
    assert count_by_streaming(5) == 12600


def test_enumerate_n3_explicit():
    mats = list(enumerate_matrices(3))
    assert [m.upper_triangle() for m in mats] == [(1, 2, 2), (2, 1, 2), (2, 2, 1)]


def test_stream_lengths_and_invariants():
    uppers = [m.upper_triangle() for m in enumerate_matrices(4)]
    assert len(uppers) == 60
    assert len(set(uppers)) == 60
    assert uppers == sorted(uppers)  # lexicographic order
    for m in enumerate_matrices(4):
        m.validate()


def test_n5_stream_length():
    assert sum(1 for _ in enumerate_uppers(5)) == 12600


def test_enumeration_is_deterministic():
    a = [m.upper_triangle() for m in enumerate_matrices(4)]
    b = [m.upper_triangle() for m in enumerate_matrices(4)]
    assert a == b


def test_permuted_matrix_stays_in_stream():
    stream = {m.upper_triangle() for m in enumerate_matrices(4)}
    rng = random.Random(7)
    mats = list(enumerate_matrices(4))
    for _ in range(50):
        m = rng.choice(mats)
        perm = list(range(4))
        rng.shuffle(perm)
        p = m.permuted(perm)
        p.validate()
        assert p.upper_triangle() in stream


def test_principal_submatrix_identity():
    assert principal_submatrix(MATRIX_7, range(5)) == MATRIX_7.entries


def test_principal_submatrix_reference_blocks():
    assert principal_submatrix(MATRIX_7, (0, 1, 2, 3)) == (
        (0, 1, 3, 2), (1, 0, 2, 4), (3, 2, 0, 4), (2, 4, 4, 0))
    assert principal_submatrix(MATRIX_7, (1, 2, 4)) == (
        (0, 2, 4), (2, 0, 3), (4, 3, 0))


def test_principal_submatrix_errors():
    with pytest.raises(ValueError):
        principal_submatrix(MATRIX_7, (0, 0, 1))
    with pytest.raises(ValueError):
        principal_submatrix(MATRIX_7, (0, 1, 5))


def test_text_form_round_trip():
    assert MATRIX_7.to_text() == "5 1 3 2 3 2 4 4 4 3 4\n"
    assert LabelMatrix.from_text(MATRIX_7.to_text()) == MATRIX_7
    for m in itertools.islice(enumerate_matrices(4), 10):
        assert LabelMatrix.from_text(m.to_text()) == m


def test_validation_rejects_bad_matrices():
    with pytest.raises(ValueError):
        LabelMatrix.from_rows([[0, 1, 2], [1, 0, 2], [2, 1, 0]])  # asymmetric
    with pytest.raises(ValueError):
        LabelMatrix.from_rows([[1, 1, 2], [1, 0, 2], [2, 2, 0]])  # diagonal
    with pytest.raises(ValueError):
        LabelMatrix.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]])  # multiplicities
    with pytest.raises(ValueError):
        LabelMatrix.from_upper(4, (1, 2, 2, 3, 3))  # wrong length


def test_unrank_matches_enumeration_n4():
    uppers = list(enumerate_uppers(4))
    for r, u in enumerate(uppers):
        assert unrank_upper(4, r) == u
    with pytest.raises(ValueError):
        unrank_upper(4, 60)


def test_unrank_spot_checks_n5():
    stream = list(enumerate_uppers(5))
    for r in (0, 1, 777, 4242, 12599):
        assert unrank_upper(5, r) == stream[r]


def test_range_partition_reassembles_stream():
    full = list(enumerate_uppers(4))
    parts = (list(enumerate_uppers_range(4, 0, 20))
             + list(enumerate_uppers_range(4, 20, 45))
             + list(enumerate_uppers_range(4, 45, 60)))
    assert parts == full
