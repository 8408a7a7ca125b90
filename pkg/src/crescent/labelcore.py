"""Label matrices for crescent configurations and their exhaustive enumeration.

A configuration on n points carries n-1 distance labels; label k marks the
distance that occurs exactly k times, so the full edge multiset of K_n is
{1 x1, 2 x2, ..., (n-1) x(n-1)} with n(n-1)/2 edges in total.  Candidate
configurations are n x n symmetric matrices threading that multiset through
the upper triangle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence


def edge_multiset(n: int) -> dict[int, int]:
    """Label -> multiplicity map for n points: {1: 1, 2: 2, ..., n-1: n-1}."""
    if n < 3:
        raise ValueError(f"need at least 3 points, got n={n}")
    return {k: k for k in range(1, n)}


def count_matrices(n: int) -> int:
    """Number of distinct threadings: (n(n-1)/2)! / (1! 2! ... (n-1)!)."""
    if n < 3:
        raise ValueError(f"need at least 3 points, got n={n}")
    total = n * (n - 1) // 2
    out = math.factorial(total)
    for k in range(1, n):
        out //= math.factorial(k)
    return out


def _sorted_multiset(n: int) -> list[int]:
    out: list[int] = []
    for k in range(1, n):
        out.extend([k] * k)
    return out


def _next_permutation(a: list[int]) -> bool:
    """Advance to the next lexicographic multiset permutation in place."""
    i = len(a) - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(a) - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    a[i + 1:] = a[:i:-1]
    return True


@dataclass(frozen=True)
class LabelMatrix:
    """Symmetric n x n matrix of edge labels with a zero diagonal."""

    n: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_upper(cls, n: int, upper: Sequence[int], validate: bool = True) -> "LabelMatrix":
        """Build from the row-major upper triangle (n(n-1)/2 labels)."""
        if len(upper) != n * (n - 1) // 2:
            raise ValueError(f"upper triangle for n={n} needs {n*(n-1)//2} entries, "
                             f"got {len(upper)}")
        rows = [[0] * n for _ in range(n)]
        t = 0
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = int(upper[t])
                t += 1
        m = cls(n, tuple(tuple(r) for r in rows))
        if validate:
            m.validate()
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], validate: bool = True) -> "LabelMatrix":
        n = len(rows)
        m = cls(n, tuple(tuple(int(x) for x in r) for r in rows))
        if validate:
            m.validate()
        return m

    def validate(self) -> None:
        n = self.n
        if n < 3:
            raise ValueError(f"need at least 3 points, got n={n}")
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise ValueError("entries must form an n x n matrix")
        for i in range(n):
            if self.entries[i][i] != 0:
                raise ValueError(f"diagonal entry ({i},{i}) must be 0")
            for j in range(i + 1, n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i},{j})")
        counts: dict[int, int] = {}
        for i in range(n):
            for j in range(i + 1, n):
                lab = self.entries[i][j]
                counts[lab] = counts.get(lab, 0) + 1
        if counts != edge_multiset(n):
            raise ValueError(f"label multiplicities {counts} do not match "
                             f"{edge_multiset(n)}")

    def upper_triangle(self) -> tuple[int, ...]:
        n = self.n
        return tuple(self.entries[i][j] for i in range(n) for j in range(i + 1, n))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def permuted(self, perm: Sequence[int]) -> "LabelMatrix":
        """Relabel points: entry (i,j) of the result is entry (perm[i],perm[j])."""
        n = self.n
        rows = tuple(tuple(self.entries[perm[i]][perm[j]] for j in range(n))
                     for i in range(n))
        return LabelMatrix(n, rows)

    def to_text(self) -> str:
        """Canonical text form: n then the upper triangle, newline-terminated."""
        return " ".join([str(self.n)] + [str(x) for x in self.upper_triangle()]) + "\n"

    @classmethod
    def from_text(cls, text: str, validate: bool = True) -> "LabelMatrix":
        parts = text.split()
        if not parts:
            raise ValueError("empty matrix text")
        n = int(parts[0])
        return cls.from_upper(n, [int(x) for x in parts[1:]], validate=validate)


def principal_submatrix(m: LabelMatrix, subset: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Rows and columns of m restricted to subset (0-based, distinct, sorted).

    The block is symmetric with a zero diagonal but is not itself a valid
    LabelMatrix: multiplicity invariants only hold for the full matrix.
    """
    n = m.n
    seen = set()
    for i in subset:
        if not 0 <= i < n:
            raise ValueError(f"index {i} out of range for n={n}")
        if i in seen:
            raise ValueError(f"duplicate index {i} in subset")
        seen.add(i)
    return tuple(tuple(m.entries[i][j] for j in subset) for i in subset)


def enumerate_uppers(n: int) -> Iterator[tuple[int, ...]]:
    """All distinct upper triangles in lexicographic order, as flat tuples."""
    if n < 3:
        raise ValueError(f"need at least 3 points, got n={n}")
    a = _sorted_multiset(n)
    while True:
        yield tuple(a)
        if not _next_permutation(a):
            return


def enumerate_matrices(n: int) -> Iterator[LabelMatrix]:
    """Every distinct threading of the edge multiset, lexicographic order."""
    for upper in enumerate_uppers(n):
        # generated uppers are multiplicity-legal by construction
        yield LabelMatrix.from_upper(n, upper, validate=False)


def unrank_upper(n: int, index: int) -> tuple[int, ...]:
    """Upper triangle at a given lexicographic rank, without enumeration.

    Supports partitioned generation: a worker can jump to any sub-range of
    the stream and continue with the successor iteration.
    """
    total = count_matrices(n)
    if not 0 <= index < total:
        raise ValueError(f"rank {index} out of range [0, {total})")
    remaining = dict(edge_multiset(n))
    length = n * (n - 1) // 2
    out: list[int] = []
    r = index

    def perms_with(counts: dict[int, int], slots: int) -> int:
        p = math.factorial(slots)
        for c in counts.values():
            p //= math.factorial(c)
        return p

    for pos in range(length):
        for lab in sorted(remaining):
            if remaining[lab] == 0:
                continue
            remaining[lab] -= 1
            block = perms_with(remaining, length - pos - 1)
            if r < block:
                out.append(lab)
                break
            r -= block
            remaining[lab] += 1
    return tuple(out)


def enumerate_uppers_range(n: int, start: int, stop: int) -> Iterator[tuple[int, ...]]:
    """Stream the lexicographic sub-range [start, stop) of upper triangles."""
    total = count_matrices(n)
    stop = min(stop, total)
    if start >= stop:
        return
    a = list(unrank_upper(n, start))
    for _ in range(stop - start):
        yield tuple(a)
        if not _next_permutation(a):
            return


def count_by_streaming(n: int) -> int:
    """Count the enumeration stream directly (cross-check for count_matrices)."""
    a = _sorted_multiset(n)
    c = 1
    while _next_permutation(a):
        c += 1
    return c
