"""Exact integer linear algebra on Python's arbitrary-precision integers.

Everything here is pure and allocation-light: matrices are immutable value
types, determinants use fraction-free (Bareiss) elimination, and the Smith
normal form is the classical pivot-and-reduce algorithm.  No floats, no
machine-word arithmetic: intermediate determinant values overflow 64 bits
already at modest sizes.

Pivot selection is deterministic everywhere: the smallest-magnitude nonzero
entry of the working submatrix, ties broken in row-major order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix needs at least one row and one column")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        if not rows:
            raise ValueError("no rows given")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("rows have unequal lengths")
        return cls(len(rows), width, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, k: int) -> "IntMatrix":
        return cls(k, k, tuple(1 if i == j else 0 for i in range(k) for j in range(k)))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., m} given by its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection of 0..{len(self.images) - 1}: {self.images}")

    def __call__(self, j: int) -> int:
        return self.images[j]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(j) == self(other(j))."""
        if len(self.images) != len(other.images):
            raise ValueError("permutations act on sets of different sizes")
        return Permutation(tuple(self.images[other.images[j]] for j in range(len(self.images))))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for j, i in enumerate(self.images):
            inv[i] = j
        return Permutation(tuple(inv))


def _find_pivot(a: list[list[int]], t: int, nrows: int, ncols: int) -> tuple[int, int] | None:
    """Smallest-magnitude nonzero entry of a[t:, t:], row-major tie break."""
    best: tuple[int, int] | None = None
    for i in range(t, nrows):
        for j in range(t, ncols):
            v = a[i][j]
            if v != 0 and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                best = (i, j)
    return best


def determinant(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = _find_pivot(a, k, n, n)
        if piv is None:
            return 0
        pi, pj = piv
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            sign = -sign
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        # Bareiss step: every division below is exact.
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntMatrix) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... | dr of an integer matrix.

    Returns the positive diagonal of the Smith normal form with trailing
    zeros dropped, so the length of the result is the rank.
    """
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    factors: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        piv = _find_pivot(a, t, nrows, ncols)
        if piv is None:
            break
        pi, pj = piv
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                # A nonzero remainder is strictly smaller than the pivot, so
                # re-pivoting makes progress.
                pi, pj = _find_pivot(a, t, nrows, ncols)  # type: ignore[misc]
                a[t], a[pi] = a[pi], a[t]
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                continue
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # Fold the offending row into the pivot row; the next clearing
            # pass shrinks the pivot to a proper divisor.
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
        factors.append(a[t][t])
        t += 1
    return tuple(factors)


def _as_int_vectors(vectors: Sequence[Sequence[int]], k: int) -> list[tuple[int, ...]]:
    vecs = [tuple(int(x) for x in v) for v in vectors]
    for v in vecs:
        if len(v) != k:
            raise ValueError(f"vector {v} has length {len(v)}, expected {k}")
    return vecs


def is_unimodular_basis(vectors: Sequence[Sequence[int]], k: int) -> bool:
    """True iff the vectors are exactly k and form a Z-basis of Z^k."""
    vecs = _as_int_vectors(vectors, k)
    if len(vecs) != k:
        return False
    return abs(determinant(IntMatrix.from_rows(vecs))) == 1


def is_direct_summand(vectors: Sequence[Sequence[int]], k: int) -> bool:
    """True iff the vectors span a direct summand of Z^k of their own count.

    Certified by the Smith normal form of the stacked matrix: all invariant
    factors must equal 1 and there must be as many of them as vectors (so
    repeated vectors or dependent sets fail).
    """
    vecs = _as_int_vectors(vectors, k)
    if not vecs:
        raise ValueError("need at least one vector")
    factors = smith_normal_form(IntMatrix.from_rows(vecs))
    return len(factors) == len(vecs) and all(f == 1 for f in factors)


def permutation_sign(p: Permutation) -> int:
    """Parity of a permutation: +1 for even, -1 for odd."""
    sign = 1
    seen = [False] * len(p.images)
    for start in range(len(p.images)):
        if seen[start]:
            continue
        length = 0
        c = start
        while not seen[c]:
            seen[c] = True
            c = p.images[c]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def apply_matrix(m: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    """Matrix-vector product over Z; m must be square of the vector's size."""
    if m.rows != m.cols or m.cols != len(v):
        raise ValueError(f"cannot apply {m.rows}x{m.cols} matrix to a vector of length {len(v)}")
    vec = tuple(int(x) for x in v)
    return tuple(sum(m.entry(i, j) * vec[j] for j in range(m.cols)) for i in range(m.rows))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    entries = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            entries.append(sum(arow[t] * b.entry(t, j) for t in range(a.cols)))
    return IntMatrix(a.rows, b.cols, tuple(entries))


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    if m.rows != m.cols:
        raise ValueError("only square matrices have inverses")
    if abs(determinant(m)) != 1:
        raise ValueError("matrix is not unimodular")
    n = m.rows
    work = [[Fraction(m.entry(i, j)) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = next(r for r in range(col, n) if work[r][col] != 0)
        work[col], work[pivot_row] = work[pivot_row], work[col]
        inv_p = 1 / work[col][col]
        work[col] = [x * inv_p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    entries = []
    for i in range(n):
        for j in range(n):
            x = work[i][n + j]
            if x.denominator != 1:  # cannot happen for |det| = 1
                raise ArithmeticError("non-integer inverse of a unimodular matrix")
            entries.append(x.numerator)
    return IntMatrix(n, n, tuple(entries))
