"""Exact integer matrix algebra.

Everything here works on Python ``int`` entries, so nothing overflows and no
floating point is involved.  The central routine is :func:`smith_normal_form`,
which also returns the unimodular transforms and their inverses; kernels,
images and integer solving are all read off from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "smith_normal_form",
    "solve_integer",
    "kernel_basis",
    "image_basis",
    "in_image",
    "rank",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major.

    ``rows`` and ``cols`` are kept explicitly so that matrices with no rows
    (or no columns) still know their shape.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if isinstance(x, bool) or not isinstance(x, int):
                raise TypeError(f"matrix entries must be integers, got {x!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ValueError(f"row {i} has length {len(r)}, expected {cols}")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
            cols = [other.column(j) for j in range(other.cols)]
            return IntMatrix(self.rows, other.cols, tuple(
                sum(a * b for a, b in zip(self.row(i), c))
                for i in range(self.rows) for c in cols))
        return self.matvec(other)

    def matvec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} does not match {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self):
        return "\n".join(" ".join(f"{x:3d}" for x in self.row(i)) for i in range(self.rows))


def _as_matrix(A) -> IntMatrix:
    if isinstance(A, IntMatrix):
        return A
    return IntMatrix.from_rows(A)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``D`` diagonal (``diagonal`` then zeros).

    ``U_inv`` and ``V_inv`` are the exact inverses, tracked during the
    elimination so nothing has to be inverted afterwards.
    """

    U: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix
    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)

    def D(self) -> IntMatrix:
        m, n = self.U.rows, self.V.rows
        return IntMatrix(m, n, tuple(
            self.diagonal[i] if i == j else 0 for i in range(m) for j in range(n)))


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


class _Elimination:
    # Mutable working state for one SNF computation.

    def __init__(self, A: IntMatrix):
        self.m, self.n = A.shape
        self.a = A.to_rows()
        self.U, self.Ui = _eye(self.m), _eye(self.m)
        self.V, self.Vi = _eye(self.n), _eye(self.n)

    def swap_rows(self, i, j):
        if i == j:
            return
        for M in (self.a, self.U):
            M[i], M[j] = M[j], M[i]
        for r in self.Ui:
            r[i], r[j] = r[j], r[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for M in (self.a, self.V):
            for r in M:
                r[i], r[j] = r[j], r[i]
        self.Vi[i], self.Vi[j] = self.Vi[j], self.Vi[i]

    def add_row(self, dst, src, c):
        # row_dst += c * row_src
        for M in (self.a, self.U):
            rd, rs = M[dst], M[src]
            for k in range(len(rd)):
                rd[k] += c * rs[k]
        for r in self.Ui:
            r[src] -= c * r[dst]

    def add_col(self, dst, src, c):
        # col_dst += c * col_src
        for M in (self.a, self.V):
            for r in M:
                r[dst] += c * r[src]
        rs, rd = self.Vi[src], self.Vi[dst]
        for k in range(len(rs)):
            rs[k] -= c * rd[k]

    def negate_row(self, i):
        self.a[i] = [-x for x in self.a[i]]
        self.U[i] = [-x for x in self.U[i]]
        for r in self.Ui:
            r[i] = -r[i]

    def run(self):
        a, m, n = self.a, self.m, self.n
        for t in range(min(m, n)):
            pivot = min(((abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                         if a[i][j]), default=None)
            if pivot is None:
                break
            _, i, j = pivot
            self.swap_rows(t, i)
            self.swap_cols(t, j)
            while True:
                clean = True
                for i in range(t + 1, m):
                    if a[i][t]:
                        self.add_row(i, t, -(a[i][t] // a[t][t]))
                        if a[i][t]:
                            self.swap_rows(t, i)
                            clean = False
                for j in range(t + 1, n):
                    if a[t][j]:
                        self.add_col(j, t, -(a[t][j] // a[t][t]))
                        if a[t][j]:
                            self.swap_cols(t, j)
                            clean = False
                if not clean:
                    continue
                bad = next((i for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if a[t][t] < 0:
                self.negate_row(t)

    def result(self) -> SmithDecomposition:
        m, n = self.m, self.n
        return SmithDecomposition(
            U=IntMatrix.from_rows(self.U, cols=m),
            V=IntMatrix.from_rows(self.V, cols=n),
            U_inv=IntMatrix.from_rows(self.Ui, cols=m),
            V_inv=IntMatrix.from_rows(self.Vi, cols=n),
            diagonal=tuple(self.a[i][i] for i in range(min(m, n))),
        )


def smith_normal_form(A) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Row/column gcd elimination, always pivoting on the entry of smallest
    absolute value (first in row-major order on ties), so the transforms are
    deterministic.

    >>> snf = smith_normal_form([[2, 4], [6, 8]])
    >>> snf.diagonal
    (2, 4)
    """
    work = _Elimination(_as_matrix(A))
    work.run()
    return work.result()


def rank(A) -> int:
    return smith_normal_form(A).rank


def kernel_basis(A) -> list[tuple[int, ...]]:
    """Basis of the integer lattice ``{x : A x = 0}``."""
    A = _as_matrix(A)
    snf = smith_normal_form(A)
    return [snf.V.column(j) for j in range(snf.rank, A.cols)]


def image_basis(A) -> list[tuple[int, ...]]:
    """Basis of the lattice ``A Z^n``."""
    snf = smith_normal_form(A)
    return [tuple(snf.diagonal[i] * x for x in snf.U_inv.column(i)) for i in range(snf.rank)]


def _image_coordinates(snf: SmithDecomposition, b: Sequence[int]):
    # Returns w with D w = U b, or None when b is outside the image lattice.
    y = snf.U.matvec(b)
    r = snf.rank
    if any(y[r:]):
        return None
    w = []
    for d, yi in zip(snf.diagonal[:r], y[:r]):
        if yi % d:
            return None
        w.append(yi // d)
    return w + [0] * (snf.V.rows - r)


def solve_integer(A, b: Sequence[int], snf: SmithDecomposition | None = None):
    """Return an integer ``x`` with ``A x == b``, or ``None`` if none exists.

    A precomputed ``snf`` of ``A`` may be passed to avoid recomputation.
    """
    A = _as_matrix(A)
    b = tuple(b)
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {A.rows} rows")
    if snf is None:
        snf = smith_normal_form(A)
    w = _image_coordinates(snf, b)
    if w is None:
        return None
    return snf.V.matvec(w)


def in_image(A, b: Iterable[int], snf: SmithDecomposition | None = None) -> bool:
    return solve_integer(A, tuple(b), snf=snf) is not None
