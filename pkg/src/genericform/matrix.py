"""Dense matrices over an exact field.

Only what the canonical-form code needs: products, identity, rank and
determinant by fraction-free (Bareiss) elimination, and block access for
bipartite matrices ``[A | B]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import QQ, Field


@dataclass(frozen=True)
class ExactMatrix:
    """An ``nrows x ncols`` matrix with entries in ``field``.

    ``split`` marks the column where block ``B`` starts when the matrix is a
    bipartite matrix ``[A | B]``; it is ``None`` for plain matrices.
    """

    entries: tuple[tuple, ...]
    ncols: int
    field: Field = QQ
    split: int | None = None

    def __post_init__(self):
        for row in self.entries:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")
        if self.split is not None and not 0 <= self.split <= self.ncols:
            raise ValueError("split outside the column range")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], field: Field = QQ,
                  ncols: int | None = None, split: int | None = None) -> "ExactMatrix":
        conv = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not conv:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(conv[0])
        return cls(conv, ncols, field, split)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ,
              split: int | None = None) -> "ExactMatrix":
        z = field.zero
        return cls(tuple((z,) * ncols for _ in range(nrows)), ncols, field, split)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ExactMatrix":
        return cls(tuple(tuple(field.one if i == j else field.zero for j in range(n))
                         for i in range(n)), n, field)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_lists(self) -> list[list]:
        return [list(row) for row in self.entries]

    def columns(self, cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(row[j] for j in cols) for row in self.entries),
                           len(cols), self.field)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
                           len(cols), self.field)

    @property
    def left(self) -> "ExactMatrix":
        """Block ``A`` of a bipartite matrix."""
        return self.columns(range(self._split()))

    @property
    def right(self) -> "ExactMatrix":
        """Block ``B`` of a bipartite matrix."""
        return self.columns(range(self._split(), self.ncols))

    def _split(self) -> int:
        if self.split is None:
            raise ValueError("matrix has no A|B split")
        return self.split

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.field.zero
        cols = list(zip(*other.entries)) if other.nrows else [() for _ in range(other.ncols)]
        out = []
        for row in self.entries:
            out_row = []
            for col in cols:
                acc = zero
                for x, y in zip(row, col):
                    if x and y:
                        acc = acc + x * y
                out_row.append(acc)
            out.append(tuple(out_row))
        return ExactMatrix(tuple(out), other.ncols, self.field)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        """``[self | other]`` with the split at ``self.ncols``."""
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return ExactMatrix(tuple(a + b for a, b in zip(self.entries, other.entries)),
                           self.ncols + other.ncols, self.field, split=self.ncols)

    def permute(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        """Row ``k`` of the result is row ``rows[k]``; likewise for columns."""
        return ExactMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
                           self.ncols, self.field, self.split)

    def rank(self) -> int:
        return exact_rank(self)

    def det(self):
        return determinant(self)

    def nonzero_count(self) -> int:
        return sum(1 for row in self.entries for x in row if x != 0)

    def __str__(self):
        return render_grid(self)


def _bareiss(entries: Sequence[Sequence], ncols: int, one):
    """Fraction-free forward elimination.  Returns ``(rank, sign, last_pivot)``."""
    a = [list(row) for row in entries]
    m = len(a)
    rank, sign, prev = 0, 1, one
    for col in range(ncols):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            a[piv], a[rank] = a[rank], a[piv]
            sign = -sign
        p = a[rank][col]
        prow = a[rank]
        for i in range(rank + 1, m):
            row = a[i]
            c = row[col]
            for j in range(col + 1, ncols):
                row[j] = (row[j] * p - c * prow[j]) / prev
            row[col] = 0 * c
        prev = p
        rank += 1
    return rank, sign, prev


def exact_rank(M: ExactMatrix) -> int:
    """Rank over ``M.field`` by fraction-free Gaussian elimination."""
    rank, _, _ = _bareiss(M.entries, M.ncols, M.field.one)
    return rank


def determinant(M: ExactMatrix):
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = M.nrows
    if n == 0:
        return M.field.one
    rank, sign, last = _bareiss(M.entries, n, M.field.one)
    if rank < n:
        return M.field.zero
    return last if sign > 0 else -last


def render_grid(M: ExactMatrix) -> str:
    """Text grid; a ``|`` column separates the blocks of a bipartite matrix."""
    cells = [[str(x) for x in row] for row in M.entries]
    width = max((len(c) for row in cells for c in row), default=1)
    lines = []
    for row in cells:
        parts = [c.rjust(width) for c in row]
        if M.split is not None:
            parts.insert(M.split, "|")
        lines.append(" ".join(parts))
    return "\n".join(lines)
