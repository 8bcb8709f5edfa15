"""Canonical forms of bipartite matrices under ``[A | B] -> [S A R1 | S B R2]``.

Every ``M = [A | B]`` is equivalent to the block matrix::

    [ I_r  0   0 | 0    I_r  0 ]
    [ 0    I_s 0 | 0    0    0 ]
    [ 0    0   0 | I_t  0    0 ]
    [ 0    0   0 | 0    0    0 ]

with ``r + s = rank A``, ``r + t = rank B`` and ``r + s + t = rank M``.
:func:`reduce_numeric` computes the invertible ``S, R1, R2`` explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ, Field
from .graph import BipartiteGraph, Matchbox, build_graph, common_vertex_count
from .matrix import ExactMatrix
from .pattern import Pattern, characteristic_vector, instantiate
from .poly import ConsistencyError


@dataclass(frozen=True)
class CanonicalTriple:
    r: int
    s: int
    t: int

    def as_tuple(self) -> tuple[int, int, int]:
        return self.r, self.s, self.t


def canonical_matrix(m: int, p: int, q: int, triple: CanonicalTriple,
                     field: Field = QQ) -> ExactMatrix:
    """The block matrix above as an ``m x (p + q)`` matrix split at ``p``."""
    r, s, t = triple.as_tuple()
    if r + s > min(m, p) or r + t > q or r + s + t > m:
        raise ValueError(f"triple {triple.as_tuple()} does not fit a {m}x({p}|{q}) matrix")
    grid = [[field.zero] * (p + q) for _ in range(m)]
    for i in range(r + s):
        grid[i][i] = field.one
    for i in range(r):
        grid[i][p + t + i] = field.one
    for k in range(t):
        grid[r + s + k][p + k] = field.one
    return ExactMatrix(tuple(map(tuple, grid)), p + q, field, split=p)


def generic_form(pat: Pattern, A: Matchbox, B: Matchbox, field: Field = QQ) -> ExactMatrix:
    """``M`` evaluated at the characteristic vector of ``A ∪ B`` (the union, not the merge)."""
    return instantiate(pat, characteristic_vector(pat, A.edges | B.edges), field)


def triple_from_pair(g: BipartiteGraph, A: Matchbox, B: Matchbox) -> CanonicalTriple:
    r = common_vertex_count(g, A, B)
    return CanonicalTriple(r, A.size - r, B.size - r)


@dataclass(frozen=True)
class BlockPermutation:
    """0-based permutations: new position ``k`` holds old index ``rows[k]``."""

    rows: tuple[int, ...]
    cols_a: tuple[int, ...]
    cols_b: tuple[int, ...]

    def stacked_columns(self, p: int) -> list[int]:
        return list(self.cols_a) + [p + c for c in self.cols_b]

    def to_json(self) -> dict:
        return {"rows": [i + 1 for i in self.rows],
                "colsA": [j + 1 for j in self.cols_a],
                "colsB": [k + 1 for k in self.cols_b]}


def permutations_to_block_form(pat: Pattern, A: Matchbox, B: Matchbox,
                               g: BipartiteGraph | None = None) -> BlockPermutation:
    """Row/column permutations taking ``generic_form(pat, A, B)`` to block form.

    Rows are grouped as shared rows, ``A``-only rows, ``B``-only rows, then the
    rest, each group ascending.  The columns of each identity block follow its
    rows; leftover columns come last in ascending order.  The result is
    checked against :func:`canonical_matrix` before it is returned.
    """
    g = g or build_graph(pat)
    a_col = {g.edge(l).row: g.edge(l).col for l in A.edges}
    b_col = {g.edge(l).row: g.edge(l).col for l in B.edges}
    shared = sorted(set(a_col) & set(b_col))
    a_only = sorted(set(a_col) - set(b_col))
    b_only = sorted(set(b_col) - set(a_col))
    rows = shared + a_only + b_only
    rows += [i for i in range(1, pat.m + 1) if i not in a_col and i not in b_col]

    cols_a = [a_col[i] for i in shared + a_only]
    cols_a += [j for j in range(1, pat.p + 1) if j not in cols_a]
    cols_b = [b_col[i] for i in b_only + shared]
    cols_b += [k for k in range(1, pat.q + 1) if k not in cols_b]

    perm = BlockPermutation(tuple(i - 1 for i in rows), tuple(j - 1 for j in cols_a),
                            tuple(k - 1 for k in cols_b))
    mgen = generic_form(pat, A, B)
    target = canonical_matrix(pat.m, pat.p, pat.q, triple_from_pair(g, A, B))
    if mgen.permute(perm.rows, perm.stacked_columns(pat.p)) != target:
        raise ConsistencyError("permuted generic form is not in block form")
    return perm


@dataclass(frozen=True)
class ReductionCertificate:
    S: ExactMatrix
    R1: ExactMatrix
    R2: ExactMatrix
    triple: CanonicalTriple

    def apply(self, M: ExactMatrix) -> ExactMatrix:
        """``[S A R1 | S B R2]``."""
        return (self.S @ M.left @ self.R1).hstack(self.S @ M.right @ self.R2)

    def check(self, M: ExactMatrix) -> bool:
        """True when ``S, R1, R2`` are invertible and transform ``M`` to block form."""
        if any(X.det() == 0 for X in (self.S, self.R1, self.R2)):
            return False
        target = canonical_matrix(M.nrows, M.split, M.ncols - M.split, self.triple, M.field)
        return self.apply(M) == target

    def to_json(self) -> dict:
        def grid(X: ExactMatrix):
            return [[str(x) for x in row] for row in X.entries]
        return {"S": grid(self.S), "R1": grid(self.R1), "R2": grid(self.R2),
                "triple": list(self.triple.as_tuple())}


class _Reducer:
    """Elementary operations on ``[A | B]`` mirrored onto ``S``, ``R1``, ``R2``.

    The invariant ``self.M == S @ M0 @ diag(R1, R2)`` holds after every
    operation.
    """

    def __init__(self, M: ExactMatrix):
        f = M.field
        self.field = f
        self.m, self.p = M.nrows, M.split
        self.q = M.ncols - M.split
        self.M = M.to_lists()
        self.S = ExactMatrix.identity(self.m, f).to_lists()
        self.R1 = ExactMatrix.identity(self.p, f).to_lists()
        self.R2 = ExactMatrix.identity(self.q, f).to_lists()

    # row operations act on M and S
    def swap_rows(self, i: int, j: int) -> None:
        if i != j:
            for X in (self.M, self.S):
                X[i], X[j] = X[j], X[i]

    def scale_row(self, i: int, c) -> None:
        for X in (self.M, self.S):
            X[i] = [c * x for x in X[i]]

    def add_row(self, dst: int, src: int, c) -> None:
        """row[dst] += c * row[src]"""
        if c == 0:
            return
        for X in (self.M, self.S):
            X[dst] = [x + c * y for x, y in zip(X[dst], X[src])]

    # column operations: side "A" acts on M[:, :p] and R1, side "B" on M[:, p:] and R2
    def _targets(self, side: str):
        return (self.M, 0, self.R1) if side == "A" else (self.M, self.p, self.R2)

    def swap_cols(self, side: str, j: int, k: int) -> None:
        if j == k:
            return
        M, off, R = self._targets(side)
        for X, o in ((M, off), (R, 0)):
            for row in X:
                row[o + j], row[o + k] = row[o + k], row[o + j]

    def scale_col(self, side: str, j: int, c) -> None:
        M, off, R = self._targets(side)
        for X, o in ((M, off), (R, 0)):
            for row in X:
                row[o + j] = c * row[o + j]

    def add_col(self, side: str, dst: int, src: int, c) -> None:
        """col[dst] += c * col[src] within one block."""
        if c == 0:
            return
        M, off, R = self._targets(side)
        for X, o in ((M, off), (R, 0)):
            for row in X:
                row[o + dst] = row[o + dst] + c * row[o + src]

    def entry(self, i: int, side: str, j: int):
        return self.M[i][j if side == "A" else self.p + j]

    def find_pivot(self, rows: range, side: str, cols: range):
        for i in rows:
            for j in cols:
                if self.entry(i, side, j) != 0:
                    return i, j
        return None

    def diagonalize(self, side: str, rows: range, cols: range, restore_a: int = 0) -> int:
        """Gauss-Jordan on the ``rows x cols`` window of block ``side``.

        Row operations stay inside ``rows`` and column operations inside
        ``cols``, though a column operation touches every row of the block.
        The window becomes ``I_k ⊕ 0`` at its top-left corner; ``k`` is returned.

        With ``restore_a = h``, every row operation on rows ``< h`` is followed
        by the inverse column operation on ``A``, which keeps an ``I_h`` in the
        top-left corner of ``A`` intact.
        """
        k = 0
        r0, c0 = rows.start, cols.start
        while r0 + k < rows.stop and c0 + k < cols.stop:
            piv = self.find_pivot(range(r0 + k, rows.stop), side, range(c0 + k, cols.stop))
            if piv is None:
                break
            i, j = piv
            pr, pc = r0 + k, c0 + k
            self._row_swap(pr, i, restore_a)
            self.swap_cols(side, pc, j)
            self._row_scale(pr, 1 / self.entry(pr, side, pc), restore_a)
            for i2 in rows:
                if i2 != pr:
                    self._row_add(i2, pr, -self.entry(i2, side, pc), restore_a)
            for j2 in cols:
                if j2 != pc:
                    self.add_col(side, j2, pc, -self.entry(pr, side, j2))
            k += 1
        return k

    # row operations that optionally restore I_h in A through inverse column operations
    def _row_swap(self, i: int, j: int, h: int) -> None:
        self.swap_rows(i, j)
        if i != j and i < h and j < h:
            self.swap_cols("A", i, j)

    def _row_scale(self, i: int, c, h: int) -> None:
        self.scale_row(i, c)
        if i < h:
            self.scale_col("A", i, 1 / c)

    def _row_add(self, dst: int, src: int, c, h: int) -> None:
        self.add_row(dst, src, c)
        if dst < h and src < h and c != 0:
            # Row op put c at A[dst][src]; col[src] -= c * col[dst] clears it.
            self.add_col("A", src, dst, -c)

    def result(self, triple: CanonicalTriple) -> ReductionCertificate:
        f = self.field
        return ReductionCertificate(
            ExactMatrix.from_rows(self.S, f, ncols=self.m),
            ExactMatrix.from_rows(self.R1, f, ncols=self.p),
            ExactMatrix.from_rows(self.R2, f, ncols=self.q),
            triple,
        )


def reduce_numeric(M: ExactMatrix) -> ReductionCertificate:
    """Reduce a concrete bipartite matrix to block form with explicit certificate.

    1. Gauss-Jordan on ``A`` (all rows, ``A`` columns) gives ``[[I_h, 0], [0, 0]]``.
    2. The lower ``m - h`` rows of ``B`` are reduced to ``I_t ⊕ 0``.
    3. The upper rows of ``B`` above ``I_t`` are cleared with those ``t`` rows.
    4. The remaining upper-right part of ``B`` is reduced to ``I_r ⊕ 0`` using
       row operations inside the top ``h`` rows; each is undone on ``I_h`` by
       the inverse column operation in ``A``.

    The rows carrying both identities end up first, as the block form wants.
    """
    if M.split is None:
        raise ValueError("reduce_numeric needs a bipartite matrix with an A|B split")
    red = _Reducer(M)
    m, p, q = red.m, red.p, red.q

    h = red.diagonalize("A", range(m), range(p))
    t = red.diagonalize("B", range(h, m), range(q))
    for i in range(h):
        for k in range(t):
            red.add_row(i, h + k, -red.entry(i, "B", k))
    r = red.diagonalize("B", range(h), range(t, q), restore_a=h)

    triple = CanonicalTriple(r, h - r, t)
    cert = red.result(triple)
    if cert.apply(M) != canonical_matrix(m, p, q, triple, M.field):
        raise ConsistencyError("reduction did not reach block form")
    return cert


def ranks(M: ExactMatrix) -> tuple[int, int, int]:
    """``(rank A, rank B, rank M)`` of a bipartite matrix."""
    return M.left.rank(), M.right.rank(), M.rank()


def triple_from_ranks(rank_a: int, rank_b: int, rank_m: int) -> CanonicalTriple:
    return CanonicalTriple(rank_a + rank_b - rank_m, rank_m - rank_b, rank_m - rank_a)
