"""Zero patterns of bipartite matrices ``M(x) = [A(x) | B(x)]``.

A pattern places ``n`` independent unknowns ``x1..xn`` in distinct cells of
an ``m x (p + q)`` matrix; every other cell is zero.  Unknown, row and column
indices are 1-based everywhere they are visible.

File format::

    # matrix with two unknowns
    pattern 2 1 2
    x1 | .  x2
    .  | .  .
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import QQ, Field
from .matrix import ExactMatrix


class PatternError(ValueError):
    """Malformed or invalid pattern text, with an optional source location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True, order=True)
class Placement:
    side: str  # "A" or "B"
    row: int
    col: int


@dataclass(frozen=True)
class Pattern:
    m: int
    p: int
    q: int
    placements: tuple[Placement, ...]

    def __post_init__(self):
        if min(self.m, self.p, self.q) < 0:
            raise PatternError("negative dimension")
        seen = set()
        for l, pl in enumerate(self.placements, start=1):
            width = {"A": self.p, "B": self.q}.get(pl.side)
            if width is None:
                raise PatternError(f"x{l}: side must be 'A' or 'B', got {pl.side!r}")
            if not (1 <= pl.row <= self.m and 1 <= pl.col <= width):
                raise PatternError(f"x{l}: position {pl.side}({pl.row},{pl.col}) out of range")
            if pl in seen:
                raise PatternError(f"x{l}: cell {pl.side}({pl.row},{pl.col}) already holds an unknown")
            seen.add(pl)

    @classmethod
    def from_cells(cls, m: int, p: int, q: int,
                   cells: Iterable[tuple[str, int, int]]) -> "Pattern":
        return cls(m, p, q, tuple(Placement(*c) for c in cells))

    @property
    def n(self) -> int:
        return len(self.placements)

    def column_of(self, l: int) -> int:
        """0-based column of unknown ``l`` in the stacked ``m x (p + q)`` matrix."""
        pl = self.placements[l - 1]
        return pl.col - 1 if pl.side == "A" else self.p + pl.col - 1

    def cell_map(self) -> dict[tuple[int, int], int]:
        """``(row0, col0) -> l`` over the stacked matrix, 0-based cells, 1-based ``l``."""
        return {(pl.row - 1, self.column_of(l)): l
                for l, pl in enumerate(self.placements, start=1)}


_TOKEN = re.compile(r"\S+")
_UNKNOWN = re.compile(r"x(\d+)")


def parse_pattern(text: str) -> Pattern:
    """Parse the text format shown in the module docstring."""
    header = None
    rows: list[tuple[int, list[tuple[int, str]]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(mt.start() + 1, mt.group()) for mt in _TOKEN.finditer(line)]
        if not tokens:
            continue
        if header is None:
            header = _parse_header(tokens, lineno)
            continue
        rows.append((lineno, tokens))
    if header is None:
        raise PatternError("missing 'pattern <m> <p> <q>' header")
    m, p, q = header
    if len(rows) != m:
        where = rows[m][0] if len(rows) > m else None
        raise PatternError(f"expected {m} rows, found {len(rows)}", line=where)

    cells: dict[int, tuple[Placement, int, int]] = {}
    for i, (lineno, tokens) in enumerate(rows, start=1):
        bars = [k for k, (_, tok) in enumerate(tokens) if tok == "|"]
        if not bars:
            raise PatternError("missing '|' strip separator", line=lineno)
        if len(bars) > 1:
            raise PatternError("more than one '|' separator", line=lineno,
                               column=tokens[bars[1]][0])
        left, right = tokens[:bars[0]], tokens[bars[0] + 1:]
        if len(left) != p or len(right) != q:
            raise PatternError(f"row has {len(left)}|{len(right)} entries, expected {p}|{q}",
                               line=lineno)
        for side, strip in (("A", left), ("B", right)):
            for j, (colno, tok) in enumerate(strip, start=1):
                if tok in (".", "0"):
                    continue
                mt = _UNKNOWN.fullmatch(tok)
                if mt is None:
                    raise PatternError(f"bad token {tok!r}; expected '.' or 'x<k>'",
                                       line=lineno, column=colno)
                k = int(mt.group(1))
                if k < 1:
                    raise PatternError("unknown indices start at 1", line=lineno, column=colno)
                if k in cells:
                    first = cells[k]
                    raise PatternError(f"duplicate unknown x{k} (first seen at line {first[1]}, "
                                       f"column {first[2]})", line=lineno, column=colno)
                cells[k] = (Placement(side, i, j), lineno, colno)

    n = len(cells)
    missing = sorted(set(range(1, n + 1)) - set(cells))
    if missing:
        raise PatternError(f"unknown indices must be exactly 1..{n}; x{missing[0]} is missing")
    return Pattern(m, p, q, tuple(cells[k][0] for k in range(1, n + 1)))


def _parse_header(tokens, lineno: int) -> tuple[int, int, int]:
    words = [tok for _, tok in tokens]
    if words[0] != "pattern":
        raise PatternError("expected 'pattern <m> <p> <q>' header", line=lineno,
                           column=tokens[0][0])
    if len(words) != 4:
        raise PatternError("header needs exactly three dimensions", line=lineno)
    dims = []
    for colno, tok in tokens[1:]:
        if not tok.isdigit():
            raise PatternError(f"bad dimension {tok!r}", line=lineno, column=colno)
        dims.append(int(tok))
    return tuple(dims)


def render_pattern(pat: Pattern) -> str:
    """Deterministic text rendering; ``parse_pattern`` inverts it."""
    names = {(pl.side, pl.row, pl.col): f"x{l}"
             for l, pl in enumerate(pat.placements, start=1)}
    width = max([1] + [len(s) for s in names.values()])
    lines = [f"pattern {pat.m} {pat.p} {pat.q}"]
    for i in range(1, pat.m + 1):
        left = [names.get(("A", i, j), ".").ljust(width) for j in range(1, pat.p + 1)]
        right = [names.get(("B", i, k), ".").ljust(width) for k in range(1, pat.q + 1)]
        lines.append(" ".join(left + ["|"] + right).rstrip())
    return "\n".join(lines) + "\n"


def instantiate(pat: Pattern, values: Sequence, field: Field = QQ) -> ExactMatrix:
    """The numeric matrix ``M(a)`` for the assignment ``a = values``."""
    if len(values) != pat.n:
        raise ValueError(f"assignment has {len(values)} values, pattern has {pat.n} unknowns")
    zero = field.zero
    grid = [[zero] * (pat.p + pat.q) for _ in range(pat.m)]
    for l, a in enumerate(values, start=1):
        pl = pat.placements[l - 1]
        grid[pl.row - 1][pat.column_of(l)] = field(a)
    return ExactMatrix(tuple(map(tuple, grid)), pat.p + pat.q, field, split=pat.p)


def characteristic_vector(pat: Pattern, edges: Iterable[int]) -> tuple[int, ...]:
    """0/1 vector with a one exactly at the given (1-based) unknown indices."""
    edges = set(edges)
    bad = [l for l in edges if not 1 <= l <= pat.n]
    if bad:
        raise ValueError(f"edge index {min(bad)} outside 1..{pat.n}")
    return tuple(1 if l in edges else 0 for l in range(1, pat.n + 1))


def parse_assignment(text: str, n: int | None = None) -> list[str]:
    """Parse ``a = v1 v2 ... vn``; values stay as strings for the field to convert."""
    body = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if body is not None:
            raise PatternError("assignment file has more than one assignment line", line=lineno)
        name, eq, rest = line.partition("=")
        if not eq or name.strip() != "a":
            raise PatternError("expected 'a = v1 v2 ... vn'", line=lineno)
        body = (lineno, rest.split())
    if body is None:
        raise PatternError("no assignment line found")
    lineno, values = body
    for v in values:
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", v):
            raise PatternError(f"bad value {v!r}; expected an integer or p/q", line=lineno)
    if n is not None and len(values) != n:
        raise PatternError(f"assignment has {len(values)} values, pattern has {n} unknowns",
                           line=lineno)
    return values
