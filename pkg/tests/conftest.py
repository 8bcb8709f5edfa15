import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from genericform.graph import LEFT, RIGHT, Matchbox
from genericform.pattern import Pattern, Placement, parse_pattern

PATTERNS = Path(__file__).resolve().parent.parent / "patterns"

# The 4x(2|3) worked example; x_l sits in the listed cell.
EXAMPLE_TEXT = (PATTERNS / "worked_example.txt").read_text()

# Edge indices of the example's matchboxes (1-based unknown indices).
PAIR_FIRST = ({1, 2}, {4, 8, 9})          # A = {2-1-, 3-2-}, B = {1-1+, 3-3+, 4-2+}
PAIR_SECOND = ({1, 3}, {5, 7, 9})       # A' = {2-1-, 4-2-}, B' = {1-2+, 2-1+, 3-3+}
PAIR_TWO_SHARED = ({1, 2}, {5, 7, 9})  # A = {2-1-, 3-2-}, B = {1-2+, 2-1+, 3-3+}


@pytest.fixture(scope="session")
def example_pattern() -> Pattern:
    return parse_pattern(EXAMPLE_TEXT)


def pair(edges) -> tuple[Matchbox, Matchbox]:
    return Matchbox(frozenset(edges[0]), LEFT), Matchbox(frozenset(edges[1]), RIGHT)


def random_pattern(rng: random.Random, max_dim: int = 5, max_n: int = 12,
                   min_dim: int = 0) -> Pattern:
    m, p, q = (rng.randint(min_dim, max_dim) for _ in range(3))
    cells = ([("A", i, j) for i in range(1, m + 1) for j in range(1, p + 1)]
             + [("B", i, k) for i in range(1, m + 1) for k in range(1, q + 1)])
    n = rng.randint(0, min(max_n, len(cells)))
    chosen = rng.sample(cells, n)
    return Pattern(m, p, q, tuple(Placement(*c) for c in chosen))


@st.composite
def patterns(draw, max_dim: int = 4, max_n: int = 10):
    m = draw(st.integers(0, max_dim))
    p = draw(st.integers(0, max_dim))
    q = draw(st.integers(0, max_dim))
    cells = ([("A", i, j) for i in range(1, m + 1) for j in range(1, p + 1)]
             + [("B", i, k) for i in range(1, m + 1) for k in range(1, q + 1)])
    chosen = draw(st.lists(st.sampled_from(cells), unique=True, max_size=max_n)
                  if cells else st.just([]))
    return Pattern(m, p, q, tuple(Placement(*c) for c in chosen))
