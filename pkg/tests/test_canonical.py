import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import PAIR_FIRST, PAIR_SECOND, pair, patterns, random_pattern
from genericform.canonical import (CanonicalTriple, canonical_matrix, generic_form,
                                   permutations_to_block_form, ranks, reduce_numeric,
                                   triple_from_pair, triple_from_ranks)
from genericform.fields import PrimeField
from genericform.graph import build_graph, generic_ranks, optimal_pair
from genericform.matrix import ExactMatrix
from genericform.pattern import Pattern, characteristic_vector, instantiate

# The block form shared by both generic representatives of the worked example.
PRINTED_BLOCK_FORM = [[1, 0, 0, 0, 1],
                      [0, 1, 0, 0, 0],
                      [0, 0, 1, 0, 0],
                      [0, 0, 0, 1, 0]]


def test_canonical_matrix_layout():
    M = canonical_matrix(4, 2, 3, CanonicalTriple(1, 1, 2))
    assert M.to_lists() == PRINTED_BLOCK_FORM
    assert M.split == 2
    with pytest.raises(ValueError):
        canonical_matrix(2, 1, 1, CanonicalTriple(1, 1, 0))


def test_generic_form_example(example_pattern):
    assert generic_form(example_pattern, *pair(PAIR_FIRST)).to_lists() == [[0, 0, 1, 0, 0],
                                                                      [1, 0, 0, 0, 0],
                                                                      [0, 1, 0, 0, 1],
                                                                      [0, 0, 0, 1, 0]]
    assert generic_form(example_pattern, *pair(PAIR_SECOND)).to_lists() == [[0, 0, 0, 1, 0],
                                                                         [1, 0, 1, 0, 0],
                                                                         [0, 0, 0, 0, 1],
                                                                         [0, 1, 0, 0, 0]]


def test_generic_form_empty():
    pat = Pattern(2, 1, 2, ())
    A, B = optimal_pair(pat)
    assert generic_form(pat, A, B).nonzero_count() == 0


def test_triple_from_pair(example_pattern):
    g = build_graph(example_pattern)
    assert triple_from_pair(g, *pair(PAIR_FIRST)) == CanonicalTriple(1, 1, 2)
    assert triple_from_pair(g, *pair(PAIR_SECOND)) == CanonicalTriple(1, 1, 2)
    pat = Pattern.from_cells(2, 1, 1, [("A", 1, 1), ("B", 2, 1)])
    assert triple_from_pair(build_graph(pat), *optimal_pair(pat)) == CanonicalTriple(0, 1, 1)
    empty = Pattern(0, 0, 0, ())
    assert triple_from_pair(build_graph(empty), *optimal_pair(empty)) == CanonicalTriple(0, 0, 0)


@pytest.mark.parametrize("edges, perm", [
    (PAIR_FIRST, {"rows": [3, 2, 1, 4], "colsA": [2, 1], "colsB": [1, 2, 3]}),
    (PAIR_SECOND, {"rows": [2, 4, 1, 3], "colsA": [1, 2], "colsB": [2, 3, 1]}),
])
def test_block_form_example(example_pattern, edges, perm):
    A, B = pair(edges)
    P = permutations_to_block_form(example_pattern, A, B)
    assert P.to_json() == perm
    permuted = generic_form(example_pattern, A, B).permute(P.rows, P.stacked_columns(2))
    assert permuted.to_lists() == PRINTED_BLOCK_FORM


def test_block_form_identity_when_already_canonical():
    pat = Pattern.from_cells(4, 2, 3, [("A", 1, 1), ("A", 2, 2), ("B", 3, 1), ("B", 4, 2), ("B", 1, 3)])
    A, B = optimal_pair(pat)
    P = permutations_to_block_form(pat, A, B)
    assert P.rows == (0, 1, 2, 3) and P.cols_a == (0, 1) and P.cols_b == (0, 1, 2)


@settings(max_examples=300, deadline=None)
@given(patterns(max_dim=5, max_n=14))
def test_block_form_and_rank_identities(pat):
    g = build_graph(pat)
    r = generic_ranks(g)
    A, B = optimal_pair(g)
    permutations_to_block_form(pat, A, B, g)      # raises if the permuted matrix is wrong
    Mgen = generic_form(pat, A, B)
    assert ranks(Mgen) == r.as_tuple()
    t = triple_from_pair(g, A, B)
    assert (t.r + t.s, t.r + t.t, t.r + t.s + t.t) == r.as_tuple()


def _independent_ranks(M: ExactMatrix):
    rows = M.to_lists()
    if not rows:
        return 0, 0, 0
    full = sympy.Matrix(rows)
    p = M.split
    rk = lambda X: X.rank() if X.shape[0] and X.shape[1] else 0
    return rk(full[:, :p]), rk(full[:, p:]), rk(full)


def test_reduce_numeric_example_point(example_pattern):
    M = instantiate(example_pattern, [1, 1, 1, 1, 1, 1, 1, 2, 1])
    cert = reduce_numeric(M)
    assert cert.triple == CanonicalTriple(1, 1, 2)
    assert triple_from_ranks(*_independent_ranks(M)) == cert.triple
    assert cert.check(M)


def test_reduce_numeric_on_canonical_and_zero():
    C = canonical_matrix(4, 2, 3, CanonicalTriple(1, 1, 2))
    cert = reduce_numeric(C)
    assert cert.triple == CanonicalTriple(1, 1, 2)
    assert cert.apply(C) == C
    Z = ExactMatrix.zeros(3, 4, split=2)
    cert = reduce_numeric(Z)
    assert cert.triple == CanonicalTriple(0, 0, 0)
    assert cert.S == ExactMatrix.identity(3)
    assert cert.R1 == ExactMatrix.identity(2) and cert.R2 == ExactMatrix.identity(2)


def test_reduce_numeric_degenerate_shapes():
    for m, p, q in [(0, 0, 0), (0, 2, 1), (3, 0, 0), (2, 0, 3), (2, 3, 0)]:
        M = ExactMatrix.from_rows([[1] * (p + q)] * m, ncols=p + q, split=p)
        cert = reduce_numeric(M)
        assert cert.check(M)


def test_reduce_requires_split():
    with pytest.raises(ValueError):
        reduce_numeric(ExactMatrix.identity(2))


matrices = st.tuples(st.integers(0, 5), st.integers(0, 4), st.integers(0, 4)).flatmap(
    lambda d: st.lists(st.lists(st.integers(-3, 3), min_size=d[1] + d[2], max_size=d[1] + d[2]),
                       min_size=d[0], max_size=d[0]).map(lambda rows: (rows, d)))


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_reduce_numeric_certificate_rational(data):
    rows, (m, p, q) = data
    M = ExactMatrix.from_rows(rows, ncols=p + q, split=p)
    cert = reduce_numeric(M)
    assert cert.check(M)
    assert cert.triple == triple_from_ranks(*_independent_ranks(M))


@settings(max_examples=150, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_reduce_numeric_certificate_gf(data, prime):
    rows, (m, p, q) = data
    F = PrimeField(prime)
    M = ExactMatrix.from_rows(rows, F, ncols=p + q, split=p)
    cert = reduce_numeric(M)
    assert cert.check(M)
    assert cert.triple == triple_from_ranks(*ranks(M))


def test_consistency_of_routes_random():
    rng = random.Random(5)
    from genericform.poly import evaluate, generic_polynomial
    for _ in range(40):
        pat = random_pattern(rng)
        g = build_graph(pat)
        A, B = optimal_pair(g)
        f = generic_polynomial(pat, A, B, g)
        # the generic representative itself lies in the family
        assert evaluate(f, characteristic_vector(pat, A.edges | B.edges)) != 0
        for _ in range(5):
            a = [rng.randint(-10, 10) for _ in range(pat.n)]
            if evaluate(f, a) != 0:
                assert reduce_numeric(instantiate(pat, a)).triple == triple_from_pair(g, A, B)
