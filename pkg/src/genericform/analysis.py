"""End-to-end analysis of a pattern: ranks, optimal pair, generic form, f(x)."""

from __future__ import annotations

from dataclasses import dataclass

from .canonical import (BlockPermutation, CanonicalTriple, generic_form,
                        permutations_to_block_form, triple_from_pair)
from .graph import (LEFT, RIGHT, BipartiteGraph, GenericRanks, Matchbox, build_graph,
                    common_vertex_count, generic_ranks, make_matchbox, merge, optimal_pair)
from .matrix import ExactMatrix
from .pattern import Pattern
from .poly import Polynomial, lcm3, minor_polynomial


@dataclass(frozen=True)
class Analysis:
    pattern: Pattern
    graph: BipartiteGraph
    ranks: GenericRanks
    A: Matchbox
    B: Matchbox
    v: int
    merged: Matchbox
    triple: CanonicalTriple
    mgen: ExactMatrix
    permutation: BlockPermutation
    mu_A: Polynomial
    mu_B: Polynomial
    mu_merged: Polynomial
    f: Polynomial

    @property
    def block_form(self) -> ExactMatrix:
        return self.mgen.permute(self.permutation.rows,
                                 self.permutation.stacked_columns(self.pattern.p))


def check_pair(g: BipartiteGraph, ranks: GenericRanks, A: Matchbox, B: Matchbox) -> None:
    """Raise ``ValueError`` unless ``(A, B)`` is a valid optimal pair."""
    make_matchbox(g, A.edges, LEFT)
    make_matchbox(g, B.edges, RIGHT)
    if A.size != ranks.rA or B.size != ranks.rB:
        raise ValueError(f"pair sizes {A.size},{B.size} are not the largest ({ranks.rA},{ranks.rB})")
    v = common_vertex_count(g, A, B)
    if v != ranks.rA + ranks.rB - ranks.rM:
        raise ValueError(f"pair shares {v} rows; the minimum is {ranks.rA + ranks.rB - ranks.rM}")


def analyze(pat: Pattern, pair: tuple[Matchbox, Matchbox] | None = None) -> Analysis:
    """Run the whole construction; ``pair`` overrides the computed optimal pair."""
    g = build_graph(pat)
    ranks = generic_ranks(g)
    if pair is None:
        A, B = optimal_pair(g)
    else:
        A, B = Matchbox(pair[0].edges, LEFT), Matchbox(pair[1].edges, RIGHT)
    check_pair(g, ranks, A, B)
    merged = merge(g, A, B)
    mu_A = minor_polynomial(pat, A, g)
    mu_B = minor_polynomial(pat, B, g)
    mu_merged = minor_polynomial(pat, merged, g)
    return Analysis(
        pattern=pat, graph=g, ranks=ranks, A=A, B=B,
        v=common_vertex_count(g, A, B), merged=merged,
        triple=triple_from_pair(g, A, B),
        mgen=generic_form(pat, A, B),
        permutation=permutations_to_block_form(pat, A, B, g),
        mu_A=mu_A, mu_B=mu_B, mu_merged=mu_merged,
        f=lcm3(mu_A, mu_B, mu_merged),
    )
