"""Independent checks of the fast path.

Two kinds of oracle live here:

* exhaustive enumeration of matchboxes, giving maximum sizes and the minimal
  number of shared rows over all pairs of largest matchboxes;
* seeded random sampling of assignments, checking that every sample with
  ``f(a) != 0`` reduces to the predicted canonical form.

Per-trial generators are seeded from ``(seed, trial)``, so a report does not
depend on how trials are spread over worker processes.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .canonical import ranks, reduce_numeric, triple_from_pair
from .fields import QQ, Field
from .graph import LEFT, MIXED, RIGHT, Matchbox, build_graph, generic_ranks, optimal_pair
from .pattern import Pattern, instantiate
from .poly import evaluate, generic_polynomial, minor_polynomial

DEFAULT_EXHAUSTIVE_LIMIT = 24
DEFAULT_SAMPLE_RANGE = (-10, 10)


class GuardExceeded(RuntimeError):
    """The pattern is too large for exhaustive enumeration."""


def _edges_of_kind(pat: Pattern, kind: str) -> list[tuple[int, int, int]]:
    """``(index, row_bit, col_bit)`` for each edge of the kind, by ascending index."""
    out = []
    for l, pl in enumerate(pat.placements, start=1):
        if kind == LEFT and pl.side != "A" or kind == RIGHT and pl.side != "B":
            continue
        col = pl.col - 1 if pl.side == "A" else pat.p + pl.col - 1
        out.append((l, 1 << (pl.row - 1), 1 << col))
    return out


def _largest(pat: Pattern, kind: str) -> tuple[int, list[tuple[int, ...]], list[int]]:
    """Maximum size, all maximum matchings (as edge tuples) and their row masks."""
    edges = _edges_of_kind(pat, kind)
    best = [-1, [], []]
    chosen: list[int] = []

    def walk(i: int, rows: int, cols: int) -> None:
        if len(chosen) + (len(edges) - i) < best[0]:
            return
        if i == len(edges):
            size = len(chosen)
            if size > best[0]:
                best[0], best[1], best[2] = size, [tuple(chosen)], [rows]
            elif size == best[0]:
                best[1].append(tuple(chosen))
                best[2].append(rows)
            return
        l, rb, cb = edges[i]
        if not (rows & rb or cols & cb):
            chosen.append(l)
            walk(i + 1, rows | rb, cols | cb)
            chosen.pop()
        walk(i + 1, rows, cols)

    walk(0, 0, 0)
    return best[0], best[1], best[2]


def _guard(pat: Pattern, limit: int) -> None:
    if pat.n > limit:
        raise GuardExceeded(f"{pat.n} edges exceed the exhaustive limit of {limit}")


def enumerate_largest_matchboxes(pat: Pattern, kind: str,
                                 limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> list[Matchbox]:
    """Every matchbox of maximum size for ``kind``, sorted by edge list."""
    _guard(pat, limit)
    _, found, _ = _largest(pat, kind)
    return [Matchbox(frozenset(e), kind) for e in sorted(found)]


def brute_force_min_v(pat: Pattern, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> int:
    """Fewest shared rows over all (largest left, largest right) pairs."""
    _guard(pat, limit)
    left_rows = set(_largest(pat, LEFT)[2])
    right_rows = set(_largest(pat, RIGHT)[2])
    return min(bin(a & b).count("1") for a in left_rows for b in right_rows)


def brute_force_ranks(pat: Pattern, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> tuple[int, int, int]:
    _guard(pat, limit)
    return tuple(_largest(pat, kind)[0] for kind in (LEFT, RIGHT, MIXED))


@dataclass
class OracleComparison:
    ranks_fast: tuple[int, int, int]
    ranks_brute: tuple[int, int, int]
    v_fast: int
    v_brute: int
    largest: dict[str, list[Matchbox]] = dc_field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        rA, rB, rM = self.ranks_fast
        return (self.ranks_fast == self.ranks_brute and self.v_fast == self.v_brute
                and self.v_fast == rA + rB - rM)


def compare_with_oracle(pat: Pattern, limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
                        keep_matchboxes: bool = False) -> OracleComparison:
    """Fast path (matching + optimal pair) against exhaustive enumeration."""
    _guard(pat, limit)
    g = build_graph(pat)
    A, B = optimal_pair(g)
    v_fast = len(A.rows(g) & B.rows(g))
    largest = {}
    if keep_matchboxes:
        largest = {k: enumerate_largest_matchboxes(pat, k, limit) for k in (LEFT, RIGHT, MIXED)}
    return OracleComparison(generic_ranks(g).as_tuple(), brute_force_ranks(pat, limit),
                            v_fast, brute_force_min_v(pat, limit), largest)


@dataclass
class VerificationReport:
    trials: int
    successes: int
    failures: int
    skipped: int
    rng_seed: int
    field: str
    first_failure: dict | None = None
    sample_range: tuple[int, int] | None = None
    problems: dict[str, int] = dc_field(default_factory=dict)  # failure category -> count

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """Combine reports of consecutive trial blocks (``self`` comes first)."""
        return VerificationReport(
            self.trials + other.trials, self.successes + other.successes,
            self.failures + other.failures, self.skipped + other.skipped,
            self.rng_seed, self.field,
            self.first_failure if self.first_failure is not None else other.first_failure,
            self.sample_range,
            {k: self.problems.get(k, 0) + other.problems.get(k, 0)
             for k in sorted(set(self.problems) | set(other.problems))})

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "failures": self.failures,
            "skipped": self.skipped,
            "rngSeed": self.rng_seed,
            "field": self.field,
            "sampleRange": list(self.sample_range) if self.sample_range else None,
            "firstFailure": self.first_failure,
            "problems": dict(sorted(self.problems.items())),
        }


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{trial}")


def sample_assignment(n: int, rng: random.Random, field: Field,
                      sample_range: tuple[int, int]) -> list:
    lo, hi = sample_range
    return [field.sample(rng, lo, hi) for _ in range(n)]


def _theorem_block(pat: Pattern, trial_ids: Sequence[int], seed: int, field: Field,
                   sample_range: tuple[int, int], check_certificates: bool) -> VerificationReport:
    g = build_graph(pat)
    A, B = optimal_pair(g)
    f = generic_polynomial(pat, A, B, g)
    expected = triple_from_pair(g, A, B).as_tuple()
    expected_ranks = generic_ranks(g).as_tuple()
    report = VerificationReport(0, 0, 0, 0, seed, field.name, None, sample_range)
    for trial in trial_ids:
        a = sample_assignment(pat.n, trial_rng(seed, trial), field, sample_range)
        report.trials += 1
        if evaluate(f, a, field) == 0:
            report.skipped += 1
            continue
        M = instantiate(pat, a, field)
        cert = reduce_numeric(M)
        observed_ranks = ranks(M)
        problems = []
        if cert.triple.as_tuple() != expected:
            problems.append("triple")
        if observed_ranks != expected_ranks:
            problems.append("ranks")
        if check_certificates and not cert.check(M):
            problems.append("certificate")
        if problems:
            report.failures += 1
            for name in problems:
                report.problems[name] = report.problems.get(name, 0) + 1
            if report.first_failure is None:
                report.first_failure = {
                    "trial": trial,
                    "assignment": [str(x) for x in a],
                    "expectedTriple": list(expected),
                    "observedTriple": list(cert.triple.as_tuple()),
                    "expectedRanks": list(expected_ranks),
                    "observedRanks": list(observed_ranks),
                    "problems": problems,
                }
        else:
            report.successes += 1
    return report


def _chunks(n: int, parts: int) -> list[range]:
    parts = max(1, min(parts, n)) if n else 1
    size, extra = divmod(n, parts)
    out, start = [], 0
    for k in range(parts):
        stop = start + size + (1 if k < extra else 0)
        out.append(range(start, stop))
        start = stop
    return out


def verify_theorem(pat: Pattern, trials: int = 100, seed: int = 0, field: Field = QQ,
                   sample_range: tuple[int, int] = DEFAULT_SAMPLE_RANGE,
                   workers: int = 1, check_certificates: bool = True) -> VerificationReport:
    """Sample assignments and check each one with ``f(a) != 0`` against the generic form.

    A trial succeeds when the numeric reduction of ``M(a)`` yields the triple
    predicted by the optimal pair, the ranks of ``A(a)``, ``B(a)``, ``M(a)``
    equal the generic ranks, and (optionally) the reduction certificate
    recomposes to the block form.  Trials with ``f(a) = 0`` are skipped.
    """
    blocks = _chunks(trials, workers)
    args = [(pat, b, seed, field, sample_range, check_certificates) for b in blocks]
    if workers <= 1 or len(blocks) == 1:
        parts = [_theorem_block(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_theorem_block, *zip(*args)))
    report = parts[0]
    for part in parts[1:]:
        report = report.merge(part)
    return report


def determinant_crosscheck(pat: Pattern, S: Matchbox, trials: int = 100, seed: int = 0,
                           field: Field = QQ,
                           sample_range: tuple[int, int] = DEFAULT_SAMPLE_RANGE) -> VerificationReport:
    """Symbolic minor of ``S`` evaluated at random points against the numeric determinant."""
    g = build_graph(pat)
    mu = minor_polynomial(pat, S, g)
    rows = sorted(g.edge(l).row - 1 for l in S.edges)
    cols = (sorted(g.edge(l).col - 1 for l in S.edges if g.edge(l).is_left)
            + sorted(pat.p + g.edge(l).col - 1 for l in S.edges if not g.edge(l).is_left))
    report = VerificationReport(0, 0, 0, 0, seed, field.name, None, sample_range)
    for trial in range(trials):
        a = sample_assignment(pat.n, trial_rng(seed, trial), field, sample_range)
        report.trials += 1
        numeric = instantiate(pat, a, field).submatrix(rows, cols).det()
        symbolic = evaluate(mu, a, field)
        if numeric == symbolic:
            report.successes += 1
        else:
            report.failures += 1
            if report.first_failure is None:
                report.first_failure = {"trial": trial, "assignment": [str(x) for x in a],
                                        "numeric": str(numeric), "symbolic": str(symbolic)}
    return report
