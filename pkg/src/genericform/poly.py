"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as ``{exponent_vector: Fraction}`` with no zero
coefficients.  Terms are ordered graded-lexicographically with
``x1 > x2 > ... > xn``; that order fixes leading terms, the sign
normalization of gcd/lcm results, and the rendering order.

The gcd is a recursive primitive pseudo-remainder sequence: view both inputs
as univariate in their lowest-indexed variable, split off contents (computed
by recursion), and run the PRS on the primitive parts.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .graph import BipartiteGraph, Matchbox, build_graph, merge
from .pattern import Pattern


class ConsistencyError(ArithmeticError):
    """An internal invariant failed; this indicates a bug, not bad input."""


def _order_key(exps: tuple[int, ...]):
    return sum(exps), exps


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has length != {nvars}")
            c = Fraction(c)
            if c:
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, l: int) -> "Polynomial":
        """The unknown ``x_l`` (1-based)."""
        exps = [0] * nvars
        exps[l - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, nvars: int, variables: Iterable[int], c=1) -> "Polynomial":
        exps = [0] * nvars
        for l in variables:
            exps[l - 1] += 1
        return cls(nvars, {tuple(exps): c})

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def variables(self) -> set[int]:
        """0-based indices of the variables that occur."""
        return {v for e in self.terms for v, k in enumerate(e) if k}

    def degree(self, v: int) -> int:
        """Degree in the 0-based variable ``v``; -1 for the zero polynomial."""
        return max((e[v] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_order_key)
        return exps, self.terms[exps]

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.nvars != self.nvars:
            raise ValueError("polynomials over different variable sets")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial(self.nvars)
        return Polynomial._raw(self.nvars, {e: k * c for e, k in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self.nvars}, {render(self)!r})"

    def __str__(self):
        return render(self)


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """The quotient ``f / g``; raises :class:`ConsistencyError` unless ``g`` divides ``f``."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ge, gc = g.leading_term()
    quotient: dict = {}
    rem = f
    while rem:
        re_, rc = rem.leading_term()
        diff = tuple(a - b for a, b in zip(re_, ge))
        if any(d < 0 for d in diff):
            raise ConsistencyError(f"{render(g)} does not divide {render(f)}")
        c = rc / gc
        quotient[diff] = quotient.get(diff, 0) + c
        rem = rem - Polynomial._raw(f.nvars, {diff: c}) * g
    return Polynomial(f.nvars, quotient)


def normalize(f: Polynomial) -> Polynomial:
    """Integer-primitive form with a positive leading coefficient."""
    if f.is_zero():
        return f
    den = reduce(math.lcm, (c.denominator for c in f.terms.values()), 1)
    nums = [int(c * den) for c in f.terms.values()]
    g = reduce(math.gcd, nums, 0)
    if f.leading_term()[1] < 0:
        g = -g
    return f.scale(Fraction(den, g))


def _integer_content(f: Polynomial) -> int:
    return reduce(math.gcd, (int(c) for c in f.terms.values()), 0)


def _coefficients_in(f: Polynomial, v: int) -> dict[int, Polynomial]:
    """``f`` as ``sum_k c_k * x_v^k`` with each ``c_k`` free of ``x_v``."""
    parts: dict[int, dict] = {}
    for e, c in f.terms.items():
        k = e[v]
        rest = e[:v] + (0,) + e[v + 1:]
        parts.setdefault(k, {})[rest] = c
    return {k: Polynomial._raw(f.nvars, t) for k, t in parts.items()}


def _shift(f: Polynomial, v: int, k: int) -> Polynomial:
    """``f * x_v^k``."""
    if k == 0:
        return f
    return Polynomial._raw(f.nvars, {e[:v] + (e[v] + k,) + e[v + 1:]: c
                                     for e, c in f.terms.items()})


def _content_in(f: Polynomial, v: int) -> Polynomial:
    return reduce(_gcd_int, _coefficients_in(f, v).values())


def _pseudo_remainder(f: Polynomial, g: Polynomial, v: int) -> Polynomial:
    dg = g.degree(v)
    lc = _coefficients_in(g, v)[dg]
    rem = f
    while rem and rem.degree(v) >= dg:
        d = rem.degree(v)
        lr = _coefficients_in(rem, v)[d]
        rem = lc * rem - _shift(lr * g, v, d - dg)
    return rem


def _gcd_int(f: Polynomial, g: Polynomial) -> Polynomial:
    """Gcd of two nonzero integer-coefficient polynomials, up to sign."""
    if f.is_constant() and g.is_constant():
        return Polynomial.constant(f.nvars, math.gcd(int(f.constant_value()),
                                                     int(g.constant_value())))
    v = min(f.variables() | g.variables())
    cf, cg = _content_in(f, v), _content_in(g, v)
    content = _gcd_int(cf, cg)
    pf, pg = divide_exact(f, cf), divide_exact(g, cg)
    if pf.degree(v) < pg.degree(v):
        pf, pg = pg, pf
    while pg.degree(v) > 0:
        rem = _pseudo_remainder(pf, pg, v)
        if rem.is_zero():
            return content * pg
        pf, pg = pg, divide_exact(rem, _content_in(rem, v))
    # The primitive parts are coprime in x_v.
    return content


def _integer_primitive(f: Polynomial) -> Polynomial:
    den = reduce(math.lcm, (c.denominator for c in f.terms.values()), 1)
    f = f.scale(den)
    return f.scale(Fraction(1, _integer_content(f)))


def gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Normalized greatest common divisor (see :func:`normalize`)."""
    f._check(g)
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if f.is_zero():
        return normalize(g)
    if g.is_zero():
        return normalize(f)
    return normalize(_gcd_int(_integer_primitive(f), _integer_primitive(g)))


def lcm(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ValueError("lcm of a zero polynomial")
    return normalize(divide_exact(f * g, gcd(f, g)))


def lcm3(f: Polynomial, g: Polynomial, h: Polynomial) -> Polynomial:
    return lcm(lcm(f, g), h)


def evaluate(f: Polynomial, values: Sequence, field=None):
    """``f(a)``; with a field, coefficients and values are mapped into it."""
    if len(values) != f.nvars:
        raise ValueError(f"need {f.nvars} values, got {len(values)}")
    if field is not None:
        values = [field(a) for a in values]
        total = field.zero
    else:
        values = [Fraction(a) for a in values]
        total = Fraction(0)
    for exps, c in f.terms.items():
        term = field(c) if field is not None else c
        for a, k in zip(values, exps):
            if k:
                term = term * a ** k
        total = total + term
    return total


def render(f: Polynomial) -> str:
    """Expanded text form, e.g. ``x1*x2*x4*x8*x9 - x1*x2*x6*x7*x9``."""
    if f.is_zero():
        return "0"
    out = []
    for k, (exps, c) in enumerate(f.sorted_terms()):
        factors = [f"x{v + 1}" if e == 1 else f"x{v + 1}^{e}"
                   for v, e in enumerate(exps) if e]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def to_json(f: Polynomial) -> list[dict]:
    return [{"coeff": str(c), "exps": list(e)} for e, c in f.sorted_terms()]


def from_json(nvars: int, data: list[dict]) -> Polynomial:
    return Polynomial(nvars, {tuple(t["exps"]): Fraction(t["coeff"]) for t in data})


def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def minor_polynomial(pat: Pattern, S: Matchbox, g: BipartiteGraph | None = None) -> Polynomial:
    """The symbolic minor of ``M(x)`` on the rows and columns used by ``S``.

    Rows are taken in ascending order, then the ``A`` columns ascending, then
    the ``B`` columns ascending.  The determinant is the signed sum over the
    perfect matchings of the submatrix's pattern.
    """
    g = g or build_graph(pat)
    rows = sorted(g.edge(l).row for l in S.edges)
    a_cols = sorted(g.edge(l).col for l in S.edges if g.edge(l).is_left)
    b_cols = sorted(g.edge(l).col for l in S.edges if not g.edge(l).is_left)
    col_pos = {("A", c): k for k, c in enumerate(a_cols)}
    col_pos.update({("B", c): len(a_cols) + k for k, c in enumerate(b_cols)})

    # Per row, the (column position, unknown) pairs inside the submatrix.
    options = [[(col_pos[g.edge(l).column_vertex], l) for l in g.row_adjacency[r - 1]
                if g.edge(l).column_vertex in col_pos] for r in rows]

    n = pat.n
    terms: dict[tuple[int, ...], int] = {}
    perm: list[int] = []
    chosen: list[int] = []
    used = [False] * len(rows)

    def expand(i: int) -> None:
        if i == len(rows):
            exps = [0] * n
            for l in chosen:
                exps[l - 1] = 1
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + _permutation_sign(perm)
            return
        for pos, l in options[i]:
            if used[pos]:
                continue
            used[pos] = True
            perm.append(pos)
            chosen.append(l)
            expand(i + 1)
            chosen.pop()
            perm.pop()
            used[pos] = False

    expand(0)
    result = Polynomial(n, terms)
    if result.is_zero():
        raise ConsistencyError("minor of a matchbox vanished")
    return result


def generic_polynomial(pat: Pattern, A: Matchbox, B: Matchbox,
                       g: BipartiteGraph | None = None) -> Polynomial:
    """The lcm of the minors of ``A``, ``B`` and ``merge(A, B)``."""
    g = g or build_graph(pat)
    return lcm3(minor_polynomial(pat, A, g), minor_polynomial(pat, B, g),
                minor_polynomial(pat, merge(g, A, B), g))
