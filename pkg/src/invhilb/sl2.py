"""SL2 weight gradings, isotypic tables and Hilbert functions of graded quotients.

The lowering operator E sends x_{1i} to x_{2i}; this is the derivative of the
unipotent part of g acting by g.x_{1i} = g11 x_{1i} + g12 x_{2i}.  With H the
weight operator (x_{1i} has weight +1, x_{2i} weight -1) one gets
[H,E] = -2E, [H,F] = 2F and F∘E - E∘F = H.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .poly import Exponent, Poly, Ring, coefficient_matrix, eliminate_linear, in_span

DEFAULT_TRUNCATION = 8
TRUNCATION_CAP = 12
TRUNCATION_MARGIN = 2


def lower(p: Poly) -> Poly:
    """E: x_{1i} -> x_{2i}, x_{2i} -> 0."""
    r = p.ring
    return p.derivation({u: r.gen(l) for u, l in r.pairs})


def raise_(p: Poly) -> Poly:
    """F: x_{2i} -> x_{1i}, x_{1i} -> 0."""
    r = p.ring
    return p.derivation({l: r.gen(u) for u, l in r.pairs})


def weight_op(p: Poly) -> Poly:
    """H: multiply each monomial by its weight."""
    return Poly(p.ring, {e: c * p.ring.weight(e) for e, c in p.terms.items()})


E, F, H = lower, raise_, weight_op


def _check_generators(gens: Sequence[Poly]) -> None:
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")
        if not g.is_weight_homogeneous():
            raise ValueError(f"generator {g} is not weight-homogeneous")


def _slice_rank(ring: Ring, gens: Sequence[Poly], n: int, w: int, mons: list[Exponent]) -> int:
    rows = []
    for g in gens:
        dg = g.degree()
        if dg > n:
            continue
        wg = g.weight()
        for m in ring.monomials(n - dg):
            if ring.weight(m) + wg == w:
                rows.append(g * Poly(ring, {m: 1}))
    if not rows:
        return 0
    return coefficient_matrix(rows, mons).rank()


def weight_dimensions(ring: Ring, generators: Sequence[Poly], N: int) -> dict[int, dict[int, int]]:
    """dims[n][w] = dimension of the weight-w part of the degree-n piece of
    ring/(generators), for 0 <= n <= N."""
    if N > TRUNCATION_CAP:
        raise ValueError(f"truncation degree {N} exceeds cap {TRUNCATION_CAP}")
    gens = [g for g in generators if g]
    _check_generators(gens)
    elim = eliminate_linear(ring, gens)
    red = elim.reduced_ring
    rest = list(elim.residual)
    _check_generators(rest)
    if any(g.degree() == 0 for g in rest):
        return {n: {} for n in range(N + 1)}
    dims: dict[int, dict[int, int]] = {}
    for n in range(N + 1):
        dims[n] = {}
        for w, mons in sorted(red.monomials_by_weight(n).items()):
            dims[n][w] = len(mons) - _slice_rank(red, rest, n, w, mons)
    return dims


@dataclass(frozen=True)
class IsotypicTable:
    N: int
    mult: tuple[tuple[int, ...], ...]  # mult[d][n]

    def degree_dimension(self, n: int) -> int:
        return sum(self.mult[d][n] * (d + 1) for d in range(self.N + 1))

    def to_json(self) -> dict:
        return {"N": self.N, "mult": [list(r) for r in self.mult]}

    @classmethod
    def from_json(cls, data: dict) -> "IsotypicTable":
        return cls(int(data["N"]), tuple(tuple(int(x) for x in r) for r in data["mult"]))

    @classmethod
    def empty(cls, N: int = 0) -> "IsotypicTable":
        return cls(N, tuple((0,) * (N + 1) for _ in range(N + 1)))


def table_from_dimensions(dims: dict[int, dict[int, int]], N: int) -> IsotypicTable:
    mult = [[0] * (N + 1) for _ in range(N + 1)]
    for n in range(N + 1):
        dn = dims.get(n, {})
        if any(dn.get(w, 0) != dn.get(-w, 0) for w in dn):
            raise ValueError(f"weight spaces in degree {n} are not symmetric: ideal is not SL2-stable")
        for d in range(N + 1):
            m = dn.get(d, 0) - dn.get(d + 2, 0)
            if m < 0:
                raise ValueError(f"negative multiplicity of V_{d} in degree {n}: ideal is not SL2-stable")
            mult[d][n] = m
    return IsotypicTable(N, tuple(tuple(r) for r in mult))


def isotypic_table(ring: Ring, generators: Sequence[Poly], N: int) -> IsotypicTable:
    return table_from_dimensions(weight_dimensions(ring, generators, N), N)


@dataclass(frozen=True)
class HilbertFunction:
    values: dict[int, int]
    limited: frozenset[int]  # degrees where the window may undercount

    def __getitem__(self, d: int) -> int:
        return self.values.get(d, 0)

    def to_json(self) -> dict:
        return {str(d): h for d, h in sorted(self.values.items())}

    def reliable(self) -> list[int]:
        return [d for d in sorted(self.values) if d not in self.limited]


def hilbert_function(t: IsotypicTable, margin: int = TRUNCATION_MARGIN) -> HilbertFunction:
    values = {d: sum(t.mult[d]) for d in range(t.N + 1)}
    limited = frozenset(d for d in values if d > t.N - margin)
    return HilbertFunction(values, limited)


def expected_table(N: int) -> IsotypicTable:
    """The table of the decomposition (n+1)V_n in degree n."""
    return IsotypicTable(N, tuple(tuple(n + 1 if d == n else 0 for n in range(N + 1)) for d in range(N + 1)))


def check_equivariant_ideal(generators: Sequence[Poly]) -> bool:
    """E(g) and F(g) lie in the span of the generators of the same degree."""
    gens = [g for g in generators if g]
    by_degree: dict[int, list[Poly]] = {}
    for g in gens:
        by_degree.setdefault(g.degree(), []).append(g)
    for g in gens:
        same = by_degree[g.degree()]
        for img in (lower(g), raise_(g)):
            if img and not in_span(img, same):
                return False
    return True


def full_ring(k: int = 6) -> Ring:
    """Coordinate ring of k copies of the plane: x11..x1k, x21..x2k."""
    return Ring.from_pairs([(f"x1{i}", f"x2{i}") for i in range(1, k + 1)])


def abcd_ring() -> Ring:
    """Q[a,b,c,d] with (a,c) and (b,d) V1 pairs."""
    return Ring.from_pairs([("a", "c"), ("b", "d")])

