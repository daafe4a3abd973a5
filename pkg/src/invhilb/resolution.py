"""Isotropic planes, the incidence variety {(A, W) : im A^t in W}, the kernel map
eta_1, the fibre E over a fixed plane and the ideals of the special subschemes.

Orthogonality here is always with respect to the pairing <p, q> = p^t Q q.
Subspaces of Q^6 are matrices whose rows span them.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .exact import Matrix, kernel, kernel_matrix, pfaffian4_entries, row_basis, span_contains, span_equal
from .moment import (
    Q,
    fibre_over_A0,
    in_zero_fibre,
    orbit_closure_membership,
    quotient_map,
    sample_sl2,
    symbolic_minors,
    symbolic_moment_equations,
)
from .poly import Poly, Ring, RewriteSystem, normal_form
from .sl2 import (
    TRUNCATION_MARGIN,
    IsotypicTable,
    check_equivariant_ideal,
    full_ring,
    hilbert_function,
    table_from_dimensions,
)


def _matrix(x) -> Matrix:
    return x.a if hasattr(x, "a") else x


def span(*vectors) -> Matrix:
    return Matrix(vectors, ncols=len(vectors[0]))


def e(i: int, n: int = 6) -> tuple[int, ...]:
    """1-based standard basis vector."""
    return tuple(1 if k == i - 1 else 0 for k in range(n))


W0 = span(e(1), e(2))


def q_orthocomplement(space: Matrix) -> Matrix:
    """{v : w^t Q v = 0 for all rows w}."""
    if space.nrows == 0:
        return Matrix.identity(space.ncols)
    return kernel_matrix(space @ Q)


def is_isotropic(w: Matrix) -> bool:
    if w.rank() < 2:
        raise ValueError("an isotropic plane needs rank 2")
    return (w @ Q @ w.T).is_zero()


def plane_action(h: Matrix, w: Matrix) -> Matrix:
    """Image of a plane under h, matching A -> h^t A h^{-t} on the quotient."""
    return w @ h.T.inverse()


def incidence_check(a, w: Matrix) -> bool:
    """im A^t (the row space of A) is contained in the row space of W."""
    return span_contains(w, _matrix(a))


@dataclass(frozen=True)
class IncidencePoint:
    a: Matrix
    w: Matrix

    def __post_init__(self):
        if not orbit_closure_membership(self.a):
            raise ValueError("A is not in the orbit closure")
        if not is_isotropic(self.w):
            raise ValueError("W is not isotropic")
        if not incidence_check(self.a, self.w):
            raise ValueError("im A^t is not contained in W")

    def to_json(self) -> dict:
        return {"A": self.a.to_json(), "W": self.w.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "IncidencePoint":
        return cls(Matrix.from_json(data["A"]), Matrix.from_json(data["W"]))


# -- eta_1 -------------------------------------------------------------------------


class Eta1Error(ValueError):
    pass


@dataclass(frozen=True)
class Eta1Result:
    kernel: Matrix
    w: Matrix
    samples_used: int

    def to_json(self) -> dict:
        return {"kernel": self.kernel.to_json(), "W": self.w.to_json(), "samples": self.samples_used}


MAX_SAMPLES = 6


def eta1_kernel(a, samples: Sequence[Matrix], sampler: Callable[[], Matrix] | None = None,
                max_samples: int = MAX_SAMPLES) -> Eta1Result:
    """Common kernel of fibre points over A and its Q-orthocomplement.

    The kernel must be 4-dimensional; if it is not, further points are drawn
    from ``sampler`` until ``max_samples`` have been used.
    """
    a = _matrix(a)
    pts = list(samples)

    def check(m: Matrix) -> None:
        if not in_zero_fibre(m) or quotient_map(m).a != a:
            raise Eta1Error("sample is not a fibre point over A")

    for m in pts:
        check(m)
    if not pts:
        raise Eta1Error("need at least one sample")
    ker = kernel_matrix(Matrix.stack(*pts))
    while ker.nrows != 4 and sampler is not None and len(pts) < max_samples:
        m = sampler()
        check(m)
        pts.append(m)
        ker = kernel_matrix(Matrix.stack(*pts))
    if ker.nrows != 4:
        raise Eta1Error(f"common kernel has dimension {ker.nrows} after {len(pts)} samples")
    w = row_basis(q_orthocomplement(ker))
    if not is_isotropic(w):
        raise Eta1Error("orthocomplement of the kernel is not isotropic")
    if not span_equal(w, a):
        raise Eta1Error("orthocomplement of the kernel differs from im A^t")
    return Eta1Result(row_basis(ker), w, len(pts))


def fibre_sampler(h: Matrix | None = None, seed=None) -> Callable[[], Matrix]:
    """Random points of the fibre over h^t A0 h^{-t} (over A0 when h is None)."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)

    def draw() -> Matrix:
        m = fibre_over_A0(sample_sl2(rng).matrix)
        return m if h is None else m @ h

    return draw


# -- the fibre E ---------------------------------------------------------------------


class FibreEError(ValueError):
    pass


@dataclass(frozen=True)
class FibreE:
    dimension: int
    basis: tuple[Matrix, ...]

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "basis": [b.to_json() for b in self.basis]}


def _unit(n: int, k: int) -> Matrix:
    return Matrix.elementary(n, k // n, k % n)


def fibre_E_linear_system(w0: Matrix) -> Matrix:
    """Constraint matrix on the 36 entries of A (row-major) for
    A in so(Q), im A^t in W, and A^t k = 0 for k in the Q-orthocomplement."""
    ann = kernel_matrix(w0)  # dot annihilator: rows of A must be orthogonal to it
    perp = q_orthocomplement(w0)

    def constraints(a: Matrix) -> list[Fraction]:
        out = list((a.T @ Q + Q @ a).entries())
        out += list((a @ ann.T).entries())
        out += list((a.T @ perp.T).entries())
        return out

    cols = [constraints(_unit(6, k)) for k in range(36)]
    return Matrix.from_columns(cols)


def _poly_matmul(x, y):
    n, m, p = len(x), len(y), len(y[0])
    return [[sum((x[i][k] * y[k][j] for k in range(m)), x[0][0] * 0) for j in range(p)] for i in range(n)]


def certify_family(basis: Sequence[Matrix]) -> bool:
    """A(t) = sum t_k B_k satisfies A(t)^2 = 0 and all 15 Pfaffians of Q A(t)
    vanish, as polynomial identities in the t_k."""
    names = [f"t{k + 1}" for k in range(len(basis))]
    ring = Ring(names)
    ts = [ring.gen(n) for n in names]
    a = [[sum((t * b[i, j] for t, b in zip(ts, basis)), ring.zero()) for j in range(6)] for i in range(6)]
    if any(p for row in _poly_matmul(a, a) for p in row):
        return False
    qa = _poly_matmul([[ring.const(x) for x in row] for row in Q.rows], a)
    for idx in combinations(range(6), 4):
        sub = [[qa[i][j] for j in idx] for i in idx]
        if pfaffian4_entries(sub):
            return False
    return True


def fibre_E_solver(w0: Matrix = W0) -> FibreE:
    if not is_isotropic(w0):
        raise FibreEError("plane is not isotropic")
    sol = kernel(fibre_E_linear_system(w0))
    basis = tuple(Matrix([v[6 * i:6 * i + 6] for i in range(6)]) for v in sol)
    if len(basis) != 1:
        raise FibreEError(f"fibre has dimension {len(basis)}, expected 1")
    if not certify_family(basis):
        raise FibreEError("family leaves the orbit closure")
    return FibreE(len(basis), basis)


# -- subscheme ideals ---------------------------------------------------------------


class ContainmentError(ValueError):
    pass


class CertificationError(ValueError):
    pass


def linear_forms(ring: Ring, v: Matrix) -> list[Poly]:
    """sum q_i x_{1i} and sum q_i x_{2i} for each row q of v."""
    out = []
    for r in (1, 2):
        for q in v.rows:
            p = ring.zero()
            for i, c in enumerate(q, start=1):
                if c:
                    p = p + ring.gen(f"x{r}{i}") * c
            out.append(p)
    return out


@dataclass(frozen=True)
class SubschemeIdeal:
    ring: Ring
    invariant: tuple[Poly, ...]
    v1: tuple[Poly, ...]

    @property
    def generators(self) -> list[Poly]:
        return list(self.invariant) + list(self.v1)

    def rewrite_system(self) -> RewriteSystem:
        return RewriteSystem.from_generators(self.ring, self.generators)

    def to_json(self) -> dict:
        return {"invariant": [str(p) for p in self.invariant], "V1": [str(p) for p in self.v1]}


def ideal_from_linear_space(v: Matrix) -> SubschemeIdeal:
    ring = full_ring()
    return SubschemeIdeal(ring, tuple(symbolic_minors().values()), tuple(linear_forms(ring, row_basis(v))))


def contains_moment_equations(ideal: SubschemeIdeal) -> bool:
    rs = ideal.rewrite_system()
    return all(normal_form(p, rs).is_zero() for p in symbolic_moment_equations())


def subscheme_ideal(a, w: Matrix) -> SubschemeIdeal:
    """Ideal of the subscheme over (0, W): all minors plus the linear forms of
    the Q-orthocomplement of W."""
    a = _matrix(a)
    if not a.is_zero():
        raise ValueError("symbolic ideals are only built over A = 0")
    if not is_isotropic(w):
        raise ValueError("W is not isotropic")
    if not incidence_check(a, w):
        raise ValueError("(A, W) is not an incidence point")
    ideal = ideal_from_linear_space(q_orthocomplement(w))
    if not contains_moment_equations(ideal):
        raise ContainmentError("X Q X^t is not contained in the ideal")
    return ideal


def standard_monomial_dimensions(rs: RewriteSystem, N: int) -> dict[int, dict[int, int]]:
    """Weight-graded dimensions of ring/(rules) by counting standard monomials
    over the variables that survive the linear substitutions."""
    ring = rs.ring
    free = [n for n in ring.names if n not in rs.substitutions]
    sub = ring.subring(free)
    lead = None
    if rs.quadric is not None:
        lead_exp, _ = rs.quadric
        lead = tuple(lead_exp[ring.index[n]] for n in free)
    dims: dict[int, dict[int, int]] = {}
    for n in range(N + 1):
        dims[n] = {}
        for mono in sub.monomials(n):
            if lead is not None and all(x >= y for x, y in zip(mono, lead)):
                continue
            wt = sub.weight(mono)
            dims[n][wt] = dims[n].get(wt, 0) + 1
    return dims


def certify_hilbert_function(ideal: SubschemeIdeal, N: int, margin: int = TRUNCATION_MARGIN) -> IsotypicTable:
    if not check_equivariant_ideal(ideal.generators):
        raise CertificationError("ideal is not SL2-stable")
    try:
        rs = ideal.rewrite_system()
    except ValueError as exc:
        raise CertificationError(str(exc)) from exc
    table = table_from_dimensions(standard_monomial_dimensions(rs, N), N)
    h = hilbert_function(table, margin)
    bad = [d for d in h.reliable() if h[d] != d + 1]
    if bad:
        raise CertificationError(f"h(d) != d+1 for d in {bad}")
    return table
