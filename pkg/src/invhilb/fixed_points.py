"""C*-fixed points: homogeneous invariant ideals built from a subspace V of
linear forms.

Convention: V is the span of the coefficient vectors q of the linear forms
X q, and W is its dot annihilator {w : v . w = 0 for v in V}.  For dim V = 4
the quotient has the right Hilbert function, and X Q X^t lies in the ideal
exactly when W is Q-isotropic.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .exact import Matrix, kernel_matrix, row_basis
from .moment import Q, sample_so6, small_rational, symbolic_moment_equations
from .poly import Poly, SpanMembership
from .resolution import (
    CertificationError,
    SubschemeIdeal,
    certify_hilbert_function,
    ideal_from_linear_space,
    plane_action,
)
from .sl2 import check_equivariant_ideal, full_ring, weight_dimensions


def dot_annihilator(v: Matrix) -> Matrix:
    return kernel_matrix(v)


@dataclass(frozen=True)
class FixedIdealDatum:
    v: Matrix

    def __post_init__(self):
        if self.v.shape[1] != 6 or self.v.rank() != 4:
            raise ValueError("V must be a 4-dimensional subspace of Q^6")

    @property
    def w(self) -> Matrix:
        return dot_annihilator(self.v)


def _as_matrix(v) -> Matrix:
    return v.v if isinstance(v, FixedIdealDatum) else v


def ideal_from_subspace(v: Matrix) -> SubschemeIdeal:
    """The 15 minors plus X q for every row q of v (any dimension)."""
    return ideal_from_linear_space(v)


def fixed_ideal(v) -> SubschemeIdeal:
    v = _as_matrix(v)
    FixedIdealDatum(v)
    ideal = ideal_from_subspace(v)
    if not homogeneity_audit(ideal):
        raise AssertionError("fixed ideal is not homogeneous")
    if not check_equivariant_ideal(ideal.generators):
        raise AssertionError("fixed ideal is not SL2-stable")
    return ideal


def homogeneity_audit(ideal) -> bool:
    gens = ideal.generators if isinstance(ideal, SubschemeIdeal) else list(ideal)
    return all(g.is_homogeneous() for g in gens)


@dataclass(frozen=True)
class HilbertVerdict:
    ok: bool
    reason: str
    h1: int

    def __bool__(self) -> bool:
        return self.ok


def hilbert_check(ideal: SubschemeIdeal, N: int = 6) -> HilbertVerdict:
    """h(d) = d + 1 on the certified window.  The degree-one piece is checked
    first: it must be exactly two copies of V1."""
    dims = weight_dimensions(ideal.ring, ideal.generators, 1)
    h1 = dims[1].get(1, 0) - dims[1].get(3, 0)
    if h1 < 2:
        return HilbertVerdict(False, "R1/I1 too small", h1)
    if h1 > 2:
        return HilbertVerdict(False, "R1/I1 too big", h1)
    certify_hilbert_function(ideal, N)
    return HilbertVerdict(True, "h(d) = d+1", h1)


def degree2_slice(ideal: SubschemeIdeal) -> list[Poly]:
    R = ideal.ring
    out = [g for g in ideal.generators if g.degree() == 2]
    for g in ideal.generators:
        if g.degree() == 1:
            out.extend(g * R.gen(n) for n in R.names)
    return out


@dataclass(frozen=True)
class Containment:
    contained: bool
    isotropic: bool


class ContainmentMismatch(AssertionError):
    pass


def quadric_containment(v) -> Containment:
    v = _as_matrix(v)
    ideal = fixed_ideal(v)
    slice2 = SpanMembership(degree2_slice(ideal))
    contained = all(slice2.contains(p) for p in symbolic_moment_equations())
    w = dot_annihilator(v)
    isotropic = (w @ Q @ w.T).is_zero()
    if contained != isotropic:
        raise ContainmentMismatch(f"containment {contained} but isotropy {isotropic}")
    return Containment(contained, isotropic)


# -- sampling -------------------------------------------------------------------------


def random_subspace(rng: random.Random, dim: int = 4) -> Matrix:
    while True:
        v = Matrix([[small_rational(rng) for _ in range(6)] for _ in range(dim)])
        if v.rank() == dim:
            return v


def random_isotropic_v(rng: random.Random) -> Matrix:
    """A 4-dim V whose dot annihilator is an SO(Q)-translate of <e4, e5>,
    presented in a scrambled basis."""
    base = Matrix([[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]])
    w = plane_action(sample_so6(rng).matrix, base)
    v = row_basis(dot_annihilator(w))
    while True:
        g = Matrix([[small_rational(rng) for _ in range(4)] for _ in range(4)])
        if g.rank() == 4:
            return g @ v


@dataclass(frozen=True)
class SweepRow:
    v: Matrix
    contained: bool
    isotropic: bool
    hilbert_ok: bool

    def to_json(self) -> dict:
        return {"V": self.v.to_json(), "contained": self.contained,
                "isotropic": self.isotropic, "hilbert_ok": self.hilbert_ok}


def sweep(seed=0, count: int = 50, N: int = 6) -> list[SweepRow]:
    """Half constructed isotropic instances, half generic random ones."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    rows = []
    for i in range(count):
        v = random_isotropic_v(rng) if i % 2 == 0 else random_subspace(rng)
        c = quadric_containment(v)
        try:
            ok = bool(hilbert_check(fixed_ideal(v), N))
        except CertificationError:
            ok = False
        rows.append(SweepRow(v, c.contained, c.isotropic, ok))
    return rows


def pullback(ideal: SubschemeIdeal, h: Matrix) -> list[Poly]:
    """Generators composed with X -> X h."""
    R = full_ring()
    sub = {}
    for r in (1, 2):
        for i in range(6):
            sub[f"x{r}{i + 1}"] = sum((R.gen(f"x{r}{k + 1}") * h[k, i] for k in range(6)), R.zero())
    return [g.subs(sub, target=R) for g in ideal.generators]
