"""The identification of Lambda^2 Q^4 with Q^6 under which the wedge pairing is Q,
and the flags (L, H) of Q^4 attached to isotropic planes.

Basis of Lambda^2 Q^4:
    u1 = e1^e2, u2 = e1^e3, u3 = e1^e4, u4 = e3^e4, u5 = e4^e2, u6 = e2^e3.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import Matrix, as_rational, kernel_matrix, row_basis, span_contains, span_equal
from .moment import Q, small_rational
from .poly import Ring

WEDGE_BASIS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))
TRIPLES = tuple(combinations(range(4), 3))


def _perm_sign(seq: Sequence[int]) -> int:
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def bivector(x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
    """Coordinates of x^y in the wedge basis."""
    return tuple(as_rational(x[i]) * as_rational(y[j]) - as_rational(x[j]) * as_rational(y[i])
                 for i, j in WEDGE_BASIS)


def wedge_pairing(alpha: Sequence, beta: Sequence) -> Fraction:
    """Coefficient of e1^e2^e3^e4 in alpha ^ beta."""
    total = Fraction(0)
    for a, (i, j) in zip(alpha, WEDGE_BASIS):
        for b, (k, l) in zip(beta, WEDGE_BASIS):
            if a and b:
                total += as_rational(a) * as_rational(b) * _perm_sign((i, j, k, l))
    return total


def wedge_gram() -> Matrix:
    units = [tuple(1 if k == i else 0 for k in range(6)) for i in range(6)]
    return Matrix([[wedge_pairing(a, b) for b in units] for a in units])


if wedge_gram() != Q:
    raise AssertionError("wedge basis does not realise Q")


def wedge3(v: Sequence, omega: Sequence) -> tuple[Fraction, ...]:
    """v ^ omega in Lambda^3, coordinates on e_i^e_j^e_k with i<j<k."""
    out = []
    for tri in TRIPLES:
        c = Fraction(0)
        for w, (i, j) in zip(omega, WEDGE_BASIS):
            if not w:
                continue
            for k in range(4):
                if v[k] and sorted((k, i, j)) == list(tri):
                    c += as_rational(v[k]) * as_rational(w) * _perm_sign((k, i, j))
        out.append(c)
    return tuple(out)


def wedge3_matrix(omega: Sequence) -> Matrix:
    """Matrix (4 x 4) of v -> v ^ omega."""
    cols = [wedge3(tuple(1 if k == i else 0 for k in range(4)), omega) for i in range(4)]
    return Matrix.from_columns(cols, nrows=4)


def derivation_matrix(b: Matrix) -> Matrix:
    """Matrix of x^y -> bx^y + x^by on Lambda^2 in the wedge basis."""
    cols = []
    for i, j in WEDGE_BASIS:
        x = b.col(i)
        y = b.col(j)
        ex = tuple(1 if k == i else 0 for k in range(4))
        ey = tuple(1 if k == j else 0 for k in range(4))
        cols.append(tuple(p + q for p, q in zip(bivector(x, ey), bivector(ex, y))))
    return Matrix.from_columns(cols, nrows=6)


def sl4_to_so6(b: Matrix) -> Matrix:
    """-D(b)^t where D is the derivation action; equal to Q D(b) Q.

    With this convention im A^t = im D(b), which for b = u phi is L^H.
    """
    if b.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    if b.trace() != 0:
        raise ValueError("sl4 element must have trace zero")
    return -derivation_matrix(b).T


@dataclass(frozen=True)
class FlagTriple:
    L: Matrix
    H: Matrix
    A4: Matrix | None = None

    def __post_init__(self):
        if self.L.rank() != 1 or self.H.rank() != 3:
            raise ValueError("need dim L = 1 and dim H = 3")
        if not span_contains(self.H, self.L):
            raise ValueError("L is not contained in H")
        if self.A4 is not None:
            if not chain_holds(self.A4, self.L, self.H):
                raise ValueError("im A4 in L in H in ker A4 fails")

    def to_json(self) -> dict:
        return {"L": self.L.to_json(), "H": self.H.to_json()}

    def __eq__(self, other) -> bool:
        return isinstance(other, FlagTriple) and span_equal(self.L, other.L) and span_equal(self.H, other.H)

    def __hash__(self) -> int:
        return hash((row_basis(self.L), row_basis(self.H)))


def chain_holds(a4: Matrix, L: Matrix, H: Matrix) -> bool:
    """im A4 in L in H in ker A4, with A4 of rank <= 1 and trace 0."""
    if a4.rank() > 1 or a4.trace() != 0:
        return False
    image = Matrix(a4.T.rows, ncols=4)  # columns of A4 as rows
    return (
        span_contains(L, image)
        and span_contains(H, L)
        and (a4 @ H.T).is_zero()
    )


def is_wedge_isotropic(w: Matrix) -> bool:
    return (w @ Q @ w.T).is_zero()


def _lines_of(omega: Sequence) -> Matrix:
    """ker(v -> v ^ omega)."""
    return kernel_matrix(wedge3_matrix(omega))


def certify_H(w: Matrix, H: Matrix) -> bool:
    """All 2x2 minors of [v^w1 | v^w2] vanish identically for v in H (symbolic
    in the coordinates of v along a basis of H), and every standard basis
    vector outside H gives rank 2."""
    ring = Ring(["s1", "s2", "s3"])
    s = [ring.gen(n) for n in ring.names]
    v = [sum((s[k] * H[k, i] for k in range(3)), ring.zero()) for i in range(4)]
    cols = []
    for omega in w.rows:
        m = wedge3_matrix(omega)
        cols.append([sum((v[i] * m[r, i] for i in range(4)), ring.zero()) for r in range(4)])
    for r1, r2 in combinations(range(4), 2):
        if cols[0][r1] * cols[1][r2] - cols[0][r2] * cols[1][r1]:
            return False
    for i in range(4):
        ei = tuple(1 if k == i else 0 for k in range(4))
        if span_contains(H, [ei]):
            continue
        if Matrix.from_columns([wedge3(ei, omega) for omega in w.rows], nrows=4).rank() != 2:
            return False
    return True


def plane_to_flags(w: Matrix) -> FlagTriple:
    """L = {v : v^W = 0}; H = {v : dim(v^W) <= 1}, the union of the planes
    of the decomposable elements of W."""
    if w.shape[1] != 6 or w.rank() != 2:
        raise ValueError("expected a 2-dimensional subspace of Lambda^2")
    if not is_wedge_isotropic(w):
        raise ValueError("plane is not isotropic for the wedge pairing")
    w = row_basis(w)
    stacked = Matrix.stack(*(wedge3_matrix(omega) for omega in w.rows))
    L = kernel_matrix(stacked)
    H = row_basis(Matrix.stack(*(_lines_of(omega) for omega in w.rows)))
    if L.nrows != 1 or H.nrows != 3 or not span_contains(H, L):
        raise ValueError(f"unexpected flag dimensions: dim L = {L.nrows}, dim H = {H.nrows}")
    if not certify_H(w, H):
        raise AssertionError("rank condition does not cut out H")
    return FlagTriple(row_basis(L), H)


def flags_to_plane(L: Matrix, H: Matrix) -> Matrix:
    if L.rank() != 1 or H.rank() != 3:
        raise ValueError("need dim L = 1 and dim H = 3")
    if not span_contains(H, L):
        raise ValueError("L is not contained in H")
    ell = row_basis(L).row(0)
    w = row_basis(Matrix([bivector(ell, h) for h in H.rows]))
    if w.nrows != 2 or not is_wedge_isotropic(w):
        raise AssertionError("L^H is not an isotropic plane")
    return w


# -- samplers ----------------------------------------------------------------------


def random_flag(rng: random.Random) -> tuple[Matrix, Matrix]:
    while True:
        ell = [small_rational(rng) for _ in range(4)]
        extra = [[small_rational(rng) for _ in range(4)] for _ in range(2)]
        H = Matrix([ell] + extra)
        if H.rank() == 3:
            return Matrix([ell]), H


def random_rank_one_nilpotent(rng: random.Random) -> tuple[Matrix, Matrix, Matrix]:
    """b = u phi with phi(u) = 0; returns (b, L_b, H_b)."""
    while True:
        u = [small_rational(rng) for _ in range(4)]
        phi = [small_rational(rng) for _ in range(4)]
        if not any(u) or not any(phi):
            continue
        k = next(i for i in range(4) if u[i])
        # adjust one coordinate of phi so that phi(u) = 0
        rest = sum(phi[i] * u[i] for i in range(4) if i != k)
        phi[k] = -rest / u[k]
        if not any(phi):
            continue
        b = Matrix([[ui * pj for pj in phi] for ui in u])
        return b, Matrix([u]), kernel_matrix(Matrix([phi]))
