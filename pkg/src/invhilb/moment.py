"""Moment map, quotient map and the rank-2 nilpotent orbit closure in so(Q).

Points of (Q^2)^6 are 2x6 matrices M.  The moment map is M Q M^t J and the
quotient map is nu(M) = M^t J M Q, whose (s, t) entry is the column minor
Lambda^{s, sigma(t)} with sigma swapping t and t +- 3.

SO(Q) acts on the zero fibre by right multiplication.  Because h Q = Q h^{-t}
for h in SO(Q), the induced action on the quotient is
nu(M h) = h^t nu(M) h^{-t}.
"""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import Matrix, as_rational, exp_nilpotent, kernel, minor2, principal_pfaffians
from .poly import Poly, RationalFunction
from .sl2 import full_ring

Q = Matrix([
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
])
J = Matrix([[0, 1], [-1, 0]])

A0 = Matrix.elementary(6, 0, 4, 1) + Matrix.elementary(6, 1, 3, -1)
BASE_POINT = Matrix.hstack(Matrix.identity(2), Matrix.zeros(2, 4))

RANK2 = "rank-2 orbit"
ZERO = "zero"
OUTSIDE = "outside"


def sigma(t: int) -> int:
    """1-based column swap t <-> t+3."""
    return t + 3 if t <= 3 else t - 3


def _check_config(m: Matrix) -> None:
    if m.shape != (2, 6):
        raise ValueError(f"expected a 2x6 matrix, got {m.shape}")


def moment_map(m: Matrix) -> Matrix:
    _check_config(m)
    return m @ Q @ m.T @ J


def moment_equations(m: Matrix) -> Matrix:
    """M Q M^t; it vanishes exactly when the moment map does."""
    _check_config(m)
    return m @ Q @ m.T


def in_zero_fibre(m: Matrix) -> bool:
    return moment_equations(m).is_zero()


def minors(m) -> dict[tuple[int, int], object]:
    """All Lambda^{s,t}, 1 <= s < t <= 6, of a 2x6 array."""
    return {(s, t): minor2(m, s, t) for s, t in combinations(range(1, 7), 2)}


def _lam(m, s: int, t: int):
    if s == t:
        return m[0][0] * 0
    return minor2(m, s, t)


def block_formula(m) -> list[list]:
    """nu(M) assembled from column minors, entry (s,t) = Lambda^{s, sigma(t)}.

    Block form, with i, j in 1..3:
        [[Lambda^{i,3+j},   Lambda^{i,j}  ],
         [Lambda^{3+i,3+j}, Lambda^{3+i,j}]]
    """
    return [[_lam(m, s, sigma(t)) for t in range(1, 7)] for s in range(1, 7)]


def block_formula_transposed_corner(m) -> list[list]:
    """Variant with the bottom-right block written as Lambda^{j,3+i}.

    Kept only so the test-suite can show it disagrees with M^t J M Q.
    """
    out = block_formula(m)
    for i in range(1, 4):
        for j in range(1, 4):
            out[2 + i][2 + j] = _lam(m, j, 3 + i)
    return out


@dataclass(frozen=True)
class Membership:
    member: bool
    stratum: str
    failing: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.member


def in_so_q(a: Matrix) -> bool:
    return (a.T @ Q + Q @ a).is_zero()


def orbit_closure_membership(a: Matrix) -> Membership:
    if a.shape != (6, 6):
        raise ValueError("expected a 6x6 matrix")
    failing = []
    so = in_so_q(a)
    if not so:
        failing.append("so6")
    if not (a @ a).is_zero():
        failing.append("square-zero")
    r = a.rank()
    if r > 2:
        failing.append("rank")
    if so:
        pf = principal_pfaffians(Q @ a)
        if any(v != 0 for v in pf.values()):
            failing.append("pfaffians")
    else:
        failing.append("pfaffians")
    if failing:
        return Membership(False, OUTSIDE, tuple(failing))
    return Membership(True, ZERO if r == 0 else RANK2, ())


@dataclass(frozen=True)
class OrbitElement:
    a: Matrix
    stratum: str

    def to_json(self) -> dict:
        return {"A": self.a.to_json(), "stratum": self.stratum}

    @classmethod
    def from_json(cls, data: dict) -> "OrbitElement":
        return cls(Matrix.from_json(data["A"]), data["stratum"])


def orbit_element(a: Matrix) -> OrbitElement:
    return OrbitElement(a, orbit_closure_membership(a).stratum)


def quotient_map(m: Matrix) -> OrbitElement:
    _check_config(m)
    a = m.T @ J @ m @ Q
    if Matrix(block_formula(m.rows)) != a:
        raise AssertionError("block formula disagrees with M^t J M Q")
    if not in_zero_fibre(m):
        warnings.warn("point is not in the zero fibre of the moment map", stacklevel=2)
        return OrbitElement(a, OUTSIDE)
    return orbit_element(a)


# -- group samples ---------------------------------------------------------------


@dataclass(frozen=True)
class GroupSample:
    matrix: Matrix
    word: tuple[str, ...] = field(default_factory=tuple)


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def small_rational(rng: random.Random, nonzero: bool = False, bound: int = 3) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
        if x or not nonzero:
            return x


def sample_sl2(seed=None) -> GroupSample:
    rng = _rng(seed)
    a = small_rational(rng, nonzero=True)
    b = small_rational(rng)
    c = small_rational(rng)
    g = Matrix([[a, b], [c, (1 + b * c) / a]])
    if g.det() != 1:
        raise AssertionError("SL2 sample has determinant != 1")
    return GroupSample(g, (f"a={a}", f"b={b}", f"c={c}"))


def so_q_root_vectors() -> dict[str, Matrix]:
    """The twelve square-zero root vectors of so(Q), labelled by type and
    1-based indices."""
    e = Matrix.elementary
    out = {}
    for i in range(3):
        for j in range(3):
            if i != j:
                out[f"A{i + 1}{j + 1}"] = e(6, i, j) - e(6, j + 3, i + 3)
    for i, j in combinations(range(3), 2):
        out[f"B{i + 1}{j + 1}"] = e(6, i, j + 3) - e(6, j, i + 3)
        out[f"C{i + 1}{j + 1}"] = e(6, i + 3, j) - e(6, j + 3, i)
    return out


ROOT_VECTORS = so_q_root_vectors()


def is_orthogonal(g: Matrix) -> bool:
    return g.T @ Q @ g == Q


def sample_so6(seed=None, min_len: int = 3, max_len: int = 8) -> GroupSample:
    rng = _rng(seed)
    labels = sorted(ROOT_VECTORS)
    g = Matrix.identity(6)
    word = []
    for _ in range(rng.randint(min_len, max_len)):
        lab = rng.choice(labels)
        t = small_rational(rng, nonzero=True, bound=2)
        g = g @ exp_nilpotent(ROOT_VECTORS[lab] * t)
        word.append(f"exp({t}*{lab})")
    if not is_orthogonal(g) or g.det() != 1:
        raise AssertionError("SO6 sample is not in SO(Q)")
    return GroupSample(g, tuple(word))


def so6_action(h: Matrix, a: Matrix) -> Matrix:
    """The action on the quotient induced by M -> M h."""
    ht = h.T
    return ht @ a @ ht.inverse()


def induced_action(h: Matrix, fibre_points: Sequence[Matrix]) -> Matrix:
    """nu(M h) for each given fibre point; all must agree."""
    images = {quotient_map(m @ h).a for m in fibre_points}
    if len(images) != 1:
        raise ValueError("fibre points give different images: action not well defined")
    return images.pop()


# -- fibres ----------------------------------------------------------------------


def fibre_over_A0(g: Matrix) -> Matrix:
    if g.shape != (2, 2) or g.det() != 1:
        raise ValueError("fibre_over_A0 needs g in SL2 (det 1)")
    return Matrix.hstack(g, Matrix.zeros(2, 4))


def transport(m: Matrix, h: Matrix) -> Matrix:
    """Move a fibre point over A to one over so6_action(h, A)."""
    return m @ h


@dataclass
class EliminationReport:
    pivot: str
    lam12: Fraction
    identities: list[tuple[str, str, bool]] = field(default_factory=list)
    ok: bool = False
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "pivot": self.pivot,
            "lambda12": str(self.lam12),
            "identities": [{"identity": n, "residual": r, "zero": z} for n, r, z in self.identities],
            "ok": self.ok,
            "error": self.error,
        }


class DivisionGuardError(ArithmeticError):
    pass


def fibre_elimination_check(lam12=1, pivot: str = "x11") -> EliminationReport:
    """Solve the fibre equations Lambda^{1,2} = lam12, Lambda^{i,j} = 0 over the
    field of rational functions in the three free coordinates.

    With pivot x11: x22 = (lam12 + x12 x21)/x11; Lambda^{1,j} = 0 gives
    x2j = x1j x21/x11 and then Lambda^{2,j} = -lam12 x1j/x11 forces x1j = 0.
    Pivot x12 is the mirror image.  Raises DivisionGuardError if a coefficient
    that must be inverted vanishes identically.
    """
    lam = as_rational(lam12)
    R = full_ring()
    x = {n: R.gen(n) for n in R.names}
    rep = EliminationReport(pivot, lam)
    if pivot == "x11":
        k, other = 1, 2
        solved = {"x22": RationalFunction(R.const(lam) + x["x12"] * x["x21"], x["x11"])}
    elif pivot == "x12":
        k, other = 2, 1
        solved = {"x21": RationalFunction(x["x11"] * x["x22"] - R.const(lam), x["x12"])}
    else:
        raise ValueError("pivot must be x11 or x12")
    rows = [[x[f"x1{j}"] for j in range(1, 7)], [x[f"x2{j}"] for j in range(1, 7)]]

    def value(p: Poly) -> RationalFunction:
        out = p.subs(solved)
        return out if isinstance(out, RationalFunction) else RationalFunction(out)

    check = value(minor2(rows, 1, 2)) - R.const(lam)
    rep.identities.append(("Lambda^{1,2} - lambda", str(check), check.is_zero()))
    piv = x[f"x1{k}"]
    zero_vars: dict[str, Poly] = {}
    for j in range(3, 7):
        x1j, x2j = f"x1{j}", f"x2{j}"
        # Lambda^{k,j} = x1k x2j - x1j x2k = 0, and x2k is free
        x2j_expr = RationalFunction(x[x1j] * x[f"x2{k}"], piv)
        sub = dict(solved)
        sub[x2j] = x2j_expr
        lam_other = minor2(rows, other, j).subs(sub)
        lam_other = lam_other if isinstance(lam_other, RationalFunction) else RationalFunction(lam_other)
        coeff = lam_other.num.diff(x1j)
        remainder = lam_other.num - coeff * x[x1j]
        if coeff.is_zero() or not remainder.is_zero():
            rep.error = f"cannot solve Lambda^{{{other},{j}}} = 0 for {x1j}: coefficient vanishes"
            raise DivisionGuardError(rep.error)
        # coeff * x1j / den = 0 with coeff != 0 forces x1j = 0
        zero_vars[x1j] = R.zero()
        rep.identities.append((f"{x1j} = 0", str(remainder), True))
        x2j_val = x2j_expr.num.subs({x1j: R.zero()})
        rep.identities.append((f"{x2j} = 0", str(x2j_val), x2j_val.is_zero()))
        zero_vars[x2j] = R.zero()
    final = dict(solved)
    final.update(zero_vars)
    names = ["(MQM^t)_11", "(MQM^t)_12", "(MQM^t)_22"]
    mqm = _symbolic_mqm(rows)
    for name, p in zip(names, mqm):
        v = p.subs(final)
        v = v if isinstance(v, RationalFunction) else RationalFunction(v)
        rep.identities.append((name, str(v), v.is_zero()))
    rep.ok = all(z for _, _, z in rep.identities)
    return rep


def _symbolic_mqm(rows) -> list[Poly]:
    x1, x2 = rows
    e11 = sum((x1[i] * x1[i + 3] for i in range(3)), x1[0] * 0) * 2
    e12 = sum((x1[i] * x2[i + 3] + x1[i + 3] * x2[i] for i in range(3)), x1[0] * 0)
    e22 = sum((x2[i] * x2[i + 3] for i in range(3)), x1[0] * 0) * 2
    return [e11, e12, e22]


def symbolic_moment_equations() -> list[Poly]:
    """The three entries of X Q X^t in the full coordinate ring."""
    R = full_ring()
    rows = [[R.gen(f"x1{j}") for j in range(1, 7)], [R.gen(f"x2{j}") for j in range(1, 7)]]
    return _symbolic_mqm(rows)


def symbolic_minors() -> dict[tuple[int, int], Poly]:
    R = full_ring()
    rows = [[R.gen(f"x1{j}") for j in range(1, 7)], [R.gen(f"x2{j}") for j in range(1, 7)]]
    return minors(rows)


# -- the fibre over zero -----------------------------------------------------------


@dataclass(frozen=True)
class FibreDimensionReport:
    rank: int
    projective_dimension: int
    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]
    generic: bool
    attempts: int

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "projective_dimension": self.projective_dimension,
            "u": [str(x) for x in self.u],
            "v": [str(x) for x in self.v],
            "generic": self.generic,
            "attempts": self.attempts,
        }


def rank_one_jacobian(u: Sequence, v: Sequence) -> Matrix:
    """Differential of (u, v) -> u v^t on Q^2 x T_v(quadric), as a 12 x 7 matrix.

    Columns: du = e_1, e_2, then a basis of {w : v^t Q w = 0}.
    """
    u = [as_rational(x) for x in u]
    v = [as_rational(x) for x in v]
    if sum(v[i] * v[i + 3] for i in range(3)) != 0:
        raise ValueError("v is not isotropic")
    tangent = kernel(Matrix([Q.apply(v)]))
    cols = []
    for k in range(2):
        du = [1 if i == k else 0 for i in range(2)]
        cols.append([du[r] * v[c] for r in range(2) for c in range(6)])
    for w in tangent:
        cols.append([u[r] * w[c] for r in range(2) for c in range(6)])
    return Matrix.from_columns(cols, nrows=12)


def random_isotropic_vector(rng: random.Random) -> tuple[Fraction, ...]:
    """A nonzero v with v^t Q v = 0: choose v1..v5 freely and solve for v6 when
    possible, otherwise retry."""
    while True:
        v = [small_rational(rng) for _ in range(5)]
        if v[2] == 0:
            continue
        v6 = -(v[0] * v[3] + v[1] * v[4]) / v[2]
        vec = tuple(v + [v6])
        if any(vec):
            return vec


def fibre_over_zero_dimension(u: Sequence = (1, 2), v: Sequence = (1, 0, 0, 0, 0, 0),
                              seed=None, retries: int = 5) -> FibreDimensionReport:
    """Jacobian rank of the rank-one isotropic parametrization of nu^{-1}(0).

    A base point with u = 0 or v = 0 is degenerate; it is replaced by random
    generic points (at most ``retries`` times) when a seed is supplied and
    flagged otherwise.
    """
    u = tuple(as_rational(x) for x in u)
    v = tuple(as_rational(x) for x in v)
    attempts = 1
    generic = any(u) and any(v)
    rng = None if seed is None else _rng(seed)
    while not generic and rng is not None and attempts <= retries:
        u = (small_rational(rng, True), small_rational(rng))
        v = random_isotropic_vector(rng)
        attempts += 1
        generic = any(u) and any(v)
    r = rank_one_jacobian(u, v).rank()
    return FibreDimensionReport(r, r - 1, u, v, bool(generic), attempts)
