"""Equivariant tangent space Hom^{SL2}(I/I^2, R/I) at the special subscheme over
(0, W), by direct linear algebra.

R/I is Q[a,b,c,d]/(ad - bc).  I/I^2 is generated by four V1 pairs of linear
forms and the invariant z = ad - bc; the only relations needed are the three
entries of X Q X^t read modulo I^2.  An equivariant map sends a V1 pair to
(alpha a + beta b, alpha c + beta d) and z to a constant gamma, since R/I
contains V1 only in degree 1 (twice) and V0 only in degree 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Matrix, kernel, row_basis, span_contains
from .moment import A0, Q
from .poly import Poly, Ring, RewriteSystem, coefficient_matrix, normal_form, support
from .resolution import SubschemeIdeal, is_isotropic, q_orthocomplement, subscheme_ideal
from .sl2 import abcd_ring, check_equivariant_ideal, isotypic_table, lower, raise_

TARGET = ("a", "b", "c", "d")


class TangentError(ValueError):
    pass


def problem_ring(labels: Sequence[str]) -> Ring:
    pairs = [(f"x1{l}", f"x2{l}") for l in labels] + [("a", "c"), ("b", "d")]
    return Ring.from_pairs(pairs, extra=["z"])


@dataclass
class EquivariantHomProblem:
    """Generator blocks ``labels`` (V1 pairs x1<label>, x2<label>) plus z, and
    relations that are bilinear in the generator symbols and a, b, c, d."""

    labels: tuple[str, ...]
    relations: tuple[Poly, ...]
    ring: Ring = field(init=False)

    def __post_init__(self):
        self.ring = problem_ring(self.labels)
        self.relations = tuple(r.to_ring(self.ring) if r.ring != self.ring else r for r in self.relations)
        self.validate()

    @property
    def symbols(self) -> list[str]:
        return [s for l in self.labels for s in (f"x1{l}", f"x2{l}")] + ["z"]

    def validate(self) -> None:
        syms = set(self.symbols)
        for r in self.relations:
            if not r.is_weight_homogeneous():
                raise TangentError(f"relation {r} is not weight-homogeneous")
            for e in r.terms:
                used = [self.ring.names[i] for i, k in enumerate(e) if k]
                if sum(1 for n in used if n in syms) != 1 or sum(e[self.ring.index[n]] for n in used if n in syms) != 1:
                    raise TangentError(f"relation {r} is not linear in the generators")
        if not check_equivariant_ideal(list(self.relations)):
            raise TangentError("relations are not closed under E and F")
        z = abcd_ring()
        zq = z.gen("a") * z.gen("d") - z.gen("b") * z.gen("c")
        if lower(zq) or raise_(zq):
            raise TangentError("z is not invariant")

    def blocks(self) -> list[str]:
        return list(self.labels) + ["z"]

    def block_of(self, symbol: str) -> str:
        return "z" if symbol == "z" else symbol[2:]


def w0_problem() -> EquivariantHomProblem:
    """The problem at the subscheme over (0, W0), written out by hand."""
    R = problem_ring(("1", "2", "3", "6"))
    g = R.gen
    a, b, c, d = (g(n) for n in TARGET)
    rels = (
        g("x11") * a + g("x12") * b,
        g("x11") * c + g("x12") * d + g("x21") * a + g("x22") * b,
        g("x21") * c + g("x22") * d,
    )
    return EquivariantHomProblem(("1", "2", "3", "6"), rels)


# -- building the problem from an ideal ---------------------------------------------


def adapted_basis(w: Matrix) -> Matrix:
    """Columns w1, w2, k1, k2, c1, c2 with W = <w1, w2>, W^perp = W + <k1, k2>,
    <c_i, w_j> = delta_ij, C = <c1, c2> isotropic and orthogonal to K."""
    w = row_basis(w)
    if w.nrows != 2 or not is_isotropic(w):
        raise TangentError("W must be an isotropic plane")
    perp = q_orthocomplement(w)
    ks = []
    cur = w
    for v in perp.rows:
        if not span_contains(cur, [v]):
            ks.append(v)
            cur = Matrix.stack(cur, Matrix([v]))
    k = Matrix(ks, ncols=6)
    if k.nrows != 2:
        raise TangentError("could not complete W inside its orthocomplement")
    # c in K^perp with w_j^t Q c = delta_ij
    system = Matrix.stack(w @ Q, k @ Q)
    cs = []
    for i in range(2):
        rhs = [1 if j == i else 0 for j in range(2)] + [0, 0]
        aug = Matrix.hstack(system, Matrix([[x] for x in rhs]))
        sol = kernel(aug)
        # kernel vectors with last coordinate nonzero give solutions
        v = next(s for s in sol if s[-1] != 0)
        cs.append([-x / v[-1] for x in v[:-1]])
    c1, c2 = cs
    w1, w2 = w.row(0), w.row(1)

    def pair(x, y):
        return sum(x[i] * y[(i + 3) % 6] for i in range(6))

    c1 = [x - pair(c1, c1) / 2 * y for x, y in zip(c1, w1)]
    c2 = [x - pair(c2, c2) / 2 * y for x, y in zip(c2, w2)]
    c2 = [x - pair(c1, c2) * y for x, y in zip(c2, w1)]
    return Matrix.from_columns([w1, w2, k.row(0), k.row(1), c1, c2], nrows=6)


ADAPTED_LABELS = ("w1", "w2", "k1", "k2")


def adapted_name(r: int, p: int) -> tuple[str, bool]:
    """Name of y_{r,p+1} (row r, adapted column p) and whether it is a generator."""
    if p < 4:
        return f"x{r}{ADAPTED_LABELS[p]}", True
    return {(1, 4): "a", (1, 5): "b", (2, 4): "c", (2, 5): "d"}[(r, p)], False


def problem_from_plane(w: Matrix) -> tuple[EquivariantHomProblem, Matrix]:
    """Relations in coordinates Y = X T adapted to W; returns the problem and T."""
    t = adapted_basis(w)
    gram = t.T @ Q @ t
    qp = gram.inverse()  # X Q X^t = Y (T^{-1} Q T^{-t}) Y^t and T^{-1} Q T^{-t} = gram^{-1}
    R = problem_ring(ADAPTED_LABELS)
    rels = []
    for r, s in ((1, 1), (1, 2), (2, 2)):
        rel = R.zero()
        for p in range(6):
            for q in range(6):
                coef = qp[p, q]
                if not coef:
                    continue
                (n1, g1), (n2, g2) = adapted_name(r, p), adapted_name(s, q)
                if g1 and g2:
                    continue  # lies in I^2
                if not g1 and not g2:
                    raise TangentError("complement block of the form does not vanish")
                rel = rel + R.gen(n1) * R.gen(n2) * coef
        rels.append(rel)
    return EquivariantHomProblem(ADAPTED_LABELS, tuple(rels)), t


def plane_of_ideal(ideal: SubschemeIdeal) -> Matrix:
    """Recover W from the linear generators: they are X q for q in W^perp."""
    rows = []
    for p in ideal.v1:
        if all(n.startswith("x1") for n in p.variables()):
            rows.append([p.coefficient(ideal.ring.gen(f"x1{i}").leading_monomial()) for i in range(1, 7)])
    perp = row_basis(Matrix(rows, ncols=6))
    if perp.nrows != 4:
        raise TangentError("ideal does not come from an isotropic plane")
    return row_basis(q_orthocomplement(perp))


def problem_from_ideal(ideal: SubschemeIdeal) -> EquivariantHomProblem:
    w = plane_of_ideal(ideal)
    problem, t = problem_from_plane(w)
    # the residual quadric of the ideal must become a multiple of ad - bc
    tinv = t.inverse()
    Y = problem.ring
    sub = {}
    for r in (1, 2):
        for i in range(6):
            expr = Y.zero()
            for p in range(6):
                if tinv[p, i]:
                    expr = expr + Y.gen(adapted_name(r, p)[0]) * tinv[p, i]
            sub[f"x{r}{i + 1}"] = expr
    drop = {s: Y.zero() for s in problem.symbols if s != "z"}
    zq = Y.gen("a") * Y.gen("d") - Y.gen("b") * Y.gen("c")
    for g in ideal.generators:
        img = g.subs(sub, target=Y).subs(drop)
        if img and not (img.degree() == 2 and _proportional(img, zq)):
            raise TangentError(f"generator {g} does not reduce to a multiple of ad - bc")
    return problem


def _proportional(p: Poly, q: Poly) -> bool:
    mons = support([p, q])
    return coefficient_matrix([p, q], mons).rank() == 1


# -- target spaces --------------------------------------------------------------------


@dataclass(frozen=True)
class TargetReport:
    N: int
    v1_degrees: dict[int, int]
    v0_degrees: dict[int, int]
    ok: bool

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "V1": {str(k): v for k, v in self.v1_degrees.items()},
            "V0": {str(k): v for k, v in self.v0_degrees.items()},
            "ok": self.ok,
        }


def target_spaces(N: int = 6, quadric: bool = True, strict: bool = True) -> TargetReport:
    R = abcd_ring()
    a, b, c, d = R.gens()
    t = isotypic_table(R, [a * d - b * c] if quadric else [], N)
    v1 = {n: t.mult[1][n] for n in range(N + 1) if t.mult[1][n]}
    v0 = {n: t.mult[0][n] for n in range(N + 1) if t.mult[0][n]}
    ok = v1 == ({1: 2} if N >= 1 else {}) and v0 == {0: 1}
    if strict and not ok:
        raise TangentError(f"unexpected isotypic components: V1 {v1}, V0 {v0}")
    return TargetReport(N, v1, v0, ok)


# -- the solve --------------------------------------------------------------------------


@dataclass
class TangentSolution:
    dimension: int
    basis: list[dict[str, Poly]]
    unknowns: list[str]
    vectors: list[tuple[Fraction, ...]]
    free_parameters: dict[str, int]
    pattern: list[int]
    residuals: list[str]

    def to_json(self) -> dict:
        return {
            "tangent_dim": self.dimension,
            "free_parameters": dict(self.free_parameters),
            "relation_residuals": list(self.residuals),
            "basis": [{k: str(v) for k, v in b.items()} for b in self.basis],
        }


def _images(problem: EquivariantHomProblem, values: dict[str, Fraction]) -> dict[str, Poly]:
    R = problem.ring
    a, b, c, d = (R.gen(n) for n in TARGET)
    out = {}
    for l in problem.labels:
        al, be = values.get(f"alpha{l}", 0), values.get(f"beta{l}", 0)
        out[f"x1{l}"] = a * al + b * be
        out[f"x2{l}"] = c * al + d * be
    out["z"] = R.const(values.get("gamma", 0))
    return out


def _target_rules() -> tuple[Ring, RewriteSystem]:
    T = abcd_ring()
    a, b, c, d = T.gens()
    return T, RewriteSystem.from_quadric(a * d - b * c)


def apply_assignment(problem: EquivariantHomProblem, images: dict[str, Poly], rel: Poly) -> Poly:
    T, rs = _target_rules()
    return normal_form(rel.subs(images).to_ring(T), rs)


def solve_equivariant_hom(problem: EquivariantHomProblem, N: int = 6) -> TangentSolution:
    target_spaces(N)
    unknowns = [f"{k}{l}" for l in problem.labels for k in ("alpha", "beta")] + ["gamma"]
    columns = []
    for u in unknowns:
        imgs = _images(problem, {u: Fraction(1)})
        columns.append([apply_assignment(problem, imgs, r) for r in problem.relations])
    # constraint rows: coefficient of each monomial of each relation
    rows = []
    for ri in range(len(problem.relations)):
        polys = [col[ri] for col in columns]
        for m in support(polys):
            rows.append([p.coefficient(m) for p in polys])
    system = Matrix(rows, ncols=len(unknowns))
    sol = kernel(system)
    if not sol:
        raise TangentError("constraint system has only the zero solution")
    basis = [_images(problem, dict(zip(unknowns, v))) for v in sol]
    residuals = []
    for b in basis:
        for r in problem.relations:
            res = apply_assignment(problem, b, r)
            if res:
                residuals.append(str(res))
    free, pattern = _free_parameters(problem, unknowns, system)
    return TangentSolution(len(sol), basis, unknowns, sol, free, pattern, residuals)


def _free_parameters(problem: EquivariantHomProblem, unknowns: list[str], system: Matrix):
    """Solution dimension per connected component of the coupling graph
    (blocks are coupled when they occur in a common relation)."""
    blocks = problem.blocks()
    parent = {b: b for b in blocks}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for r in problem.relations:
        bs = sorted({problem.block_of(s) for s in r.variables() if s in problem.symbols}, key=blocks.index)
        for other in bs[1:]:
            parent[find(other)] = find(bs[0])
    comps: dict[str, list[str]] = {}
    for b in blocks:
        comps.setdefault(find(b), []).append(b)
    free = {}
    pattern = []
    for root in sorted(comps, key=lambda x: blocks.index(comps[x][0])):
        members = comps[root]
        idx = [i for i, u in enumerate(unknowns) if (u == "gamma" and "z" in members)
               or (u != "gamma" and u.removeprefix("alpha").removeprefix("beta") in members)]
        sub = Matrix([[row[i] for i in idx] for row in system.rows], ncols=len(idx))
        dim = len(idx) - sub.rank()
        free[",".join(members)] = dim
        pattern.append(dim)
    return free, pattern


# -- smoothness ----------------------------------------------------------------------------


def so_q_basis() -> list[Matrix]:
    cols = []
    for k in range(36):
        x = Matrix.elementary(6, k // 6, k % 6)
        cols.append((x.T @ Q + Q @ x).entries())
    ker = kernel(Matrix.from_columns(cols, nrows=36))
    return [Matrix([v[6 * i:6 * i + 6] for i in range(6)]) for v in ker]


def orbit_dimension(a: Matrix) -> int:
    """Rank of X -> X A - A X on so(Q)."""
    imgs = [(x @ a - a @ x).entries() for x in so_q_basis()]
    return Matrix(imgs).rank()


@dataclass(frozen=True)
class SmoothnessReport:
    tangent_dim: int
    orbit_dim: int
    ok: bool

    def to_json(self) -> dict:
        return {"tangent_dim": self.tangent_dim, "orbit_dim": self.orbit_dim, "equal": self.ok}


def smoothness_report(problem: EquivariantHomProblem | None = None) -> SmoothnessReport:
    sol = solve_equivariant_hom(problem or w0_problem())
    dim = orbit_dimension(A0)
    rep = SmoothnessReport(sol.dimension, dim, sol.dimension == dim)
    if not rep.ok:
        raise TangentError(f"tangent dimension {sol.dimension} != orbit dimension {dim}")
    return rep


def tangent_for_plane(w: Matrix) -> TangentSolution:
    return solve_equivariant_hom(problem_from_ideal(subscheme_ideal(Matrix.zeros(6, 6), w)))

