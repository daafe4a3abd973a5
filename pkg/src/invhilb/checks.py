"""Registry of verification checks, grouped into suites.

Each check gets its own RNG seeded from "<seed>:<check id>", so results do not
depend on which other checks ran.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import fixed_points as fp
from . import moment as mo
from . import resolution as rs
from . import tangent as tg
from . import wedge as wd
from .exact import Matrix, kernel, minor2, rref, span_equal
from .poly import RewriteSystem, normal_form
from .sl2 import abcd_ring, expected_table, full_ring, hilbert_function, isotypic_table

SUITES = ("moment", "fibres", "hilbert-function", "eta1", "fibre-E", "subschemes",
          "tangent", "fixed-points", "wedge")
PLUMBING = "plumbing"


@dataclass
class Context:
    seed: int = 0
    truncation: int = 8
    samples: int = 50
    rng: random.Random = field(default_factory=random.Random)

    def count(self, base: int) -> int:
        """Per-check sample count, scaled by samples/50."""
        return max(1, round(base * self.samples / 50))


@dataclass(frozen=True)
class Check:
    id: str
    suite: str
    anchor: str
    statement: str
    strategy: str
    run: Callable[[Context], tuple[bool, dict]]


REGISTRY: dict[str, Check] = {}


def check(id: str, suite: str, anchor: str, statement: str, strategy: str):
    def deco(fn):
        REGISTRY[id] = Check(id, suite, anchor, statement, strategy, fn)
        return fn
    return deco


def _m(m: Matrix):
    return m.to_json()


# -- moment ---------------------------------------------------------------------------


@check("moment.quotient.base_point", "moment",
       "quotient map M^t J M Q at M = [I2|0]",
       "nu([I2|0]) = A0 with a15 = 1, a24 = -1 and all other entries 0.",
       "Evaluate M^t J M Q exactly and compare entrywise with A0.")
def _(ctx):
    a = mo.quotient_map(mo.BASE_POINT).a
    return a == mo.A0 and mo.moment_map(mo.BASE_POINT).is_zero(), {"A": _m(a)}


@check("moment.orbit_closure.conjugates", "moment",
       "orbit closure: A^2 = 0, rk A <= 2, Pf_4(QA) = 0 on so(Q)",
       "A0 and sampled SO(Q)-conjugates satisfy all four membership conditions.",
       "Conjugate A0 by sampled h (products of exponentials of root vectors) and test "
       "each condition independently.")
def _(ctx):
    n = ctx.count(100)
    bad = []
    if mo.orbit_closure_membership(mo.A0).stratum != mo.RANK2:
        bad.append("A0")
    for i in range(n):
        g = mo.sample_so6(ctx.rng)
        a = g.matrix.inverse() @ mo.A0 @ g.matrix
        m = mo.orbit_closure_membership(a)
        if m.stratum != mo.RANK2:
            bad.append({"word": list(g.word), "failing": list(m.failing)})
    return not bad, {"conjugates": n, "failures": bad}


@check("moment.block_formula", "moment",
       "coordinate block formula of M^t J M Q via minors Lambda^{s,t}",
       "Entry (s,t) of M^t J M Q is Lambda^{s,sigma(t)}; the bottom-right block is "
       "Lambda^{3+i,j}.",
       "Compare the minor assembly with the direct product on random rational M.")
def _(ctx):
    n = ctx.count(100)
    bad = 0
    for _ in range(n):
        m = Matrix([[mo.small_rational(ctx.rng) for _ in range(6)] for _ in range(2)])
        if Matrix(mo.block_formula(m.rows)) != m.T @ mo.J @ m @ mo.Q:
            bad += 1
    return bad == 0, {"samples": n, "mismatches": bad}


@check("moment.equivariance", "moment",
       "SL2-invariance of nu and SO(Q)-stability of the zero fibre",
       "nu(gM) = nu(M); M h stays in the zero fibre and nu(M h) = h^t nu(M) h^{-t} "
       "lies in the orbit closure.",
       "Sample g in SL2, h in SO(Q) and fibre points over A0; compare exactly.")
def _(ctx):
    n = ctx.count(20)
    bad = []
    for _ in range(n):
        m = mo.fibre_over_A0(mo.sample_sl2(ctx.rng).matrix)
        g = mo.sample_sl2(ctx.rng).matrix
        h = mo.sample_so6(ctx.rng).matrix
        ok = (
            mo.quotient_map(g @ m).a == mo.quotient_map(m).a
            and mo.in_zero_fibre(m @ h)
            and mo.quotient_map(m @ h).a == mo.so6_action(h, mo.A0)
            and mo.orbit_closure_membership(mo.quotient_map(m @ h).a).member
        )
        if not ok:
            bad.append(_m(h))
    return not bad, {"samples": n, "failures": bad}


# -- fibres -----------------------------------------------------------------------------


@check("fibres.general.elimination", "fibres",
       "general fibre: Lambda^{1,2} = 1, other minors 0, forces x_{1j} = x_{2j} = 0 for j >= 3",
       "Over Q(x11, x12, x21) the fibre equations force x1j = x2j = 0 (j = 3..6) and the "
       "three entries of M Q M^t vanish identically.",
       "Symbolic elimination with rational functions, pivot x11 and mirrored pivot x12; "
       "Lambda^{1,2} = 0 must trip the division guard.")
def _(ctx):
    r1 = mo.fibre_elimination_check(1, "x11")
    r2 = mo.fibre_elimination_check(1, "x12")
    try:
        mo.fibre_elimination_check(0, "x11")
        guard = False
    except mo.DivisionGuardError:
        guard = True
    return r1.ok and r2.ok and guard, {"x11": r1.to_json(), "x12": r2.to_json(), "guard": guard}


@check("fibres.zero.dimension", "fibres",
       "fibre of nu over 0: rank-one matrices u v^t with v isotropic, claimed dimension 5",
       "The Jacobian rank of (u, v) -> u v^t on the isotropic quadric is 5 at u = (1,2), "
       "v = e1 and at random generic points.",
       "Exact rank of the 12 x 7 differential. The affine cone has dimension 6, so this "
       "check is expected to fail; the projective dimension is reported alongside.")
def _(ctx):
    base = mo.fibre_over_zero_dimension()
    ranks = [base.rank]
    n = ctx.count(20)
    for _ in range(n):
        u = (mo.small_rational(ctx.rng, True), mo.small_rational(ctx.rng))
        v = mo.random_isotropic_vector(ctx.rng)
        ranks.append(mo.fibre_over_zero_dimension(u, v).rank)
    return all(r == 5 for r in ranks), {"base": base.to_json(), "ranks": ranks,
                                        "projective_dimension": base.projective_dimension}


# -- hilbert function -----------------------------------------------------------------


@check("hilbert.abcd.table", "hilbert-function",
       "Hilbert function h(d) = dim V_d = d+1 and decomposition (n+1)V_n",
       "Q[a,b,c,d]/(ad-bc) has mult[n][n] = n+1 and no other components up to degree 6; "
       "h(d) = d+1.",
       "Weight-space dimensions by exact RREF per (degree, weight), differenced into "
       "isotypic multiplicities.")
def _(ctx):
    R = abcd_ring()
    a, b, c, d = R.gens()
    t = isotypic_table(R, [a * d - b * c], 6)
    h = hilbert_function(t, margin=0)
    ok = t == expected_table(6) and all(h[k] == k + 1 for k in range(7))
    return ok, {"table": t.to_json(), "h": h.to_json()}


@check("hilbert.free_ring", "hilbert-function",
       "coordinate ring of six copies of the plane",
       "The free ring in 12 variables has degree-n dimension C(n+11, 11) and six copies "
       "of V1 in degree 1.",
       "Isotypic table of the zero ideal up to degree 4.")
def _(ctx):
    from math import comb
    t = isotypic_table(full_ring(), [], 4)
    dims = [t.degree_dimension(n) for n in range(5)]
    return dims == [comb(n + 11, 11) for n in range(5)] and t.mult[1][1] == 6, {"dims": dims}


# -- eta1 --------------------------------------------------------------------------------


@check("eta1.kernel.A0", "eta1",
       "kernel of f_1 at Z_{A0} is <p3, p4, p5, p6>, orthocomplement <p4, p5>",
       "The common kernel of fibre points over A0 is span{e3..e6}; its Q-orthocomplement "
       "span{e4, e5} is isotropic and equals the column space of A0^t.",
       "Stack two fibre points, take the exact kernel and its Q-orthocomplement.")
def _(ctx):
    pts = [mo.BASE_POINT, mo.fibre_over_A0(Matrix([[1, 1], [0, 1]]))]
    r = rs.eta1_kernel(mo.A0, pts)
    ok = span_equal(r.kernel, rs.span(rs.e(3), rs.e(4), rs.e(5), rs.e(6))) and \
        span_equal(r.w, rs.span(rs.e(4), rs.e(5)))
    return ok, r.to_json()


@check("eta1.transport", "eta1",
       "eta x eta_1 on the open orbit: W = im A^t",
       "For transported A = h^t A0 h^{-t}, the Q-orthocomplement of the fibre kernel equals "
       "the column space of A^t.",
       "Transport fibre points by h and rerun the kernel computation.")
def _(ctx):
    n = ctx.count(20)
    used = []
    for _ in range(n):
        h = mo.sample_so6(ctx.rng).matrix
        a = mo.so6_action(h, mo.A0)
        draw = rs.fibre_sampler(h, ctx.rng)
        used.append(rs.eta1_kernel(a, [draw(), draw()], draw).samples_used)
    return True, {"instances": n, "samples_used": used}


# -- fibre E ---------------------------------------------------------------------------


@check("fibreE.W0", "fibre-E",
       "fibre E over W0 = <p1, p2> is one-dimensional with a24 = -a15",
       "The linear system over W0 has a 1-dimensional solution A(t) with A(t)^2 = 0 and all "
       "Pfaffians of Q A(t) zero as polynomials in t.",
       "Exact kernel of the 36-unknown system, then polynomial certification in t.")
def _(ctx):
    f = rs.fibre_E_solver(rs.W0)
    at = f.basis[0].T
    return f.dimension == 1 and at[1, 3] == -at[0, 4] != 0, f.to_json()


@check("fibreE.translates", "fibre-E",
       "homogeneity of the isotropic Grassmannian",
       "The fibre E has dimension 1 over sampled isotropic planes.",
       "Rerun the solver on h-translates of W0.")
def _(ctx):
    n = ctx.count(20)
    dims = [rs.fibre_E_solver(rs.plane_action(mo.sample_so6(ctx.rng).matrix, rs.W0)).dimension
            for _ in range(n)]
    return all(d == 1 for d in dims), {"dimensions": dims}


# -- subschemes ------------------------------------------------------------------------


def _subscheme_witness(w: Matrix, N: int) -> tuple[bool, dict]:
    ideal = rs.subscheme_ideal(Matrix.zeros(6, 6), w)
    system = ideal.rewrite_system()
    table = rs.certify_hilbert_function(ideal, N)
    ok = len(system.substitutions) == 8 and system.quadric is not None and rs.contains_moment_equations(ideal)
    lead, rep = system.quadric
    quad = str(ideal.ring.zero() + type(rep)(ideal.ring, {lead: 1}) - rep)
    return ok, {"W": _m(w), "linear_eliminated": len(system.substitutions), "quadric": quad,
                "table": table.to_json()}


@check("subschemes.zero", "subschemes",
       "special subschemes Z_{0,W}: minors plus linear forms of W^perp",
       "Over (0, <e4, e5>) and (0, W0) the ideal reduces to one quadric after eliminating 8 "
       "linear forms, contains X Q X^t and has h(d) = d+1.",
       "Gaussian elimination of the linear generators, rewriting by the quadric, "
       "standard-monomial count.")
def _(ctx):
    out = {}
    ok = True
    for name, w in (("e4,e5", rs.span(rs.e(4), rs.e(5))), ("W0", rs.W0)):
        good, wit = _subscheme_witness(w, ctx.truncation)
        ok &= good
        out[name] = wit
    return ok, out


@check("subschemes.sampled_planes", "subschemes",
       "special subschemes over translated isotropic planes",
       "The same certification holds over sampled translates of <e4, e5>.",
       "Build and certify the ideal for each translate.")
def _(ctx):
    n = ctx.count(10)
    res = []
    ok = True
    for _ in range(n):
        w = rs.plane_action(mo.sample_so6(ctx.rng).matrix, rs.span(rs.e(4), rs.e(5)))
        good, wit = _subscheme_witness(w, min(ctx.truncation, 6))
        ok &= good
        res.append(wit["quadric"])
    return ok, {"planes": n, "quadrics": res}


# -- tangent ---------------------------------------------------------------------------


@check("tangent.dimension", "tangent",
       "tangent space Hom^G(I/I^2, R/I) at Z_{0,W0} has dimension 6",
       "The equivariant solve gives dimension 6 with pattern 1 + 2 + 2 + 1 and "
       "alpha1 = beta2 = 0, beta1 = -alpha2.",
       "Paired coefficients per V1 block, relations reduced by ad -> bc, exact kernel.")
def _(ctx):
    s = tg.solve_equivariant_hom(tg.w0_problem(), min(ctx.truncation, 6))
    coupled = all(v[0] == 0 and v[3] == 0 and v[1] == -v[2] for v in s.vectors)
    ok = s.dimension == 6 and s.pattern == [1, 2, 2, 1] and coupled and not s.residuals
    return ok, s.to_json()


@check("tangent.translates", "tangent",
       "tangent dimension is constant along the SO(Q)-orbit",
       "Rebuilding the problem from the ideal over translates of W0 gives dimension 6 and "
       "pattern 1 + 2 + 2 + 1.",
       "Adapted hyperbolic basis for each translated plane, then the same solve.")
def _(ctx):
    n = ctx.count(5)
    out = []
    for _ in range(n):
        w = rs.plane_action(mo.sample_so6(ctx.rng).matrix, rs.W0)
        s = tg.tangent_for_plane(w)
        out.append({"dim": s.dimension, "pattern": s.pattern})
    return all(o["dim"] == 6 and o["pattern"] == [1, 2, 2, 1] for o in out), {"translates": out}


@check("tangent.smoothness", "tangent",
       "smoothness: tangent dimension equals dim of the orbit closure",
       "Tangent dimension 6 equals the orbit dimension, the rank of X -> X A0 - A0 X on so(Q).",
       "Exact rank over a basis of so(Q).")
def _(ctx):
    r = tg.smoothness_report()
    return r.ok and r.orbit_dim == 6, r.to_json()


# -- fixed points ----------------------------------------------------------------------


@check("fixed_points.sweep", "fixed-points",
       "fixed ideals from 4-dimensional V; X Q X^t contained iff the annihilator is isotropic",
       "For sampled V (half built isotropic, half generic) the Hilbert function is right and "
       "containment agrees with isotropy.",
       "Degree-2 slice membership against W Q W^t = 0.")
def _(ctx):
    rows = fp.sweep(ctx.rng, ctx.count(50), min(ctx.truncation, 6))
    pos = sum(r.contained for r in rows)
    ok = all(r.hilbert_ok and r.contained == r.isotropic for r in rows) and 0 < pos < len(rows)
    return ok, {"count": len(rows), "isotropic": pos}


@check("fixed_points.examples", "fixed-points",
       "fixed points: dim V = 4 is forced",
       "V = <e1,e2,e3,e6> is contained and isotropic; <e2,e3,e5,e6> is neither; 5- and "
       "3-dimensional V are too small and too big.",
       "Direct evaluation of the predicates.")
def _(ctx):
    e, span = rs.e, rs.span
    pos = fp.quadric_containment(span(e(1), e(2), e(3), e(6)))
    neg = fp.quadric_containment(span(e(2), e(3), e(5), e(6)))
    small = fp.hilbert_check(fp.ideal_from_subspace(span(e(1), e(2), e(3), e(4), e(6))))
    big = fp.hilbert_check(fp.ideal_from_subspace(span(e(1), e(2), e(3))))
    ok = (pos.contained and pos.isotropic and not neg.contained and not neg.isotropic
          and small.reason == "R1/I1 too small" and big.reason == "R1/I1 too big")
    return ok, {"small": small.reason, "big": big.reason}


# -- wedge --------------------------------------------------------------------------------


@check("wedge.gram", "wedge",
       "wedge pairing on Lambda^2 Q^4 realises Q",
       "The Gram matrix of the wedge basis is Q.",
       "Coefficient of e1^e2^e3^e4 on all basis pairs.")
def _(ctx):
    g = wd.wedge_gram()
    return g == mo.Q, {"gram": _m(g)}


@check("wedge.roundtrip", "wedge",
       "W = L ^ H with L = {v : v ^ W = 0}",
       "plane_to_flags(flags_to_plane(L, H)) = (L, H) for random flags.",
       "Exact kernels and spans.")
def _(ctx):
    n = ctx.count(50)
    bad = 0
    for _ in range(n):
        L, H = wd.random_flag(ctx.rng)
        if wd.plane_to_flags(wd.flags_to_plane(L, H)) != wd.FlagTriple(L, H):
            bad += 1
    return bad == 0, {"flags": n, "failures": bad}


@check("wedge.chain", "wedge",
       "im A in L in H in ker A for rank-one nilpotent A in sl4",
       "Rank-one square-zero b maps into the orbit closure and its plane gives "
       "im b in L in H in ker b.",
       "b = u phi with phi(u) = 0, image -D(b)^t, flags from its row space.")
def _(ctx):
    n = ctx.count(30)
    bad = []
    for _ in range(n):
        b, L, H = wd.random_rank_one_nilpotent(ctx.rng)
        a = wd.sl4_to_so6(b)
        f = wd.plane_to_flags(a)
        if not (mo.orbit_closure_membership(a).stratum == mo.RANK2 and f == wd.FlagTriple(L, H)
                and wd.chain_holds(b, f.L, f.H)):
            bad.append(_m(b))
    return not bad, {"samples": n, "failures": bad}


# -- plumbing -----------------------------------------------------------------------------


@check("plumbing.rref", PLUMBING, "plumbing",
       "rref of A0 has rank 2 and kernel span{e1, e2, e3, e6}.",
       "Exact Gaussian elimination.")
def _(ctx):
    _, rank, piv = rref(mo.A0)
    ker = Matrix(kernel(mo.A0))
    return rank == 2 and span_equal(ker, rs.span(rs.e(1), rs.e(2), rs.e(3), rs.e(6))), {"pivots": piv}


@check("plumbing.normal_form", PLUMBING, "plumbing",
       "a^2 d reduces to abc under ad -> bc; minors of [I2|0] are 1 and 0.",
       "Rewriting and direct evaluation.")
def _(ctx):
    R = abcd_ring()
    a, b, c, d = R.gens()
    sys_ = RewriteSystem.from_quadric(a * d - b * c)
    ok = normal_form(a * a * d, sys_) == a * b * c and minor2(mo.BASE_POINT.rows, 1, 2) == 1
    return ok, {}


# -- running --------------------------------------------------------------------------------


def checks_for(suite: str) -> list[Check]:
    if suite == "all":
        return sorted(REGISTRY.values(), key=lambda c: c.id)
    if suite not in SUITES:
        raise KeyError(suite)
    return sorted((c for c in REGISTRY.values() if c.suite == suite), key=lambda c: c.id)


def run_check(c: Check, seed: int, truncation: int, samples: int) -> dict:
    ctx = Context(seed, truncation, samples, random.Random(f"{seed}:{c.id}"))
    start = time.perf_counter()
    try:
        passed, witness = c.run(ctx)
    except Exception as exc:  # a crash is a failed check, with the reason as witness
        passed, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
    return {
        "id": c.id,
        "anchor": c.anchor,
        "status": "pass" if passed else "fail",
        "witness": witness,
        "wall_time": round(time.perf_counter() - start, 3),
    }


def run_suite(suite: str, seed: int = 0, truncation: int = 8, samples: int = 50) -> dict:
    records = [run_check(c, seed, truncation, samples) for c in checks_for(suite)]
    passed = sum(r["status"] == "pass" for r in records)
    return {
        "schema": 1,
        "config": {"suite": suite, "seed": seed, "truncation": truncation, "samples": samples},
        "checks": records,
        "summary": {"total": len(records), "passed": passed, "failed": len(records) - passed},
    }


def explain(check_id: str) -> str:
    c = REGISTRY[check_id]
    kind = "plumbing" if c.suite == PLUMBING else f"suite {c.suite}"
    return f"{c.id} ({kind})\nanchor: {c.anchor}\nstatement: {c.statement}\nstrategy: {c.strategy}\n"
