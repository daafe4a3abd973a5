"""Acceptance criteria, one test each; conftest prints a PASS/FAIL line per criterion."""
import random

import pytest

from invhilb import fixed_points as fp
from invhilb import moment as mo
from invhilb import resolution as rs
from invhilb import tangent as tg
from invhilb import wedge as wd
from invhilb.exact import Matrix, span_equal
from invhilb.sl2 import abcd_ring, expected_table, hilbert_function, isotypic_table

criterion = pytest.mark.criterion


def _rng(n):
    return random.Random(f"acceptance:{n}")


@criterion(1, "quotient of the base point is A0")
def test_criterion_01_base_point_quotient():
    expected = Matrix.elementary(6, 0, 4) - Matrix.elementary(6, 1, 3)
    assert mo.quotient_map(mo.BASE_POINT).a == expected


@criterion(2, "A0 and 100 SO6 conjugates pass all four orbit-closure conditions")
def test_criterion_02_orbit_closure_certificate():
    rng = _rng(2)
    elements = [mo.A0] + [mo.so6_action(mo.sample_so6(rng).matrix, mo.A0) for _ in range(100)]
    for a in elements:
        m = mo.orbit_closure_membership(a)
        assert m.member and not m.failing and m.stratum == mo.RANK2


@criterion(3, "general-fibre elimination gives x1j = x2j = 0 and M Q M^t = 0")
def test_criterion_03_general_fibre_elimination():
    report = mo.fibre_elimination_check(1, "x11")
    names = [name for name, _, _ in report.identities]
    for j in range(3, 7):
        assert f"x1{j}" in " ".join(names) and f"x2{j}" in " ".join(names)
    assert report.ok and all(zero for _, _, zero in report.identities)


@criterion(4, "Q[a,b,c,d]/(ad-bc) decomposes as (n+1)V_n with h(d) = d+1")
def test_criterion_04_hilbert_function():
    R = abcd_ring()
    a, b, c, d = R.gens()
    t = isotypic_table(R, [a * d - b * c], 6)
    for dd in range(7):
        for n in range(7):
            assert t.mult[dd][n] == (n + 1 if dd == n else 0)
    h = hilbert_function(t, margin=0)
    assert all(h[k] == k + 1 for k in range(7))


@criterion(5, "eta1 kernel at A0 and on 20 transported instances")
def test_criterion_05_eta1():
    r = rs.eta1_kernel(mo.A0, [mo.BASE_POINT, mo.fibre_over_A0(Matrix([[2, 1], [1, 1]]))])
    assert span_equal(r.kernel, rs.span(rs.e(3), rs.e(4), rs.e(5), rs.e(6)))
    assert span_equal(r.w, rs.span(rs.e(4), rs.e(5)))
    assert rs.is_isotropic(r.w) and span_equal(r.w, mo.A0)
    rng = _rng(5)
    for _ in range(20):
        h = mo.sample_so6(rng).matrix
        a = mo.so6_action(h, mo.A0)
        draw = rs.fibre_sampler(h, rng)
        t = rs.eta1_kernel(a, [draw(), draw()], draw)
        assert rs.is_isotropic(t.w) and span_equal(t.w, a)


@criterion(6, "fibre E over W0 is one-dimensional and stays in the orbit closure")
def test_criterion_06_fibre_E():
    f = rs.fibre_E_solver(rs.W0)
    assert f.dimension == 1
    assert rs.certify_family(f.basis)


@criterion(7, "subscheme ideals reduce to one quadric with h(d) = d+1")
def test_criterion_07_subscheme_ideals():
    rng = _rng(7)
    e45 = rs.span(rs.e(4), rs.e(5))
    planes = [e45] + [rs.plane_action(mo.sample_so6(rng).matrix, e45) for _ in range(10)]
    for w in planes:
        ideal = rs.subscheme_ideal(Matrix.zeros(6, 6), w)
        system = ideal.rewrite_system()
        assert len(system.substitutions) == 8 and system.quadric is not None
        assert rs.contains_moment_equations(ideal)
        assert rs.certify_hilbert_function(ideal, 8) == expected_table(8)


@criterion(8, "tangent space has dimension 6 with pattern 1+2+2+1 on 5 translates")
def test_criterion_08_tangent_space():
    s = tg.solve_equivariant_hom(tg.w0_problem())
    assert s.dimension == 6 and s.pattern == [1, 2, 2, 1]
    rng = _rng(8)
    for _ in range(5):
        t = tg.tangent_for_plane(rs.plane_action(mo.sample_so6(rng).matrix, rs.W0))
        assert t.dimension == 6 and t.pattern == [1, 2, 2, 1]


@criterion(9, "fixed points: 50 sampled V, containment agrees with isotropy")
def test_criterion_09_fixed_points():
    rows = fp.sweep(_rng(9), 50)
    assert len(rows) == 50
    assert all(r.hilbert_ok for r in rows)
    assert all(r.contained == r.isotropic for r in rows)
    assert any(r.contained for r in rows) and not all(r.contained for r in rows)
    assert fp.quadric_containment(rs.span(rs.e(1), rs.e(2), rs.e(3), rs.e(6))).contained
    assert not fp.quadric_containment(rs.span(rs.e(2), rs.e(3), rs.e(5), rs.e(6))).contained


@criterion(10, "wedge Gram is Q, 50 flag round-trips, 30 nilpotent chains")
def test_criterion_10_wedge_correspondence():
    assert wd.wedge_gram() == mo.Q
    rng = _rng(10)
    for _ in range(50):
        L, H = wd.random_flag(rng)
        assert wd.plane_to_flags(wd.flags_to_plane(L, H)) == wd.FlagTriple(L, H)
    for _ in range(30):
        b, L, H = wd.random_rank_one_nilpotent(rng)
        a = wd.sl4_to_so6(b)
        assert mo.orbit_closure_membership(a).stratum == mo.RANK2
        flags = wd.plane_to_flags(a)
        assert flags == wd.FlagTriple(L, H)
        assert wd.chain_holds(b, flags.L, flags.H)


@criterion(11, "Jacobian rank 5 for the rank-one isotropic parametrization")
def test_criterion_11_fibre_over_zero_rank():
    ranks = [mo.fibre_over_zero_dimension((1, 2), rs.e(1)).rank]
    rng = _rng(11)
    for _ in range(20):
        u = (mo.small_rational(rng, True), mo.small_rational(rng))
        ranks.append(mo.fibre_over_zero_dimension(u, mo.random_isotropic_vector(rng)).rank)
    assert ranks == [5] * 21, f"observed ranks {sorted(set(ranks))}"
