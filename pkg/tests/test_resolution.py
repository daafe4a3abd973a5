import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invhilb import moment as mo
from invhilb import resolution as rs
from invhilb.exact import Matrix, span_equal
from invhilb.poly import normal_form
from invhilb.sl2 import expected_table, isotypic_table

ZERO = Matrix.zeros(6, 6)
E45 = rs.span(rs.e(4), rs.e(5))


def test_isotropy_and_orthocomplement():
    assert rs.is_isotropic(rs.W0) and rs.is_isotropic(E45)
    assert not rs.is_isotropic(rs.span(rs.e(1), rs.e(4)))
    with pytest.raises(ValueError):
        rs.is_isotropic(rs.span(rs.e(1), rs.e(1)))
    assert span_equal(rs.q_orthocomplement(rs.W0), rs.span(rs.e(1), rs.e(2), rs.e(3), rs.e(6)))


def test_incidence_point_round_trip():
    p = rs.IncidencePoint(mo.A0, E45)
    assert rs.IncidencePoint.from_json(p.to_json()) == p
    with pytest.raises(ValueError):
        rs.IncidencePoint(mo.A0, rs.W0)


def test_eta1_at_A0_frozen():
    r = rs.eta1_kernel(mo.A0, [mo.BASE_POINT, mo.fibre_over_A0(Matrix([[1, 1], [0, 1]]))])
    assert span_equal(r.kernel, rs.span(rs.e(3), rs.e(4), rs.e(5), rs.e(6)))
    assert span_equal(r.w, E45)


def test_eta1_single_sample_suffices():
    def never():
        raise AssertionError("sampler should not be called")

    r = rs.eta1_kernel(mo.A0, [mo.BASE_POINT], never)
    assert r.samples_used == 1 and span_equal(r.w, E45)


def test_eta1_rejects_foreign_sample():
    with pytest.raises(rs.Eta1Error):
        rs.eta1_kernel(mo.A0, [Matrix([[0, 1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0]])])
    with pytest.raises(rs.Eta1Error):
        rs.eta1_kernel(mo.A0, [])


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_eta1_transported(seed):
    rng = random.Random(seed)
    h = mo.sample_so6(rng).matrix
    a = mo.so6_action(h, mo.A0)
    draw = rs.fibre_sampler(h, rng)
    r = rs.eta1_kernel(a, [draw(), draw()], draw)
    assert span_equal(r.w, a) and span_equal(r.w, rs.plane_action(h, E45))


def test_fibre_E_frozen():
    f = rs.fibre_E_solver()
    assert f.dimension == 1
    at = f.basis[0].T
    nonzero = {(i, j): at[i, j] for i in range(6) for j in range(6) if at[i, j]}
    assert set(nonzero) == {(0, 4), (1, 3)}
    assert nonzero[(1, 3)] == -nonzero[(0, 4)]


def test_fibre_E_not_isotropic():
    with pytest.raises(rs.FibreEError):
        rs.fibre_E_solver(rs.span(rs.e(1), rs.e(4)))


def test_certify_family_rejects_non_nilpotent():
    h = Matrix.elementary(6, 0, 0) - Matrix.elementary(6, 3, 3)
    assert not rs.certify_family([h])


def test_subscheme_over_e45_frozen():
    ideal = rs.subscheme_ideal(ZERO, E45)
    system = ideal.rewrite_system()
    assert sorted(system.substitutions) == ["x13", "x14", "x15", "x16", "x23", "x24", "x25", "x26"]
    lead, rep = system.quadric
    assert ideal.ring.parse_monomial(lead) == "x11*x22" and str(rep) == "x12*x21"
    assert rs.contains_moment_equations(ideal)


def test_subscheme_over_W0_frozen():
    ideal = rs.subscheme_ideal(ZERO, rs.W0)
    system = ideal.rewrite_system()
    assert sorted(system.substitutions) == ["x11", "x12", "x13", "x16", "x21", "x22", "x23", "x26"]
    lead, rep = system.quadric
    assert ideal.ring.parse_monomial(lead) == "x14*x25" and str(rep) == "x15*x24"


def test_subscheme_table_against_linear_algebra():
    """Standard-monomial count versus RREF of the truncated ideal."""
    ideal = rs.subscheme_ideal(ZERO, E45)
    cert = rs.certify_hilbert_function(ideal, 3, margin=0)
    direct = isotypic_table(ideal.ring, ideal.generators, 3)
    assert cert == direct == expected_table(3)


def test_subscheme_requires_zero_and_isotropic():
    with pytest.raises(ValueError):
        rs.subscheme_ideal(mo.A0, E45)
    with pytest.raises(ValueError):
        rs.subscheme_ideal(ZERO, rs.span(rs.e(1), rs.e(4)))


def test_non_isotropic_linear_space_misses_quadric():
    ideal = rs.ideal_from_linear_space(rs.q_orthocomplement(rs.span(rs.e(1), rs.e(4))))
    system = ideal.rewrite_system()
    assert any(not normal_form(p, system).is_zero() for p in mo.symbolic_moment_equations())


def test_subscheme_translates(rng):
    for _ in range(3):
        w = rs.plane_action(mo.sample_so6(rng).matrix, E45)
        ideal = rs.subscheme_ideal(ZERO, w)
        assert len(ideal.rewrite_system().substitutions) == 8
        assert rs.certify_hilbert_function(ideal, 6) == expected_table(6)
