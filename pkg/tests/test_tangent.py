import pytest

from invhilb import moment as mo
from invhilb import resolution as rs
from invhilb import tangent as tg
from invhilb.exact import Matrix
from invhilb.poly import Poly


def test_w0_problem_frozen():
    s = tg.solve_equivariant_hom(tg.w0_problem())
    assert s.dimension == 6
    assert s.pattern == [1, 2, 2, 1]
    assert s.free_parameters == {"1,2": 1, "3": 2, "6": 2, "z": 1}
    assert not s.residuals
    idx = {u: i for i, u in enumerate(s.unknowns)}
    for v in s.vectors:
        assert v[idx["alpha1"]] == 0 and v[idx["beta2"]] == 0
        assert v[idx["beta1"]] == -v[idx["alpha2"]]
    coupled = [b for b in s.to_json()["basis"] if b["x12"] != "0"]
    assert coupled == [dict(coupled[0], x11="-b", x21="-d", x12="a", x22="c")]


def test_targets_without_quadric():
    rep = tg.target_spaces(6, quadric=False, strict=False)
    assert rep.v1_degrees == {1: 2, 3: 2, 5: 2} and rep.v0_degrees == {0: 1, 2: 1, 4: 1, 6: 1}
    assert not rep.ok
    assert tg.target_spaces(6).ok


def test_problem_from_W0_matches_hand_problem():
    p, _ = tg.problem_from_plane(rs.W0)
    s = tg.solve_equivariant_hom(p)
    assert s.dimension == 6 and s.pattern == [1, 2, 2, 1]


def test_translates(rng):
    for _ in range(2):
        w = rs.plane_action(mo.sample_so6(rng).matrix, rs.W0)
        s = tg.tangent_for_plane(w)
        assert s.dimension == 6 and s.pattern == [1, 2, 2, 1]


def test_smoothness():
    r = tg.smoothness_report()
    assert r.tangent_dim == r.orbit_dim == 6 and r.ok


def test_so_q_basis_dimension():
    basis = tg.so_q_basis()
    assert len(basis) == 15 and all(mo.in_so_q(b) for b in basis)


def test_problem_validation():
    R = tg.problem_ring(("1",))
    g = R.gen
    with pytest.raises(tg.TangentError):
        tg.EquivariantHomProblem(("1",), (g("x11") * g("a"),))
    with pytest.raises(tg.TangentError):
        tg.EquivariantHomProblem(("1",), (g("x11") * g("x21") * g("a"),))
