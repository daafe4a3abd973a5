import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invhilb import moment as mo
from invhilb import wedge as wd
from invhilb.exact import Matrix, span_contains, span_equal

seeds = st.integers(0, 10 ** 6)


def test_gram_is_Q():
    assert wd.wedge_gram() == mo.Q


def test_pairing_symmetric_on_bivectors():
    a = wd.bivector((1, 0, 0, 0), (0, 1, 0, 0))
    b = wd.bivector((0, 0, 1, 0), (0, 0, 0, 1))
    assert wd.wedge_pairing(a, b) == wd.wedge_pairing(b, a) == 1
    assert wd.wedge_pairing(a, a) == 0


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_flag_round_trip(seed):
    L, H = wd.random_flag(random.Random(seed))
    w = wd.flags_to_plane(L, H)
    assert wd.is_wedge_isotropic(w)
    assert wd.plane_to_flags(w) == wd.FlagTriple(L, H)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_lie_homomorphism(seed):
    rng = random.Random(seed)
    b1 = Matrix([[mo.small_rational(rng) for _ in range(4)] for _ in range(4)])
    b2 = Matrix([[mo.small_rational(rng) for _ in range(4)] for _ in range(4)])
    b1 = b1 - Matrix.identity(4) * (b1.trace() / 4)
    b2 = b2 - Matrix.identity(4) * (b2.trace() / 4)
    f = wd.sl4_to_so6
    assert f(b1.commutator(b2)) == f(b1).commutator(f(b2))
    assert mo.in_so_q(f(b1))


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_rank_one_nilpotent_chain(seed):
    b, L, H = wd.random_rank_one_nilpotent(random.Random(seed))
    a = wd.sl4_to_so6(b)
    assert mo.orbit_closure_membership(a).stratum == mo.RANK2
    flags = wd.plane_to_flags(a)
    assert flags == wd.FlagTriple(L, H, b)
    assert wd.chain_holds(b, flags.L, flags.H)


def test_E14_lands_in_rank_two_stratum():
    b = Matrix.elementary(4, 0, 3)
    a = wd.sl4_to_so6(b)
    assert mo.orbit_closure_membership(a).stratum == mo.RANK2
    flags = wd.plane_to_flags(a)
    assert span_equal(flags.L, Matrix([[1, 0, 0, 0]]))
    assert span_equal(flags.H, Matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]))


def test_rejections():
    with pytest.raises(ValueError):
        wd.sl4_to_so6(Matrix.identity(4))
    with pytest.raises(ValueError):
        wd.plane_to_flags(Matrix([[1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]]))
    with pytest.raises(ValueError):
        wd.FlagTriple(Matrix([[0, 0, 0, 1]]), Matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]))


def test_certify_H_rejects_wrong_hyperplane():
    L, H = Matrix([[1, 0, 0, 0]]), Matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    w = wd.flags_to_plane(L, H)
    assert wd.certify_H(w, H)
    assert not wd.certify_H(w, Matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]]))
    assert span_contains(H, L)
