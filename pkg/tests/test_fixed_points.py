import pytest

from invhilb import fixed_points as fp
from invhilb import moment as mo
from invhilb.exact import Matrix
from invhilb.poly import SpanMembership
from invhilb.resolution import e, span


def test_constructed_positive_and_negative():
    pos = fp.quadric_containment(span(e(1), e(2), e(3), e(6)))
    neg = fp.quadric_containment(span(e(2), e(3), e(5), e(6)))
    assert pos.contained and pos.isotropic
    assert not neg.contained and not neg.isotropic


def test_dimension_verdicts():
    small = fp.hilbert_check(fp.ideal_from_subspace(span(e(1), e(2), e(3), e(4), e(6))))
    big = fp.hilbert_check(fp.ideal_from_subspace(span(e(1), e(2), e(3))))
    assert (small.ok, small.reason, small.h1) == (False, "R1/I1 too small", 1)
    assert (big.ok, big.reason, big.h1) == (False, "R1/I1 too big", 3)
    assert fp.hilbert_check(fp.fixed_ideal(span(e(1), e(2), e(3), e(6)))).ok


def test_fixed_ideal_needs_dimension_four():
    with pytest.raises(ValueError):
        fp.FixedIdealDatum(span(e(1), e(2), e(3)))


def test_homogeneous():
    assert fp.homogeneity_audit(fp.fixed_ideal(span(e(1), e(2), e(3), e(6))))


def test_sweep_small(rng):
    rows = fp.sweep(rng, 6)
    assert [r.isotropic for r in rows[::2]] == [True] * 3
    assert all(r.contained == r.isotropic and r.hilbert_ok for r in rows)


def _degree_slices(gens):
    by = {}
    for g in gens:
        by.setdefault(g.degree(), []).append(g)
    return by


def test_equivariance_under_so6(rng):
    """Pulling back the ideal of V along X -> X h gives the ideal of V h^t."""
    for _ in range(3):
        v = fp.random_subspace(rng)
        h = mo.sample_so6(rng).matrix
        pulled = _degree_slices(fp.pullback(fp.fixed_ideal(v), h))
        direct = _degree_slices(fp.fixed_ideal(v @ h.T).generators)
        for deg in (1, 2):
            a, b = SpanMembership(pulled[deg]), SpanMembership(direct[deg])
            assert all(b.contains(p) for p in pulled[deg])
            assert all(a.contains(p) for p in direct[deg])
