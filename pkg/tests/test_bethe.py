import itertools

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from reflect_vertex.bethe import (
    BetheParams,
    anisotropy,
    boundary_field,
    check_coordinate_relation,
    eval_f,
    momenta_from_spectral,
    momentum,
)
from reflect_vertex.lattice import ModelParams
from reflect_vertex.scalarfield import BETHE, HOMOGENEOUS, SingularPointError, sample_point
from reflect_vertex.verify import check_auxiliary

P = ModelParams(2, 3)
nonunit = st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(lambda v: v not in (0, 1, -1))


def test_worked_parameters():
    assert momentum(P, 3) == -7
    assert anisotropy(P) == mpq(-17, 8)
    assert boundary_field(P) == mpq(-75, 32)


def test_single_momentum_by_hand():
    # Y^-1 (1 - 7/32 Y) - Y (1 - 7/(32 Y)) at Y = -7
    bp = momenta_from_spectral(P, (3,), M=1)
    assert eval_f(bp, (1,)) == mpq(48, 7)


@settings(max_examples=30, deadline=None)
@given(st.lists(nonunit, min_size=2, max_size=3, unique=True), st.integers(0, 5))
def test_antisymmetry(X, shift):
    if any(u * v == 1 for u, v in itertools.combinations(X, 2)):
        return
    N = len(X)
    bp = BetheParams(tuple(X), mpq(-17, 8), mpq(-75, 32), 2 * N + 3)
    x = tuple(shift % 3 + 1 + 2 * k for k in range(N))
    ref = eval_f(bp, x)
    swapped = BetheParams((X[1], X[0]) + tuple(X[2:]), bp.Delta, bp.pprime, bp.M)
    assert eval_f(swapped, x) == -ref
    inverted = BetheParams((1 / mpq(X[0]),) + tuple(X[1:]), bp.Delta, bp.pprime, bp.M)
    assert eval_f(inverted, x) == -ref


@pytest.mark.parametrize("M,N", [(2, 1), (3, 2), (4, 2)])
def test_coordinate_relation(M, N):
    pt = sample_point(M * 7 + N, M, N, {HOMOGENEOUS, BETHE})
    params = ModelParams(pt.a, pt.b)
    for x in itertools.combinations(range(1, M + 1), N):
        rep = check_coordinate_relation(params, pt.z, x, M)
        assert rep.passed, rep
        assert not check_coordinate_relation(params, pt.z, x, M, rhs_scale=2).passed


def test_auxiliary_relations():
    for seed in range(10):
        pt = sample_point(seed, 0, 2, {BETHE})
        assert all(r.passed for r in check_auxiliary(ModelParams(pt.a, pt.b), pt.z[0], pt.z[1]))


def test_coincident_momenta_rejected():
    with pytest.raises(SingularPointError):
        BetheParams((mpq(2), mpq(1, 2)), 0, 0, 3)
    with pytest.raises(SingularPointError):
        momentum(P, 2)
