import itertools

import pytest
from gmpy2 import mpq

from reflect_vertex.lattice import ModelParams, dual_n1_closed_form, n1_closed_form
from reflect_vertex.scalarfield import SingularPointError, sample_point
from reflect_vertex.symfunc import eval_F, eval_F_bar


def _point(seed, M, N):
    pt = sample_point(seed, M, N)
    return ModelParams(pt.a, pt.b), pt.z, pt.w


def test_anchor(anchor):
    params, z, w = anchor
    assert eval_F(params, z, w, (1,)) == mpq(1275, 8)


@pytest.mark.parametrize("M,N", [(3, 2), (4, 3), (5, 2)])
def test_symmetric_in_spectral_parameters(M, N):
    params, z, w = _point(M * 10 + N, M, N)
    x = tuple(range(M - N + 1, M + 1))
    ref = eval_F(params, z, w, x)
    ref_bar = eval_F_bar(params, z, w, x)
    for perm in itertools.permutations(z):
        assert eval_F(params, perm, w, x) == ref
        assert eval_F_bar(params, perm, w, x) == ref_bar


@pytest.mark.parametrize("M,N", [(2, 1), (4, 2), (5, 3), (6, 4)])
def test_subset_method_agrees(M, N):
    params, z, w = _point(M + 31 * N, M, N)
    for x in itertools.combinations(range(1, M + 1), N):
        assert eval_F(params, z, w, x, method="subset") == eval_F(params, z, w, x)
        assert eval_F_bar(params, z, w, x, method="subset") == eval_F_bar(params, z, w, x)


def test_empty_configuration_is_one():
    params, _, w = _point(2, 3, 0)
    assert eval_F(params, (), w, ()) == 1
    assert eval_F_bar(params, (), w, ()) == 1


@pytest.mark.parametrize("M", [1, 3, 4])
def test_single_particle_matches_closed_form(M):
    params, z, w = _point(M, M, 1)
    for x1 in range(1, M + 1):
        assert eval_F(params, z, w, (x1,)) == n1_closed_form(params, z[0], w, x1)
        assert eval_F_bar(params, z, w, (x1,)) == dual_n1_closed_form(params, z[0], w, x1)


def test_rejects_unknown_method():
    params, z, w = _point(0, 2, 1)
    with pytest.raises(ValueError):
        eval_F(params, z, w, (1,), method="fast")


def test_rejects_degenerate_spectral_parameters():
    params, _, w = _point(0, 3, 2)
    with pytest.raises(SingularPointError):
        eval_F(params, (mpq(2), mpq(1, 2)), w, (1, 2))
    with pytest.raises(SingularPointError):
        eval_F(params, (mpq(1), mpq(3)), w, (1, 2))
