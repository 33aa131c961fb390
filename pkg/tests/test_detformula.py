import pytest
from gmpy2 import mpq

from reflect_vertex.detformula import domain_wall_det, domain_wall_det_homogeneous
from reflect_vertex.lattice import ModelParams, wavefunction_oracle
from reflect_vertex.scalarfield import HOMOGENEOUS, SingularPointError, sample_point


def test_anchor_uses_singular_fallback(anchor):
    params, z, w = anchor
    assert domain_wall_det(params, z, w) == mpq(1275, 8)


def test_homogeneous_anchor():
    params = ModelParams(2, 3)
    assert domain_wall_det_homogeneous(params, (mpq(3),)) == mpq(6475, 18)
    assert domain_wall_det(params, (mpq(3),), (mpq(1),)) == mpq(6475, 18)


@pytest.mark.parametrize("M", [1, 2, 3, 4, 5])
def test_matches_oracle(M):
    pt = sample_point(40 + M, M, M)
    params = ModelParams(pt.a, pt.b)
    assert domain_wall_det(params, pt.z, pt.w) == wavefunction_oracle(params, pt.z, pt.w, tuple(range(1, M + 1)))


@pytest.mark.parametrize("M", [1, 2, 3, 4])
def test_homogeneous_matches_oracle(M):
    pt = sample_point(70 + M, M, M, {HOMOGENEOUS})
    params = ModelParams(pt.a, pt.b)
    expected = wavefunction_oracle(params, pt.z, pt.w, tuple(range(1, M + 1)))
    assert domain_wall_det_homogeneous(params, pt.z) == expected


def test_homogeneous_rejects_a_equal_z():
    params = ModelParams(2, 3)
    with pytest.raises(SingularPointError):
        domain_wall_det_homogeneous(params, (mpq(2),))


def test_rejects_coincident_spectral_parameters():
    params = ModelParams(2, 3)
    with pytest.raises(SingularPointError):
        domain_wall_det(params, (mpq(3), mpq(1, 3)), (mpq(5), mpq(7)))
    with pytest.raises(SingularPointError):
        domain_wall_det(params, (mpq(3), mpq(5)), (mpq(7), mpq(7)))
