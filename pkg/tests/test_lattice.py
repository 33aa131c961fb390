import itertools

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from reflect_vertex.lattice import (
    FockVector,
    ModelParams,
    OccupationConfig,
    apply_double_row_b,
    apply_double_row_b_literal,
    apply_row_operator,
    dual_n1_closed_form,
    dual_wavefunction_oracle,
    k_element,
    l_element,
    n1_closed_form,
    wavefunction_oracle,
)
from reflect_vertex.scalarfield import sample_point

P = ModelParams(mpq(2), mpq(3))


def test_ice_rule_exhaustive():
    z, w = mpq(5, 3), mpq(-7, 2)
    for idx in itertools.product((0, 1), repeat=4):
        a_in, q_in, a_out, q_out = idx
        value = l_element(P, z, w, *idx)
        if a_in + q_in != a_out + q_out:
            assert value == 0, idx
        else:
            assert value != 0, idx


def test_k_weights_are_diagonal_pair():
    z = mpq(5, 3)
    a, b = P.a, P.b
    assert k_element(P, z, (0, 1)) == b * a * z - 1 / (b * a * z)
    assert k_element(P, z, (1, 0)) == b / (a * z) - a * z / b


def test_single_site_row_operators():
    z, w = mpq(5, 3), mpq(4, 7)
    vac = FockVector.vacuum(1)
    b_out = apply_row_operator("B", P, z, (w,), vac)
    assert dict(b_out.amplitudes) == {1: P.gap}
    d_out = apply_row_operator("D", P, z, (w,), vac)
    assert dict(d_out.amplitudes) == {0: P.a * z - w / (P.a * z)}


def test_anchor_value(anchor):
    params, z, w = anchor
    assert wavefunction_oracle(params, z, w, (1,)) == mpq(1275, 8)


@pytest.mark.parametrize("M", range(1, 7))
def test_double_row_b_raises_particle_number_by_one(M):
    pt = sample_point(M, M, 1)
    params = ModelParams(pt.a, pt.b)
    for n in range(M):
        mask = (1 << n) - 1
        out = apply_double_row_b(params, pt.z[0], pt.w, FockVector.basis(M, mask))
        assert out.occupations() <= {n + 1}


@pytest.mark.parametrize("M", range(1, 7))
def test_row_operators_grade_occupation(M):
    pt = sample_point(100 + M, M, 1)
    params = ModelParams(pt.a, pt.b)
    for mask in range(1 << M):
        n = bin(mask).count("1")
        v = FockVector.basis(M, mask)
        assert apply_row_operator("B", params, pt.z[0], pt.w, v).occupations() <= {n + 1}
        assert apply_row_operator("D", params, pt.z[0], pt.w, v).occupations() <= {n}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_literal_double_row_matches_decomposition(seed, M):
    pt = sample_point(seed, M, 1)
    params = ModelParams(pt.a, pt.b)
    mask = seed % (1 << M)
    v = FockVector.basis(M, mask, amp=mpq(3, 5))
    assert apply_double_row_b(params, pt.z[0], pt.w, v) == apply_double_row_b_literal(params, pt.z[0], pt.w, v)


@pytest.mark.parametrize("M", [1, 2, 3, 5])
def test_single_particle_closed_forms(M):
    pt = sample_point(7 * M, M, 1)
    params = ModelParams(pt.a, pt.b)
    for x1 in range(1, M + 1):
        assert wavefunction_oracle(params, pt.z, pt.w, (x1,)) == n1_closed_form(params, pt.z[0], pt.w, x1)
        assert dual_wavefunction_oracle(params, pt.z, pt.w, (x1,)) == dual_n1_closed_form(params, pt.z[0], pt.w, x1)


def test_occupation_config_validation():
    with pytest.raises(ValueError):
        OccupationConfig(3, (2, 1))
    with pytest.raises(ValueError):
        OccupationConfig(3, (4,))
    cfg = OccupationConfig(4, (1, 3))
    assert cfg.mask == 0b0101
    assert cfg.complement().x == (2, 4)


def test_model_params_rejects_singular_couplings():
    with pytest.raises(ValueError):
        ModelParams(1, 3)
    with pytest.raises(ValueError):
        ModelParams(2, -1)
