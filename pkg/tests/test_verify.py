import itertools
from math import comb

import pytest
from gmpy2 import mpq

from reflect_vertex.lattice import ModelParams
from reflect_vertex.report import VerificationReport
from reflect_vertex.scalarfield import BETHE, HOMOGENEOUS, sample_point
from reflect_vertex.verify import (
    PROPERTY_CHECKS,
    check_auxiliary,
    check_bethe,
    check_domain_wall,
    check_lemma_identity,
    check_pairing,
    check_properties,
    check_symfunc_identity,
    lemma_sides,
    pairing_terms,
    run_suite,
)

P = ModelParams(2, 3)


def _pt(seed, M, N, cons=()):
    pt = sample_point(seed, M, N, cons)
    return ModelParams(pt.a, pt.b), pt.z, pt.w


def test_lemma_worked_example():
    lhs, rhs = lemma_sides(P, mpq(3), (mpq(5),), 2)
    assert lhs == rhs == mpq(500, 3)


@pytest.mark.parametrize("x1", range(2, 7))
def test_lemma_random(x1):
    params, z, w = _pt(x1, x1 - 1, 1)
    assert check_lemma_identity(params, z[0], w, x1).passed


def test_symfunc_identity_anchor(anchor):
    params, z, w = anchor
    rep = check_symfunc_identity(params, z, w, (1,))
    assert rep.passed and rep.lhs == mpq(1275, 8)


def test_properties_cover_every_check():
    params, z, w = _pt(5, 4, 2)
    seen = set()
    for x in [(1, 4), (1, 2)]:
        for dual in (False, True):
            for rep in check_properties(params, z, w, x, dual=dual):
                assert rep.passed, rep
                seen.add(rep.check_id.split("[")[0].removesuffix("_dual"))
    assert seen == set(PROPERTY_CHECKS)


def test_inapplicable_property_is_rejected():
    params, z, w = _pt(5, 4, 2)
    with pytest.raises(ValueError):
        check_properties(params, z, w, (1, 2), which=["degree"])
    with pytest.raises(ValueError):
        check_properties(params, z, w, (1, 4), which=["factorization"])


@pytest.mark.parametrize("M", [2, 3, 4])
def test_pairing_term_count(M):
    for N in range(M + 1):
        terms = list(pairing_terms(M, N))
        assert len(terms) == comb(M, N)
        for xbar, x in terms:
            assert sorted(xbar + x) == list(range(1, M + 1))


def _every_checker(rhs_scale):
    params, z, w = _pt(3, 3, 2)
    fz, fw = _pt(8, 3, 3)[1:]
    hp, hz, hw = _pt(9, 3, 3, {HOMOGENEOUS})
    bp, bz, _ = _pt(10, 3, 2, {HOMOGENEOUS, BETHE})
    yield check_lemma_identity(params, z[0], w, 3, rhs_scale=rhs_scale)
    yield check_symfunc_identity(params, z, w, (1, 3), rhs_scale=rhs_scale)
    yield check_symfunc_identity(params, z, w, (1, 3), dual=True, rhs_scale=rhs_scale)
    for dual in (False, True):
        yield from check_properties(params, z, w, (1, 3), dual=dual, rhs_scale=rhs_scale)
        yield from check_properties(params, z, w, (1, 2), which=["factorization"], dual=dual, rhs_scale=rhs_scale)
    yield check_pairing(params, fz, fw, 1, rhs_scale=rhs_scale)
    yield check_pairing(hp, hz, hw, 2, homogeneous=True, rhs_scale=rhs_scale)
    yield check_domain_wall(params, fz, fw, rhs_scale=rhs_scale)
    yield check_domain_wall(hp, hz, hw, homogeneous=True, rhs_scale=rhs_scale)
    yield check_bethe(bp, bz, (1, 3), 3, rhs_scale=rhs_scale)
    yield from check_auxiliary(bp, bz[0], bz[1], rhs_scale=rhs_scale)


def test_every_checker_passes_and_detects_mutation():
    good = list(_every_checker(1))
    bad = list(_every_checker(2))
    assert len(good) == len(bad) > 15
    for g, b in zip(good, bad):
        assert g.passed, g
        assert g.lhs != 0, g
        assert not b.passed, b


def test_report_enforces_consistency():
    with pytest.raises(ValueError):
        VerificationReport("x", "ref", 0, "", mpq(1), mpq(2), True)


def test_run_suite_is_deterministic():
    sizes = [(2, 1), (3, 2)]
    first = [r.to_json(timing=False) for r in run_suite(4, sizes)]
    second = [r.to_json(timing=False) for r in run_suite(4, sizes)]
    assert first == second
    assert all(r["passed"] for r in first)


def test_run_suite_empty_sizes():
    assert run_suite(0, []) == []


def test_run_suite_rejects_bad_sizes():
    with pytest.raises(ValueError):
        run_suite(0, [(2, 3)])
    with pytest.raises(ValueError):
        run_suite(0, [(2, 1)], ["nope"])


@pytest.mark.parametrize("M,N", [(1, 0), (1, 1), (4, 0), (4, 4)])
def test_run_suite_edge_sizes(M, N):
    reports = run_suite(1, [(M, N)])
    assert reports and all(r.passed for r in reports)
