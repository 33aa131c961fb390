import itertools
import random
from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from reflect_vertex.scalarfield import (
    BETHE,
    HOMOGENEOUS,
    SamplePoint,
    det_bareiss,
    det_exact,
    det_laplace,
    fmt,
    interpolate_univariate,
    is_admissible,
    permutation_sign,
    point_violations,
    poly_eval,
    sample_point,
    to_scalar,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def cofactor_det(m):
    # independent oracle: first-row cofactor expansion over Fractions
    if len(m) == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in m[1:]])
        for j in range(len(m))
    )


def test_to_scalar_parses_fraction_strings():
    assert to_scalar("3/4") == mpq(3, 4)
    assert to_scalar("-6/8") == mpq(-3, 4)
    assert to_scalar(Fraction(5, 7)) == mpq(5, 7)
    assert to_scalar(7) == 7


def test_to_scalar_rejects_zero_denominator_and_floats():
    with pytest.raises(ZeroDivisionError):
        to_scalar("1/0")
    with pytest.raises((TypeError, ValueError)):
        to_scalar(0.5)


def test_fmt_is_reduced_p_over_q():
    assert fmt(mpq(1275, 8)) == "1275/8"
    assert fmt(mpq(4, 2)) == "2"


def test_hilbert_determinant():
    h = [[Fraction(1, i + j + 1) for j in range(3)] for i in range(3)]
    assert det_exact(h) == Fraction(1, 2160)
    assert cofactor_det(h) == Fraction(1, 2160)
    assert det_bareiss(h) == det_laplace(h)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor_oracle(m):
    assert det_bareiss(m) == cofactor_det(m)
    assert det_exact(m) == cofactor_det(m)


def test_singular_matrix_has_zero_determinant():
    m = [[1, 2, 3], [2, 4, 6], [Fraction(1, 3), 5, 7]]
    assert det_bareiss(m) == 0
    assert det_exact([[0, 1], [1, 0]]) == -1


@given(st.permutations(range(6)), st.integers(0, 4), st.integers(0, 4))
def test_permutation_sign_flips_under_transposition(perm, i, j):
    perm = list(perm)
    if i == j:
        return
    swapped = perm[:]
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert permutation_sign(swapped) == -permutation_sign(perm)


def test_permutation_sign_sums_to_zero():
    assert sum(permutation_sign(p) for p in itertools.permutations(range(4))) == 0


@settings(max_examples=80, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=7))
def test_interpolation_recovers_polynomial(coeffs):
    xs = range(-3, len(coeffs) + 1)
    samples = [(t, poly_eval(coeffs, t)) for t in xs]
    got = interpolate_univariate(samples)
    trimmed = list(coeffs)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    assert got == trimmed


def test_interpolation_rejects_duplicate_abscissae():
    with pytest.raises(ValueError):
        interpolate_univariate([(1, 2), (1, 3)])


def test_sample_point_is_deterministic():
    assert sample_point(11, 4, 2) == sample_point(11, 4, 2)
    assert sample_point(11, 4, 2) != sample_point(12, 4, 2)


def test_sample_point_admissible_over_many_seeds():
    for seed in range(1000):
        M = 1 + seed % 5
        N = seed % (M + 1)
        pt = sample_point(seed, M, N)
        assert is_admissible(pt), (seed, point_violations(pt))


def test_constrained_samples():
    for seed in range(100):
        pt = sample_point(seed, 4, 2, {HOMOGENEOUS, BETHE})
        assert pt.w == (1, 1, 1, 1)
        assert is_admissible(pt, {HOMOGENEOUS, BETHE})


def test_anchor_violates_generic_invariants():
    pt = SamplePoint(a=mpq(2), b=mpq(3), z=(mpq(2),), w=(mpq(1),), seed=0, constraints=frozenset())
    assert point_violations(pt)


def test_random_module_not_shared():
    state = random.getstate()
    sample_point(3, 3, 2)
    assert random.getstate() == state
