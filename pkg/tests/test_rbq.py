import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rblse.errors import DimensionMismatch
from rblse.rbq import (
    E1,
    E2,
    RBMatrix,
    RBScalar,
    frobenius_norm,
    mat_add,
    mat_mul,
    rb_mul,
    rb_norm,
    scale,
)
from rblse.representation import from_real_rep, real_rep

from conftest import random_rb

unit = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
scalars = st.builds(RBScalar, unit, unit, unit, unit)

I = RBScalar(0, 1, 0, 0)
J = RBScalar(0, 0, 1, 0)
K = RBScalar(0, 0, 0, 1)
ONE = RBScalar(1, 0, 0, 0)


def test_multiplication_table():
    assert rb_mul(J, J) == ONE
    assert rb_mul(I, I) == RBScalar(-1, 0, 0, 0)
    assert rb_mul(K, K) == RBScalar(-1, 0, 0, 0)
    assert rb_mul(I, J) == rb_mul(J, I) == K
    assert rb_mul(J, K) == rb_mul(K, J) == I
    assert rb_mul(K, I) == rb_mul(I, K) == RBScalar(0, 0, -1, 0)


def test_identity_element():
    z = RBScalar(2, 3, -1, 0.5)
    assert rb_mul(z, ONE) == z


def test_zero_divisors_and_idempotents():
    assert rb_mul(E1, E2) == RBScalar(0, 0, 0, 0)
    assert rb_norm(rb_mul(E1, E2)) == 0.0
    assert rb_mul(E1, E1) == E1
    assert rb_mul(E2, E2) == E2


@pytest.mark.parametrize("z, expected", [
    (RBScalar(1, 1, 1, 1), 2.0),
    (RBScalar(), 0.0),
    (E1, math.sqrt(0.5)),
])
def test_norm_examples(z, expected):
    assert rb_norm(z) == pytest.approx(expected, rel=1e-15)


@given(scalars, scalars)
def test_commutativity_is_bitwise(a, b):
    assert rb_mul(a, b).as_tuple() == rb_mul(b, a).as_tuple()


@given(scalars, scalars, scalars)
def test_associativity(a, b, c):
    lhs = np.array(rb_mul(rb_mul(a, b), c).as_tuple())
    rhs = np.array(rb_mul(a, rb_mul(b, c)).as_tuple())
    assert np.linalg.norm(lhs - rhs) <= 1e-14 * max(1.0, rb_norm(a) * rb_norm(b) * rb_norm(c))


@given(scalars)
def test_norm_formulas_agree(a):
    quad = rb_norm(a)
    pair = math.sqrt(abs(a.r1) ** 2 + abs(a.r2) ** 2)
    assert abs(quad - pair) <= 1e-15 * max(quad, 1e-300) * 2


@given(scalars, scalars)
def test_scalar_product_matches_complex_pair_rule(a, b):
    expected = RBScalar.from_complex_pair(a.r1 * b.r1 + a.r2 * b.r2, a.r1 * b.r2 + a.r2 * b.r1)
    got = rb_mul(a, b)
    assert np.allclose(got.as_tuple(), expected.as_tuple(), rtol=0, atol=1e-15)


def test_matrix_views_are_lossless(rng):
    M = random_rb(rng, 3, 4)
    again = RBMatrix.from_complex(M.N1, M.N2)
    assert again == M
    assert np.array_equal(M.N1.real, M.planes[0]) and np.array_equal(M.N2.imag, M.planes[3])


def test_planes_must_share_shape():
    with pytest.raises(DimensionMismatch):
        RBMatrix.from_planes(np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((2, 3)), np.zeros((2, 2)))


def test_matrix_is_immutable(rng):
    M = random_rb(rng, 2, 2)
    with pytest.raises(ValueError):
        M.planes[0, 0, 0] = 1.0


def test_mat_mul_identity(rng):
    A = random_rb(rng, 4, 3)
    assert mat_mul(A, RBMatrix.identity(3)) == A


def test_mat_mul_scalar_embedding(rng):
    a, b = (RBScalar(*rng.standard_normal(4)) for _ in range(2))
    prod = mat_mul(RBMatrix.from_entries([[a]]), RBMatrix.from_entries([[b]])).entry(0, 0)
    assert np.allclose(prod.as_tuple(), rb_mul(a, b).as_tuple(), rtol=0, atol=1e-15)


def test_mat_mul_entrywise_definition(rng):
    # Brute-force oracle: sum of rb_mul over the inner index.
    A, B = random_rb(rng, 3, 2), random_rb(rng, 2, 4)
    C = mat_mul(A, B)
    for r in range(3):
        for c in range(4):
            acc = RBScalar()
            for q in range(2):
                acc = acc + rb_mul(A.entry(r, q), B.entry(q, c))
            assert np.allclose(C.entry(r, c).as_tuple(), acc.as_tuple(), atol=1e-14)


def test_mat_mul_through_real_representation(rng):
    A, B = random_rb(rng, 3, 2), random_rb(rng, 2, 4)
    via_rep = from_real_rep(real_rep(A) @ real_rep(B), tol=1e-13)
    assert np.allclose(via_rep.planes, mat_mul(A, B).planes, atol=1e-13)


def test_mat_mul_dimension_mismatch(rng):
    with pytest.raises(DimensionMismatch):
        mat_mul(random_rb(rng, 2, 3), random_rb(rng, 2, 3))


def test_add_and_scale(rng):
    A, B = random_rb(rng, 3, 3), random_rb(rng, 3, 3)
    assert mat_add(A, RBMatrix.zeros(3, 3)) == A
    assert np.allclose(real_rep(A + B), real_rep(A) + real_rep(B), atol=1e-15)
    assert scale(ONE, A) == A
    alpha = RBScalar(*rng.standard_normal(4))
    sA = scale(alpha, A)
    assert np.allclose(sA.entry(1, 2).as_tuple(), rb_mul(alpha, A.entry(1, 2)).as_tuple())
    with pytest.raises(DimensionMismatch):
        mat_add(A, random_rb(rng, 2, 3))


def test_frobenius_norm_examples(rng):
    assert frobenius_norm(RBMatrix.from_entries([[RBScalar(1, 1, 1, 1)]])) == 2.0
    assert frobenius_norm(RBMatrix.zeros(3, 2)) == 0.0
    M = random_rb(rng, 4, 3)
    brute = math.sqrt(sum(rb_norm(M.entry(r, c)) ** 2 for r in range(4) for c in range(3)))
    assert frobenius_norm(M) == pytest.approx(brute, rel=1e-14)


def test_json_dict_round_trip_is_bit_exact(rng):
    import json

    M = random_rb(rng, 3, 2, scale=1e-7)
    again = RBMatrix.from_dict(json.loads(json.dumps(M.to_dict())))
    assert again == M
    assert set(M.to_dict()["planes"]) == {"r", "i", "j", "k"}
