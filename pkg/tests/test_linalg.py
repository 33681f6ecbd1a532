import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from simplex_forge import linalg
from simplex_forge.errors import DimensionMismatch
from oracles import brute_cofactor, brute_vector_product, leibniz_det


def test_determinant_examples():
    assert linalg.determinant(np.eye(3)) == pytest.approx(1.0)
    assert linalg.determinant([[-2, -1], [-1, -2]]) == pytest.approx(3.0)
    assert linalg.determinant(linalg.ones_plus_identity(3)) == pytest.approx(4.0)


@pytest.mark.parametrize("n", range(2, 7))
def test_determinant_matches_leibniz(n, rng):
    for _ in range(5):
        m = rng.uniform(-1, 1, (n, n))
        assert linalg.determinant(m) == pytest.approx(leibniz_det(m), abs=1e-12)


def test_cofactor_examples():
    for n in range(2, 6):
        np.testing.assert_allclose(linalg.cofactor_matrix(np.eye(n)), np.eye(n), atol=1e-15)
    np.testing.assert_allclose(linalg.cofactor_matrix([[-2, -1], [-1, -2]]),
                               [[-2, 1], [1, -2]], atol=1e-15)
    c = linalg.cofactor_matrix(np.diag([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(c, np.diag([6.0, 3.0, 2.0]), atol=1e-15)
    np.testing.assert_allclose(linalg.cofactor_matrix(c), np.diag([6.0, 12.0, 18.0]), atol=1e-12)


def test_cofactor_of_asymmetric_matrix():
    # c(M) M^T = det(M) E fixes which of cofactor/adjugate is meant
    m = np.array([[1.0, 2.0], [3.0, 4.0]])
    np.testing.assert_allclose(linalg.cofactor_matrix(m), [[4, -3], [-2, 1]], atol=1e-15)


@pytest.mark.parametrize("n", range(2, 6))
def test_cofactor_matches_brute_force(n, rng):
    m = rng.uniform(-1, 1, (n, n))
    np.testing.assert_allclose(linalg.cofactor_matrix(m), brute_cofactor(m), atol=1e-12)


def test_cofactor_of_singular_matrix():
    m = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 5.0]])
    c = linalg.cofactor_matrix(m)
    np.testing.assert_allclose(c, brute_cofactor(m), atol=1e-12)
    np.testing.assert_allclose(c @ m.T, np.zeros((3, 3)), atol=1e-12)


def test_vector_product_examples():
    e = np.eye(3)
    np.testing.assert_allclose(linalg.vector_product([e[0], e[1]]), e[2], atol=1e-15)
    np.testing.assert_allclose(linalg.vector_product([e[1], e[0]]), -e[2], atol=1e-15)
    np.testing.assert_allclose(linalg.vector_product([(1.0, -1.0)]), [-1.0, -1.0], atol=1e-15)


def test_vector_product_is_first_cofactor_column(rng):
    m = rng.uniform(-1, 1, (4, 4))
    np.testing.assert_allclose(linalg.vector_product(m[:, 1:].T),
                               linalg.cofactor_matrix(m)[:, 0], atol=1e-12)


@pytest.mark.parametrize("n", range(2, 7))
def test_vector_product_matches_brute_force(n, rng):
    ws = rng.uniform(-1, 1, (n - 1, n))
    np.testing.assert_allclose(linalg.vector_product(ws), brute_vector_product(ws), atol=1e-12)


def test_vector_product_rejects_ragged():
    with pytest.raises(DimensionMismatch):
        linalg.vector_product([(1.0, 0.0, 0.0), (0.0, 1.0)])
    with pytest.raises(DimensionMismatch):
        linalg.vector_product([(1.0, 0.0, 0.0)])
    with pytest.raises(DimensionMismatch):
        linalg.vector_product([])


def test_vector_product_norm_zero_for_dependent():
    r = linalg.vector_product([(1.0, 2.0, 3.0), (2.0, 4.0, 6.0)])
    assert np.linalg.norm(r) == 0.0


def test_dimension_range_enforced():
    with pytest.raises(DimensionMismatch):
        linalg.as_matrix(np.eye(13))
    with pytest.raises(DimensionMismatch):
        linalg.as_matrix([[1.0]])
    with pytest.raises(DimensionMismatch):
        linalg.as_matrix([[1.0, np.nan], [0.0, 1.0]])


def test_degeneracy_threshold_is_scale_invariant():
    m = np.array([[1.0, 1.0], [1.0, 1.0 + 1e-13]])
    assert linalg.is_singular(m)
    assert linalg.is_singular(1e6 * m)
    assert not linalg.is_singular(1e-6 * np.eye(2))
    # columns of very different size are not mistaken for dependence
    assert not linalg.is_singular(np.diag([1e-8, 1e4, 1e4]))


small = st.floats(-1, 1, allow_nan=False, allow_subnormal=False, width=64)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.tuples(arrays(float, (n - 1, n), elements=small),
                        arrays(float, (n,), elements=small),
                        arrays(float, (n,), elements=small),
                        st.floats(-3, 3), st.integers(0, n - 2))))
def test_vector_product_multilinear_alternating(data):
    ws, a, b, lam, slot = data
    vp = linalg.vector_product
    left, right = ws.copy(), ws.copy()
    left[slot], right[slot] = a, b
    both = ws.copy()
    both[slot] = a + lam * b
    np.testing.assert_allclose(vp(both), vp(left) + lam * vp(right), atol=1e-12)
    if len(ws) >= 2:
        swapped = ws.copy()
        swapped[[0, 1]] = swapped[[1, 0]]
        np.testing.assert_allclose(vp(swapped), -vp(ws), atol=1e-13)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: arrays(float, (n - 1, n), elements=small)))
def test_vector_product_orthogonal_and_norm(ws):
    r = linalg.vector_product(ws)
    for w in ws:
        assert abs(w @ r) <= 1e-12
    d = linalg.determinant(np.column_stack([r] + list(ws)))
    assert d == pytest.approx(r @ r, abs=1e-12)
    assert d >= -1e-15
