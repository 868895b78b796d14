import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qubit_ri import matops
from qubit_ri.matops import I2, SX, SY, SZ

finite = st.floats(-5, 5, allow_nan=False)


def hermitian(n):
    return arrays(float, (2, n, n), elements=finite).map(
        lambda a: (a[0] + 1j * a[1]) + (a[0] + 1j * a[1]).conj().T)


def test_pauli_algebra():
    assert np.allclose(SX @ SY, 1j * SZ)
    assert np.allclose(SZ @ SZ, I2)
    # ground state |0> has sigma_z = +1
    assert SZ[0, 0] == 1


@given(arrays(complex, (2, 2), elements=finite), arrays(complex, (3, 3), elements=finite))
def test_kron_matches_numpy(a, b):
    assert np.array_equal(matops.kron(a, b), np.kron(a, b))


def test_kron_batched():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(5, 2, 2))
    b = rng.normal(size=(5, 2, 2))
    out = matops.kron(a, b)
    for i in range(5):
        assert np.array_equal(out[i], np.kron(a[i], b[i]))


def test_kron_all_order():
    out = matops.kron_all(SZ, I2, SX)
    assert np.array_equal(out, np.kron(np.kron(SZ, I2), SX))


def test_partial_trace_product_state():
    rng = np.random.default_rng(2)
    mats = []
    for _ in range(3):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        m = m @ m.conj().T
        mats.append(m / np.trace(m))
    rho = matops.kron_all(*mats)
    for k in range(3):
        assert np.allclose(matops.partial_trace(rho, [2, 2, 2], [k]), mats[k], atol=1e-14)
    assert np.allclose(matops.partial_trace(rho, [2, 2, 2], [0, 2]),
                       np.kron(mats[0], mats[2]), atol=1e-14)


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ValueError):
        matops.partial_trace(np.eye(4), [2, 3], [0])


@settings(max_examples=60)
@given(hermitian(4), st.floats(0, 3))
def test_expm_matches_scipy_and_is_unitary(h, t):
    u = matops.expm_hermitian(h, t)
    assert np.allclose(u, scipy.linalg.expm(-1j * h * t), atol=1e-9)
    assert matops.unitarity_error(u) < 1e-12


def test_expm_rejects_non_hermitian():
    with pytest.raises(matops.NotHermitianError, match="not Hermitian"):
        matops.expm_hermitian(np.array([[0, 1], [0, 0]], complex), 1.0)


def test_expm_broadcast_over_times():
    t = np.array([0.0, 0.3, 1.1])
    u = matops.expm_hermitian(SX, t)
    for k, tk in enumerate(t):
        expected = np.cos(tk) * I2 - 1j * np.sin(tk) * SX
        assert np.allclose(u[k], expected, atol=1e-15)


def test_expectation_real_and_complex_guard():
    rho = np.diag([0.8, 0.2]).astype(complex)
    assert matops.expectation(SZ, rho) == pytest.approx(0.6, abs=1e-15)
    with pytest.raises(ValueError):
        matops.expectation(np.array([[0, 1j], [0, 0]]), np.array([[0.5, 0.5], [0.5, 0.5]]))


def test_is_density_matrix():
    assert matops.is_density_matrix(np.diag([0.3, 0.7]))
    assert not matops.is_density_matrix(np.diag([1.2, -0.2]))
    assert not matops.is_density_matrix(np.diag([0.3, 0.6]))
