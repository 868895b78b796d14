import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qubit_ri import matops
from qubit_ri.model import (
    BathSpec,
    Coupling,
    MachineConfig,
    QubitState,
    UnphysicalStateError,
    gibbs_population,
    gibbs_state,
    qubit_hamiltonian,
    simultaneous_parts,
    total_hamiltonian_alternating,
    total_hamiltonian_simultaneous,
)


def mp_gibbs(beta, omega):
    mpmath.mp.dps = 40
    return mpmath.mpf(1) / (1 + mpmath.exp(-mpmath.mpf(beta) * omega))


@pytest.mark.parametrize("beta,omega", [(2, 1), (1, 1), (0.1, 2), (5, 0.5), (40, 1)])
def test_gibbs_population_high_precision(beta, omega):
    assert gibbs_population(beta, omega) == pytest.approx(float(mp_gibbs(beta, omega)),
                                                          abs=1e-15)


def test_gibbs_state_is_diagonal_with_ground_first():
    s = gibbs_state(BathSpec(beta=2.0))
    assert s.c == 0
    assert s.p > 0.5
    h = qubit_hamiltonian(1.0)
    # ground state has the lower energy
    assert h[0, 0] < h[1, 1]


def test_state_validation():
    QubitState(0.5, 0.5j).validate()
    with pytest.raises(UnphysicalStateError):
        QubitState(0.5, 0.6).validate()
    with pytest.raises(UnphysicalStateError):
        QubitState(1.1).validate()


@given(st.integers(0, 2**32))
def test_random_state_physical(seed):
    s = QubitState.random(np.random.default_rng(seed))
    assert s.is_physical()
    assert matops.is_density_matrix(s.matrix())


def test_state_round_trip():
    s = QubitState(0.3, 0.1 - 0.2j)
    assert QubitState.from_matrix(s.matrix()) == s


def test_config_validation():
    with pytest.raises(ValueError):
        MachineConfig.build(tau=-1, jxx_h=1, jyy_h=1, jxx_c=1, jyy_c=1)
    with pytest.raises(ValueError):
        MachineConfig.build(tau=1, jxx_h=1, jyy_h=1, jxx_c=1, jyy_c=1, beta_h=2, beta_c=1)
    with pytest.raises(ValueError):
        BathSpec(beta=math.nan)
    cfg = MachineConfig.build(tau=0.5, jxx_h=4, jyy_h=16, jxx_c=2, jyy_c=8)
    assert cfg.couplings() == (4, 16, 2, 8)
    assert cfg.with_tau(0.1).tau == 0.1
    assert Coupling(1, 2).scaled(3) == Coupling(3, 6)


def test_hamiltonians_hermitian(aniso_cfg):
    for which in ("hot", "cold"):
        h = total_hamiltonian_alternating(aniso_cfg, which)
        assert h.shape == (4, 4)
        assert matops.max_asymmetry(h) == 0
    h = total_hamiltonian_simultaneous(aniso_cfg)
    assert h.shape == (8, 8)
    assert matops.max_asymmetry(h) == 0


def test_simultaneous_ordering(aniso_cfg):
    # system (x) hot (x) cold: the cold ancilla energy acts on the last factor
    parts = simultaneous_parts(aniso_cfg)
    expected = matops.kron_all(np.eye(2), np.eye(2), qubit_hamiltonian(1.0))
    assert np.allclose(parts["cold"], expected)
