import numpy as np
import pytest

from qubit_ri.model import gibbs_population
from qubit_ri.sampling import sample_configs, sample_couplings, sample_stream


def test_streams_independent_of_sample_count():
    a = sample_couplings(42, 10)
    b = sample_couplings(42, 3)
    assert np.array_equal(a[:3], b)


def test_stream_matches_spawned_sequence():
    spawned = np.random.SeedSequence(7).spawn(4)[3]
    ref = np.random.Generator(np.random.PCG64(spawned)).uniform(size=5)
    assert np.array_equal(sample_stream(7, 3).uniform(size=5), ref)


def test_seed_range():
    with pytest.raises(ValueError):
        sample_stream(-1, 0)
    with pytest.raises(ValueError):
        sample_stream(2**64, 0)
    sample_stream(2**64 - 1, 0)


def test_config_domain():
    cfg = sample_configs(3, 500)
    for k in ("jxx_h", "jyy_h", "jxx_c", "jyy_c"):
        assert np.all(np.abs(cfg[k]) <= 5)
    assert np.all((cfg["tau"] > 0) & (cfg["tau"] <= 2))
    assert np.all(cfg["beta_c"] >= cfg["beta_h"])
    assert np.all((cfg["beta_h"] >= 0.1) & (cfg["beta_c"] <= 5))
    assert np.all(gibbs_population(cfg["beta_c"], cfg["omega_c"])
                  >= gibbs_population(cfg["beta_h"], cfg["omega_h"]))


def test_common_omega():
    cfg = sample_configs(3, 50, common_omega=True)
    assert np.array_equal(cfg["omega_s"], cfg["omega_h"])
    assert np.array_equal(cfg["omega_s"], cfg["omega_c"])
