"""Seeded random configurations for sampling campaigns.

Every sample ``i`` of a run with seed ``s`` draws from its own PCG64 stream,
seeded by ``numpy.random.SeedSequence(s, spawn_key=(i,))``. This is the same
stream ``SeedSequence(s).spawn(n)[i]`` would give, so a sample's values do
not depend on how many other samples are drawn or in what order.
"""
from __future__ import annotations

import numpy as np

from .model import gibbs_population

COUPLING_RANGE = (-5.0, 5.0)
TAU_RANGE = (0.0, 2.0)
BETA_RANGE = (0.1, 5.0)
OMEGA_RANGE = (0.5, 2.0)


def sample_stream(seed: int, index: int) -> np.random.Generator:
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def sample_couplings(seed: int, n: int, low: float = COUPLING_RANGE[0],
                     high: float = COUPLING_RANGE[1]) -> np.ndarray:
    """``(n, 4)`` array of (jxx_h, jyy_h, jxx_c, jyy_c), i.i.d. uniform."""
    out = np.empty((n, 4))
    for i in range(n):
        out[i] = sample_stream(seed, i).uniform(low, high, 4)
    return out


def _open_uniform(rng: np.random.Generator, low: float, high: float) -> float:
    # excludes the lower end (tau = 0 is a frozen point)
    while True:
        x = rng.uniform(low, high)
        if x > low:
            return x


def sample_configs(seed: int, n: int, common_omega: bool = False) -> dict[str, np.ndarray]:
    """Random machine parameters over the standard sweep domain.

    Couplings in [-5, 5], tau in (0, 2], beta in [0.1, 5] and splittings in
    [0.5, 2]. Draws are rejected until ``beta_c >= beta_h`` and the cold
    ancilla is at least as populated as the hot one (``p_C >= p_H``).
    With ``common_omega`` the system and both ancillas share one splitting.
    """
    keys = ("jxx_h", "jyy_h", "jxx_c", "jyy_c", "tau", "beta_h", "beta_c",
            "omega_s", "omega_h", "omega_c")
    out = {k: np.empty(n) for k in keys}
    for i in range(n):
        rng = sample_stream(seed, i)
        j = rng.uniform(*COUPLING_RANGE, 4)
        tau = _open_uniform(rng, *TAU_RANGE)
        while True:
            b_h, b_c = np.sort(rng.uniform(*BETA_RANGE, 2))
            if common_omega:
                w_s = w_h = w_c = rng.uniform(*OMEGA_RANGE)
            else:
                w_s, w_h, w_c = rng.uniform(*OMEGA_RANGE, 3)
            if gibbs_population(b_c, w_c) >= gibbs_population(b_h, w_h):
                break
        for k, v in zip(keys, (*j, tau, b_h, b_c, w_s, w_h, w_c)):
            out[k][i] = v
    return out
