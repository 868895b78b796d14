"""Short-collision (Dyson, second order in tau) analytics of the simultaneous machine.

In one collision the qubit couples to a hot and a cold ancilla at once.
Expanding the three-body unitary to order tau^2 gives an affine population
map with contraction ``eta = 1 - 2 tau^2 sum(J^2)``, an affine coherence map
acting on ``c`` and ``c*``, and per-collision heat and work. None of these
formulas enforce ``J tau << 1``; the returned records carry ``j_tau`` and
``omega_tau`` so callers can judge whether the regime applies.

The equal-coupling results (all four couplings equal) are exact for any tau.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alternating import FrozenDynamicsError
from .model import MachineConfig, QubitState, gibbs_population


@dataclass(frozen=True)
class DysonPrediction:
    eta: float
    p_fixed: float
    psi_c: complex        # coefficient of c in c_{n+1}
    psi_cconj: complex    # coefficient of c* in c_{n+1}
    rates: dict           # {"xx_h", "yy_h", "xx_c", "yy_c"} -> J^2 tau
    omega_eff: float      # damping of coherence from free precession, w^2 tau / 2
    j_tau: float          # max |J| tau
    omega_tau: float      # max w tau


def _populations(cfg: MachineConfig) -> tuple[float, float]:
    p_c = float(gibbs_population(cfg.cold.bath.beta, cfg.cold.bath.omega))
    p_h = float(gibbs_population(cfg.hot.bath.beta, cfg.hot.bath.omega))
    return p_c, p_h


def _sum_sq(cfg: MachineConfig) -> float:
    return sum(j * j for j in cfg.couplings())


def dyson_fixed_point(cfg: MachineConfig) -> float:
    """Steady population of the order-tau^2 map.

    Written as a balance of pumping terms against the total loss rate.
    """
    jxx_h, jyy_h, jxx_c, jyy_c = cfg.couplings()
    total = _sum_sq(cfg)
    if total == 0:
        raise FrozenDynamicsError("all couplings are zero")
    p_c, p_h = _populations(cfg)
    anisotropy = (jxx_h - jyy_h) ** 2 + (jxx_c - jyy_c) ** 2
    pumping = anisotropy + 4.0 * (jxx_c * jyy_c * p_c + jxx_h * jyy_h * p_h)
    return pumping / (2.0 * total)


def dyson_eta(cfg: MachineConfig) -> float:
    return 1.0 - 2.0 * _sum_sq(cfg) * cfg.tau**2


def dyson_population_step(p_n: float, cfg: MachineConfig) -> float:
    p_fix = dyson_fixed_point(cfg)
    return dyson_eta(cfg) * (p_n - p_fix) + p_fix


def coherence_coefficients(cfg: MachineConfig) -> tuple[complex, complex]:
    """``(A, B)`` with ``c_{n+1} = A c_n + B c_n*`` to order tau^2.

    The free precession uses the system splitting.
    """
    jxx_h, jyy_h, jxx_c, jyy_c = cfg.couplings()
    w, tau = cfg.omega_s, cfg.tau
    a = 1.0 + 1j * w * tau - (0.5 * w**2 + _sum_sq(cfg)) * tau**2
    b = (jxx_c**2 - jyy_c**2 + jxx_h**2 - jyy_h**2) * tau**2
    return complex(a), complex(b)


def dyson_coherence_step(c_n: complex, cfg: MachineConfig) -> complex:
    a, b = coherence_coefficients(cfg)
    return a * c_n + b * np.conj(c_n)


def dyson_prediction(cfg: MachineConfig) -> DysonPrediction:
    jxx_h, jyy_h, jxx_c, jyy_c = cfg.couplings()
    tau = cfg.tau
    a, b = coherence_coefficients(cfg)
    omegas = (cfg.omega_s, cfg.hot.bath.omega, cfg.cold.bath.omega)
    return DysonPrediction(
        eta=dyson_eta(cfg),
        p_fixed=dyson_fixed_point(cfg),
        psi_c=a,
        psi_cconj=b,
        rates={"xx_h": jxx_h**2 * tau, "yy_h": jyy_h**2 * tau,
               "xx_c": jxx_c**2 * tau, "yy_c": jyy_c**2 * tau},
        omega_eff=0.5 * cfg.omega_s**2 * tau,
        j_tau=max(abs(j) for j in cfg.couplings()) * tau,
        omega_tau=max(omegas) * tau,
    )


def eom_rhs(state: QubitState, cfg: MachineConfig) -> tuple[float, complex]:
    """Continuous-time limit of the Dyson maps: ``(dp/dt, dc/dt)``.

    Rates are ``Gamma = J^2 tau``; the precession damping is ``w^2 tau / 2``.
    """
    pred = dyson_prediction(cfg)
    gamma = sum(pred.rates.values())
    gamma_diff = (pred.rates["xx_c"] - pred.rates["yy_c"]
                  + pred.rates["xx_h"] - pred.rates["yy_h"])
    dp = -2.0 * gamma * (state.p - pred.p_fixed)
    c = complex(state.c)
    dc = (1j * cfg.omega_s - pred.omega_eff - gamma) * c + gamma_diff * c.conjugate()
    return dp, dc


def equal_coupling_step(p_n, j, tau, p_c, p_h):
    """Exact one-collision population map when all four couplings equal ``j``."""
    cos = np.cos(4.0 * np.sqrt(2.0) * j * tau)
    return 0.25 * (-cos * (p_c + p_h - 2.0 * p_n) + p_c + p_h + 2.0 * p_n)


def equal_coupling_heat(p_n, j, omega, tau, p_c, p_h):
    """Exact heat into the (cold, hot) ancillas for one equal-coupling collision."""
    y = np.sin(np.sqrt(2.0) * j * tau) ** 2
    cos = np.cos(2.0 * np.sqrt(2.0) * j * tau)
    s = p_c + p_h - 2.0 * p_n
    q_cold = 0.5 * omega * y * (cos * s + 3.0 * p_c - p_h - 2.0 * p_n)
    q_hot = 0.5 * omega * y * (cos * s + 3.0 * p_h - p_c - 2.0 * p_n)
    return q_cold, q_hot


def _contact_heat(jxx, jyy, omega_a, p_a, p_n, tau):
    return ((jxx - jyy) ** 2 * (2.0 * p_a - 1.0)
            + 4.0 * jxx * jyy * (p_a - p_n)) * omega_a * tau**2


def _contact_work(jxx, jyy, omega_a, omega_s, p_a, p_n, tau):
    # reduces to 2 (jxx - jyy)^2 w (1 - p_A - p_n) tau^2 at resonance
    s2, d2 = (jxx + jyy) ** 2, (jxx - jyy) ** 2
    return (s2 * (omega_a - omega_s) * (p_n - p_a)
            - d2 * (omega_a + omega_s) * (p_n - (1.0 - p_a))) * tau**2


def dyson_heat(p_n: float, cfg: MachineConfig) -> tuple[float, float]:
    """Order-tau^2 heat into the (cold, hot) ancillas for a collision from ``p_n``."""
    p_c, p_h = _populations(cfg)
    c, h = cfg.cold, cfg.hot
    q_cold = _contact_heat(c.coupling.jxx, c.coupling.jyy, c.bath.omega, p_c, p_n, cfg.tau)
    q_hot = _contact_heat(h.coupling.jxx, h.coupling.jyy, h.bath.omega, p_h, p_n, cfg.tau)
    return q_cold, q_hot


def dyson_work(p_n: float, cfg: MachineConfig) -> tuple[float, float]:
    """Order-tau^2 interaction-energy growth at the (cold, hot) contacts."""
    p_c, p_h = _populations(cfg)
    c, h = cfg.cold, cfg.hot
    w_cold = _contact_work(c.coupling.jxx, c.coupling.jyy, c.bath.omega, cfg.omega_s,
                           p_c, p_n, cfg.tau)
    w_hot = _contact_work(h.coupling.jxx, h.coupling.jyy, h.bath.omega, cfg.omega_s,
                          p_h, p_n, cfg.tau)
    return w_cold, w_hot


def conduction_closed_form(j, tau, omega, p_c, p_h):
    """Steady heat per collision and its tau-derivative for equal isotropic couplings.

    Returns ``(q_cold, current)``; ``q_hot = -q_cold``.
    """
    arg = np.sqrt(2.0) * np.asarray(j, float) * np.asarray(tau, float)
    q = omega * (p_c - p_h) * np.sin(arg) ** 2
    current = np.sqrt(2.0) * omega * j * (p_c - p_h) * np.sin(2.0 * arg)
    return q, current


def conduction_current_y(y, j, omega, p_c, p_h):
    """Current magnitude in terms of ``y = sin^2(sqrt(2) J tau)``."""
    y = np.asarray(y, float)
    return 2.0 * np.sqrt(2.0) * omega * j * (p_c - p_h) * np.sqrt(y * (1.0 - y))


def overheating_margin(cfg: MachineConfig) -> float:
    """Left side of the overheating inequality; negative means p_fixed < p_H."""
    jxx_h, jyy_h, jxx_c, jyy_c = cfg.couplings()
    p_c, p_h = _populations(cfg)
    return ((1.0 - 2.0 * p_h) * ((jxx_h - jyy_h) ** 2 + (jxx_c - jyy_c) ** 2)
            + 4.0 * jxx_c * jyy_c * (p_c - p_h))


def overheating_condition(cfg: MachineConfig) -> bool:
    return overheating_margin(cfg) < 0
