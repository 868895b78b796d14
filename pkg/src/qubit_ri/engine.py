"""Brute-force repeated-interaction evolution.

This is the numerical oracle for the closed forms in ``alternating`` and
``simultaneous``: it builds the full system-ancilla unitary, evolves the
product state, traces the ancillas out and records heat and work from the
Heisenberg-picture energy changes. Nothing here uses the analytic
collision coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import matops
from .matops import I2, SX, SY, SZ, dagger, expectation, expm_hermitian, kron_all, partial_trace
from .model import (
    MachineConfig,
    QubitState,
    ThermoCycle,
    Which,
    alternating_parts,
    gibbs_population,
    gibbs_state,
    simultaneous_parts,
)

Mode = Literal["alternating", "simultaneous"]

FIRST_LAW_TOL = 1e-11
CONTRACTION_LIMIT = 1.0 - 1e-12


class FirstLawViolation(AssertionError):
    pass


class LimitCycleError(RuntimeError):
    pass


@dataclass(frozen=True)
class CollisionLedger:
    q_hot: float = 0.0
    q_cold: float = 0.0
    w_hot: float = 0.0
    w_cold: float = 0.0
    de_system: float = 0.0

    @property
    def residual(self) -> float:
        """First-law residual ``dE + sum W + sum Q`` (zero for a unitary collision)."""
        return self.de_system + self.w_hot + self.w_cold + self.q_hot + self.q_cold


@dataclass(frozen=True)
class TrajectoryPoint:
    n: int
    state: QubitState
    ledger: CollisionLedger


Trajectory = list


@dataclass(frozen=True)
class NumericLimitCycle:
    p_after_cold: float
    p_after_hot: float
    slope: float          # a in the fitted cycle map p -> a p + b
    coherence: float      # residual |c| after one verification cycle
    thermo: ThermoCycle
    de_cold: float = 0.0
    de_hot: float = 0.0


def _heisenberg_change(u, op, rho0):
    return expectation(dagger(u) @ op @ u - op, rho0)


def _energy_scale(*ops) -> float:
    return max(1.0, *(float(np.max(np.abs(o))) for o in ops))


def _check_first_law(ledger: CollisionLedger, scale: float) -> None:
    if abs(ledger.residual) > FIRST_LAW_TOL * scale:
        raise FirstLawViolation(
            f"energy not conserved in collision: residual {ledger.residual:.3e}"
        )


def alternating_unitary(cfg: MachineConfig, which: Which) -> np.ndarray:
    parts = alternating_parts(cfg, which)
    return expm_hermitian(sum(parts.values()), cfg.tau)


def simultaneous_unitary(cfg: MachineConfig) -> np.ndarray:
    return expm_hermitian(sum(simultaneous_parts(cfg).values()), cfg.tau)


def collide_alternating(state: QubitState, cfg: MachineConfig,
                        which: Which) -> tuple[QubitState, CollisionLedger]:
    state.validate()
    parts = alternating_parts(cfg, which)
    u = expm_hermitian(sum(parts.values()), cfg.tau)
    rho_a = gibbs_state(cfg.contact(which).bath).matrix()
    rho0 = matops.kron(state.matrix(), rho_a)
    rho1 = u @ rho0 @ dagger(u)
    new = QubitState.from_matrix(partial_trace(rho1, [2, 2], [0]))

    q = _heisenberg_change(u, parts["ancilla"], rho0)
    w = _heisenberg_change(u, parts["interaction"], rho0)
    de = _heisenberg_change(u, parts["system"], rho0)
    if which == "hot":
        ledger = CollisionLedger(q_hot=q, w_hot=w, de_system=de)
    else:
        ledger = CollisionLedger(q_cold=q, w_cold=w, de_system=de)
    _check_first_law(ledger, _energy_scale(*parts.values()))
    return new, ledger


def collide_simultaneous(state: QubitState,
                         cfg: MachineConfig) -> tuple[QubitState, CollisionLedger]:
    state.validate()
    parts = simultaneous_parts(cfg)
    u = expm_hermitian(sum(parts.values()), cfg.tau)
    rho0 = kron_all(state.matrix(), gibbs_state(cfg.hot.bath).matrix(),
                    gibbs_state(cfg.cold.bath).matrix())
    rho1 = u @ rho0 @ dagger(u)
    new = QubitState.from_matrix(partial_trace(rho1, [2, 2, 2], [0]))
    ledger = CollisionLedger(
        q_hot=_heisenberg_change(u, parts["hot"], rho0),
        q_cold=_heisenberg_change(u, parts["cold"], rho0),
        w_hot=_heisenberg_change(u, parts["int_hot"], rho0),
        w_cold=_heisenberg_change(u, parts["int_cold"], rho0),
        de_system=_heisenberg_change(u, parts["system"], rho0),
    )
    _check_first_law(ledger, _energy_scale(*parts.values()))
    return new, ledger


def contact_for_collision(k: int) -> Which:
    """Collision ``k`` (1-based) of an alternating run: odd = hot, even = cold."""
    return "hot" if k % 2 == 1 else "cold"


def evolve(initial: QubitState, cfg: MachineConfig, mode: Mode,
           n_collisions: int) -> Trajectory:
    """Run ``n_collisions`` collisions; the first entry is the initial state.

    Alternating runs start with a hot collision.
    """
    if n_collisions < 0:
        raise ValueError("n_collisions must be >= 0")
    initial.validate()
    traj = [TrajectoryPoint(0, initial, CollisionLedger())]
    state = initial
    for k in range(1, n_collisions + 1):
        if mode == "alternating":
            state, ledger = collide_alternating(state, cfg, contact_for_collision(k))
        elif mode == "simultaneous":
            state, ledger = collide_simultaneous(state, cfg)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        traj.append(TrajectoryPoint(k, state, ledger))
    return traj


def _cycle(p: float, cfg: MachineConfig, mode: Mode):
    """One full cycle from a diagonal state; returns (state, [ledgers])."""
    s = QubitState(p, 0j)
    if mode == "alternating":
        s_h, l_h = collide_alternating(s, cfg, "hot")
        s_c, l_c = collide_alternating(s_h, cfg, "cold")
        return s_c, [l_h, l_c]
    s1, l1 = collide_simultaneous(s, cfg)
    return s1, [l1]


def find_limit_cycle_numeric(cfg: MachineConfig, mode: Mode, tol: float = 1e-12,
                             max_cycles: int = 10**6) -> NumericLimitCycle:
    """Locate the periodic steady state by exploiting affinity of the population map.

    Two probe cycles from ``p = 0`` and ``p = 1`` fix ``p' = a p + b``;
    the fixed point ``b / (1 - a)`` is then checked by iterating whole
    cycles until successive populations agree to ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    b = _cycle(0.0, cfg, mode)[0].p
    a = _cycle(1.0, cfg, mode)[0].p - b
    if abs(a) >= CONTRACTION_LIMIT:
        raise LimitCycleError(
            f"population map does not contract (slope {a!r}); dynamics frozen"
        )
    p_star = b / (1.0 - a)

    p, c = p_star, 0j
    for n in range(max_cycles):
        s = QubitState(p, c)
        s_next = _cycle_state(s, cfg, mode)
        step = abs(s_next.p - p)
        p, c = s_next.p, s_next.c
        if step < tol and abs(c) < tol:
            break
    else:
        raise LimitCycleError(
            f"no convergence after {max_cycles} cycles: last step {step:.3e}, "
            f"|c| = {abs(c):.3e}, slope {a!r}"
        )

    if mode == "alternating":
        s_h, l_h = collide_alternating(QubitState(p_star), cfg, "hot")
        _, l_c = collide_alternating(QubitState(s_h.p), cfg, "cold")
        thermo = ThermoCycle(q_cold=l_c.q_cold, q_hot=l_h.q_hot,
                             w_cold=l_c.w_cold, w_hot=l_h.w_hot)
        return NumericLimitCycle(p_star, s_h.p, a, abs(c), thermo,
                                 de_cold=l_c.de_system, de_hot=l_h.de_system)
    _, l = collide_simultaneous(QubitState(p_star), cfg)
    thermo = ThermoCycle(q_cold=l.q_cold, q_hot=l.q_hot, w_cold=l.w_cold, w_hot=l.w_hot)
    return NumericLimitCycle(p_star, p_star, a, abs(c), thermo,
                             de_cold=l.de_system, de_hot=l.de_system)


def _cycle_state(s: QubitState, cfg: MachineConfig, mode: Mode) -> QubitState:
    if mode == "alternating":
        s, _ = collide_alternating(s, cfg, "hot")
        s, _ = collide_alternating(s, cfg, "cold")
        return s
    return collide_simultaneous(s, cfg)[0]


# ---------------------------------------------------------------------------
# Batched oracle for sampling campaigns. Parameters are 1-d arrays of equal
# length; each config is still evolved by its own exact unitary.
# ---------------------------------------------------------------------------

_SXSX = matops.kron(SX, SX)
_SYSY = matops.kron(SY, SY)
_SZ_I = matops.kron(SZ, I2)
_I_SZ = matops.kron(I2, SZ)


def _diag_states(p):
    p = np.asarray(p, float)
    out = np.zeros(p.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = p
    out[..., 1, 1] = 1.0 - p
    return out


def _batched_alt_parts(jxx, jyy, omega_a, omega_s):
    jxx, jyy = np.asarray(jxx, float), np.asarray(jyy, float)
    e = lambda x: np.asarray(x, float)[..., None, None]
    return {
        "system": -0.5 * e(omega_s) * _SZ_I,
        "ancilla": -0.5 * e(omega_a) * _I_SZ,
        "interaction": e(jxx) * _SXSX + e(jyy) * _SYSY,
    }


def _batched_collision(u, parts, rho_s, rho_a):
    rho0 = matops.kron(rho_s, rho_a)
    rho1 = u @ rho0 @ dagger(u)
    out = partial_trace(rho1, [2, 2], [0])
    led = {k: _heisenberg_change(u, op, rho0) for k, op in parts.items()}
    return out[..., 0, 0].real, led


def alternating_limit_cycle_batch(jxx_h, jyy_h, jxx_c, jyy_c, tau, beta_h, beta_c,
                                  omega_s=1.0, omega_h=1.0, omega_c=1.0) -> dict:
    """Engine limit cycle for many alternating configs at once.

    Returns a dict of arrays: p_after_cold, p_after_hot, slope, q_cold,
    q_hot, w_cold, w_hot, de_cold, de_hot, residual (max first-law residual).
    """
    n = np.broadcast(jxx_h, jyy_h, jxx_c, jyy_c, tau, beta_h, beta_c,
                     omega_s, omega_h, omega_c).shape
    b = lambda x: np.broadcast_to(np.asarray(x, float), n)
    jxx_h, jyy_h, jxx_c, jyy_c = map(b, (jxx_h, jyy_h, jxx_c, jyy_c))
    tau, beta_h, beta_c = map(b, (tau, beta_h, beta_c))
    omega_s, omega_h, omega_c = map(b, (omega_s, omega_h, omega_c))

    parts_h = _batched_alt_parts(jxx_h, jyy_h, omega_h, omega_s)
    parts_c = _batched_alt_parts(jxx_c, jyy_c, omega_c, omega_s)
    u_h = expm_hermitian(sum(parts_h.values()), tau)
    u_c = expm_hermitian(sum(parts_c.values()), tau)
    rho_h = _diag_states(gibbs_population(beta_h, omega_h))
    rho_c = _diag_states(gibbs_population(beta_c, omega_c))

    def cycle(p):
        p_h, _ = _batched_collision(u_h, parts_h, _diag_states(p), rho_h)
        p_c, _ = _batched_collision(u_c, parts_c, _diag_states(p_h), rho_c)
        return p_c

    b0 = cycle(np.zeros(n))
    a = cycle(np.ones(n)) - b0
    with np.errstate(divide="ignore", invalid="ignore"):
        p_star = np.where(np.abs(a) < CONTRACTION_LIMIT, b0 / (1.0 - a), np.nan)
    p_safe = np.nan_to_num(p_star, nan=0.5)

    p_after_hot, led_h = _batched_collision(u_h, parts_h, _diag_states(p_safe), rho_h)
    _, led_c = _batched_collision(u_c, parts_c, _diag_states(p_after_hot), rho_c)
    res_h = led_h["system"] + led_h["ancilla"] + led_h["interaction"]
    res_c = led_c["system"] + led_c["ancilla"] + led_c["interaction"]
    frozen = np.isnan(p_star)
    nanify = lambda x: np.where(frozen, np.nan, x)
    return {
        "p_after_cold": p_star,
        "p_after_hot": nanify(p_after_hot),
        "slope": a,
        "q_cold": nanify(led_c["ancilla"]),
        "q_hot": nanify(led_h["ancilla"]),
        "w_cold": nanify(led_c["interaction"]),
        "w_hot": nanify(led_h["interaction"]),
        "de_cold": nanify(led_c["system"]),
        "de_hot": nanify(led_h["system"]),
        "residual": np.maximum(np.abs(res_h), np.abs(res_c)),
    }


_S8 = {
    "sxsx_h": kron_all(SX, SX, I2), "sysy_h": kron_all(SY, SY, I2),
    "sxsx_c": kron_all(SX, I2, SX), "sysy_c": kron_all(SY, I2, SY),
    "sz_s": kron_all(SZ, I2, I2), "sz_h": kron_all(I2, SZ, I2),
    "sz_c": kron_all(I2, I2, SZ),
}


def simultaneous_limit_cycle_batch(jxx_h, jyy_h, jxx_c, jyy_c, tau, beta_h, beta_c,
                                   omega_s=1.0, omega_h=1.0, omega_c=1.0,
                                   chunk: int = 20000) -> dict:
    """Engine steady state for many simultaneous configs; same keys as the
    alternating batch (both population entries hold the single fixed point)."""
    n = np.broadcast(jxx_h, jyy_h, jxx_c, jyy_c, tau, beta_h, beta_c,
                     omega_s, omega_h, omega_c).shape
    arrs = [np.broadcast_to(np.asarray(x, float), n).ravel() for x in
            (jxx_h, jyy_h, jxx_c, jyy_c, tau, beta_h, beta_c, omega_s, omega_h, omega_c)]
    total = arrs[0].size
    pieces = []
    for start in range(0, total, chunk):
        sl = slice(start, start + chunk)
        pieces.append(_simultaneous_chunk(*(x[sl] for x in arrs)))
    out = {k: np.concatenate([p[k] for p in pieces]).reshape(n) for k in pieces[0]}
    return out


def _simultaneous_chunk(jxx_h, jyy_h, jxx_c, jyy_c, tau, beta_h, beta_c,
                        omega_s, omega_h, omega_c) -> dict:
    e = lambda x: x[:, None, None]
    parts = {
        "system": -0.5 * e(omega_s) * _S8["sz_s"],
        "hot": -0.5 * e(omega_h) * _S8["sz_h"],
        "cold": -0.5 * e(omega_c) * _S8["sz_c"],
        "int_hot": e(jxx_h) * _S8["sxsx_h"] + e(jyy_h) * _S8["sysy_h"],
        "int_cold": e(jxx_c) * _S8["sxsx_c"] + e(jyy_c) * _S8["sysy_c"],
    }
    u = expm_hermitian(sum(parts.values()), tau)
    rho_anc = matops.kron(_diag_states(gibbs_population(beta_h, omega_h)),
                          _diag_states(gibbs_population(beta_c, omega_c)))

    def step(p, ledger=False):
        rho0 = matops.kron(_diag_states(p), rho_anc)
        rho1 = u @ rho0 @ dagger(u)
        p1 = partial_trace(rho1, [2, 2, 2], [0])[..., 0, 0].real
        if not ledger:
            return p1
        return p1, {k: _heisenberg_change(u, op, rho0) for k, op in parts.items()}

    b0 = step(np.zeros_like(tau))
    a = step(np.ones_like(tau)) - b0
    with np.errstate(divide="ignore", invalid="ignore"):
        p_star = np.where(np.abs(a) < CONTRACTION_LIMIT, b0 / (1.0 - a), np.nan)
    frozen = np.isnan(p_star)
    _, led = step(np.nan_to_num(p_star, nan=0.5), ledger=True)
    residual = np.abs(sum(led.values()))
    nanify = lambda x: np.where(frozen, np.nan, x)
    return {
        "p_after_cold": p_star,
        "p_after_hot": p_star,
        "slope": a,
        "q_cold": nanify(led["cold"]),
        "q_hot": nanify(led["hot"]),
        "w_cold": nanify(led["int_cold"]),
        "w_hot": nanify(led["int_hot"]),
        "de_cold": nanify(led["system"]),
        "de_hot": nanify(led["system"]),
        "residual": residual,
    }
