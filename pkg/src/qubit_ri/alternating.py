"""Exact analytics of the alternating-coupling machine.

The qubit meets a hot ancilla, then a cold one, and repeats. Each collision
acts on the ground-state population as an affine map
``p -> g p + f`` with ``g = 1 - k_theta - k_phi`` and
``f = k_theta p_A + k_phi (1 - p_A)``. Composing the two maps gives the
limit cycle in closed form for any coupling strength and collision time.

Most functions broadcast over numpy arrays so that sampling campaigns run
without Python loops.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Coupling, BathSpec, MachineConfig, ThermoCycle, gibbs_population

FROZEN_TOL = 1e-14
BOUND_SLACK = 1e-12


class FrozenDynamicsError(ValueError):
    """Collisions act trivially, so no fixed point or limit cycle exists."""


@dataclass(frozen=True)
class CollisionCoeffs:
    kappa_theta: float
    kappa_phi: float
    theta: float
    phi: float

    @property
    def rate(self):
        """Total relaxation weight ``k_theta + k_phi`` (= 1 - g)."""
        return self.kappa_theta + self.kappa_phi

    @property
    def g(self):
        return 1.0 - self.kappa_theta - self.kappa_phi

    def f(self, p_a):
        return self.kappa_theta * p_a + self.kappa_phi * (1.0 - p_a)


@dataclass(frozen=True)
class LimitCycleReport:
    p_after_cold: float | None
    p_after_hot: float | None
    g_hot: float
    g_cold: float
    frozen: bool


@dataclass(frozen=True)
class BoundVerdict:
    upper_hot: float      # p_C - p_after_hot
    lower_hot: float      # p_after_hot - (1 - p_C)
    upper_cold: float     # p_C - p_after_cold
    lower_cold: float     # p_after_cold - (1 - p_C); numerical evidence only
    slack: float = BOUND_SLACK

    @property
    def proven_ok(self) -> bool:
        return bool(min(self.upper_hot, self.lower_hot, self.upper_cold) >= -self.slack)

    @property
    def observed_ok(self) -> bool:
        return bool(self.lower_cold >= -self.slack)

    @property
    def ok(self) -> bool:
        return self.proven_ok and self.observed_ok


def _sinc_sq(x):
    # sin(x)^2 / x^2, finite at x = 0
    return np.sinc(np.asarray(x) / np.pi) ** 2


def kappas(jxx, jyy, omega_a, omega_s, tau):
    """Array form of the collision coefficients.

    Returns ``(kappa_theta, kappa_phi, theta, phi)``. Written as
    ``(J tau)^2 sinc^2(freq tau / 2)`` so the removable singularity at
    ``theta = 0`` needs no special case.
    """
    jxx, jyy = np.asarray(jxx, float), np.asarray(jyy, float)
    omega_a, omega_s = np.asarray(omega_a, float), np.asarray(omega_s, float)
    tau = np.asarray(tau, float)
    s = jxx + jyy
    d = jxx - jyy
    theta = np.sqrt(4.0 * s**2 + (omega_a - omega_s) ** 2)
    phi = np.sqrt(4.0 * d**2 + (omega_a + omega_s) ** 2)
    k_theta = (s * tau) ** 2 * _sinc_sq(0.5 * theta * tau)
    k_phi = (d * tau) ** 2 * _sinc_sq(0.5 * phi * tau)
    # sinc^2 <= 1 and 4 s^2 <= theta^2 bound both by 1; clip round-off
    return np.minimum(k_theta, 1.0), np.minimum(k_phi, 1.0), theta, phi


def collision_coefficients(c: Coupling, omega_a: float, omega_s: float,
                           tau: float) -> CollisionCoeffs:
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    kt, kp, th, ph = kappas(c.jxx, c.jyy, omega_a, omega_s, tau)
    return CollisionCoeffs(float(kt), float(kp), float(th), float(ph))


def contact_coefficients(cfg: MachineConfig, which: str) -> CollisionCoeffs:
    contact = cfg.contact(which)
    return collision_coefficients(contact.coupling, contact.bath.omega,
                                  cfg.omega_s, cfg.tau)


def single_bath_fixed_point(c: Coupling, bath: BathSpec, omega_s: float,
                            tau: float) -> float:
    k = collision_coefficients(c, bath.omega, omega_s, tau)
    if k.rate < FROZEN_TOL:
        raise FrozenDynamicsError(
            f"fixed point undefined: collisions are frozen (k_theta + k_phi = {k.rate:.3e})"
        )
    p_a = float(gibbs_population(bath.beta, bath.omega))
    return k.f(p_a) / k.rate


def population_step(p_n, coeffs: CollisionCoeffs, p_a):
    """One collision: ``g p_n + k_theta p_a + k_phi (1 - p_a)``."""
    return coeffs.g * p_n + coeffs.f(p_a)


def limit_cycle_populations(kt_c, kp_c, kt_h, kp_h, p_c, p_h):
    """Array form of the two limit-cycle populations.

    Returns ``(p_after_cold, p_after_hot)``. The denominator
    ``1 - g_C g_H`` is expanded as ``r_C + r_H - r_C r_H`` to avoid
    cancellation when both contacts are weak.
    """
    r_c = kt_c + kp_c
    r_h = kt_h + kp_h
    f_c = kt_c * p_c + kp_c * (1.0 - p_c)
    f_h = kt_h * p_h + kp_h * (1.0 - p_h)
    den = r_c + r_h - r_c * r_h
    p_after_cold = (f_c + (1.0 - r_c) * f_h) / den
    p_after_hot = (f_h + (1.0 - r_h) * f_c) / den
    return p_after_cold, p_after_hot


def _bath_populations(cfg: MachineConfig) -> tuple[float, float]:
    p_c = float(gibbs_population(cfg.cold.bath.beta, cfg.cold.bath.omega))
    p_h = float(gibbs_population(cfg.hot.bath.beta, cfg.hot.bath.omega))
    return p_c, p_h


def limit_cycle(cfg: MachineConfig) -> LimitCycleReport:
    kc = contact_coefficients(cfg, "cold")
    kh = contact_coefficients(cfg, "hot")
    if kc.rate < FROZEN_TOL and kh.rate < FROZEN_TOL:
        return LimitCycleReport(None, None, kh.g, kc.g, frozen=True)
    p_c, p_h = _bath_populations(cfg)
    pc_inf, ph_inf = limit_cycle_populations(
        kc.kappa_theta, kc.kappa_phi, kh.kappa_theta, kh.kappa_phi, p_c, p_h)
    return LimitCycleReport(float(pc_inf), float(ph_inf), kh.g, kc.g, frozen=False)


def stroboscopic_populations(jxx_h, jyy_h, jxx_c, jyy_c, p_c, p_h):
    """Array form of the tau -> 0 limit-cycle population."""
    num = ((jxx_c - jyy_c) ** 2 + (jxx_h - jyy_h) ** 2
           + 4.0 * jxx_c * jyy_c * p_c + 4.0 * jxx_h * jyy_h * p_h)
    den = 2.0 * (jxx_h**2 + jyy_h**2 + jxx_c**2 + jyy_c**2)
    return num / den


def stroboscopic_fixed_point(cfg: MachineConfig) -> float:
    """Limit-cycle population as tau -> 0+ (both half-cycle values merge)."""
    jxx_h, jyy_h, jxx_c, jyy_c = cfg.couplings()
    if jxx_h == jyy_h == jxx_c == jyy_c == 0:
        raise FrozenDynamicsError("all couplings are zero")
    p_c, p_h = _bath_populations(cfg)
    return float(stroboscopic_populations(jxx_h, jyy_h, jxx_c, jyy_c, p_c, p_h))


def contact_heat(kt, kp, omega_a, p_before, p_a):
    """Heat into the ancilla for a collision starting from ``p_before``."""
    return omega_a * (-kt * (p_before - p_a) + kp * (p_before - (1.0 - p_a)))


def contact_work(kt, kp, omega_a, omega_s, p_before, p_a):
    """Growth of the interaction energy for a collision starting from ``p_before``."""
    return (kt * (omega_a - omega_s) * (p_before - p_a)
            - kp * (omega_a + omega_s) * (p_before - (1.0 - p_a)))


def thermo_arrays(kt_c, kp_c, kt_h, kp_h, p_c, p_h, omega_c, omega_h, omega_s):
    """Limit-cycle (q_cold, q_hot, w_cold, w_hot, p_after_cold, p_after_hot) arrays.

    The cold collision starts from the post-hot population and vice versa.
    """
    pc_inf, ph_inf = limit_cycle_populations(kt_c, kp_c, kt_h, kp_h, p_c, p_h)
    q_cold = contact_heat(kt_c, kp_c, omega_c, ph_inf, p_c)
    q_hot = contact_heat(kt_h, kp_h, omega_h, pc_inf, p_h)
    w_cold = contact_work(kt_c, kp_c, omega_c, omega_s, ph_inf, p_c)
    w_hot = contact_work(kt_h, kp_h, omega_h, omega_s, pc_inf, p_h)
    return q_cold, q_hot, w_cold, w_hot, pc_inf, ph_inf


def thermo_limit_cycle(cfg: MachineConfig) -> ThermoCycle:
    kc = contact_coefficients(cfg, "cold")
    kh = contact_coefficients(cfg, "hot")
    if kc.rate < FROZEN_TOL and kh.rate < FROZEN_TOL:
        raise FrozenDynamicsError("both contacts frozen; no limit cycle")
    p_c, p_h = _bath_populations(cfg)
    q_c, q_h, w_c, w_h, _, _ = thermo_arrays(
        kc.kappa_theta, kc.kappa_phi, kh.kappa_theta, kh.kappa_phi, p_c, p_h,
        cfg.cold.bath.omega, cfg.hot.bath.omega, cfg.omega_s)
    return ThermoCycle(q_cold=float(q_c), q_hot=float(q_h),
                       w_cold=float(w_c), w_hot=float(w_h))


def conduction_kappa(j, tau):
    """Effective coupling ``sin^2(2 J tau)`` of a resonant partial swap."""
    return np.sin(2.0 * np.asarray(j, float) * np.asarray(tau, float)) ** 2


def conduction_heat(j_c, j_h, omega, tau, p_c, p_h):
    """Heat per cold collision for pure conduction (resonant, jxx = jyy per bath).

    ``j_c`` and ``j_h`` are the isotropic couplings at the two contacts.
    """
    k_c = conduction_kappa(j_c, tau)
    k_h = conduction_kappa(j_h, tau)
    den = k_c * k_h - k_c - k_h
    if np.any(k_c + k_h < FROZEN_TOL):
        raise FrozenDynamicsError("both effective couplings vanish")
    out = omega * k_c * k_h * (p_h - p_c) / den
    return float(out) if np.ndim(out) == 0 else out


def heat_current(j, omega, tau, p_c, p_h):
    """d/dtau of the symmetric conduction heat per collision (signed)."""
    x = conduction_kappa(j, tau)
    out = 4.0 * j * omega * np.sin(4.0 * j * tau) / (2.0 - x) ** 2 * (p_c - p_h)
    return float(out) if np.ndim(out) == 0 else out


def heat_current_x(x, j, omega, p_c, p_h):
    """Magnitude of the symmetric heat current written in ``x = sin^2(2 J tau)``."""
    x = np.asarray(x, float)
    out = 8.0 * j * omega * np.sqrt(x * (1.0 - x)) / (2.0 - x) ** 2 * (p_c - p_h)
    return float(out) if np.ndim(out) == 0 else out


TURNOVER_X = (np.sqrt(17.0) - 1.0) / 4.0  # root of 2x^2 + x - 2 in (0, 1)


def weak_coupling_current(j, omega, tau, p_c, p_h):
    """Leading-order heat per collision divided by tau: ``2 w (p_C - p_H) J^2 tau``."""
    return 2.0 * omega * (p_c - p_h) * j**2 * tau


def check_population_bounds(report: LimitCycleReport, p_c: float,
                            slack: float = BOUND_SLACK) -> BoundVerdict:
    if report.frozen:
        raise FrozenDynamicsError("bounds undefined for a frozen configuration")
    return population_bound_margins(report.p_after_cold, report.p_after_hot, p_c, slack)


def population_bound_margins(p_after_cold, p_after_hot, p_c, slack=BOUND_SLACK):
    return BoundVerdict(
        upper_hot=p_c - p_after_hot,
        lower_hot=p_after_hot - (1.0 - p_c),
        upper_cold=p_c - p_after_cold,
        lower_cold=p_after_cold - (1.0 - p_c),
        slack=slack,
    )
