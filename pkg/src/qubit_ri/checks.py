"""Invariant battery behind ``qubit-ri verify``.

Each check compares closed forms against the brute-force engine, or tests
an inequality over a sampled parameter domain, and reports the worst margin
(negative means violated) together with the offending configuration.
The no-engine sweeps are evidence over the sampled domain only; total-work
nonpositivity has no proof.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import alternating, engine
from .model import gibbs_population
from .sampling import sample_configs, sample_couplings

ORACLE_TOL = 1e-9
QC_ALT_TOL = 1e-12
QC_SIM_TOL = 1e-9
BOUND_SLACK = 1e-12
FIRST_LAW_TOL = 1e-11
NO_ENGINE_TOL = 1e-9
TROTTER_FACTOR = 5.0

PARAM_KEYS = ("jxx_h", "jyy_h", "jxx_c", "jyy_c", "tau", "beta_h", "beta_c",
              "omega_s", "omega_h", "omega_c")


@dataclass
class CheckResult:
    name: str
    passed: bool
    samples: int
    worst_margin: float
    offender: dict | None = None
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "samples": self.samples,
            "worst_margin": self.worst_margin,
            "offender": self.offender,
            "note": self.note,
        }


@dataclass
class VerifyReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.as_dict() for c in self.checks]}


def _params(p: dict, n: int) -> dict:
    return {k: np.broadcast_to(np.asarray(p[k], float), (n,)) for k in PARAM_KEYS}


def _offender(params: dict, idx: int, **extra) -> dict:
    out = {k: float(params[k][idx]) for k in PARAM_KEYS}
    out.update({k: float(v) for k, v in extra.items()})
    return out


def _margin_check(name: str, margin: np.ndarray, params: dict, note: str = "",
                  **extra_arrays) -> CheckResult:
    """Pass iff every finite margin is >= 0; NaN entries (frozen points) are skipped."""
    margin = np.asarray(margin, float)
    valid = np.isfinite(margin)
    n = int(valid.sum())
    if n == 0:
        return CheckResult(name, False, 0, float("nan"), None, "no valid samples")
    m = np.where(valid, margin, np.inf)
    idx = int(np.argmin(m))
    worst = float(m[idx])
    passed = worst >= 0.0
    offender = None
    if not passed:
        offender = _offender(params, idx, **{k: v[idx] for k, v in extra_arrays.items()})
    skipped = margin.size - n
    if skipped:
        note = (note + f"; {skipped} frozen point(s) skipped").lstrip("; ")
    return CheckResult(name, passed, n, worst, offender, note)


def closed_form_alternating(params: dict) -> dict:
    """Closed-form limit cycle and thermodynamics on parameter arrays."""
    kt_h, kp_h, _, _ = alternating.kappas(params["jxx_h"], params["jyy_h"],
                                          params["omega_h"], params["omega_s"], params["tau"])
    kt_c, kp_c, _, _ = alternating.kappas(params["jxx_c"], params["jyy_c"],
                                          params["omega_c"], params["omega_s"], params["tau"])
    p_c = gibbs_population(params["beta_c"], params["omega_c"])
    p_h = gibbs_population(params["beta_h"], params["omega_h"])
    frozen = ((kt_h + kp_h) < alternating.FROZEN_TOL) & ((kt_c + kp_c) < alternating.FROZEN_TOL)
    with np.errstate(divide="ignore", invalid="ignore"):
        q_c, q_h, w_c, w_h, pc_inf, ph_inf = alternating.thermo_arrays(
            kt_c, kp_c, kt_h, kp_h, p_c, p_h,
            params["omega_c"], params["omega_h"], params["omega_s"])
    nan = lambda x: np.where(frozen, np.nan, x)
    return {"q_cold": nan(q_c), "q_hot": nan(q_h), "w_cold": nan(w_c), "w_hot": nan(w_h),
            "p_after_cold": nan(pc_inf), "p_after_hot": nan(ph_inf),
            "p_c": p_c, "p_h": p_h}


def _engine(params: dict, mode: str) -> dict:
    fn = (engine.alternating_limit_cycle_batch if mode == "alternating"
          else engine.simultaneous_limit_cycle_batch)
    return fn(**params)


def check_oracle_alternating(seed: int, n: int) -> list[CheckResult]:
    params = sample_configs(seed, n)
    cf = closed_form_alternating(params)
    en = _engine(params, "alternating")
    diff_pop = np.maximum(np.abs(cf["p_after_cold"] - en["p_after_cold"]),
                          np.abs(cf["p_after_hot"] - en["p_after_hot"]))
    diff_thermo = np.max([np.abs(cf[k] - en[k]) for k in
                          ("q_cold", "q_hot", "w_cold", "w_hot")], axis=0)
    return [
        _margin_check("oracle_alternating_populations", ORACLE_TOL - diff_pop, params,
                      "closed-form limit cycle vs engine, tolerance 1e-9",
                      closed_form=cf["p_after_cold"], engine=en["p_after_cold"]),
        _margin_check("oracle_alternating_thermo", ORACLE_TOL - diff_thermo, params,
                      "closed-form Q, W vs engine ledger, tolerance 1e-9"),
        _margin_check("no_refrigeration_alternating_random", cf["q_cold"] + QC_ALT_TOL, params,
                      "closed-form Q_C >= -1e-12 (theorem)", q_cold=cf["q_cold"]),
        _margin_check("first_law_alternating_random", FIRST_LAW_TOL - en["residual"], params,
                      "|dE + W + Q| <= 1e-11 per collision"),
    ]


def campaign_params(couplings: np.ndarray, tau: float = 0.5, beta_h: float = 1.0,
                    beta_c: float = 2.0, omega: float = 1.0) -> dict:
    n = len(couplings)
    base = {"jxx_h": couplings[:, 0], "jyy_h": couplings[:, 1],
            "jxx_c": couplings[:, 2], "jyy_c": couplings[:, 3],
            "tau": tau, "beta_h": beta_h, "beta_c": beta_c,
            "omega_s": omega, "omega_h": omega, "omega_c": omega}
    return _params(base, n)


def check_bounds_alternating(seed: int, n: int = 60000) -> list[CheckResult]:
    params = campaign_params(sample_couplings(seed, n))
    cf = closed_form_alternating(params)
    p_c = cf["p_c"]
    v = alternating.population_bound_margins(cf["p_after_cold"], cf["p_after_hot"], p_c)
    proven = np.minimum(np.minimum(v.upper_hot, v.lower_hot), v.upper_cold)
    return [
        _margin_check("bounds_alternating_proven", proven + BOUND_SLACK, params,
                      "1-p_C <= p_H_inf <= p_C and p_C_inf <= p_C (slack 1e-12)"),
        _margin_check("bounds_alternating_lower_cold", v.lower_cold + BOUND_SLACK, params,
                      "1-p_C <= p_C_inf (numerical evidence, slack 1e-12)"),
        _margin_check("no_refrigeration_alternating_campaign", cf["q_cold"] + QC_ALT_TOL, params,
                      "closed-form Q_C >= -1e-12"),
    ]


def check_simultaneous_campaign(seed: int, n: int = 15000) -> list[CheckResult]:
    params = campaign_params(sample_couplings(seed, n))
    en = _engine(params, "simultaneous")
    p_c = gibbs_population(2.0, 1.0)
    p = en["p_after_cold"]
    bound = np.minimum(p_c - p, p - (1.0 - p_c))
    return [
        _margin_check("no_refrigeration_simultaneous", en["q_cold"] + QC_SIM_TOL, params,
                      "engine Q_C >= -1e-9 at tau=0.5 (conjecture support)", q_cold=en["q_cold"]),
        _margin_check("bounds_simultaneous", bound + BOUND_SLACK, params,
                      "1-p_C <= p_inf <= p_C from brute-force evolution"),
        _margin_check("first_law_simultaneous", FIRST_LAW_TOL - en["residual"], params,
                      "|dE + sum W + sum Q| <= 1e-11 per collision"),
    ]


def trotter_cut_params(x: np.ndarray, tau: float = 0.01) -> dict:
    """Parameter cut with jyy_h = jxx_h/4, jxx_c = jxx_h/2, jyy_c = jxx_h/8."""
    j = np.asarray(x, float) / tau
    base = {"jxx_h": j, "jyy_h": j / 4, "jxx_c": j / 2, "jyy_c": j / 8, "tau": tau,
            "beta_h": 1.0, "beta_c": 2.0, "omega_s": 1.0, "omega_h": 1.0, "omega_c": 1.0}
    return _params(base, len(j))


def check_trotter(points: int = 101, tau: float = 0.01, x_max: float = 1.0) -> list[CheckResult]:
    x = np.linspace(x_max / points, x_max, points)
    params = trotter_cut_params(x, tau)
    alt = _engine(params, "alternating")
    sim = _engine(params, "simultaneous")
    tol = TROTTER_FACTOR * params["jxx_h"] * params["omega_s"] * tau**2
    diff = np.max([np.abs(alt[k] - sim[k]) for k in ("q_cold", "q_hot", "w_cold", "w_hot")],
                  axis=0)
    return [_margin_check("trotter_equivalence", tol - diff, params,
                          f"alternating vs simultaneous Q, W within 5 J w tau^2, "
                          f"J_xx^H tau in (0, {x_max}]")]


def _grid_params(points: int = 21, tau: float = 0.5) -> dict:
    g = np.linspace(-5.0, 5.0, points)
    jj = np.array(np.meshgrid(g, g, g, g, indexing="ij")).reshape(4, -1).T
    return campaign_params(jj, tau=tau)


def check_no_engine(seed: int, grid_points: int = 21, n_random: int = 100000) -> list[CheckResult]:
    results = []
    grid = _grid_params(grid_points)
    rand = _params(sample_configs(seed, n_random, common_omega=True), n_random)
    for label, params in (("grid", grid), ("random", rand)):
        cf = closed_form_alternating(params)
        results.append(_margin_check(
            f"no_engine_alternating_{label}", NO_ENGINE_TOL - (cf["w_cold"] + cf["w_hot"]), params,
            "total work <= 1e-9 (conjecture support over the sampled domain)"))
        en = _engine(params, "simultaneous")
        results.append(_margin_check(
            f"no_engine_simultaneous_{label}", NO_ENGINE_TOL - (en["w_cold"] + en["w_hot"]), params,
            "total work <= 1e-9 from brute-force evolution (conjecture support)"))
        results.append(_margin_check(
            f"first_law_simultaneous_{label}", FIRST_LAW_TOL - en["residual"], params,
            "|dE + sum W + sum Q| <= 1e-11"))
    return results


def run_verify(seed: int = 0, samples: int = 1000, bounds_samples: int = 60000,
               sim_samples: int = 15000, grid_points: int = 21, no_engine_samples: int = 100000,
               progress: Callable[[str], None] | None = None) -> VerifyReport:
    report = VerifyReport()
    stages = (
        ("oracle", lambda: check_oracle_alternating(seed, samples)),
        ("bounds", lambda: check_bounds_alternating(seed, bounds_samples)),
        ("simultaneous", lambda: check_simultaneous_campaign(seed, sim_samples)),
        ("trotter", lambda: check_trotter()),
        ("no-engine", lambda: check_no_engine(seed, grid_points, no_engine_samples)),
    )
    for label, stage in stages:
        if progress:
            progress(label)
        report.checks.extend(stage())
    return report
