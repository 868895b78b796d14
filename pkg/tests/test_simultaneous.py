import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qubit_ri import engine
from qubit_ri import simultaneous as sim
from qubit_ri.alternating import FrozenDynamicsError
from qubit_ri.model import MachineConfig, QubitState, gibbs_population

P_C, P_H = gibbs_population(2.0, 1.0), gibbs_population(1.0, 1.0)


def aniso(tau, **kw):
    return MachineConfig.build(tau=tau, jxx_h=4, jyy_h=16, jxx_c=2, jyy_c=8, **kw)


@pytest.mark.parametrize("tau", [1e-3, 3e-4])
def test_dyson_single_collision(tau):
    cfg = aniso(tau)
    s = QubitState(0.35, -0.1 + 0.25j)
    new, led = engine.collide_simultaneous(s, cfg)
    tol = 10 * 16**3 * tau**3
    assert sim.dyson_population_step(s.p, cfg) == pytest.approx(new.p, abs=tol)
    assert abs(sim.dyson_coherence_step(s.c, cfg) - new.c) <= tol
    q_c, q_h = sim.dyson_heat(s.p, cfg)
    w_c, w_h = sim.dyson_work(s.p, cfg)
    assert (q_c, q_h) == pytest.approx((led.q_cold, led.q_hot), abs=tol)
    assert (w_c, w_h) == pytest.approx((led.w_cold, led.w_hot), abs=tol)


def test_dyson_work_off_resonance():
    cfg = MachineConfig.build(tau=1e-3, jxx_h=1.5, jyy_h=-0.5, jxx_c=0.7, jyy_c=2.0,
                              omega_s=1.2, omega_h=0.6, omega_c=1.9)
    s = QubitState(0.6)
    _, led = engine.collide_simultaneous(s, cfg)
    w_c, w_h = sim.dyson_work(s.p, cfg)
    assert w_c == pytest.approx(led.w_cold, abs=1e-8)
    assert w_h == pytest.approx(led.w_hot, abs=1e-8)


def test_dyson_fixed_point_is_fixed():
    cfg = aniso(1e-3)
    p = sim.dyson_fixed_point(cfg)
    assert sim.dyson_population_step(p, cfg) == pytest.approx(p, abs=1e-15)
    num = engine.find_limit_cycle_numeric(cfg, "simultaneous")
    assert p == pytest.approx(num.p_after_cold, abs=1e-3)


def test_dyson_frozen():
    cfg = MachineConfig.build(tau=0.1, jxx_h=0, jyy_h=0, jxx_c=0, jyy_c=0)
    with pytest.raises(FrozenDynamicsError):
        sim.dyson_fixed_point(cfg)


def test_prediction_reports_regime():
    pred = sim.dyson_prediction(aniso(0.5))
    assert pred.j_tau == 8.0
    assert pred.omega_eff == pytest.approx(0.25)
    assert pred.eta == pytest.approx(1 - 2 * (16 + 256 + 4 + 64) * 0.25)


def test_eom_is_rate_limit_of_map():
    cfg = aniso(1e-4)
    s = QubitState(0.3, 0.2 + 0.1j)
    dp, dc = sim.eom_rhs(s, cfg)
    assert dp == pytest.approx((sim.dyson_population_step(s.p, cfg) - s.p) / cfg.tau, rel=1e-12)
    a, b = sim.coherence_coefficients(cfg)
    # the map's O(tau) coherence step divided by tau matches the rate equation
    assert dc == pytest.approx((sim.dyson_coherence_step(s.c, cfg) - s.c) / cfg.tau, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(0.01, 2), st.floats(0, 1))
def test_equal_coupling_exact(j, tau, p):
    cfg = MachineConfig.build(tau=tau, jxx_h=j, jyy_h=j, jxx_c=j, jyy_c=j)
    new, led = engine.collide_simultaneous(QubitState(p), cfg)
    assert sim.equal_coupling_step(p, j, tau, P_C, P_H) == pytest.approx(new.p, abs=1e-13)
    q_c, q_h = sim.equal_coupling_heat(p, j, 1.0, tau, P_C, P_H)
    assert q_c == pytest.approx(led.q_cold, abs=1e-13)
    assert q_h == pytest.approx(led.q_hot, abs=1e-13)


def test_equal_coupling_fixed_point_is_mean():
    j, tau = 0.8, 0.37
    cfg = MachineConfig.build(tau=tau, jxx_h=j, jyy_h=j, jxx_c=j, jyy_c=j)
    num = engine.find_limit_cycle_numeric(cfg, "simultaneous")
    assert num.p_after_cold == pytest.approx(0.5 * (P_C + P_H), abs=1e-13)
    q, current = sim.conduction_closed_form(j, tau, 1.0, P_C, P_H)
    assert q == pytest.approx(num.thermo.q_cold, abs=1e-13)
    y = np.sin(np.sqrt(2) * j * tau) ** 2
    assert abs(current) == pytest.approx(sim.conduction_current_y(y, j, 1.0, P_C, P_H), rel=1e-12)


def test_overheating_condition():
    # anisotropic hot contact pumps the system above the hot bath population
    cfg = MachineConfig.build(tau=1e-3, jxx_h=3, jyy_h=-3, jxx_c=0.1, jyy_c=0.1)
    assert sim.overheating_condition(cfg)
    assert sim.dyson_fixed_point(cfg) < P_H
    cfg = MachineConfig.build(tau=1e-3, jxx_h=1, jyy_h=1, jxx_c=1, jyy_c=1)
    assert not sim.overheating_condition(cfg)
    assert sim.dyson_fixed_point(cfg) >= P_H
