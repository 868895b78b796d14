# Simultaneous machine: the order-tau^2 (Dyson) maps against the exact
# three-qubit collision, inside and outside the short-collision regime.
from qubit_ri import engine, simultaneous
from qubit_ri.model import MachineConfig, QubitState

state = QubitState(0.7, 0.2 + 0.1j)
for tau in (1e-3, 1e-2, 0.1, 0.5):
    cfg = MachineConfig.build(tau=tau, jxx_h=4, jyy_h=16, jxx_c=2, jyy_c=8)
    new, led = engine.collide_simultaneous(state, cfg)
    pred = simultaneous.dyson_prediction(cfg)
    dp = abs(simultaneous.dyson_population_step(state.p, cfg) - new.p)
    dc = abs(simultaneous.dyson_coherence_step(state.c, cfg) - new.c)
    q_c, _ = simultaneous.dyson_heat(state.p, cfg)
    print(f"tau={tau:<6g} J tau={pred.j_tau:<6g} |dp|={dp:.2e} |dc|={dc:.2e} "
          f"|dQ_C|={abs(q_c - led.q_cold):.2e}")

# steady state: Dyson prediction against the exact limit cycle
cfg = MachineConfig.build(tau=1e-3, jxx_h=4, jyy_h=16, jxx_c=2, jyy_c=8)
num = engine.find_limit_cycle_numeric(cfg, "simultaneous")
print("\nfixed point  Dyson:", simultaneous.dyson_fixed_point(cfg), " exact:", num.p_after_cold)
print("overheating (fixed point below p_H):", simultaneous.overheating_condition(cfg))
