# Alternating machine: watch a qubit settle into its two-stroke limit cycle
# and compare with the closed form.
import numpy as np

from qubit_ri import alternating, engine
from qubit_ri.model import MachineConfig, QubitState, gibbs_population

# anisotropic couplings, hot bath at beta=1, cold bath at beta=2
cfg = MachineConfig.build(tau=0.5, jxx_h=4, jyy_h=16, jxx_c=2, jyy_c=8)
p_c, p_h = gibbs_population(2.0, 1.0), gibbs_population(1.0, 1.0)
print(f"bath ground populations: p_C = {p_c:.6f}, p_H = {p_h:.6f}")

# start far away, with coherence, and run 40 collisions (odd = hot)
traj = engine.evolve(QubitState(0.5, 0.4), cfg, "alternating", 40)
for pt in traj[:6] + traj[-2:]:
    print(f"n={pt.n:3d}  p={pt.state.p:.10f}  |c|={abs(pt.state.c):.2e}")

rep = alternating.limit_cycle(cfg)
print("\nclosed form: after cold", rep.p_after_cold, " after hot", rep.p_after_hot)
print("trajectory : after cold", traj[-1].state.p, " after hot", traj[-2].state.p)

# per-cycle energetics: heat dumped in the cold bath is never negative
th = alternating.thermo_limit_cycle(cfg)
print(f"\nQ_C = {th.q_cold:+.6f}  Q_H = {th.q_hot:+.6f}  W = {th.w_total:+.6f}")
print("Q + W over a cycle:", th.q_total + th.w_total)

# the machine is not a refrigerator for any coupling strength
for s in np.linspace(0.1, 2.0, 5):
    c = MachineConfig.build(tau=0.5, jxx_h=4 * s, jyy_h=16 * s, jxx_c=2 * s, jyy_c=8 * s)
    print(f"scale {s:.2f}: Q_C = {alternating.thermo_limit_cycle(c).q_cold:.6f}")
