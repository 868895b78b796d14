# Alternating vs simultaneous at short collisions, and a scan for any
# configuration that extracts net work.
import numpy as np

from qubit_ri import checks, engine

x = np.linspace(0.05, 1.0, 8)
params = checks.trotter_cut_params(x, tau=0.01)
alt = checks.closed_form_alternating(params)

sim = engine.simultaneous_limit_cycle_batch(**params)
print(" J_xx^H tau    Q_C alt       Q_C sim       |diff|      5 J w tau^2")
for i, xi in enumerate(x):
    d = abs(alt["q_cold"][i] - sim["q_cold"][i])
    print(f"{xi:9.3f}  {alt['q_cold'][i]:12.5e}  {sim['q_cold'][i]:12.5e}  {d:10.2e}  "
          f"{5 * params['jxx_h'][i] * 0.01**2:10.2e}")

# no configuration on a coarse grid produces positive total work
res = checks.check_no_engine(seed=1, grid_points=9, n_random=2000)
for c in res:
    print(f"{c.name:32s} passed={c.passed} samples={c.samples} worst margin={c.worst_margin:.2e}")
