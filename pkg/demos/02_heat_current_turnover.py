# Symmetric conduction: heat flow through a resonant partial swap rises with
# coupling, peaks, then collapses as the swap saturates.
import numpy as np

from qubit_ri import alternating
from qubit_ri.model import gibbs_population

p_c, p_h = gibbs_population(2.0, 1.0), gibbs_population(1.0, 1.0)
j, omega = 1.0, 1.0

x = np.linspace(0, 1, 11)
cur = alternating.heat_current_x(x, j, omega, p_c, p_h)
for xi, ci in zip(x, cur):
    print(f"x = {xi:.1f}   current = {ci:.5f}  " + "#" * int(200 * ci))

fine = np.linspace(0, 1, 1_000_001)
x_peak = fine[np.argmax(alternating.heat_current_x(fine, j, omega, p_c, p_h))]
print(f"\npeak of the scan at x = {x_peak:.6f}; closed form {alternating.TURNOVER_X:.6f}")

# full swap: one collision moves the whole population difference
tau = np.pi / (4 * j)
print("heat per collision at full swap:", alternating.conduction_heat(j, j, omega, tau, p_c, p_h))
print("w (p_C - p_H)                  :", omega * (p_c - p_h))

# weak coupling: heat per collision over tau grows like 2 w (p_C - p_H) J^2 tau
for tau in (1e-1, 1e-2, 1e-3):
    q = alternating.conduction_heat(j, j, omega, tau, p_c, p_h)
    print(f"tau={tau:g}: Q/tau = {q / tau:.6e}   weak-coupling form = "
          f"{alternating.weak_coupling_current(j, omega, tau, p_c, p_h):.6e}")
