"""Repeated-interaction qubit thermal machines.

Exact limit cycles of the alternating-coupling machine, short-collision
analytics of the simultaneous-coupling machine, and a brute-force
collision engine that serves as the numerical oracle for both.
"""
__version__ = "0.1.0"

from .model import (
    BathSpec,
    Contact,
    Coupling,
    MachineConfig,
    QubitState,
    ThermoCycle,
    gibbs_state,
)

__all__ = ["BathSpec", "Contact", "Coupling", "MachineConfig", "QubitState",
           "ThermoCycle", "gibbs_state"]
