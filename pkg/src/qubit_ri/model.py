"""States, Hamiltonians and machine configurations.

Basis convention: ``|0>`` is the qubit ground state with ``sz|0> = +|0>``,
so ``H = -(w/2) sz = diag(-w/2, +w/2)`` and a density matrix reads
``[[p, c], [c*, 1-p]]`` with ``p`` the ground-state population.

Tensor ordering is system (x) ancilla for the 4x4 alternating collision and
system (x) hot (x) cold for the 8x8 simultaneous collision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np

from .matops import I2, SX, SY, SZ, kron, kron_all

Which = Literal["hot", "cold"]

STATE_TOL = 1e-10


class UnphysicalStateError(ValueError):
    pass


@dataclass(frozen=True)
class QubitState:
    p: float
    c: complex = 0j

    def violation(self) -> float:
        """Largest amount by which the state breaks positivity (0 if physical)."""
        p = self.p
        return max(-p, p - 1.0, abs(self.c) ** 2 - p * (1.0 - p), 0.0)

    def is_physical(self, tol: float = STATE_TOL) -> bool:
        return math.isfinite(self.p) and self.violation() <= tol

    def validate(self, tol: float = STATE_TOL) -> "QubitState":
        if not self.is_physical(tol):
            raise UnphysicalStateError(
                f"unphysical qubit state p={self.p!r}, c={self.c!r} "
                f"(violation {self.violation():.3e})"
            )
        return self

    def matrix(self) -> np.ndarray:
        c = complex(self.c)
        return np.array([[self.p, c], [c.conjugate(), 1.0 - self.p]], dtype=complex)

    @classmethod
    def from_matrix(cls, rho) -> "QubitState":
        rho = np.asarray(rho)
        return cls(float(rho[0, 0].real), complex(rho[0, 1]))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "QubitState":
        """Uniform draw from the Bloch ball."""
        while True:
            v = rng.uniform(-1.0, 1.0, size=3)
            if v @ v <= 1.0:
                break
        # rho = (1 + r.sigma)/2 ; p = (1+rz)/2, c = (rx - i ry)/2
        return cls(0.5 * (1.0 + v[2]), 0.5 * complex(v[0], -v[1]))


@dataclass(frozen=True)
class BathSpec:
    beta: float
    omega: float = 1.0

    def __post_init__(self):
        if not self.beta >= 0:
            raise ValueError(f"inverse temperature must be >= 0, got {self.beta}")
        if not self.omega > 0:
            raise ValueError(f"ancilla splitting must be > 0, got {self.omega}")


@dataclass(frozen=True)
class Coupling:
    jxx: float
    jyy: float

    def __post_init__(self):
        if not (math.isfinite(self.jxx) and math.isfinite(self.jyy)):
            raise ValueError(f"couplings must be finite, got {self.jxx}, {self.jyy}")

    def scaled(self, s: float) -> "Coupling":
        return Coupling(s * self.jxx, s * self.jyy)


@dataclass(frozen=True)
class Contact:
    bath: BathSpec
    coupling: Coupling


@dataclass(frozen=True)
class MachineConfig:
    omega_s: float
    hot: Contact
    cold: Contact
    tau: float

    def __post_init__(self):
        if not self.omega_s > 0:
            raise ValueError(f"system splitting must be > 0, got {self.omega_s}")
        if not self.tau >= 0:
            raise ValueError(f"collision time must be >= 0, got {self.tau}")
        if self.cold.bath.beta < self.hot.bath.beta:
            raise ValueError(
                f"cold bath must be colder: beta_c={self.cold.bath.beta} "
                f"< beta_h={self.hot.bath.beta}"
            )

    @classmethod
    def build(cls, *, tau: float, jxx_h: float, jyy_h: float, jxx_c: float,
              jyy_c: float, beta_h: float = 1.0, beta_c: float = 2.0,
              omega_s: float = 1.0, omega_h: float = 1.0,
              omega_c: float = 1.0) -> "MachineConfig":
        return cls(
            omega_s=omega_s,
            hot=Contact(BathSpec(beta_h, omega_h), Coupling(jxx_h, jyy_h)),
            cold=Contact(BathSpec(beta_c, omega_c), Coupling(jxx_c, jyy_c)),
            tau=tau,
        )

    def contact(self, which: Which) -> Contact:
        if which == "hot":
            return self.hot
        if which == "cold":
            return self.cold
        raise ValueError(f"contact must be 'hot' or 'cold', got {which!r}")

    def with_tau(self, tau: float) -> "MachineConfig":
        return replace(self, tau=tau)

    def couplings(self) -> tuple[float, float, float, float]:
        """(jxx_h, jyy_h, jxx_c, jyy_c)"""
        h, c = self.hot.coupling, self.cold.coupling
        return h.jxx, h.jyy, c.jxx, c.jyy

    def as_dict(self) -> dict:
        return {
            "omega_s": self.omega_s,
            "omega_h": self.hot.bath.omega,
            "omega_c": self.cold.bath.omega,
            "beta_h": self.hot.bath.beta,
            "beta_c": self.cold.bath.beta,
            "jxx_h": self.hot.coupling.jxx,
            "jyy_h": self.hot.coupling.jyy,
            "jxx_c": self.cold.coupling.jxx,
            "jyy_c": self.cold.coupling.jyy,
            "tau": self.tau,
        }


@dataclass(frozen=True)
class ThermoCycle:
    """Per-collision heat and work in the periodic steady state.

    Heat is energy deposited into the ancilla; work is the growth of the
    interaction energy at that contact. For the simultaneous machine one
    collision touches both contacts and all four entries come from it.
    """
    q_cold: float
    q_hot: float
    w_cold: float
    w_hot: float
    w_total: float = field(init=False)
    q_total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "w_total", self.w_cold + self.w_hot)
        object.__setattr__(self, "q_total", self.q_cold + self.q_hot)


def gibbs_population(beta, omega):
    """Ground-state population ``1/(1+exp(-beta*omega))``; works on arrays."""
    return 1.0 / (1.0 + np.exp(-np.asarray(beta, dtype=float) * np.asarray(omega, dtype=float)))


def gibbs_state(bath: BathSpec) -> QubitState:
    return QubitState(float(gibbs_population(bath.beta, bath.omega)), 0j)


def qubit_hamiltonian(omega: float) -> np.ndarray:
    return -0.5 * omega * SZ


def interaction_pair(c: Coupling) -> np.ndarray:
    """``jxx sx(x)sx + jyy sy(x)sy`` on system (x) ancilla."""
    return c.jxx * kron(SX, SX) + c.jyy * kron(SY, SY)


def alternating_parts(cfg: MachineConfig, which: Which) -> dict[str, np.ndarray]:
    """4x4 system, ancilla and interaction terms of one alternating collision."""
    contact = cfg.contact(which)
    return {
        "system": kron(qubit_hamiltonian(cfg.omega_s), I2),
        "ancilla": kron(I2, qubit_hamiltonian(contact.bath.omega)),
        "interaction": interaction_pair(contact.coupling),
    }


def total_hamiltonian_alternating(cfg: MachineConfig, which: Which) -> np.ndarray:
    parts = alternating_parts(cfg, which)
    return parts["system"] + parts["ancilla"] + parts["interaction"]


def simultaneous_parts(cfg: MachineConfig) -> dict[str, np.ndarray]:
    """8x8 terms on system (x) hot (x) cold."""
    h, c = cfg.hot.coupling, cfg.cold.coupling
    return {
        "system": kron_all(qubit_hamiltonian(cfg.omega_s), I2, I2),
        "hot": kron_all(I2, qubit_hamiltonian(cfg.hot.bath.omega), I2),
        "cold": kron_all(I2, I2, qubit_hamiltonian(cfg.cold.bath.omega)),
        "int_hot": h.jxx * kron_all(SX, SX, I2) + h.jyy * kron_all(SY, SY, I2),
        "int_cold": c.jxx * kron_all(SX, I2, SX) + c.jyy * kron_all(SY, I2, SY),
    }


def total_hamiltonian_simultaneous(cfg: MachineConfig) -> np.ndarray:
    return sum(simultaneous_parts(cfg).values())
