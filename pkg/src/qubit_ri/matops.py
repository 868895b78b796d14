"""Small dense complex-matrix kernel (dimensions 2, 4 and 8).

Every function accepts optional leading batch axes, so a stack of
``(N, d, d)`` operators is handled with the same code path as a single
``(d, d)`` operator.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

HERMITIAN_TOL = 1e-10
POSITIVITY_TOL = -1e-10
TRACE_TOL = 1e-12
UNITARITY_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


class NotHermitianError(ValueError):
    pass


def kron(a, b) -> np.ndarray:
    """Kronecker product over the last two axes (batch axes broadcast)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    out = np.einsum("...ij,...kl->...ikjl", a, b)
    shape = out.shape[:-4] + (a.shape[-2] * b.shape[-2], a.shape[-1] * b.shape[-1])
    return out.reshape(shape)


def kron_all(*ops) -> np.ndarray:
    out = ops[0]
    for op in ops[1:]:
        out = kron(out, op)
    return np.asarray(out, dtype=complex)


def partial_trace(rho, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` lists subsystem dimensions in tensor order; ``keep`` holds
    indices into ``dims``. The kept subsystems stay in their original order.
    """
    rho = np.asarray(rho, dtype=complex)
    dims = [int(d) for d in dims]
    n = len(dims)
    total = int(np.prod(dims))
    if rho.shape[-2:] != (total, total):
        raise ValueError(
            f"dims {dims} imply a {total}x{total} operator, got {rho.shape[-2:]}"
        )
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} subsystems")

    batch = rho.shape[:-2]
    t = rho.reshape(batch + tuple(dims) + tuple(dims))
    # einsum subscripts: bra indices then ket indices; traced ones share a letter
    letters = "abcdefghijklmnopqrstuvwxyz"
    bra = [letters[i] for i in range(n)]
    ket = [letters[i] if i not in keep else letters[n + i] for i in range(n)]
    out = [letters[i] for i in keep] + [letters[n + i] for i in keep]
    spec = "..." + "".join(bra) + "".join(ket) + "->..." + "".join(out)
    reduced = np.einsum(spec, t)
    d_keep = int(np.prod([dims[k] for k in keep])) if keep else 1
    return reduced.reshape(batch + (d_keep, d_keep))


def max_asymmetry(h) -> float:
    h = np.asarray(h)
    return float(np.max(np.abs(h - np.conj(np.swapaxes(h, -1, -2))), initial=0.0))


def check_hermitian(h, tol: float = HERMITIAN_TOL) -> None:
    asym = max_asymmetry(h)
    if asym > tol:
        raise NotHermitianError(
            f"generator is not Hermitian: max |h - h^dagger| = {asym:.3e} > {tol:.1e}"
        )


def expm_hermitian(h, t) -> np.ndarray:
    """Return ``exp(-i h t)`` for Hermitian ``h`` via its eigendecomposition.

    ``t`` may be a scalar or broadcast against the batch axes of ``h``.
    """
    h = np.asarray(h, dtype=complex)
    check_hermitian(h)
    # symmetrise so eigh sees an exactly Hermitian input
    h = 0.5 * (h + np.conj(np.swapaxes(h, -1, -2)))
    evals, evecs = np.linalg.eigh(h)
    t = np.asarray(t, dtype=float)[..., None]
    phases = np.exp(-1j * evals * t)
    return np.einsum("...ij,...j,...kj->...ik", evecs, phases, np.conj(evecs))


def dagger(a) -> np.ndarray:
    return np.conj(np.swapaxes(np.asarray(a), -1, -2))


def expectation(op, rho):
    """``Tr[op rho]`` as a real number (or real array for batches)."""
    op = np.asarray(op, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if op.shape[-1] != rho.shape[-1] or op.shape[-2] != rho.shape[-2]:
        raise ValueError(f"dimension mismatch: {op.shape[-2:]} vs {rho.shape[-2:]}")
    val = np.einsum("...ij,...ji->...", op, rho)
    scale = np.maximum(1.0, np.abs(val))
    if np.any(np.abs(val.imag) > 1e-12 * scale):
        raise ValueError(
            f"expectation has imaginary part {np.max(np.abs(val.imag)):.3e}; "
            "operator or state not Hermitian"
        )
    if val.ndim == 0:
        return float(val.real)
    return val.real


def unitarity_error(u) -> float:
    u = np.asarray(u)
    eye = np.eye(u.shape[-1])
    return float(np.max(np.abs(u @ dagger(u) - eye)))


def is_density_matrix(rho, trace_tol: float = TRACE_TOL,
                      pos_tol: float = POSITIVITY_TOL) -> bool:
    rho = np.asarray(rho, dtype=complex)
    if max_asymmetry(rho) > HERMITIAN_TOL:
        return False
    tr = np.trace(rho, axis1=-2, axis2=-1)
    if np.any(np.abs(tr - 1.0) > trace_tol):
        return False
    evals = np.linalg.eigvalsh(0.5 * (rho + dagger(rho)))
    return bool(np.all(evals.min(axis=-1) >= pos_tol))
