"""Two-qubit linear algebra.

Everything here works on plain numpy arrays.  Four-level objects use the
fixed basis order |CC>, |CD>, |DC>, |DD> (equivalently |00>, |01>, |10>,
|11>), with the first factor belonging to the row player.
"""

from __future__ import annotations

from collections.abc import Sequence
from functools import lru_cache

import numpy as np

from .errors import DomainError, ValidationError

ATOL = 1e-12
BASIS_ATOL = 1e-10
NEG_PROB_ALLOWANCE = 1e-10

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
# U(pi) from the two-parameter family, i.e. the defect operator
DEFECT = np.array([[0, 1], [-1, 0]], dtype=complex)

COMPUTATIONAL_BASIS = tuple(np.eye(4, dtype=complex)[k] for k in range(4))


def unitarity_defect(u: np.ndarray) -> float:
    """Frobenius norm of U U^dagger - I."""
    u = np.asarray(u, dtype=complex)
    return float(np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0]), "fro"))


def check_unitary(u, name: str = "operand", dim: int = 2, atol: float = ATOL) -> np.ndarray:
    arr = np.asarray(u, dtype=complex)
    if arr.shape != (dim, dim):
        raise ValidationError(f"{name}: expected a {dim}x{dim} matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name}: non-finite entries")
    err = unitarity_defect(arr)
    if err > atol:
        raise ValidationError(f"{name} is not unitary (||UU^dagger - I||_F = {err:.3e})")
    return arr


def check_state(psi, name: str = "state", atol: float = ATOL) -> np.ndarray:
    arr = np.asarray(psi, dtype=complex).reshape(-1)
    if arr.shape != (4,):
        raise ValidationError(f"{name}: expected a 4-vector, got shape {arr.shape}")
    norm = np.linalg.norm(arr)
    if not np.isfinite(norm) or abs(norm - 1.0) > atol:
        raise ValidationError(f"{name}: norm {norm!r} differs from 1")
    return arr


def check_density(rho, name: str = "rho", atol: float = ATOL) -> np.ndarray:
    """Validate a 4x4 density matrix: Hermitian, unit trace, PSD."""
    arr = np.asarray(rho, dtype=complex)
    if arr.shape != (4, 4):
        raise ValidationError(f"{name}: expected 4x4, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name}: non-finite entries")
    herm = np.linalg.norm(arr - arr.conj().T)
    if herm > atol:
        raise ValidationError(f"{name} is not Hermitian (defect {herm:.3e})")
    tr = np.trace(arr)
    if abs(tr - 1.0) > atol:
        raise ValidationError(f"{name} has trace {tr!r}")
    lowest = np.linalg.eigvalsh(arr)[0]
    if lowest < -NEG_PROB_ALLOWANCE:
        raise ValidationError(f"{name} is not positive semidefinite (eigenvalue {lowest:.3e})")
    return arr


def kron2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 arrays (np.kron is slow at this size)."""
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(4, 4)


def tensor(u, v) -> np.ndarray:
    """Kronecker product of two single-qubit unitaries (u acts on the first qubit)."""
    a = check_unitary(u, "u")
    b = check_unitary(v, "v")
    return kron2(a, b)


def entangler(gamma: float = np.pi / 2) -> np.ndarray:
    """J = cos(gamma/2) I(x)I + i sin(gamma/2) D(x)D.

    gamma = 0 gives the identity, gamma = pi/2 maximal entanglement:
    J|CC> = (|CC> + i|DD>)/sqrt(2).  J commutes with the qubit swap.
    """
    if not (0.0 <= gamma <= np.pi / 2) or not np.isfinite(gamma):
        raise DomainError(f"entanglement gamma={gamma!r} outside [0, pi/2]")
    return _entangler(float(gamma)).copy()


@lru_cache(maxsize=64)
def _entangler(gamma: float) -> np.ndarray:
    return np.cos(gamma / 2) * np.eye(4, dtype=complex) + 1j * np.sin(gamma / 2) * kron2(DEFECT, DEFECT)


def pure_density(psi) -> np.ndarray:
    v = check_state(psi)
    return np.outer(v, v.conj())


def check_basis(basis: Sequence) -> np.ndarray:
    """Stack four basis kets as columns, checking orthonormality.

    A 4x4 array is read as kets in its columns.
    """
    if isinstance(basis, np.ndarray) and basis.shape == (4, 4):
        cols = basis.astype(complex, copy=False)
    elif len(basis) != 4:
        raise ValidationError(f"measurement basis needs 4 vectors, got {len(basis)}")
    else:
        cols = np.column_stack([np.asarray(b, dtype=complex).reshape(4) for b in basis])
    gram = cols.conj().T @ cols
    err = np.max(np.abs(gram - np.eye(4)))
    if err > BASIS_ATOL:
        raise ValidationError(f"measurement basis is not orthonormal (max Gram defect {err:.3e})")
    return cols


def measure_probabilities(rho, basis: Sequence = COMPUTATIONAL_BASIS) -> np.ndarray:
    """Outcome probabilities tr[|psi_k><psi_k| rho] for a projective measurement."""
    r = check_density(rho)
    cols = check_basis(basis)
    probs = np.real(np.einsum("ik,ij,jk->k", cols.conj(), r, cols))
    if probs.min() < -NEG_PROB_ALLOWANCE:
        raise ValidationError(f"negative outcome probability {probs.min():.3e}")
    probs = np.clip(probs, 0.0, 1.0)
    if abs(probs.sum() - 1.0) > 1e-9:
        raise ValidationError(f"outcome probabilities sum to {probs.sum()!r}")
    return probs


def reduced_entropy(psi) -> float:
    """Von Neumann entropy (nats) of the first qubit of a pure two-qubit state."""
    m = check_state(psi).reshape(2, 2)
    evals = np.linalg.eigvalsh(m @ m.conj().T)
    evals = evals[evals > 1e-15]
    return float(-np.sum(evals * np.log(evals)))
