"""Dense complex-matrix kernel: spin-1/2 operators, Kronecker embeddings,
matrix exponentials and unitary conjugation.

All spin operators carry the 1/2 normalization, so e.g. sigma(3) has
eigenvalues +1/2 and -1/2 and [sigma(1), sigma(2)] = -i*sigma(3).
"""

from __future__ import annotations

from functools import reduce

import numpy as np
import scipy.linalg

__all__ = [
    "pauli",
    "PAULI",
    "kron_all",
    "embed_site",
    "embed_matrix",
    "commutator",
    "dagger",
    "expm",
    "adjoint_pair",
    "is_hermitian",
    "is_skew_hermitian",
]

_S0 = np.eye(2, dtype=complex)
_S1 = 0.5 * np.array([[0, 1], [1, 0]], dtype=complex)
_S2 = 0.5 * np.array([[0, 1j], [-1j, 0]], dtype=complex)
_S3 = 0.5 * np.array([[1, 0], [0, -1]], dtype=complex)

PAULI = (_S0, _S1, _S2, _S3)


def pauli(j: int) -> np.ndarray:
    """Half-normalized spin matrix; index 0 is the 2x2 identity."""
    if j not in (0, 1, 2, 3):
        raise ValueError(f"pauli index must be in 0..3, got {j}")
    return PAULI[j].copy()


def kron_all(factors) -> np.ndarray:
    """Kronecker product of a sequence of matrices, left to right."""
    return reduce(np.kron, factors)


def embed_site(j: int, site: int, n: int) -> np.ndarray:
    """pauli(j) acting on qubit `site` (1-based) of an n-qubit register.

    Returns the 2^n x 2^n matrix I x ... x pauli(j) x ... x I with the
    nontrivial factor in slot `site`.
    """
    if not 1 <= site <= n:
        raise ValueError(f"site {site} out of range 1..{n}")
    factors = [_S0] * n
    factors[site - 1] = pauli(j)
    return kron_all(factors)


def embed_matrix(op: np.ndarray, site: int, n: int) -> np.ndarray:
    """Arbitrary 2x2 operator acting on qubit `site` (1-based) of n qubits."""
    if not 1 <= site <= n:
        raise ValueError(f"site {site} out of range 1..{n}")
    factors = [_S0] * n
    factors[site - 1] = np.asarray(op, dtype=complex)
    return kron_all(factors)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def is_hermitian(a: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.allclose(a, dagger(a), atol=tol))


def is_skew_hermitian(a: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.allclose(a, -dagger(a), atol=tol))


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential.

    Hermitian and skew-Hermitian inputs go through an eigendecomposition,
    which keeps exp of skew-Hermitian matrices unitary to roundoff; anything
    else falls back to scipy's scaling-and-squaring Pade routine.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expm requires a square matrix, got shape {a.shape}")
    if is_hermitian(a):
        w, v = np.linalg.eigh(a)
        return (v * np.exp(w)) @ dagger(v)
    if is_skew_hermitian(a):
        w, v = np.linalg.eigh(-1j * a)
        return (v * np.exp(1j * w)) @ dagger(v)
    return scipy.linalg.expm(a)


def adjoint_pair(
    xi1: np.ndarray,
    xi2: np.ndarray,
    s: float,
    sigma1: np.ndarray,
    sigma2: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Conjugate the factor pair (sigma1, sigma2) by (exp(-s*xi1), exp(-s*xi2)).

    Returns (exp(-s*xi1) sigma1 exp(s*xi1), exp(-s*xi2) sigma2 exp(s*xi2)),
    the rotated-frame factors that act on a state matrix C as A C B^T.
    """
    if xi1.shape != sigma1.shape:
        raise ValueError("xi1 and sigma1 dimensions differ")
    if xi2.shape != sigma2.shape:
        raise ValueError("xi2 and sigma2 dimensions differ")
    u1 = expm(-s * xi1)
    u2 = expm(-s * xi2)
    return u1 @ sigma1 @ expm(s * xi1), u2 @ sigma2 @ expm(s * xi2)
