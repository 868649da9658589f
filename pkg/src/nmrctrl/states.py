"""State geometry for bipartite pure states of n qubits.

A pure state of ell+m qubits is stored as a unit-Frobenius-norm complex
matrix C of shape 2^ell x 2^m (row index = first ell qubits, column index =
remaining m qubits, bits big-endian).  The local unitary group
U(2^ell) x U(2^m) acts by C -> g C h^T; its orbits carry all the
entanglement-neutral directions.  This module provides the vector/matrix
isomorphism, the entanglement measure det(I - C C*), Schmidt data, orbit
types, the two-qubit strata, and the vertical/horizontal splitting of
tangent vectors.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field

import numpy as np

from .linalg import dagger, is_skew_hermitian, pauli

__all__ = [
    "Partition",
    "StateMatrix",
    "TangentVector",
    "SchmidtData",
    "OrbitType",
    "state_from_vector",
    "vector_from_state",
    "entanglement_measure",
    "max_entanglement_measure",
    "concurrence",
    "local_action",
    "schmidt",
    "orbit_type",
    "classify_stratum",
    "fundamental_vector",
    "tangent_inner",
    "is_horizontal",
    "skew_basis",
    "fundamental_frame",
    "split_vertical_horizontal",
    "vertical_basis",
    "horizontal_basis",
]

NORM_ATOL = 1e-10
SV_GROUP_TOL = 1e-8
PINV_CUTOFF = 1e-10


@dataclass(frozen=True)
class Partition:
    """Bipartite split of n = ell + m qubits with 0 < ell <= m."""

    ell: int
    m: int

    def __post_init__(self) -> None:
        if not 0 < self.ell <= self.m:
            raise ValueError(f"need 0 < ell <= m, got ell={self.ell}, m={self.m}")

    @property
    def n(self) -> int:
        return self.ell + self.m

    @property
    def rows(self) -> int:
        return 2**self.ell

    @property
    def cols(self) -> int:
        return 2**self.m

    @property
    def is_two_qubit(self) -> bool:
        return self.ell == 1 and self.m == 1


@dataclass
class StateMatrix:
    """Normalized 2^ell x 2^m matrix representing a pure n-qubit state."""

    partition: Partition
    c: np.ndarray
    norm_tol: InitVar[float] = NORM_ATOL

    def __post_init__(self, norm_tol: float) -> None:
        self.c = np.asarray(self.c, dtype=complex)
        expected = (self.partition.rows, self.partition.cols)
        if self.c.shape != expected:
            raise ValueError(f"state shape {self.c.shape} != {expected}")
        if not np.all(np.isfinite(self.c.view(float))):
            raise ValueError("state entries must be finite")
        defect = abs(np.linalg.norm(self.c) - 1.0)
        if norm_tol is not None and defect > norm_tol:
            raise ValueError(f"state norm deviates from 1 by {defect:.3e}")

    @property
    def norm_defect(self) -> float:
        return abs(np.linalg.norm(self.c) - 1.0)


@dataclass
class TangentVector:
    """Tangent vector X at a base state; tangency means Re tr(C* X) = 0."""

    base: StateMatrix
    x: np.ndarray

    def __post_init__(self) -> None:
        self.x = np.asarray(self.x, dtype=complex)
        if self.x.shape != self.base.c.shape:
            raise ValueError("tangent vector shape differs from base state")

    @property
    def tangency_defect(self) -> float:
        return abs(np.trace(dagger(self.x) @ self.base.c + dagger(self.base.c) @ self.x))


def state_from_vector(psi: np.ndarray, partition: Partition, tol: float = NORM_ATOL) -> StateMatrix:
    """Reshape a 2^n state vector into its bipartite matrix form.

    Coefficient ordering: psi[j] is the amplitude of the computational basis
    state whose bits (big-endian, first qubit most significant) spell j.  The
    first ell bits index the row, the remaining m bits the column, so the map
    is a plain row-major reshape and local operators act as g C h^T.
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != 2**partition.n:
        raise ValueError(f"vector length {psi.size} != 2^{partition.n}")
    defect = abs(np.linalg.norm(psi) - 1.0)
    if defect > tol:
        raise ValueError(f"vector norm deviates from 1 by {defect:.3e}")
    return StateMatrix(partition, psi.reshape(partition.rows, partition.cols), norm_tol=tol * 10)


def vector_from_state(state: StateMatrix) -> np.ndarray:
    """Inverse of state_from_vector."""
    return state.c.reshape(-1).copy()


def entanglement_measure(state: StateMatrix | np.ndarray) -> float:
    """det(I - C C*): zero iff separable, maximal iff maximally entangled.

    Roundoff can push the determinant a hair negative; anything in
    (-1e-10, 0) is clamped to zero so square roots stay real.
    """
    c = state.c if isinstance(state, StateMatrix) else np.asarray(state)
    gram = c @ dagger(c)
    value = float(np.linalg.det(np.eye(gram.shape[0]) - gram).real)
    if -NORM_ATOL < value < 0.0:
        return 0.0
    return value


def max_entanglement_measure(ell: int) -> float:
    """Largest value of the measure on a 2^ell x 2^m state space."""
    return (1.0 - 1.0 / 2**ell) ** (2**ell)


def concurrence(state: StateMatrix) -> float:
    """|det C| for a two-qubit state; square root of the measure."""
    if not state.partition.is_two_qubit:
        raise ValueError("concurrence is defined for the (1,1) partition only")
    return float(abs(np.linalg.det(state.c)))


def _check_unitary(u: np.ndarray, tol: float = 1e-10) -> None:
    if not np.allclose(dagger(u) @ u, np.eye(u.shape[0]), atol=tol):
        raise ValueError("matrix is not unitary within tolerance")


def local_action(g: np.ndarray, h: np.ndarray, state: StateMatrix) -> StateMatrix:
    """Apply the local unitary pair: C -> g C h^T.  Preserves the measure."""
    _check_unitary(g)
    _check_unitary(h)
    return StateMatrix(state.partition, g @ state.c @ h.T, norm_tol=1e-8)


@dataclass
class SchmidtData:
    """Singular value decomposition C = g (diag(lambdas), 0) h^T."""

    g: np.ndarray
    h: np.ndarray
    lambdas: np.ndarray

    def reconstruct(self, partition: Partition) -> np.ndarray:
        core = np.zeros((partition.rows, partition.cols), dtype=complex)
        np.fill_diagonal(core, self.lambdas)
        return self.g @ core @ self.h.T


def schmidt(state: StateMatrix) -> SchmidtData:
    """Schmidt decomposition; singular values sorted descending."""
    u, s, vh = np.linalg.svd(state.c)
    # C = U S V^H = g (S,0) h^T with h^T = V^H, i.e. h = conj(V).
    return SchmidtData(g=u, h=vh.T, lambdas=s)


def _group_multiplicities(lambdas: np.ndarray, tol: float) -> list[int]:
    mults: list[int] = [1]
    for prev, cur in zip(lambdas[:-1], lambdas[1:]):
        if prev - cur <= tol * max(1.0, prev):
            mults[-1] += 1
        else:
            mults.append(1)
    return mults


@dataclass
class OrbitType:
    """Degeneracy pattern of the singular values and the orbit dimensions."""

    n_distinct: int
    multiplicities: list[int]
    singular: bool
    dim_vertical: int
    dim_horizontal: int


def orbit_type(state: StateMatrix, tol: float = SV_GROUP_TOL) -> OrbitType:
    """Classify the local-unitary orbit through the state.

    The vertical dimension is the dimension of the orbit (rank of the
    fundamental-vector frame); the horizontal dimension is its complement in
    the (2^(n+1) - 1)-dimensional sphere tangent space.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    part = state.partition
    lambdas = np.linalg.svd(state.c, compute_uv=False)
    mults = _group_multiplicities(lambdas, tol)
    singular = bool(lambdas[-1] <= tol)
    gap = part.cols - part.rows
    stab = sum(m * m for m in mults)
    if singular:
        stab += (gap + mults[-1]) ** 2
    else:
        stab += gap**2
    dim_group = part.rows**2 + part.cols**2 - 1
    dim_vertical = dim_group - (stab - 1)
    dim_sphere = 2 ** (part.n + 1) - 1
    return OrbitType(
        n_distinct=len(mults),
        multiplicities=mults,
        singular=singular,
        dim_vertical=dim_vertical,
        dim_horizontal=dim_sphere - dim_vertical,
    )


def classify_stratum(state: StateMatrix, tol: float = SV_GROUP_TOL) -> str:
    """Two-qubit stratum label: M0 separable, M1 generic, M2 maximally entangled."""
    if not state.partition.is_two_qubit:
        raise ValueError("strata are defined for the (1,1) partition only")
    l1, l2 = np.linalg.svd(state.c, compute_uv=False)
    if l2 <= tol:
        return "M0"
    if l1 - l2 <= tol:
        return "M2"
    return "M1"


def fundamental_vector(xi: np.ndarray | None, eta: np.ndarray | None, state: StateMatrix) -> TangentVector:
    """Infinitesimal local action xi C + C eta^T for skew-Hermitian xi, eta."""
    part = state.partition
    x = np.zeros((part.rows, part.cols), dtype=complex)
    if xi is not None:
        if not is_skew_hermitian(xi):
            raise ValueError("xi must be skew-Hermitian")
        x = x + xi @ state.c
    if eta is not None:
        if not is_skew_hermitian(eta):
            raise ValueError("eta must be skew-Hermitian")
        x = x + state.c @ eta.T
    return TangentVector(state, x)


def tangent_inner(x: np.ndarray, y: np.ndarray) -> float:
    """Real inner product (1/2) tr(X* Y + Y* X)."""
    return float(np.real(np.trace(dagger(x) @ y)))


def is_horizontal(vec: TangentVector, tol: float = 1e-10) -> bool:
    """True iff X C* - C X* = 0 and C* X - X* C = 0 within tolerance."""
    c, x = vec.base.c, vec.x
    left = x @ dagger(c) - c @ dagger(x)
    right = dagger(c) @ x - dagger(x) @ c
    return bool(np.max(np.abs(left)) <= tol and np.max(np.abs(right)) <= tol)


def skew_basis(d: int) -> list[np.ndarray]:
    """Real basis of u(d): i E_kk, E_jk - E_kj, i(E_jk + E_kj)."""
    out: list[np.ndarray] = []
    for k in range(d):
        b = np.zeros((d, d), dtype=complex)
        b[k, k] = 1j
        out.append(b)
    for j in range(d):
        for k in range(j + 1, d):
            b = np.zeros((d, d), dtype=complex)
            b[j, k] = 1.0
            b[k, j] = -1.0
            out.append(b)
            b = np.zeros((d, d), dtype=complex)
            b[j, k] = 1j
            b[k, j] = 1j
            out.append(b)
    return out


def fundamental_frame(state: StateMatrix) -> list[np.ndarray]:
    """Fundamental vectors of a full basis of u(2^ell) + u(2^m) at the state.

    The frame is overcomplete (it spans the vertical space but is not
    linearly independent); rank deficiency is handled downstream by a
    pseudo-inverse.
    """
    frame = [xi @ state.c for xi in skew_basis(state.partition.rows)]
    frame += [state.c @ eta.T for eta in skew_basis(state.partition.cols)]
    return frame


def split_vertical_horizontal(vec: TangentVector) -> tuple[TangentVector, TangentVector]:
    """Orthogonal decomposition X = X_V + X_H against the orbit directions.

    X_V is the least-squares projection of X onto the span of the
    fundamental-vector frame (Gram matrix solved with a pseudo-inverse,
    relative cutoff 1e-10); X_H is the remainder and satisfies the
    horizontality conditions.
    """
    frame = fundamental_frame(vec.base)
    k = len(frame)
    gram = np.empty((k, k))
    rhs = np.empty(k)
    for a, va in enumerate(frame):
        rhs[a] = tangent_inner(va, vec.x)
        for b in range(a, k):
            gram[a, b] = tangent_inner(va, frame[b])
            gram[b, a] = gram[a, b]
    coeffs = np.linalg.pinv(gram, rcond=PINV_CUTOFF) @ rhs
    xv = np.tensordot(coeffs, np.array(frame), axes=1)
    return TangentVector(vec.base, xv), TangentVector(vec.base, vec.x - xv)


def _require_sorted_diagonal_two_qubit(state: StateMatrix) -> tuple[float, float]:
    if not state.partition.is_two_qubit:
        raise ValueError("basis construction requires the (1,1) partition")
    c = state.c
    if np.max(np.abs(c - np.diag(np.diag(c)))) > 1e-12:
        raise ValueError("state must be diagonal")
    l1, l2 = np.diag(c).real
    if np.max(np.abs(np.diag(c).imag)) > 1e-12 or l1 < l2 or l2 < -1e-12:
        raise ValueError("diagonal must be real, nonnegative and sorted descending")
    return float(l1), float(l2)


def _field(j: int, k: int, state: StateMatrix) -> TangentVector:
    return TangentVector(state, 1j * pauli(j) @ state.c @ pauli(k).T)


def vertical_basis(state: StateMatrix, tol: float = SV_GROUP_TOL) -> list[TangentVector]:
    """Basis of the orbit tangent space at a sorted diagonal two-qubit state.

    Six vectors on the generic stratum, five at diag(1,0) (where the
    i*identity, i*sigma3-left and i*sigma3-right directions collapse to one),
    four at the maximally entangled diagonal (where left and right
    sigma1/sigma2 directions pairwise coincide).
    """
    _require_sorted_diagonal_two_qubit(state)
    stratum = classify_stratum(state, tol)
    identity = TangentVector(state, 1j * state.c)
    if stratum == "M1":
        return [
            identity,
            _field(3, 0, state),
            _field(1, 0, state),
            _field(0, 1, state),
            _field(2, 0, state),
            _field(0, 2, state),
        ]
    if stratum == "M0":
        return [
            identity,
            _field(1, 0, state),
            _field(0, 1, state),
            _field(2, 0, state),
            _field(0, 2, state),
        ]
    return [identity, _field(3, 0, state), _field(1, 0, state), _field(2, 0, state)]


def horizontal_basis(state: StateMatrix, tol: float = SV_GROUP_TOL) -> list[TangentVector]:
    """Basis of the horizontal space at a sorted diagonal two-qubit state.

    One vector (the i sigma1 x sigma2 field) on the generic stratum, two at
    diag(1,0), three at the maximally entangled diagonal (i times the
    left-factor fields, which are traceless Hermitian multiples of the state).
    """
    _require_sorted_diagonal_two_qubit(state)
    stratum = classify_stratum(state, tol)
    if stratum == "M1":
        return [_field(1, 2, state)]
    if stratum == "M0":
        return [_field(1, 1, state), _field(1, 2, state)]
    return [
        TangentVector(state, 1j * _field(j, 0, state).x) for j in (1, 2, 3)
    ]
