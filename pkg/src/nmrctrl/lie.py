"""Lie algebra of linear vector fields X_{A(x)B}(C) = A C B^T.

The bracket on factored operators is
    [A1(x)B1, A2(x)B2] = [A1,A2](x)B1B2 + A2A1(x)[B1,B2],
and the induced fields satisfy [X_a, X_b] = -X_[a,b] (an anti-isomorphism,
cross-checked against dense commutators through the realization map
A(x)B -> kron(A, B)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import commutator, kron_all, pauli
from .states import Partition, StateMatrix, TangentVector

__all__ = [
    "TensorTerm",
    "OperatorSum",
    "tensor_bracket",
    "field_bracket",
    "dense_realization",
    "apply_field",
    "compose_fields",
    "identify_two_qubit_field",
    "BracketRow",
    "two_qubit_bracket_table",
]


@dataclass(frozen=True)
class TensorTerm:
    """One scaled factored operator coeff * A (x) B."""

    coeff: complex
    a: np.ndarray
    b: np.ndarray

    def dense(self) -> np.ndarray:
        return self.coeff * np.kron(self.a, self.b)


class OperatorSum:
    """Finite sum of tensor terms over a fixed bipartite partition.

    Canonicalization merges terms whose dense realizations are parallel and
    drops terms with negligible dense norm; the factorization itself is not
    unique, so dense comparison is the only reliable equality test.
    """

    def __init__(self, terms: list[TensorTerm], canonicalize: bool = True):
        self.terms = list(terms)
        if canonicalize:
            self._canonicalize()

    def _canonicalize(self) -> None:
        kept: list[TensorTerm] = []
        dense_kept: list[np.ndarray] = []
        coeffs: list[complex] = []
        for term in self.terms:
            d = np.kron(term.a, term.b)
            scale = np.linalg.norm(d)
            if scale * abs(term.coeff) < 1e-15:
                continue
            for i, dk in enumerate(dense_kept):
                mu = np.vdot(dk, d) / np.vdot(dk, dk)
                if np.allclose(d, mu * dk, atol=1e-13 * max(1.0, scale)):
                    coeffs[i] += term.coeff * mu
                    break
            else:
                kept.append(term)
                dense_kept.append(d)
                coeffs.append(term.coeff)
        self.terms = [
            TensorTerm(c, t.a, t.b)
            for c, t in zip(coeffs, kept)
            if abs(c) * np.linalg.norm(np.kron(t.a, t.b)) > 1e-15
        ]

    def __add__(self, other: "OperatorSum") -> "OperatorSum":
        return OperatorSum(self.terms + other.terms)

    def scaled(self, factor: complex) -> "OperatorSum":
        return OperatorSum([TensorTerm(factor * t.coeff, t.a, t.b) for t in self.terms], canonicalize=False)

    @staticmethod
    def single(coeff: complex, a: np.ndarray, b: np.ndarray) -> "OperatorSum":
        return OperatorSum([TensorTerm(coeff, np.asarray(a, complex), np.asarray(b, complex))], canonicalize=False)

    @staticmethod
    def two_qubit_field(j: int, k: int) -> "OperatorSum":
        """The generator of X_{i sigma_j (x) sigma_k} on the (1,1) partition."""
        return OperatorSum.single(1j, pauli(j), pauli(k))


def tensor_bracket(s1: OperatorSum, s2: OperatorSum) -> OperatorSum:
    """Bilinear extension of [A1(x)B1, A2(x)B2] to operator sums."""
    out: list[TensorTerm] = []
    for t1 in s1.terms:
        for t2 in s2.terms:
            c = t1.coeff * t2.coeff
            out.append(TensorTerm(c, commutator(t1.a, t2.a), t1.b @ t2.b))
            out.append(TensorTerm(c, t2.a @ t1.a, commutator(t1.b, t2.b)))
    return OperatorSum(out)


def field_bracket(s1: OperatorSum, s2: OperatorSum) -> OperatorSum:
    """Generator of the commutator of fields: [X_{s1}, X_{s2}] = -X_{[s1,s2]}."""
    return tensor_bracket(s1, s2).scaled(-1.0)


def compose_fields(s1: OperatorSum, s2: OperatorSum) -> OperatorSum:
    """Generator of the composition X_{s1} after X_{s2} (operator product)."""
    out = [
        TensorTerm(t1.coeff * t2.coeff, t1.a @ t2.a, t1.b @ t2.b)
        for t1 in s1.terms
        for t2 in s2.terms
    ]
    return OperatorSum(out)


def dense_realization(s: OperatorSum, partition: Partition | None = None) -> np.ndarray:
    """Realize the sum as a dense 2^n x 2^n matrix via A(x)B -> kron(A,B)."""
    if not s.terms:
        if partition is None:
            raise ValueError("cannot size an empty operator sum without a partition")
        dim = partition.rows * partition.cols
        return np.zeros((dim, dim), dtype=complex)
    return sum(t.dense() for t in s.terms)


def apply_field(s: OperatorSum, state: StateMatrix) -> TangentVector:
    """Evaluate the field at a state: sum of coeff * A C B^T."""
    c = state.c
    out = np.zeros_like(c)
    for t in s.terms:
        if t.a.shape[0] != c.shape[0] or t.b.shape[0] != c.shape[1]:
            raise ValueError("operator factors do not match the state partition")
        out = out + t.coeff * (t.a @ c @ t.b.T)
    return TangentVector(state, out)


@dataclass(frozen=True)
class BracketRow:
    """One identified bracket: result = sign * scale * X_{i sigma_j (x) sigma_k}."""

    kind: str  # "single" or "double"
    left: tuple[int, int]
    right: tuple[int, int]
    sign: int  # +1, -1, or 0 for a vanishing bracket
    result: tuple[int, int] | None
    scale: float  # positive magnitude; 0 for a vanishing bracket


def identify_two_qubit_field(s: OperatorSum) -> tuple[int, tuple[int, int] | None, float]:
    """Match an operator sum to sign * scale * X_{i sigma_j (x) sigma_k}.

    Returns (sign, (j, k), scale) with scale > 0, or (0, None, 0.0) for the
    zero operator.  Raises if the dense realization is not proportional to a
    single i*sigma_j(x)sigma_k generator, which would signal a convention bug.
    """
    part = Partition(1, 1)
    dense = dense_realization(s, part)
    if np.max(np.abs(dense)) < 1e-12:
        return 0, None, 0.0
    for j in range(4):
        for k in range(4):
            if j == 0 and k == 0:
                continue
            ref = 1j * np.kron(pauli(j), pauli(k))
            mu = np.vdot(ref, dense) / np.vdot(ref, ref)
            if np.allclose(dense, mu * ref, atol=1e-12):
                if abs(mu.imag) > 1e-12:
                    raise ValueError("bracket is a complex multiple of a generator")
                sign = 1 if mu.real > 0 else -1
                return sign, (j, k), abs(mu.real)
    raise ValueError("bracket does not match any i*sigma(x)sigma generator")


_TABLE_GENERATORS = [(3, 3), (1, 0), (2, 0), (0, 1), (0, 2)]


def two_qubit_bracket_table() -> list[BracketRow]:
    """All single and double brackets among the two-qubit drift/control fields.

    Single rows: [X_a, X_b] over unordered pairs from {i s3 x s3, i s1 x I,
    i s2 x I, i I x s1, i I x s2}.  Double rows: [X_a, [X_{s3 x s3}, X_b]] for
    every generator a and control generator b.  Each result is identified as
    sign * scale * X_{i sigma_j x sigma_k} (or 0) by dense comparison.
    """
    fields = {jk: OperatorSum.two_qubit_field(*jk) for jk in _TABLE_GENERATORS}
    rows: list[BracketRow] = []
    for i, a in enumerate(_TABLE_GENERATORS):
        for b in _TABLE_GENERATORS[i + 1 :]:
            sign, result, scale = identify_two_qubit_field(field_bracket(fields[a], fields[b]))
            rows.append(BracketRow("single", a, b, sign, result, scale))
    drift = fields[(3, 3)]
    for a in _TABLE_GENERATORS:
        for b in _TABLE_GENERATORS[1:]:
            inner = field_bracket(drift, fields[b])
            sign, result, scale = identify_two_qubit_field(field_bracket(fields[a], inner))
            rows.append(BracketRow("double", a, b, sign, result, scale))
    return rows
