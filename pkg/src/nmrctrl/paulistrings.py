"""Sparse algebra of i * (spin-string) operators and Lie closure.

An n-site string is sigma_{j1} (x) ... (x) sigma_{jn} with half-normalized
site factors; elements of su(2^n) are real combinations of i * string.  With
this normalization the commutator of two i-strings is again a real multiple
of a single i-string, so closure runs in the 4^n - 1 dimensional coordinate
space without any dense 2^n x 2^n matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .linalg import kron_all, pauli

__all__ = [
    "PauliString",
    "string_bracket",
    "element_bracket",
    "element_dense",
    "ClosureResult",
    "lie_closure",
]

# Levi-Civita sign of (a, b, 6-a-b) for distinct a, b in {1,2,3}.
_EPS = np.zeros((4, 4))
for _a, _b, _s in ((1, 2, 1), (2, 3, 1), (3, 1, 1), (2, 1, -1), (3, 2, -1), (1, 3, -1)):
    _EPS[_a, _b] = _s


@dataclass(frozen=True)
class PauliString:
    """coeff * i * (string of half-normalized site operators)."""

    indices: tuple[int, ...]
    coeff: float = 1.0

    def __post_init__(self) -> None:
        if any(j not in (0, 1, 2, 3) for j in self.indices):
            raise ValueError("string indices must be in 0..3")

    @property
    def n(self) -> int:
        return len(self.indices)

    def dense(self) -> np.ndarray:
        return self.coeff * 1j * kron_all([pauli(j) for j in self.indices])


def string_bracket(p: PauliString, q: PauliString) -> list[PauliString]:
    """Commutator [i*P, i*Q] expanded in the i*string basis.

    The result is empty (commuting strings) or a single string: each site
    contributes a phase, and only an odd count of anticommuting sites leaves
    an imaginary total phase and hence a nonzero commutator.
    """
    if p.n != q.n:
        raise ValueError("string lengths differ")
    codes, coeffs = element_bracket(
        _as_arrays([p]), _as_arrays([q])
    )
    return [PauliString(tuple(int(j) for j in c), float(w)) for c, w in zip(codes, coeffs)]


def _as_arrays(strings: Sequence[PauliString]) -> tuple[np.ndarray, np.ndarray]:
    codes = np.array([s.indices for s in strings], dtype=np.int16)
    coeffs = np.array([s.coeff for s in strings], dtype=float)
    return codes, coeffs


def element_bracket(
    e1: tuple[np.ndarray, np.ndarray], e2: tuple[np.ndarray, np.ndarray]
) -> tuple[np.ndarray, np.ndarray]:
    """Bracket of two sparse elements given as (codes (k, n), coeffs (k,)).

    Vectorized over all term pairs; like terms are merged and zero
    coefficients dropped.  Site rule: with half-normalized factors,
    [i*P, i*Q] = -2 Im(phase) * i*R where each equal nonzero site contributes
    1/4, each distinct nonzero pair (a, b) contributes -(i/2) * eps(a, b, c).
    """
    codes1, coeffs1 = e1
    codes2, coeffs2 = e2
    a = codes1[:, None, :]
    b = codes2[None, :, :]
    a_zero = a == 0
    b_zero = b == 0
    equal = (a == b) & ~a_zero
    distinct = ~a_zero & ~b_zero & (a != b)
    res = np.where(a_zero, b, np.where(b_zero, a, np.where(distinct, 6 - a - b, 0)))
    d = distinct.sum(axis=-1)
    e_cnt = equal.sum(axis=-1)
    eps = np.where(distinct, _EPS[a, b], 1.0).prod(axis=-1)
    # Im((-i)^d) is -1, +1 or 0 according to d mod 4.
    im = np.where(d % 4 == 1, -1.0, np.where(d % 4 == 3, 1.0, 0.0))
    coeff = np.multiply.outer(coeffs1, coeffs2) * (-2.0) * (0.25**e_cnt) * (0.5**d) * eps * im
    keep = coeff != 0.0
    if not np.any(keep):
        return np.zeros((0, codes1.shape[1]), dtype=np.int16), np.zeros(0)
    res = res[keep]
    coeff = coeff[keep]
    return _merge_terms(res, coeff)


def _merge_terms(codes: np.ndarray, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = codes.shape[1]
    weights = 4 ** np.arange(n, dtype=np.int64)
    packed = codes.astype(np.int64) @ weights
    uniq, inverse = np.unique(packed, return_inverse=True)
    summed = np.zeros(uniq.size)
    np.add.at(summed, inverse, coeffs)
    keep = np.abs(summed) > 1e-14
    uniq = uniq[keep]
    summed = summed[keep]
    out_codes = np.empty((uniq.size, n), dtype=np.int16)
    rem = uniq.copy()
    for k in range(n):
        out_codes[:, k] = rem % 4
        rem //= 4
    return out_codes, summed


def element_dense(strings: Iterable[PauliString]) -> np.ndarray:
    """Dense 2^n x 2^n realization of a sparse element (test oracle)."""
    strings = list(strings)
    if not strings:
        raise ValueError("empty element has no dense size")
    return sum(s.dense() for s in strings)


@dataclass
class ClosureResult:
    dimension: int
    basis: list[list[PauliString]]
    n: int
    pairs_processed: int


def _to_element(strings: Sequence[PauliString], n: int) -> tuple[np.ndarray, np.ndarray]:
    if any(s.n != n for s in strings):
        raise ValueError("generator string length does not match qubit count")
    codes, coeffs = _as_arrays(list(strings))
    return _merge_terms(codes, coeffs)


def _coord_vector(element: tuple[np.ndarray, np.ndarray], n: int) -> np.ndarray:
    codes, coeffs = element
    weights = 4 ** np.arange(n, dtype=np.int64)
    v = np.zeros(4**n)
    v[codes.astype(np.int64) @ weights] = coeffs
    return v


def lie_closure(
    generators: Sequence[Sequence[PauliString]],
    n: int,
    max_pairs: int = 5_000_000,
    independence_tol: float = 1e-9,
) -> ClosureResult:
    """Close the generated real Lie algebra and return its dimension.

    Every unordered pair of basis elements is bracketed exactly once; a
    bracket joins the basis iff its coordinate vector has a component of
    relative size > independence_tol outside the span found so far (tracked
    through an incrementally orthonormalized coordinate matrix).  Structure
    constants are exact halves and quarters, so the threshold has orders of
    magnitude of headroom.
    """
    if n < 1:
        raise ValueError("need at least one qubit")
    dim_cap = 4**n - 1
    ortho = np.zeros((0, 4**n))
    elements: list[tuple[np.ndarray, np.ndarray]] = []
    raw: list[list[PauliString]] = []

    def try_accept(element: tuple[np.ndarray, np.ndarray]) -> None:
        nonlocal ortho
        if element[0].size == 0:
            return
        v = _coord_vector(element, n)
        nv = np.linalg.norm(v)
        if nv < 1e-14:
            return
        v = v / nv
        if ortho.shape[0]:
            v = v - ortho.T @ (ortho @ v)
            # one re-orthogonalization pass keeps the frame numerically tight
            v = v - ortho.T @ (ortho @ v)
        res = np.linalg.norm(v)
        if res <= independence_tol:
            return
        ortho = np.vstack([ortho, v / res])
        elements.append(element)
        raw.append(
            [PauliString(tuple(int(x) for x in c), float(w)) for c, w in zip(*element)]
        )

    for gen in generators:
        try_accept(_to_element(gen, n))

    pairs = 0
    j = 1
    while j < len(elements):
        if len(elements) >= dim_cap and j < len(elements):
            # span is already maximal; no bracket can add a direction
            break
        for i in range(j):
            pairs += 1
            if pairs > max_pairs:
                raise RuntimeError(f"closure did not stabilize within {max_pairs} bracket pairs")
            try_accept(element_bracket(elements[j], elements[i]))
            if len(elements) >= dim_cap:
                break
        j += 1

    return ClosureResult(dimension=len(elements), basis=raw, n=n, pairs_processed=pairs)
