"""Dense complex matrices: the trace quadratic form, traceless decomposition,
similarity transforms, and the Faddeev-LeVerrier characteristic polynomial.

Matrices are square numpy complex128 arrays; `as_matrix` is the validating
entry point for externally supplied data.  All operations are pure.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .numerics import Polynomial

SINGULAR_PIVOT_REL = 1e-12
CONDITION_WARN_THRESHOLD = 1e8


class SingularTransform(ValueError):
    """Similarity transform rejected: LU found a pivot too close to zero."""


def as_matrix(entries) -> np.ndarray:
    """Validate and freeze a square complex matrix from any array-like."""
    a = np.array(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    a.flags.writeable = False
    return a


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, "fro"))


def trace(a: np.ndarray) -> complex:
    return complex(np.trace(a))


def q_form(a: np.ndarray) -> complex:
    """tr(A^2), evaluated as sum_ij A_ij A_ji without forming the product."""
    return complex(np.einsum("ij,ji->", a, a))


@dataclass(frozen=True)
class Decomposition:
    """Split A = gamma*1 + A0 with tr(A0) = 0, plus the q values tied by
    q_total = n*gamma^2 + q_traceless."""

    gamma: complex
    traceless_part: np.ndarray
    q_total: complex
    q_traceless: complex
    n: int


def decompose(a: np.ndarray) -> Decomposition:
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    gamma = trace(a) / n
    a0 = a - gamma * identity(n)
    a0.flags.writeable = False
    return Decomposition(
        gamma=gamma,
        traceless_part=a0,
        q_total=q_form(a),
        q_traceless=q_form(a0),
        n=n,
    )


def _lu_factor(t: np.ndarray):
    """LU with partial pivoting; returns (packed LU, row permutation, min |pivot|)."""
    n = t.shape[0]
    lu = np.array(t, dtype=complex)
    perm = np.arange(n)
    min_pivot = np.inf
    for k in range(n):
        j = k + int(np.argmax(np.abs(lu[k:, k])))
        if j != k:
            lu[[k, j]] = lu[[j, k]]
            perm[[k, j]] = perm[[j, k]]
        pivot = lu[k, k]
        min_pivot = min(min_pivot, abs(pivot))
        if pivot != 0 and k + 1 < n:
            lu[k + 1 :, k] /= pivot
            lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    return lu, perm, float(min_pivot)


def _lu_solve(lu: np.ndarray, perm: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = lu.shape[0]
    x = np.array(b[perm], dtype=complex)
    for k in range(1, n):
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(n - 1, -1, -1):
        if k + 1 < n:
            x[k] -= lu[k, k + 1 :] @ x[k + 1 :]
        x[k] /= lu[k, k]
    return x


def solve(t: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve T X = B by LU with partial pivoting; SingularTransform on tiny pivots."""
    lu, perm, min_pivot = _lu_factor(t)
    if min_pivot <= SINGULAR_PIVOT_REL * frobenius(t):
        raise SingularTransform(
            f"pivot {min_pivot:.3e} below {SINGULAR_PIVOT_REL:.0e} * ||T||_F"
        )
    return _lu_solve(lu, perm, b)


def inverse(t: np.ndarray) -> np.ndarray:
    return solve(t, identity(t.shape[0]))


def condition_estimate(t: np.ndarray) -> float:
    """Frobenius condition number ||T||_F * ||T^-1||_F."""
    return frobenius(t) * frobenius(inverse(t))


def similarity(a: np.ndarray, t: np.ndarray) -> np.ndarray:
    """T^-1 A T via an LU solve of T X = A T; T^-1 is never formed for the product."""
    a = np.asarray(a, dtype=complex)
    t = np.asarray(t, dtype=complex)
    if a.shape != t.shape:
        raise ValueError("matrix and transform must have matching shape")
    lu, perm, min_pivot = _lu_factor(t)
    if min_pivot <= SINGULAR_PIVOT_REL * frobenius(t):
        raise SingularTransform(
            f"pivot {min_pivot:.3e} below {SINGULAR_PIVOT_REL:.0e} * ||T||_F"
        )
    tinv = _lu_solve(lu, perm, identity(t.shape[0]))
    cond = frobenius(t) * frobenius(tinv)
    if cond > CONDITION_WARN_THRESHOLD:
        warnings.warn(
            f"similarity transform condition estimate {cond:.3e} exceeds 1e8; "
            "result may be inaccurate",
            stacklevel=2,
        )
    x = _lu_solve(lu, perm, a @ t)
    x.flags.writeable = False
    return x


def char_poly(a: np.ndarray) -> Polynomial:
    """Monic characteristic polynomial by the Faddeev-LeVerrier recursion."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    eye = identity(n)
    m = eye.copy()
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    for k in range(1, n + 1):
        prod = a @ m
        c = -np.trace(prod) / k
        coeffs[n - k] = c
        if k < n:
            m = prod + c * eye
    return Polynomial(tuple(complex(c) for c in coeffs))
