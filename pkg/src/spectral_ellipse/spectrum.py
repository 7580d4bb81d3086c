"""Eigenvalues via characteristic polynomial root finding, validated by the
two power-sum identities sum(lambda) = tr A and sum(lambda^2) = tr(A^2).

Validation is by moments rather than residual vectors: the pipeline produces
roots, not eigenvectors, and the downstream geometry consumes exactly these
two power sums.  A failed moment check is a hard error because an unreliable
spectrum must never reach the containment verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matrix
from .numerics import DEFAULT_MAX_ITER, DEFAULT_ROOT_TOL, find_roots

DEFAULT_MOMENT_TOL = 1e-8


class MomentMismatch(RuntimeError):
    """Computed eigenvalues fail the trace / q_form consistency identities."""

    def __init__(self, message: str, sum_residual: float, q_residual: float, tol: float):
        super().__init__(message)
        self.sum_residual = sum_residual
        self.q_residual = q_residual
        self.tol = tol


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset (lexicographically sorted) with validation residuals."""

    values: tuple[complex, ...]
    sum_residual: float
    q_residual: float


def moment(values, k: int) -> complex:
    """Power sum sum(v**k) for k in {1, 2}."""
    if k not in (1, 2):
        raise ValueError(f"unsupported moment order {k}")
    return complex(sum(complex(v) ** k for v in values))


def moment_tol(a: np.ndarray, tol: float = DEFAULT_MOMENT_TOL) -> float:
    return tol * (1.0 + matrix.frobenius(a)) ** 2


def eigenvalues(
    a: np.ndarray,
    tol: float = DEFAULT_MOMENT_TOL,
    *,
    root_tol: float = DEFAULT_ROOT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Spectrum:
    """All eigenvalues of a, counted by multiplicity, sorted by (re, im).

    The matrix is normalized to unit Frobenius scale before the
    characteristic polynomial is formed, which keeps the root finder's
    initial circle near the spectrum; roots are scaled back afterwards.
    Raises MomentMismatch when the power sums disagree with tr A or tr(A^2)
    beyond tol*(1 + ||A||_F)^2, and propagates NonConvergence from the
    root finder.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 1:
        lam = complex(a[0, 0])
        return Spectrum(values=(lam,), sum_residual=0.0, q_residual=0.0)

    scale = matrix.frobenius(a) / math.sqrt(n)
    if not scale > 0.0:
        scale = 1.0
    roots = find_roots(matrix.char_poly(a / scale), tol=root_tol, max_iter=max_iter)
    lams = tuple(sorted((scale * r for r in roots), key=lambda z: (z.real, z.imag)))

    limit = moment_tol(a, tol)
    sum_residual = abs(moment(lams, 1) - matrix.trace(a))
    q_residual = abs(moment(lams, 2) - matrix.q_form(a))
    if sum_residual > limit or q_residual > limit:
        raise MomentMismatch(
            f"moment residuals ({sum_residual:.3e}, {q_residual:.3e}) exceed {limit:.3e}",
            sum_residual,
            q_residual,
            limit,
        )
    return Spectrum(values=lams, sum_residual=sum_residual, q_residual=q_residual)
