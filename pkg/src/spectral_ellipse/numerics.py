"""Complex scalar conventions, polynomials, and a damped Aberth-Ehrlich root finder.

All routines are pure functions of their inputs and never admit NaN/Inf.
The square-root branch fixed here (argument in (-pi/2, pi/2]) is the one
convention every downstream phase computation relies on.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

_EPS = float(np.finfo(float).eps)

# irrational angle increment applied to the initial root circle; breaks the
# real-axis symmetry that can trap simultaneous iterations
_GOLDEN_ANGLE = 2.0 * math.pi * (1.0 - 1.0 / ((1.0 + math.sqrt(5.0)) / 2.0))

DEFAULT_ROOT_TOL = 1e-13
DEFAULT_MAX_ITER = 200
_MAX_HALVINGS = 8


class NonConvergence(RuntimeError):
    """Root iteration did not meet its residual targets within max_iter."""

    def __init__(self, message: str, residuals: tuple[float, ...]):
        super().__init__(message)
        self.residuals = residuals


def _require_finite_scalar(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex scalar: {z!r}")
    return z


def principal_sqrt(z: complex) -> complex:
    """Square root with argument in (-pi/2, pi/2]; maps -1 to +1j, 0 to 0.

    A negative real input always lands on the +i side regardless of the
    sign of its (zero) imaginary part.
    """
    z = _require_finite_scalar(z)
    if z.imag == 0.0:
        z = complex(z.real, 0.0)  # collapse -0.0 so the branch cut is one-sided
    return cmath.sqrt(z)


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial, coefficients in ascending degree order."""

    coefficients: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(_require_finite_scalar(c) for c in self.coefficients)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1.0

    def normalized(self) -> "Polynomial":
        """Divide through by the leading coefficient; leading becomes exactly 1."""
        lead = self.coefficients[-1]
        if lead == 0:
            raise ValueError("leading coefficient is zero")
        if lead == 1.0:
            return self
        return Polynomial(tuple(c / lead for c in self.coefficients[:-1]) + (1.0 + 0.0j,))


def evaluate(p: Polynomial, z: complex) -> complex:
    """Horner evaluation of p at z (exact for degree 0)."""
    z = complex(z)
    acc = 0.0 + 0.0j
    for c in reversed(p.coefficients):
        acc = acc * z + c
    return acc


def from_roots(roots) -> Polynomial:
    """Monic polynomial with the given roots; test-side reconstruction helper."""
    coeffs = [1.0 + 0.0j]
    for r in roots:
        r = complex(r)
        grown = [-r * coeffs[0]]
        for k in range(1, len(coeffs) + 1):
            above = coeffs[k] if k < len(coeffs) else 0.0
            grown.append(coeffs[k - 1] - r * above)
        coeffs = grown
    return Polynomial(tuple(coeffs))


def _horner_all(coeffs: np.ndarray, z: np.ndarray):
    """Vectorized p(z), p'(z), and the raw running magnitude bound whose
    product with machine epsilon is the plain-evaluation noise floor."""
    b = np.full_like(z, coeffs[-1])
    d = np.zeros_like(z)
    bound = np.abs(b)
    az = np.abs(z)
    for k in range(len(coeffs) - 2, -1, -1):
        d = d * z + b
        b = b * z + coeffs[k]
        bound = bound * az + np.abs(b)
    return b, d, bound


_SPLITTER = 134217729.0  # 2**27 + 1, Dekker split for error-free products


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    ca = _SPLITTER * a
    ah = ca - (ca - a)
    al = a - ah
    cb = _SPLITTER * b
    bh = cb - (cb - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _comp_horner_all(coeffs: np.ndarray, z: np.ndarray):
    """Compensated complex Horner: p(z) accurate to ~eps*|p| + eps^2*bound,
    plain p'(z), and the same raw magnitude bound as `_horner_all`.

    Plain evaluation cannot resolve |p| below eps*bound, which caps how well
    clustered roots can be located and lets their power sums drift off the
    coefficients.  Error-free transformations push that floor to second
    order, so the endgame can park iterates on the computed polynomial's
    exact roots and the returned multiset keeps Newton-identity accuracy.
    """
    zr = z.real
    zi = z.imag
    az = np.abs(z)
    br = np.full_like(zr, coeffs[-1].real)
    bi = np.full_like(zi, coeffs[-1].imag)
    er = np.zeros_like(zr)
    ei = np.zeros_like(zi)
    dr = np.zeros_like(zr)
    di = np.zeros_like(zi)
    bound = np.hypot(br, bi)
    for k in range(len(coeffs) - 2, -1, -1):
        dr, di = dr * zr - di * zi + br, dr * zi + di * zr + bi
        p1, e1 = _two_prod(br, zr)
        p2, e2 = _two_prod(bi, zi)
        p3, e3 = _two_prod(br, zi)
        p4, e4 = _two_prod(bi, zr)
        rr, e5 = _two_sum(p1, -p2)
        ri, e6 = _two_sum(p3, p4)
        br_new, e7 = _two_sum(rr, coeffs[k].real)
        bi_new, e8 = _two_sum(ri, coeffs[k].imag)
        er, ei = (
            er * zr - ei * zi + (e1 - e2 + e5 + e7),
            er * zi + ei * zr + (e3 + e4 + e6 + e8),
        )
        br, bi = br_new, bi_new
        bound = bound * az + np.hypot(br, bi)
    return (br + er) + 1j * (bi + ei), dr + 1j * di, bound


def _sweep_phase(coeffs, z, budget, compensated):
    """Damped Aberth-Ehrlich sweeps with one evaluation flavor.

    Runs until every residual sits at its evaluation/quantization noise
    floor and none is still making real progress; only that settled
    multiset reproduces the coefficients' power sums (the downstream
    moment checks) to rounding accuracy.
    """
    deg = len(z)
    evaluate_all = _comp_horner_all if compensated else _horner_all
    eval_noise = (4.0 * deg * deg * _EPS * _EPS) if compensated else (8.0 * _EPS)
    off_diag = ~np.eye(deg, dtype=bool)
    best = np.full(deg, np.inf)
    for _ in range(budget):
        pz, dpz, bound = evaluate_all(coeffs, z)
        res = np.abs(pz)
        # a residual is "at the floor" when it cannot be certified smaller:
        # evaluation noise plus position quantization (moving z by one ulp
        # already changes p by |p'| * eps * |z|).  The tol sleeve plays no
        # part here: near-zero coefficients can leave |p| under it across
        # whole regions, and stopping there would return junk positions
        # whose power sums drift off the coefficients.
        floor = eval_noise * bound + np.abs(dpz) * (_EPS * np.abs(z))
        at_floor = res <= floor
        progressing = bool(np.any((res < 0.5 * best) & ~at_floor))
        best = np.minimum(best, res)
        if bool(np.all(at_floor)) and not progressing:
            break

        # Newton correction, with a deterministic nudge where p' vanishes
        safe_dpz = np.where(dpz != 0, dpz, 1.0)
        w = np.where(dpz != 0, pz / safe_dpz, (0.1 + 0.1j) * (1.0 + np.abs(z)))
        diff = z[:, None] - z[None, :]
        collided = off_diag & (diff == 0)
        if bool(np.any(collided)):
            diff = np.where(collided, _EPS * (1.0 + np.abs(z))[:, None], diff)
        np.fill_diagonal(diff, 1.0)
        repulsion = np.sum(np.where(off_diag, 1.0 / diff, 0.0), axis=1)
        denom = 1.0 - w * repulsion
        full_step = np.where(denom != 0, w / np.where(denom != 0, denom, 1.0), w)

        # damping: halve a root's step while its residual grows, up to 8 times.
        # If halving never helps there are two cases: a root at its noise
        # floor holds position (any move is noise), while a genuinely
        # unconverged root takes the full step so the iteration can cross
        # residual ridges instead of stalling behind them.
        step = full_step.copy()
        cand = z - step
        accepted = at_floor.copy()
        for _ in range(_MAX_HALVINGS):
            res_cand = np.abs(evaluate_all(coeffs, cand)[0])
            accepted |= res_cand <= res
            if bool(np.all(accepted)):
                break
            step = np.where(accepted, step, step / 2.0)
            cand = z - step
        if not bool(np.all(accepted)):
            cand = np.where(accepted, cand, np.where(at_floor, z, z - full_step))
        z = cand
    return z


_POLISH_BUDGET = 60


def find_roots(
    p: Polynomial,
    tol: float = DEFAULT_ROOT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> tuple[complex, ...]:
    """All roots of p by damped simultaneous (Aberth-Ehrlich) iteration.

    Two phases share the same sweep: plain Horner arithmetic brings the
    iterates in from the initial circle, then a compensated-evaluation
    endgame polishes them below the plain noise floor so that multiple
    roots return as tight clusters whose power sums match the coefficients.
    Returns exactly degree(p) values sorted lexicographically by (re, im);
    multiple roots are never merged.  Each returned r satisfies
    |p(r)| <= tol*(1 + max|c_k|) up to the compensated evaluation floor.
    """
    p = p.normalized()
    if p.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    coeffs = np.asarray(p.coefficients, dtype=complex)
    deg = p.degree
    if deg == 1:
        return (complex(-coeffs[0]),)

    scale = 1.0 + float(np.max(np.abs(coeffs)))
    radius = 1.0 + float(np.max(np.abs(coeffs[:-1])))
    k = np.arange(deg)
    z = radius * np.exp(1j * (2.0 * math.pi * k / deg + _GOLDEN_ANGLE * k))

    z = _sweep_phase(coeffs, z, max_iter, compensated=False)
    z = _sweep_phase(coeffs, z, min(_POLISH_BUDGET, max_iter), compensated=True)

    pz, dpz, bound = _comp_horner_all(coeffs, z)
    res = np.abs(pz)
    floor = 4.0 * deg * deg * _EPS * _EPS * bound + np.abs(dpz) * (_EPS * np.abs(z))
    if not bool(np.all((res <= tol * scale) | (res <= floor))):
        raise NonConvergence(
            f"residuals not below {tol * scale:.3e} after {max_iter} iterations "
            f"(worst {float(res.max()):.3e})",
            tuple(float(r) for r in res),
        )

    order = np.lexsort((z.imag, z.real))
    return tuple(complex(v) for v in z[order])
