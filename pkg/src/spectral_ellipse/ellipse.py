"""Construction of the inscribed spectral ellipse.

Pipeline: rotate a traceless eigenvalue multiset by the unit phase u with
u^2 = |q0|/q0 so its second power sum becomes the nonnegative real |q0|
(identity when q0 = 0), form the root-sum-square axis sums R and I, and
scale by 1/(sqrt(2)(n-1)).  The result is an ellipse with foci at
+-sqrt(q0)/(sqrt(2)(n-1)) about the center that is guaranteed to lie inside
the convex hull of the multiset.  Also provides the support function and the
eigensolver-free spectral radius lower bound from tr A and tr A^2 alone.

The sign of u is not observable: both branches give the same ellipse as a
point set, and major_dir is canonicalized (nonnegative real part, ties
toward nonnegative imaginary part) so reports are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .matrix import Decomposition
from .numerics import principal_sqrt
from .spectrum import Spectrum

Q_ZERO_REL_THRESHOLD = 1e-12
MOMENT_CONSISTENCY_REL = 1e-8


class DimensionTooSmall(ValueError):
    """Ellipse construction needs n >= 2; the 1/(n-1) factor vanishes below."""


class InconsistentMoments(ValueError):
    """Supplied q0 does not match the second power sum of the multiset."""


class ZeroDirection(ValueError):
    """A direction must have alpha^2 + beta^2 > 0."""


@dataclass(frozen=True)
class NormalizedSpectrum:
    """Traceless eigenvalues rotated so the second power sum is |q0|."""

    mu: tuple[complex, ...]
    phase_factor: complex
    q_abs: float


@dataclass(frozen=True)
class AxisSums:
    """R and I: root-sum-squares of real/imaginary parts of the mu values."""

    r: float
    i_: float


@dataclass(frozen=True)
class Direction:
    """Real direction (alpha, beta) in the plane; not both zero."""

    alpha: float
    beta: float

    def angle(self) -> float:
        return math.atan2(self.beta, self.alpha)


@dataclass(frozen=True)
class SpectralEllipse:
    """Closed ellipse: center, semiaxes a >= b, unit major-axis direction,
    foci at center +- sqrt(a^2-b^2)*major_dir.  Degenerate shapes (segment
    b=0, point a=b=0) are first-class values."""

    center: complex
    semimajor: float
    semiminor: float
    major_dir: complex
    foci: tuple[complex, complex]
    order_n: int


def normalize_mu(lambdas, q0: complex) -> NormalizedSpectrum:
    """Rotate the multiset by the unit u with u^2 = |q0|/q0 (principal branch).

    When |q0| is below the detection threshold the values pass through
    unchanged with phase_factor 1; both limits agree, so misclassification
    near zero is harmless.  Raises InconsistentMoments when q0 disagrees
    with sum(lambda^2).
    """
    lam = tuple(complex(v) for v in lambdas)
    q0 = complex(q0)
    power = sum(abs(v) ** 2 for v in lam)
    second = sum(v * v for v in lam)
    if abs(second - q0) > MOMENT_CONSISTENCY_REL * (1.0 + power):
        raise InconsistentMoments(
            f"q0 {q0!r} differs from the multiset second power sum {second!r}"
        )
    if abs(q0) <= Q_ZERO_REL_THRESHOLD * (1.0 + power):
        return NormalizedSpectrum(mu=lam, phase_factor=1.0 + 0.0j, q_abs=abs(q0))
    u = principal_sqrt(q0.conjugate() / abs(q0))
    return NormalizedSpectrum(
        mu=tuple(v * u for v in lam), phase_factor=u, q_abs=abs(q0)
    )


def axis_sums(ns: NormalizedSpectrum) -> AxisSums:
    r = math.sqrt(sum(v.real**2 for v in ns.mu))
    i_ = math.sqrt(sum(v.imag**2 for v in ns.mu))
    return AxisSums(r=r, i_=i_)


def _canonical_dir(d: complex) -> complex:
    d = d / abs(d)
    if d.real < 0.0 or (d.real == 0.0 and d.imag < 0.0):
        d = -d
    return d


def ellipse_from_normalized(
    ns: NormalizedSpectrum, n: int, center: complex = 0.0 + 0.0j
) -> SpectralEllipse:
    """Build the ellipse for an already normalized spectrum of order n."""
    if n < 2:
        raise DimensionTooSmall(f"ellipse needs dimension >= 2, got {n}")
    ax = axis_sums(ns)
    k = 1.0 / (math.sqrt(2.0) * (n - 1))
    a = ax.r * k
    b = ax.i_ * k
    direction = ns.phase_factor.conjugate()
    if a < b:
        # only reachable through rounding near q0 = 0, where R ~ I;
        # the true major axis is then the perpendicular one
        a, b = b, a
        direction *= 1j
    direction = _canonical_dir(direction)
    c = math.sqrt(max(a * a - b * b, 0.0))
    center = complex(center)
    focus = c * direction
    return SpectralEllipse(
        center=center,
        semimajor=a,
        semiminor=b,
        major_dir=direction,
        foci=(center + focus, center - focus),
        order_n=n,
    )


def inscribed_ellipse(lambdas, q0: complex, n: int) -> SpectralEllipse:
    """Guaranteed-inscribed ellipse for a traceless multiset: center 0,
    semiaxes R/(sqrt(2)(n-1)) and I/(sqrt(2)(n-1)), foci
    +-sqrt(q0)/(sqrt(2)(n-1))."""
    lam = tuple(complex(v) for v in lambdas)
    if n < 2:
        raise DimensionTooSmall(f"ellipse needs dimension >= 2, got {n}")
    if len(lam) != n:
        raise ValueError(f"expected {n} eigenvalues, got {len(lam)}")
    return ellipse_from_normalized(normalize_mu(lam, q0), n)


def shifted_ellipse(d: Decomposition, spec: Spectrum) -> SpectralEllipse:
    """Ellipse of the traceless part translated to the mean eigenvalue gamma."""
    shifted = tuple(v - d.gamma for v in spec.values)
    q0 = sum(v * v for v in shifted)
    return ellipse_from_normalized(normalize_mu(shifted, q0), d.n, center=d.gamma)


def subset_ellipse(sub) -> SpectralEllipse:
    """Ellipse for an eigenvalue sub-multiset (an invariant subspace's
    spectrum), centered at the sub-multiset mean with n replaced by its size."""
    values = tuple(complex(v) for v in sub)
    m = len(values)
    if m < 2:
        raise DimensionTooSmall(f"subset ellipse needs >= 2 values, got {m}")
    center = sum(values) / m
    shifted = tuple(v - center for v in values)
    q0 = sum(v * v for v in shifted)
    return ellipse_from_normalized(normalize_mu(shifted, q0), m, center=center)


def support(e: SpectralEllipse, d: Direction) -> float:
    """Support function max over the closed ellipse of alpha*Re + beta*Im."""
    if d.alpha == 0.0 and d.beta == 0.0:
        raise ZeroDirection("direction (0, 0) has no support value")
    u = complex(d.alpha, d.beta)
    along = (u.conjugate() * e.major_dir).real
    across = (u.conjugate() * (1j * e.major_dir)).real
    reach = math.hypot(e.semimajor * along, e.semiminor * across)
    return d.alpha * e.center.real + d.beta * e.center.imag + reach


def trace_only_bound(tr_a: complex, q_a: complex, n: int) -> float:
    """Spectral radius lower bound from tr A and tr(A^2) alone: the modulus
    of the farther focus gamma +- sqrt(q_a - n*gamma^2)/(sqrt(2)(n-1))."""
    if n < 2:
        raise DimensionTooSmall(f"bound needs dimension >= 2, got {n}")
    gamma = complex(tr_a) / n
    q0 = complex(q_a) - n * gamma * gamma
    f = principal_sqrt(q0) / (math.sqrt(2.0) * (n - 1))
    return max(abs(gamma + f), abs(gamma - f))
