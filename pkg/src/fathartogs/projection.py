"""The Bergman projection as a computable operator.

Two evaluation paths are provided.  ``project_numeric`` applies the
closed-form kernel under the quadrature engine and works for any
integrand.  ``project_monomial`` is exact for inputs of the form
w^a * conj(w)^b: the angular integrals kill every basis term except
gamma = a - b, so the projection is a single monomial

    B_k(w^a conj(w)^b) = [ M(gamma + a + b) / ||z^gamma||^2 ] z^gamma

when gamma lies in the basis index set, and zero otherwise, with M the
exact radial moment.  All normalizing constants flow through
:func:`fathartogs.quadrature.radial_moment` as the single source of
truth.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .geometry import DomainSpec, Point2, contains
from .kernel import MultiIndex, kernel_closed_st
from .quadrature import (
    DivergentIntegralError,
    IntegralResult,
    QuadratureSpec,
    integrate,
    radial_moment,
)

__all__ = [
    "MonomialInput",
    "ProjectedMonomial",
    "NonIntegrableInputError",
    "ProjectionAccuracyWarning",
    "basis_norm_sq",
    "project_monomial",
    "project_numeric",
    "lp_norm",
]


class NonIntegrableInputError(ValueError):
    """The requested input is not integrable on the domain."""


class ProjectionAccuracyWarning(UserWarning):
    """Evaluation point too close to the boundary for the configured offset."""


@dataclass(frozen=True)
class MonomialInput:
    """An input w^hol * conj(w)^antihol for the exact projection path."""

    hol: MultiIndex
    antihol: MultiIndex

    def integrand(self) -> Callable:
        a1, a2 = self.hol.a1, self.hol.a2
        b1, b2 = self.antihol.a1, self.antihol.a2

        def f(z1, z2):
            return z1**a1 * z2**a2 * np.conj(z1) ** b1 * np.conj(z2) ** b2

        return f

    def modulus_exponents(self) -> tuple[int, int]:
        """Exponents (m1, m2) of |f| = |z1|^m1 |z2|^m2."""
        return (self.hol.a1 + self.antihol.a1, self.hol.a2 + self.antihol.a2)


@dataclass(frozen=True)
class ProjectedMonomial:
    """Result coeff * z^index of projecting a monomial input."""

    index: MultiIndex
    coeff: float

    def evaluate(self, z1, z2):
        return self.coeff * z1**self.index.a1 * z2**self.index.a2


def basis_norm_sq(d: DomainSpec, alpha: MultiIndex) -> float:
    """Squared L2 norm of the basis monomial z^alpha.

    Exactly the radial moment of |z1|^(2 a1) |z2|^(2 a2); finiteness is
    equivalent to membership of alpha in the basis index set.
    """
    return radial_moment(d, 2.0 * alpha.a1, 2.0 * alpha.a2)


def project_monomial(d: DomainSpec, m: MonomialInput) -> Optional[ProjectedMonomial]:
    """Exact Bergman projection of w^a conj(w)^b, or ``None`` when it is 0.

    The angular selection rule leaves only gamma = a - b; the result is
    ``None`` (the zero function) when gamma is outside the basis set.
    """
    k = d.k_int()
    m1, m2 = m.modulus_exponents()
    try:
        radial_moment(d, m1, m2)
    except DivergentIntegralError as exc:
        raise NonIntegrableInputError(f"input monomial is not integrable: {exc}") from exc
    gamma = MultiIndex(m.hol.a1 - m.antihol.a1, m.hol.a2 - m.antihol.a2)
    if not gamma.in_basis(k):
        return None
    overlap = radial_moment(d, gamma.a1 + m1, gamma.a2 + m2)
    return ProjectedMonomial(gamma, overlap / basis_norm_sq(d, gamma))


def _warn_if_near_boundary(d: DomainSpec, z: Point2, delta: float) -> None:
    v = abs(z.z2)
    u = abs(z.z1) / v ** (1.0 / d.k) if v > 0 else 1.0
    if v < 2.0 * delta or v > 1.0 - 2.0 * delta or u > 1.0 - 2.0 * delta:
        warnings.warn(
            f"evaluation point {z} is within 2*delta of the boundary; "
            "projection accuracy is degraded",
            ProjectionAccuracyWarning,
            stacklevel=3,
        )


def project_numeric(
    d: DomainSpec, f: Callable, z: Point2, spec: QuadratureSpec
) -> complex:
    """Quadrature approximation of the projection integral at the point z.

    ``f`` follows the vectorized integrand contract of
    :func:`fathartogs.quadrature.integrate`.  Near-singular kernel
    evaluations propagate as errors; points within two boundary offsets
    of the boundary trigger an accuracy warning.
    """
    d.require_integer_exponent()
    if not contains(d, z):
        raise ValueError(f"evaluation point {z} is not interior")
    _warn_if_near_boundary(d, z, spec.boundary_offset)

    def g(w1, w2):
        s = z.z1 * np.conj(w1)
        t = z.z2 * np.conj(w2)
        return kernel_closed_st(d, s, t) * f(w1, w2)

    return complex(integrate(d, g, spec).value)


def lp_norm(d: DomainSpec, f: Callable, p: float, spec: QuadratureSpec) -> IntegralResult:
    """Delta-core approximation of the L^p norm of f, with error estimate.

    For monomial-modulus integrands the exact value is available from
    :func:`fathartogs.quadrature.radial_moment`; that closed form is the
    oracle the quadrature path is tested against.
    """
    if p < 1.0:
        raise ValueError(f"p must be >= 1, got {p}")

    def g(z1, z2):
        return np.abs(f(z1, z2)) ** p

    res = integrate(d, g, spec)
    value = float(np.real(res.value)) ** (1.0 / p)
    err = res.error_estimate * value ** (1.0 - p) / p if value > 0 else res.error_estimate
    return IntegralResult(value, err)
