"""Bergman kernel on the fat Hartogs triangles, three ways.

The closed form on the domain with integer exponent k is

    B_k(z, w) = [ p_k(s) t^2 + q_k(s) t + s^k p_k(s) ]
                / [ k pi^2 (1 - t)^2 (t - s^k)^2 ],

in the invariant variables s = z1 * conj(w1), t = z2 * conj(w2), with

    p_k(s) = sum_{n=1}^{k-1} n (k-n) s^(n-1),
    q_k(s) = sum_{n=1}^{k}  (n^2 + (k-n)^2 s^k) s^(n-1).

The same kernel expands over the orthogonal monomial basis z^alpha,
alpha in the index set A_k = {alpha1 >= 0, alpha1 + k(alpha2+1) > -1},

    B_k(z, w) = sum_alpha s^alpha1 t^alpha2 (alpha1+1)(alpha1+1+k(alpha2+1)) / (k pi^2),

which serves as the independent oracle for the closed form.  The
dominating bound |t| / (|1-t|^2 |t-s^k|^2) is exposed separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import DomainSpec, Point2

__all__ = [
    "KernelArgs",
    "MultiIndex",
    "SeriesSpec",
    "SeriesResult",
    "NearSingularError",
    "SeriesDivergenceError",
    "poly_p",
    "poly_q",
    "p_coefficients",
    "q_base_coefficients",
    "q_shift_coefficients",
    "kernel_closed",
    "kernel_closed_st",
    "kernel_series",
    "kernel_series_st",
    "kernel_bound",
    "kernel_bound_st",
    "kernel_abs_polar",
    "basis_indices_by_weight",
]

DEFAULT_SINGULAR_FLOOR = 1e-12


class NearSingularError(ArithmeticError):
    """A kernel denominator factor fell below the reliability floor."""

    def __init__(self, factor: str, min_abs: float, floor: float):
        self.factor = factor
        self.min_abs = min_abs
        self.floor = floor
        super().__init__(
            f"near-singular kernel evaluation: |{factor}| = {min_abs:.3e} < floor {floor:.1e}"
        )


class SeriesDivergenceError(ArithmeticError):
    """The truncated kernel series did not meet its shell tolerance."""


@dataclass(frozen=True)
class KernelArgs:
    """The invariant pair s = z1*conj(w1), t = z2*conj(w2)."""

    s: complex
    t: complex

    @classmethod
    def from_points(cls, z: Point2, w: Point2) -> "KernelArgs":
        return cls(z.z1 * np.conj(w.z1), z.z2 * np.conj(w.z2))

    def interior_pair(self, d: DomainSpec) -> bool:
        """Whether (s, t) satisfies |s|^k < |t| < 1 (holds for interior z, w)."""
        return abs(self.s) ** d.k < abs(self.t) < 1.0


@dataclass(frozen=True)
class MultiIndex:
    """Exponent pair (a1, a2); a2 = -1 is admissible in the basis set."""

    a1: int
    a2: int

    def in_basis(self, k: int) -> bool:
        """Membership in A_k: a1 >= 0 and a1 + k (a2 + 1) > -1."""
        return self.a1 >= 0 and self.a1 + k * (self.a2 + 1) > -1

    def weight(self, k: int) -> int:
        """Truncation weight a1 + k |a2 + 1| used for series shells."""
        return self.a1 + k * abs(self.a2 + 1)


@dataclass(frozen=True)
class SeriesSpec:
    """Truncation control for the basis expansion of the kernel."""

    max_degree: int = 200
    tolerance: float = 1e-9

    def __post_init__(self) -> None:
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be > 0")


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    last_shell: float
    degree_used: int


def p_coefficients(k: int) -> np.ndarray:
    """Integer coefficients of p_k in increasing powers of s (empty for k=1)."""
    return np.array([n * (k - n) for n in range(1, k)], dtype=np.int64)


def q_base_coefficients(k: int) -> np.ndarray:
    """Coefficients of sum n^2 s^(n-1), the s^k-free part of q_k."""
    return np.array([n * n for n in range(1, k + 1)], dtype=np.int64)


def q_shift_coefficients(k: int) -> np.ndarray:
    """Coefficients of sum (k-n)^2 s^(n-1), multiplying s^k inside q_k."""
    return np.array([(k - n) ** 2 for n in range(1, k + 1)], dtype=np.int64)


def _horner(coeffs: np.ndarray, s):
    if len(coeffs) == 0:
        return np.zeros_like(np.asarray(s, dtype=complex))
    acc = np.full_like(np.asarray(s, dtype=complex), complex(coeffs[-1]))
    for c in coeffs[-2::-1]:
        acc = acc * s + complex(c)
    return acc


def poly_p(k: int, s):
    """p_k(s); the empty sum at k = 1 is 0.  Works on scalars and arrays."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return _horner(p_coefficients(k), s)


def poly_q(k: int, s):
    """q_k(s) = sum (n^2 + (k-n)^2 s^k) s^(n-1).  Works on scalars and arrays."""
    if k < 1:
        raise ValueError("k must be >= 1")
    s = np.asarray(s, dtype=complex)
    return _horner(q_base_coefficients(k), s) + s**k * _horner(q_shift_coefficients(k), s)


def kernel_closed_st(
    d: DomainSpec, s, t, *, floor: float = DEFAULT_SINGULAR_FLOOR
) -> np.ndarray:
    """Closed-form kernel as a function of the invariants (s, t).

    Raises :class:`NearSingularError` when |1-t| or |t-s^k| falls below
    ``floor`` anywhere in the (broadcast) input.
    """
    k = d.k_int()
    s = np.asarray(s, dtype=complex)
    t = np.asarray(t, dtype=complex)
    one_minus_t = 1.0 - t
    sk = s**k
    t_minus_sk = t - sk
    m1 = float(np.min(np.abs(one_minus_t)))
    if m1 < floor:
        raise NearSingularError("1-t", m1, floor)
    m2 = float(np.min(np.abs(t_minus_sk)))
    if m2 < floor:
        raise NearSingularError("t-s^k", m2, floor)
    qs = _horner(q_base_coefficients(k), s)
    if k > 1:  # the s^k parts of q_k and the p_k terms vanish identically at k=1
        qs = qs + sk * _horner(q_shift_coefficients(k), s)
        ps = _horner(p_coefficients(k), s)
        num = ps * t * t + qs * t + sk * ps
    else:
        num = qs * t
    den = (k * math.pi**2) * one_minus_t**2 * t_minus_sk**2
    return num / den


def kernel_closed(
    d: DomainSpec, z: Point2, w: Point2, *, floor: float = DEFAULT_SINGULAR_FLOOR
) -> complex:
    """Closed-form Bergman kernel value B_k(z, w)."""
    args = KernelArgs.from_points(z, w)
    return complex(kernel_closed_st(d, args.s, args.t, floor=floor))


def kernel_bound_st(
    d: DomainSpec, s, t, *, floor: float = DEFAULT_SINGULAR_FLOOR
) -> np.ndarray:
    """Dominating bound |t| / (|1-t|^2 |t-s^k|^2) on the invariants."""
    k = d.k_int()
    s = np.asarray(s, dtype=complex)
    t = np.asarray(t, dtype=complex)
    a1 = np.abs(1.0 - t)
    a2 = np.abs(t - s**k)
    m1 = float(np.min(a1))
    if m1 < floor:
        raise NearSingularError("1-t", m1, floor)
    m2 = float(np.min(a2))
    if m2 < floor:
        raise NearSingularError("t-s^k", m2, floor)
    return np.abs(t) / (a1**2 * a2**2)


def kernel_bound(
    d: DomainSpec, z: Point2, w: Point2, *, floor: float = DEFAULT_SINGULAR_FLOOR
) -> float:
    args = KernelArgs.from_points(z, w)
    return float(kernel_bound_st(d, args.s, args.t, floor=floor))


def basis_indices_by_weight(k: int, max_weight: int) -> list[MultiIndex]:
    """All indices of A_k with weight a1 + k|a2+1| <= max_weight, by shells."""
    out: list[MultiIndex] = []
    for m in range(max_weight + 1):
        for n in range(-(m // k), m // k + 1):
            a1 = m - k * abs(n)
            idx = MultiIndex(a1, n - 1)
            if idx.weight(k) == m and idx.in_basis(k):
                out.append(idx)
    return out


def kernel_series_st(
    d: DomainSpec, s, t, spec: SeriesSpec
) -> tuple[np.ndarray, np.ndarray, int]:
    """Truncated basis expansion of the kernel on arrays of invariants.

    The truncation keeps every index of weight a1 + k|a2+1| <= max_degree.
    Evaluation runs row by row in n = a2 + 1 (ordered by |n|, with the
    a1-polynomial of each row evaluated by Horner), which is algebraically
    the same truncated sum at a fraction of the cost of per-term powers.
    Returns (values, final-shell magnitudes, degree used); the final-shell
    magnitude sums |term| over the outermost weight shell and is the
    convergence heuristic for the truncation.
    """
    k = d.k_int()
    s = np.asarray(s, dtype=complex)
    t = np.asarray(t, dtype=complex)
    s_b, t_b = np.broadcast_arrays(s, t)
    M = spec.max_degree
    norm = 1.0 / (k * math.pi**2)
    total = np.zeros(s_b.shape, dtype=complex)
    inv_t = 1.0 / t_b
    # rows with negative n carry t^(n-1) s^(k|n|) = (s^k/t)^|n| / t; the
    # regrouped base has modulus < 1 on interior pairs, so deep rows
    # underflow harmlessly instead of overflowing
    w_base = s_b**k * inv_t
    t_up = inv_t.copy()
    w_pow = np.ones(s_b.shape, dtype=complex)
    for n_abs in range(M // k + 1):
        for n in ((n_abs,) if n_abs == 0 else (n_abs, -n_abs)):
            if n_abs > 0:
                if n > 0:
                    t_up = t_up * t_b
                else:
                    w_pow = w_pow * w_base
            a_min = max(0, -k * n)  # membership a1 + k n > -1 for integers
            d_max = M - k * n_abs
            if d_max < a_min:
                continue
            coeffs = np.array(
                [(a1 + 1) * (a1 + 1 + k * n) for a1 in range(a_min, d_max + 1)],
                dtype=float,
            )
            acc = np.full(s_b.shape, coeffs[-1], dtype=complex)
            for c in coeffs[-2::-1]:
                acc = acc * s_b + c
            row = t_up * acc if n >= 0 else inv_t * w_pow * acc
            total += norm * row
    # outermost shell, summed in absolute value (same regrouping)
    last_shell = np.zeros(s_b.shape, dtype=float)
    abs_s = np.abs(s_b)
    abs_t = np.abs(t_b)
    abs_w = abs_s**k / abs_t
    for n in range(-(M // k), M // k + 1):
        a1 = M - k * abs(n)
        if a1 + k * n <= -1:
            continue
        coeff = abs((a1 + 1) * (a1 + 1 + k * n)) * norm
        if n >= 0:
            last_shell += coeff * abs_s**a1 * abs_t ** (n - 1)
        else:
            last_shell += coeff * abs_s ** (a1 + k * n) * abs_w ** (-n) / abs_t
    return total, last_shell, M


def kernel_series(d: DomainSpec, z: Point2, w: Point2, spec: SeriesSpec) -> SeriesResult:
    """Kernel value by truncated orthonormal-basis expansion.

    Raises :class:`SeriesDivergenceError` when the final shell magnitude
    still exceeds the spec tolerance, which signals either insufficient
    truncation or (s, t) too close to the singular set.
    """
    args = KernelArgs.from_points(z, w)
    values, shells, degree = kernel_series_st(d, args.s, args.t, spec)
    last_shell = float(shells)
    if last_shell > spec.tolerance:
        raise SeriesDivergenceError(
            f"series shell magnitude {last_shell:.3e} exceeds tolerance "
            f"{spec.tolerance:.1e} at degree {degree}"
        )
    return SeriesResult(complex(values), last_shell, degree)


def kernel_abs_polar(
    d: DomainSpec,
    z1_abs: float,
    z2_abs: float,
    w1_abs,
    w2_abs,
    theta1,
    psi,
) -> np.ndarray:
    """|B_k(z, w)| in rotation-reduced polar coordinates.

    The kernel modulus depends on w only through |w1|, |w2| and the two
    angle combinations theta1 = arg(z1) - arg(w1) and
    psi = (arg(z2) - arg(w2)) - k * theta1; the second is exactly the
    phase of t relative to s^k, so the factor |t - s^k| is independent
    of theta1.  All four w-arguments broadcast.
    """
    k = d.k_int()
    s_abs = z1_abs * np.asarray(w1_abs)
    t_abs = z2_abs * np.asarray(w2_abs)
    s = s_abs * np.exp(-1j * np.asarray(theta1))
    t = t_abs * np.exp(-1j * (np.asarray(psi) + k * np.asarray(theta1)))
    sk = s**k
    ps = _horner(p_coefficients(k), s)
    qs = _horner(q_base_coefficients(k), s) + sk * _horner(q_shift_coefficients(k), s)
    num = np.abs(ps * t * t + qs * t + sk * ps)
    den_outer = np.abs(1.0 - t) ** 2
    # |t - s^k| = | |t| e^{-i psi} - |s|^k |, free of theta1.
    den_inner = np.abs(t_abs * np.exp(-1j * np.asarray(psi)) - s_abs**k) ** 2
    return num / ((k * math.pi**2) * den_outer * den_inner)
