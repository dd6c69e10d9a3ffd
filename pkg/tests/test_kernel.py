"""Tests for the kernel: coefficient polynomials, closed form, series, bound."""

import math

import numpy as np
import pytest
import sympy

from fathartogs.geometry import DomainSpec, Point2, sample_uniform
from fathartogs.kernel import (
    KernelArgs,
    MultiIndex,
    NearSingularError,
    SeriesDivergenceError,
    SeriesSpec,
    basis_indices_by_weight,
    kernel_bound,
    kernel_bound_st,
    kernel_closed,
    kernel_closed_st,
    kernel_abs_polar,
    kernel_series,
    kernel_series_st,
    p_coefficients,
    poly_p,
    poly_q,
    q_base_coefficients,
    q_shift_coefficients,
)


def random_pairs(k, n, seed):
    d = DomainSpec(k)
    z1, z2 = sample_uniform(d, n, seed)
    w1, w2 = sample_uniform(d, n, seed + 1)
    return d, (z1, z2), (w1, w2)


class TestPolynomials:
    def test_p_empty_for_k1(self):
        assert poly_p(1, 0.7 + 0.2j) == 0

    def test_p_examples(self):
        assert poly_p(2, 123.0 + 4j) == 1
        s = 0.3 + 0.1j
        assert poly_p(3, s) == pytest.approx(2 + 2 * s)

    def test_q_examples(self):
        assert poly_q(1, 0.9j) == 1
        s = 0.2 - 0.4j
        assert poly_q(2, s) == pytest.approx(1 + 4 * s + s**2)
        assert poly_q(2, 0.0) == 1

    @pytest.mark.parametrize("k", range(1, 7))
    def test_against_symbolic_sums(self, k):
        s = sympy.symbols("s")
        p_sym = sympy.expand(sum(n * (k - n) * s ** (n - 1) for n in range(1, k)))
        q_sym = sympy.expand(
            sum((n**2 + (k - n) ** 2 * s**k) * s ** (n - 1) for n in range(1, k + 1))
        )
        p_poly = sympy.Poly(p_sym, s) if p_sym != 0 else None
        got_p = list(p_coefficients(k))
        want_p = p_poly.all_coeffs()[::-1] if p_poly else []
        assert got_p == [int(c) for c in want_p]
        q_poly = sympy.Poly(q_sym, s)
        want_q = [int(c) for c in q_poly.all_coeffs()[::-1]]
        base = list(q_base_coefficients(k))
        shift = list(q_shift_coefficients(k))
        got_q = [0] * (len(shift) + k)
        for i, c in enumerate(base):
            got_q[i] += c
        for i, c in enumerate(shift):
            got_q[i + k] += c
        while got_q and got_q[-1] == 0:
            got_q.pop()
        assert got_q == want_q

    def test_rejects_k_below_one(self):
        with pytest.raises(ValueError):
            poly_p(0, 1.0)
        with pytest.raises(ValueError):
            poly_q(0, 1.0)


class TestKernelClosed:
    def test_axis_value_k1(self):
        d = DomainSpec(1)
        z = Point2(0, 0.5)
        assert kernel_closed(d, z, z) == pytest.approx(64 / (9 * math.pi**2), rel=1e-14)

    def test_axis_value_k2(self):
        # series oracle pins 40/(9 pi^2): numerator p2(0) t^2 + q2(0) t at
        # s=0, t=1/4 is 5/16, over 2 pi^2 (3/4)^2 (1/4)^2
        d = DomainSpec(2)
        z = Point2(0, 0.5)
        want = 40 / (9 * math.pi**2)
        assert kernel_closed(d, z, z) == pytest.approx(want, rel=1e-14)
        got = kernel_series(d, z, z, SeriesSpec(120, 1e-10))
        assert got.value == pytest.approx(want, rel=1e-12)

    def test_hermitian_symmetry(self):
        d, (z1, z2), (w1, w2) = random_pairs(2, 500, 0)
        a = kernel_closed_st(d, z1 * np.conj(w1), z2 * np.conj(w2))
        b = kernel_closed_st(d, w1 * np.conj(z1), w2 * np.conj(z2))
        assert np.max(np.abs(a - np.conj(b)) / np.abs(a)) < 1e-13

    def test_rotation_invariance(self):
        d = DomainSpec(3)
        z, w = Point2(0.3, 0.6), Point2(0.2 + 0.1j, 0.5 - 0.2j)
        base = kernel_closed(d, z, w)
        th, ph = 1.234, -0.521
        zr = Point2(z.z1 * np.exp(1j * th), z.z2 * np.exp(1j * ph))
        wr = Point2(w.z1 * np.exp(1j * th), w.z2 * np.exp(1j * ph))
        assert kernel_closed(d, zr, wr) == pytest.approx(base, rel=1e-13)

    def test_k1_specialization(self):
        d, (z1, z2), (w1, w2) = random_pairs(1, 2000, 4)
        s = z1 * np.conj(w1)
        t = z2 * np.conj(w2)
        ref = t / (math.pi**2 * (1 - t) ** 2 * (t - s) ** 2)
        got = kernel_closed_st(d, s, t)
        assert np.max(np.abs(got - ref) / np.abs(ref)) < 1e-13

    def test_diagonal_positive(self):
        d, (z1, z2), _ = random_pairs(2, 2000, 8)
        vals = kernel_closed_st(d, z1 * np.conj(z1), z2 * np.conj(z2))
        assert np.all(vals.real > 0)
        assert np.max(np.abs(vals.imag) / vals.real) < 1e-12

    def test_near_singular_floor(self):
        d = DomainSpec(1)
        with pytest.raises(NearSingularError) as exc:
            kernel_closed_st(d, 0j, 1.0 - 1e-13 + 0j)
        assert "1-t" in str(exc.value)
        with pytest.raises(NearSingularError) as exc:
            kernel_closed_st(d, 0.5 + 0j, 0.5 + 1e-13 + 0j)
        assert "t-s^k" in str(exc.value)
        # configurable floor
        val = kernel_closed_st(d, 0j, 1.0 - 1e-13 + 0j, floor=1e-14)
        assert np.isfinite(val)

    def test_rejects_non_integer_exponent(self):
        from fathartogs.geometry import NonIntegerExponentError

        with pytest.raises(NonIntegerExponentError):
            kernel_closed(DomainSpec(1.5), Point2(0, 0.5), Point2(0, 0.5))

    def test_kernel_args_invariant(self):
        d, (z1, z2), (w1, w2) = random_pairs(2, 200, 3)
        for i in range(0, 200, 20):
            args = KernelArgs.from_points(
                Point2(z1[i], z2[i]), Point2(w1[i], w2[i])
            )
            assert args.interior_pair(d)


class TestBasisIndexSet:
    def test_neg_one_always_member(self):
        for k in (1, 2, 5):
            assert MultiIndex(0, -1).in_basis(k)

    def test_neg_two_needs_large_a1(self):
        assert not MultiIndex(0, -2).in_basis(1)
        assert MultiIndex(1, -2).in_basis(1)
        assert not MultiIndex(1, -2).in_basis(2)
        assert MultiIndex(2, -2).in_basis(2)

    def test_negative_a1_excluded(self):
        assert not MultiIndex(-1, 0).in_basis(1)

    def test_weight_enumeration(self):
        idxs = basis_indices_by_weight(2, 4)
        assert all(i.in_basis(2) and i.weight(2) <= 4 for i in idxs)
        assert len(set(idxs)) == len(idxs)
        assert MultiIndex(0, -1) in idxs and MultiIndex(4, -1) in idxs
        assert MultiIndex(0, 1) in idxs


class TestKernelSeries:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_matches_closed_form_at_point(self, k):
        d = DomainSpec(k)
        z = Point2(0.3 + 0.2j, 0.6 - 0.1j)
        w = Point2(0.25 - 0.3j, 0.5 + 0.4j)
        ref = kernel_closed(d, z, w)
        got = kernel_series(d, z, w, SeriesSpec(300, 1e-9))
        assert got.value == pytest.approx(ref, rel=1e-12)

    def test_axis_example(self):
        d = DomainSpec(1)
        z = Point2(0, 0.5)
        got = kernel_series(d, z, z, SeriesSpec(60, 1e-6))
        assert abs(got.value - 64 / (9 * math.pi**2)) / abs(got.value) < 1e-6

    def test_divergence_signal_on_tiny_truncation(self):
        d = DomainSpec(1)
        z = Point2(0.77, 0.96)  # slow decay near the boundary
        with pytest.raises(SeriesDivergenceError):
            kernel_series(d, z, z, SeriesSpec(6, 1e-12))

    def test_grid_interface_broadcasts(self):
        d = DomainSpec(2)
        s = np.array([0.0, 0.1 + 0.1j])
        t = np.array([0.25 + 0j, 0.5 + 0.1j])
        vals, shell, deg = kernel_series_st(d, s, t, SeriesSpec(200, 1e-9))
        ref = kernel_closed_st(d, s, t)
        assert np.allclose(vals, ref, rtol=1e-10)
        assert shell.shape == vals.shape and deg == 200

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            SeriesSpec(-1)
        with pytest.raises(ValueError):
            SeriesSpec(10, 0.0)


class TestKernelBound:
    def test_axis_value(self):
        d = DomainSpec(1)
        z = Point2(0, 0.5)
        assert kernel_bound(d, z, z) == pytest.approx(64 / 9)

    def test_positive_and_dominates_with_constant(self):
        for k in (1, 2, 3):
            d, (z1, z2), (w1, w2) = random_pairs(k, 10_000, 21)
            s = z1 * np.conj(w1)
            t = z2 * np.conj(w2)
            bound = kernel_bound_st(d, s, t)
            assert np.all(bound > 0)
            ratio = np.abs(kernel_closed_st(d, s, t)) / bound
            # |numerator| <= (2 p_k(1) + q_k(1)) |t| since |s| < 1, |s|^k < |t|
            p1 = float(np.real(poly_p(k, 1.0)))
            q1 = float(np.real(poly_q(k, 1.0)))
            c_algebraic = (2 * p1 + q1) / (k * math.pi**2)
            empirical = float(np.max(ratio))
            print(f"k={k}: empirical |B|/bound max {empirical:.6f} "
                  f"(algebraic cap {c_algebraic:.6f})")
            assert np.all(np.isfinite(ratio))
            assert empirical <= c_algebraic * (1 + 1e-12)

    def test_polar_form_matches_closed_modulus(self):
        rng = np.random.default_rng(5)
        for k in (1, 2, 3):
            d = DomainSpec(k)
            x, y = 0.45, 0.7
            r1 = rng.random(200) * 0.9
            r2 = rng.random(200) * 0.9 + 0.05
            th1 = rng.random(200) * 2 * math.pi
            psi = rng.random(200) * 2 * math.pi
            s = x * r1 * np.exp(-1j * th1)
            t = y * r2 * np.exp(-1j * (psi + k * th1))
            ref = np.abs(kernel_closed_st(d, s, t))
            got = kernel_abs_polar(d, x, y, r1, r2, th1, psi)
            assert np.max(np.abs(got - ref) / ref) < 1e-12
