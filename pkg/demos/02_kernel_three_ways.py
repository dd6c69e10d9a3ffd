"""Evaluate the Bergman kernel three ways and watch them agree.

The closed form is a ratio of coefficient polynomials p_k, q_k in the
invariants s = z1 conj(w1), t = z2 conj(w2); the orthonormal monomial
basis gives an independent series expansion; and the modulus is
dominated by |t| / (|1-t|^2 |t-s^k|^2) up to a k-dependent constant.
"""

import numpy as np

from fathartogs import (
    DomainSpec,
    Point2,
    SeriesSpec,
    kernel_bound,
    kernel_closed,
    kernel_series,
    poly_p,
    poly_q,
    sample_uniform,
)
from fathartogs.kernel import kernel_closed_st, kernel_bound_st

print("coefficient polynomials:")
for k in (1, 2, 3):
    print(f"  k={k}: p({k},s)|_(s=1) = {poly_p(k, 1.0).real:.0f},"
          f"  q({k},s)|_(s=1) = {poly_q(k, 1.0).real:.0f}")

z = Point2(0.3 + 0.2j, 0.6 - 0.1j)
w = Point2(0.25 - 0.3j, 0.5 + 0.4j)
print(f"\nclosed form vs series at z={z}, w={w}:")
for k in (1, 2, 3):
    d = DomainSpec(k)
    closed = kernel_closed(d, z, w)
    series = kernel_series(d, z, w, SeriesSpec(max_degree=300, tolerance=1e-9))
    rel = abs(closed - series.value) / abs(closed)
    print(f"  k={k}: closed = {closed:.10g}")
    print(f"        series = {series.value:.10g}   rel err = {rel:.1e}"
          f"   (final shell {series.last_shell:.1e})")

print("\nthe dominating bound |t|/(|1-t|^2 |t-s^k|^2), with its empirical")
print(f"constant over random pairs (at the axis point the bound is "
      f"{kernel_bound(DomainSpec(1), Point2(0, .5), Point2(0, .5)):.4f} = 64/9):")
for k in (1, 2, 3):
    d = DomainSpec(k)
    z1, z2 = sample_uniform(d, 50_000, seed=3)
    w1, w2 = sample_uniform(d, 50_000, seed=4)
    s = z1 * np.conj(w1)
    t = z2 * np.conj(w2)
    ratio = np.abs(kernel_closed_st(d, s, t)) / kernel_bound_st(d, s, t)
    print(f"  k={k}: |B|/bound <= {float(np.max(ratio)):.4f} on 5*10^4 pairs")
