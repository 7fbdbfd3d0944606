"""Shared generators and brute-force oracles for the test suite."""

import numpy as np

from orlicalc.monotone import INF, MonotoneFn, NUMERIC_DESC


def scan_right_inverse(fn, s, taus):
    """sup{tau : F(tau) <= s} by direct scan over a dense tau grid."""
    vals = fn(taus)
    ok = vals <= s
    return float(taus[ok][-1]) if ok.any() else 0.0


def scan_left_inverse(fn, s, taus):
    """inf{tau : F(tau) >= s} by direct scan over a dense tau grid."""
    vals = fn(taus)
    ok = vals >= s
    return float(taus[ok][0]) if ok.any() else INF


def random_step_monotone(rng, n_max=12, with_plateaus=True):
    """A random non-decreasing step-ish table with numeric-only tails."""
    n = rng.integers(3, n_max + 1)
    t = np.sort(rng.uniform(-3, 3, size=n))
    t = 10.0 ** t
    t = np.unique(t)
    inc = rng.uniform(0.0 if with_plateaus else 0.05, 1.0, size=t.size)
    if with_plateaus:
        inc[rng.random(t.size) < 0.3] = 0.0
    v = 0.1 * 10.0 ** rng.uniform(-2, 2) + np.cumsum(inc)
    return MonotoneFn(t, v, NUMERIC_DESC, NUMERIC_DESC)


def dense_taus(lo=1e-6, hi=1e6, n=120001):
    return np.geomspace(lo, hi, n)
