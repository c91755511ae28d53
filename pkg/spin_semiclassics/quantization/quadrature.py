"""Quadrature rules and Dicke amplitude tables shared by the quantization code."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy import special, stats


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss–Legendre nodes and weights on [-1, 1], exact to degree 2n − 1.

    Args:
        n: Number of nodes.

    Returns:
        Read-only ``(nodes, weights)`` arrays.
    """
    nodes, weights = special.roots_legendre(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@lru_cache(maxsize=64)
def log_binomials(n: int) -> np.ndarray:
    """``log C(n, k)`` for k = 0..n."""
    k = np.arange(n + 1)
    out = special.gammaln(n + 1) - special.gammaln(k + 1) - special.gammaln(n - k + 1)
    out.setflags(write=False)
    return out


def dicke_amplitudes(n: int, t: np.ndarray) -> np.ndarray:
    """Moduli of coherent-state components as functions of ``t = cos θ``.

    ``a_k(t)² = C(n,k) ((1+t)/2)^{n−k} ((1−t)/2)^k`` is the binomial pmf with
    success probability ``(1−t)/2``. ``scipy.stats.binom`` evaluates it to a
    few ulp for every ``n``; log-gamma differences do not.

    Args:
        n: Number of sites.
        t: Array of cosines in [-1, 1].

    Returns:
        Array of shape ``(n + 1, len(t))``.
    """
    t = np.clip(np.atleast_1d(np.asarray(t, dtype=float)), -1.0, 1.0)
    k = np.arange(n + 1)[:, None]
    return np.sqrt(stats.binom.pmf(k, n, (1.0 - t[None, :]) / 2.0))


def product_rule_sizes(n: int, degree: int) -> tuple[int, int]:
    """Node counts ``(n_phi, n_t)`` integrating degree-``degree`` symbols exactly.

    The φ-integrand is a trigonometric polynomial of degree at most ``n + degree``
    and the remaining t-integrand a polynomial of the same degree.
    """
    total = n + degree + 1
    return total, math.ceil(total / 2)
