"""Reference laws that simulated urns are checked against."""

import math

import numpy as np
from scipy import stats as sps


def gem_stick_breaking(theta: float, k: int, stream, start: int = 0):
    """First k stick-breaking weights of GEM(theta).

    w_i = B_i * prod_{j<i} (1 - B_j) with B_j ~ Beta(1, theta), drawn by
    inverse CDF from the stream's uniforms.

    Args:
        theta: Concentration, > 0
        k: Number of weights, >= 1
        stream: RandomnessStream supplying uniforms
        start: Flat stream position of the first uniform

    Returns:
        List of k weights in (0,1) with sum below 1
    """
    if theta <= 0:
        raise ValueError(f"theta must be positive, got {theta}")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    weights = []
    remaining = 1.0
    for u in stream.uniforms(k, start):
        b = 1.0 - (1.0 - u) ** (1.0 / theta)
        weights.append(remaining * b)
        remaining *= 1.0 - b
    return weights


def expected_distinct(theta: float, n: int) -> float:
    """Expected number of distinct colours after n draws, sum_{i<n} theta / (theta + i)."""
    if theta <= 0:
        raise ValueError(f"theta must be positive, got {theta}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return math.fsum(theta / (theta + i) for i in range(n))


def polya_limit_fraction(a: float, w, size: int, stream, start: int = 0):
    """Samples of the limiting share of colour 0 in a Polya urn.

    The share of colour 0 converges to Beta(w_0 / a, (sum(w) - w_0) / a).
    """
    alpha = w[0] / a
    beta = (sum(w) - w[0]) / a
    u = np.asarray(stream.uniforms(size, start))
    return sps.beta.ppf(u, alpha, beta).tolist()


def polya_exact_fraction(n: int, size: int, stream, start: int = 0):
    """Exact law of X_n({0}) / X_n(S) for a = 1, X_0 = delta_0 + delta_1.

    The number of colour-0 draws is uniform on {0, ..., n}.
    """
    u = np.asarray(stream.uniforms(size, start))
    k = np.minimum(np.floor(u * (n + 1)), n)
    return ((1.0 + k) / (n + 2.0)).tolist()


def polya_draw_count_law(n: int, a: float, w):
    """Law of the number of colour-0 draws in n steps of a two-colour Polya urn.

    Beta-binomial with parameters (n, w_0 / a, w_1 / a).
    """
    return sps.betabinom.pmf(np.arange(n + 1), n, w[0] / a, w[1] / a).tolist()
