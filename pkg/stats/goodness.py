"""Two-sample Kolmogorov-Smirnov and chi-square goodness-of-fit checks.

Both compare a statistic against a fixed threshold; no p-values.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats as sps

# Asymptotic two-sample KS coefficients c(alpha).
KS_COEFFICIENTS = {
    0.001: 1.949,
    0.01: 1.628,
    0.05: 1.358,
    0.1: 1.224,
}
KS_MIN_SAMPLES = 25
MIN_EXPECTED = 5.0


@dataclass(frozen=True)
class GoodnessResult:
    """Outcome of a threshold test.

    Attributes:
        test: Name of the test
        statistic: Observed statistic (D for KS, Pearson X^2 for chi-square)
        threshold: Critical value; the test passes when statistic < threshold
        alpha: Significance level
        passed: Whether the statistic is below the threshold
        dof: Degrees of freedom (chi-square only)
    """
    test: str
    statistic: float
    threshold: float
    alpha: float
    passed: bool
    dof: Optional[int] = None

    def to_dict(self) -> dict:
        """Report JSON: {test, statistic, threshold, alpha, pass}."""
        return {
            "test": self.test,
            "statistic": self.statistic,
            "threshold": self.threshold,
            "alpha": self.alpha,
            "pass": self.passed,
        }


def ks_coefficient(alpha: float) -> float:
    """c(alpha) for the asymptotic two-sample KS critical value."""
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0,1), got {alpha}")
    if alpha in KS_COEFFICIENTS:
        return KS_COEFFICIENTS[alpha]
    return math.sqrt(-0.5 * math.log(alpha / 2))


def ks_two_sample(a, b, alpha: float = 0.01) -> GoodnessResult:
    """Two-sample KS test with asymptotic critical value.

    D = sup |F_a - F_b|, critical = c(alpha) * sqrt((n + m) / (n m)).

    Raises:
        ValueError: If either sample has fewer than 25 values
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n, m = a.size, b.size
    if n < KS_MIN_SAMPLES or m < KS_MIN_SAMPLES:
        raise ValueError(f"KS test needs at least {KS_MIN_SAMPLES} samples per side, got {n} and {m}")
    d = float(sps.ks_2samp(a, b).statistic)
    critical = ks_coefficient(alpha) * math.sqrt((n + m) / (n * m))
    return GoodnessResult("ks_two_sample", d, critical, alpha, d < critical)


def chi_square_gof(counts, probs, alpha: float = 0.001) -> GoodnessResult:
    """Pearson chi-square test of observed counts against a finite law.

    Raises:
        ValueError: If probs do not sum to 1 or an expected count is below 5
    """
    counts = np.asarray(counts, dtype=float)
    probs = np.asarray(probs, dtype=float)
    if counts.shape != probs.shape or counts.ndim != 1 or counts.size < 2:
        raise ValueError("counts and probs must be vectors of the same length (>= 2)")
    if abs(probs.sum() - 1.0) > 1e-9:
        raise ValueError(f"Probabilities must sum to 1, got {probs.sum()}")
    expected = counts.sum() * probs
    if np.any(expected < MIN_EXPECTED):
        raise ValueError(f"Underpopulated bins: expected counts {expected.tolist()} must all be >= {MIN_EXPECTED}")
    statistic = float(np.sum((counts - expected) ** 2 / expected))
    dof = counts.size - 1
    threshold = float(sps.chi2.ppf(1 - alpha, dof))
    return GoodnessResult("chi_square_gof", statistic, threshold, alpha, statistic < threshold, dof)


def histogram(values, bins: int, low: float = 0.0, high: float = 1.0):
    """Counts of values in equal-width bins on [low, high]."""
    counts, _ = np.histogram(np.asarray(values, dtype=float), bins=bins, range=(low, high))
    return counts
