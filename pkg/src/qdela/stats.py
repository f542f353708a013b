"""Two-sample rank test and descriptive quartiles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["TestResult", "mann_whitney_u", "median_iqr"]

EXACT_MAX_N = 14


@dataclass(frozen=True)
class TestResult:
    u_statistic: float
    p_value: float
    n_a: int
    n_b: int
    method: str  # exact | normal-approx


def _midranks(values: np.ndarray) -> np.ndarray:
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    sorted_vals = values[order]
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def _rank_sum_counts(n_a: int, n_b: int) -> np.ndarray:
    """counts[s] = number of size-n_a subsets of ranks 1..n with rank sum s.

    Dynamic program over the ranks; enumerates the full tie-free null
    distribution exactly.
    """
    n = n_a + n_b
    max_sum = n_a * n + 1
    counts = np.zeros((n_a + 1, max_sum), dtype=np.uint64)
    counts[0, 0] = 1
    for r in range(1, n + 1):
        for size in range(min(r, n_a), 0, -1):
            counts[size, r:] += counts[size - 1, : max_sum - r]
    return counts[n_a]


def _exact_p(u: float, n_a: int, n_b: int) -> float:
    counts = _rank_sum_counts(n_a, n_b)
    # translate rank sums of sample a into U values
    offset = n_a * (n_a + 1) // 2
    u_counts = counts[offset : offset + n_a * n_b + 1]
    total = float(u_counts.sum())
    u_lo = min(u, n_a * n_b - u)
    u_hi = n_a * n_b - u_lo
    lo_mass = float(u_counts[: int(math.floor(u_lo)) + 1].sum())
    hi_mass = float(u_counts[int(math.ceil(u_hi)) :].sum())
    return min(1.0, (lo_mass + hi_mass) / total)


def mann_whitney_u(a, b) -> TestResult:
    """Two-sided Mann-Whitney U test, U reported for sample a.

    Tie-free small samples (n_a + n_b <= 14) get an exact p-value from
    the enumerated null distribution; everything else uses the normal
    approximation with tie-corrected variance and continuity correction.
    """
    a = np.asarray(list(a), dtype=float)
    b = np.asarray(list(b), dtype=float)
    n_a, n_b = len(a), len(b)
    if n_a < 1 or n_b < 1:
        raise ValueError("both samples must be nonempty")

    combined = np.concatenate([a, b])
    ranks = _midranks(combined)
    rank_sum_a = float(ranks[:n_a].sum())
    u = rank_sum_a - n_a * (n_a + 1) / 2.0

    _, tie_counts = np.unique(combined, return_counts=True)
    has_ties = bool(np.any(tie_counts > 1))

    if not has_ties and n_a + n_b <= EXACT_MAX_N:
        return TestResult(u, _exact_p(u, n_a, n_b), n_a, n_b, "exact")

    n = n_a + n_b
    tie_term = float(np.sum(tie_counts**3 - tie_counts)) / (n * (n - 1)) if n > 1 else 0.0
    var = n_a * n_b / 12.0 * ((n + 1) - tie_term)
    if var <= 0:
        return TestResult(u, 1.0, n_a, n_b, "normal-approx")
    z = (abs(u - n_a * n_b / 2.0) - 0.5) / math.sqrt(var)
    z = max(z, 0.0)
    p = min(1.0, math.erfc(z / math.sqrt(2.0)))
    return TestResult(u, p, n_a, n_b, "normal-approx")


def median_iqr(xs) -> tuple[float, float, float] | None:
    """(median, q1, q3) with linearly interpolated quartiles.

    Non-finite and None entries are dropped; an empty remainder gives
    None.
    """
    vals = np.asarray(
        [x for x in xs if x is not None and np.isfinite(x)], dtype=float
    )
    if vals.size == 0:
        return None
    q1, med, q3 = np.quantile(vals, [0.25, 0.5, 0.75])
    return float(med), float(q1), float(q3)
