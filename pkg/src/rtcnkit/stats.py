"""Branching-count statistics of uniform networks.

The number of branching events B of a uniform network on n leaves is a sum
of independent per-level indicators: the level with m lineages below it
branches with probability 1/(m-1), so B counts records in a uniform
sequence of length n-1.  The boat-return statistic X (returns rowed by the
highest-ranked person) has the law of B - 1.  This module gives the exact
law and moments, Monte-Carlo samplers for both statistics, and a report
comparing standardized samples against the normal curve.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .enumeration import sample_uniform, stirling1

MEAN_SE_FACTOR = 4.0
VARIANCE_REL_TOL = 0.10
KS_TOL = 0.05

# upper critical values of the chi-square law at significance 0.001
CHI2_CRIT_P001 = {1: 10.828, 2: 13.816, 3: 16.266}

# below this many leaves the boat experiment draws every return rank
DIRECT_RETURNS_MAX_LEAVES = 512


def exact_branching_pmf(leaves):
    """P(B = b) for b = 1..leaves-1, as exact fractions summing to 1."""
    if leaves < 2:
        raise ValueError("leaf count must be at least 2")
    denom = math.factorial(leaves - 1)
    return [Fraction(stirling1(leaves - 1, b), denom) for b in range(1, leaves)]


def exact_moments(leaves):
    """Exact (mean, variance) of the branching count B.

    Mean is the harmonic number of leaves-1; variance subtracts the
    second-order harmonic number.
    """
    if leaves < 2:
        raise ValueError("leaf count must be at least 2")
    mean = sum(Fraction(1, j) for j in range(1, leaves))
    var = sum(Fraction(1, j) - Fraction(1, j * j) for j in range(2, leaves))
    return mean, var


def _record_count(rng, length):
    """Number of records among `length` independent uniforms.

    Exact simulation by jumping between record times: from a record at
    pos, the next record position J satisfies P(J > m) = pos/m, so J is
    the ceiling of pos divided by a uniform on (0, 1].  Expected work is
    logarithmic in `length`.
    """
    if length <= 0:
        return 0
    count = 1
    pos = 1
    while True:
        v = 1.0 - rng.random()
        t = pos / v
        if t > length:
            return count
        j = math.ceil(t)
        if j <= pos:
            j = pos + 1
        if j > length:
            return count
        count += 1
        pos = j


def sample_branching_counts(leaves, count, seed, method="levels"):
    """`count` independent draws of the branching count B.

    method "levels" draws the per-level indicators directly (record
    skipping, fast at any size); "codes" samples whole uniform codes and
    counts their branchings, the slow cross-validation path.
    """
    if leaves < 2:
        raise ValueError("leaf count must be at least 2")
    if count < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)
    if method == "levels":
        return [_record_count(rng, leaves - 1) for _ in range(count)]
    if method == "codes":
        return [sample_uniform(leaves, rng=rng).branching_count
                for _ in range(count)]
    raise ValueError(f"unknown method {method!r}")


def boat_return_experiment(leaves, count, seed):
    """`count` independent draws of X, the highest-rank return count.

    Return ranks in a uniform boat sequence are independent uniforms, so
    small sizes draw each rank; large sizes use record skipping on the
    identical law of B - 1.
    """
    if leaves < 2:
        raise ValueError("leaf count must be at least 2")
    if count < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)
    if leaves <= DIRECT_RETURNS_MAX_LEAVES:
        return [sum(1 for i in range(1, leaves - 1) if rng.randrange(i + 1) == i)
                for _ in range(count)]
    return [_record_count(rng, leaves - 1) - 1 for _ in range(count)]


def chi_square_stat(counts, probs):
    """Pearson statistic of observed `counts` against cell `probs`."""
    if len(counts) != len(probs):
        raise ValueError("counts and probs lengths differ")
    total = sum(counts)
    if total < 1:
        raise ValueError("need at least one observation")
    if any(p <= 0 for p in probs):
        raise ValueError("cell probabilities must be positive")
    if abs(math.fsum(probs) - 1.0) > 1e-9:
        raise ValueError("cell probabilities must sum to 1")
    return math.fsum((c - total * p) ** 2 / (total * p)
                     for c, p in zip(counts, probs))


def _normal_cdf(z):
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))


def ks_normal_distance(samples, mean, sd):
    """Two-sided KS distance of standardized `samples` to the normal CDF."""
    n = len(samples)
    if n < 1:
        raise ValueError("need at least one sample")
    if sd <= 0:
        raise ValueError("standard deviation must be positive")
    zs = sorted((x - mean) / sd for x in samples)
    dist = 0.0
    for i, z in enumerate(zs):
        phi = _normal_cdf(z)
        dist = max(dist, (i + 1) / n - phi, phi - i / n)
    return dist


@dataclass(frozen=True)
class ExperimentReport:
    """Outcome of one normality experiment on the return statistic X.

    Deterministic given (leaves, count, seed).  `as_dict` fixes the field
    order for the JSON record; `samples_to_csv` pairs with it.
    """

    leaves: int
    count: int
    seed: object
    sample_mean: float
    sample_variance: float
    exact_mean: float
    exact_variance: float
    ks_distance: float | None
    mean_ok: bool
    variance_ok: bool
    ks_ok: bool
    degenerate: bool

    @property
    def passed(self):
        return self.mean_ok and self.variance_ok and self.ks_ok

    def as_dict(self):
        return {
            "leaves": self.leaves,
            "count": self.count,
            "seed": self.seed,
            "sample_mean": self.sample_mean,
            "sample_variance": self.sample_variance,
            "exact_mean": self.exact_mean,
            "exact_variance": self.exact_variance,
            "ks_distance": self.ks_distance,
            "mean_ok": self.mean_ok,
            "variance_ok": self.variance_ok,
            "ks_ok": self.ks_ok,
            "degenerate": self.degenerate,
        }

    def as_json(self):
        return json.dumps(self.as_dict())


def normality_report(samples, leaves, seed=None):
    """Compare samples of X against its exact moments and the normal curve.

    Standardization uses the exact mean and variance of X = B - 1, not the
    asymptotic centering, so the check is meaningful at moderate sizes.
    Tolerances: mean within MEAN_SE_FACTOR standard errors, variance
    within VARIANCE_REL_TOL relative, KS distance at most KS_TOL.  A zero
    exact variance (2 leaves) flags the report degenerate.
    """
    n = len(samples)
    if n < 1000:
        raise ValueError("need at least 1000 samples")
    mean_b, var_b = exact_moments(leaves)
    exact_mean = float(mean_b - 1)
    exact_var = float(var_b)
    sample_mean = math.fsum(samples) / n
    sample_var = math.fsum((x - sample_mean) ** 2 for x in samples) / (n - 1)
    if exact_var == 0.0:
        return ExperimentReport(
            leaves, n, seed, sample_mean, sample_var, exact_mean, exact_var,
            None, sample_mean == exact_mean, sample_var == 0.0, False, True)
    se = math.sqrt(exact_var / n)
    ks = ks_normal_distance(samples, exact_mean, math.sqrt(exact_var))
    return ExperimentReport(
        leaves, n, seed, sample_mean, sample_var, exact_mean, exact_var,
        ks,
        abs(sample_mean - exact_mean) <= MEAN_SE_FACTOR * se,
        abs(sample_var - exact_var) <= VARIANCE_REL_TOL * exact_var,
        ks <= KS_TOL,
        False)


def samples_to_csv(samples):
    lines = ["sample_index,x"]
    lines.extend(f"{i},{x}" for i, x in enumerate(samples))
    return "\n".join(lines) + "\n"
