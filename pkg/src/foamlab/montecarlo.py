"""Monte Carlo verification of the closed-form curvature noise.

Applying the cube-root time law to the single intervals (length t),
adjacent pairs (2t) and the full triple (3t), with t = l/c and exchange
symmetry cov12 = cov23, pins a unique covariance for (t1, t2, t3):

    Var(t_i)              = sigma^2
    Var(t_i + t_{i+1})    = 2^(2/3) sigma^2
    Var(t1 + t2 + t3)     = 3^(2/3) sigma^2

ngvandam_covariance builds that matrix, and verify_curvature_uncertainty
samples it to reproduce the closed-form noise empirically.  The law only
fixes first and second moments; samples are drawn multivariate Gaussian
(the maximum-entropy choice, and any distribution with these moments
gives the same second-difference variance).

Numerical note: at laboratory scales the fluctuations sit ~22 orders of
magnitude below the mean flight time, so mean + delta would round to the
mean exactly in double precision.  Samples are therefore generated and
analysed in fluctuation space (zero-mean deltas); the second difference
annihilates the common mean anyway, and TripletSample keeps the mean
alongside the deltas.

Determinism: partition i draws from NumPy PCG64 seeded with
SeedSequence(seed, spawn_key=(i,)), and per-partition moment sums are
combined in partition-index order.  Results are bit-stable for a fixed
(seed, n_partitions) and statistically compatible across partition
counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .constants import ConstantSet, Curvature, Length, TimeInterval, default_constants
from .errors import DomainError
from .laws import UncertaintyLaw
from .wigner import (
    PSD_RTOL,
    TripletCovariance,
    PulseTriplet,
    curvature_uncertainty,
    second_difference_variance,
)

# Correlations forced by the interval variances above:
# adjacent: Var(t_i + t_j) = 2 sigma^2 (1 + rho) = 2^(2/3) sigma^2
# outer:    Var(sum)       = 3 sigma^2 + 4 rho_adj sigma^2 + 2 rho_out sigma^2 = 3^(2/3) sigma^2
ADJACENT_CORRELATION = 2.0 ** (-1.0 / 3.0) - 1.0
OUTER_CORRELATION = (3.0 ** (2.0 / 3.0) - 3.0) / 2.0 - (2.0 ** (2.0 / 3.0) - 2.0)


@dataclass(frozen=True)
class McConfig:
    """Sampling parameters for one verification run."""

    l: Length
    n_samples: int
    seed: int
    n_partitions: int = 1

    def validate(self) -> None:
        if not (isinstance(self.l, (int, float)) and math.isfinite(self.l) and self.l > 0):
            raise DomainError(f"l must be a strictly positive finite length, got {self.l!r}")
        if not (isinstance(self.n_samples, int) and self.n_samples >= 1):
            raise DomainError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not (isinstance(self.n_partitions, int) and self.n_partitions >= 1):
            raise DomainError(f"n_partitions must be a positive integer, got {self.n_partitions!r}")


@dataclass(frozen=True)
class McResult:
    """Empirical versus closed-form second-difference statistics.

    closed_form_variance is second_difference_variance of the sampled
    covariance (VARIANCE_RATIO * sigma2 for the cube-root matrix);
    closed_form_delta_c is the closed-form noise law at l, bit-identical
    to wigner.curvature_uncertainty.
    """

    empirical_variance: float
    closed_form_variance: float
    relative_error: float
    empirical_delta_c: Curvature
    closed_form_delta_c: Curvature
    sigma2: float


@dataclass(frozen=True)
class TripletSample:
    """Gaussian triplet draws stored as a common mean plus fluctuations.

    deltas has shape (n, 3).  triplets() materializes mean + delta; at
    physical scales that addition underflows the fluctuation entirely,
    so statistics must be computed on the deltas.
    """

    mean: TimeInterval
    deltas: np.ndarray

    def second_differences(self) -> np.ndarray:
        return self.deltas[:, 0] - 2.0 * self.deltas[:, 1] + self.deltas[:, 2]

    def triplets(self) -> Iterator[PulseTriplet]:
        for row in self.deltas:
            yield PulseTriplet(
                self.mean + float(row[0]), self.mean + float(row[1]), self.mean + float(row[2])
            )


def ngvandam_covariance(l: Length, constants: ConstantSet | None = None) -> TripletCovariance:
    """Covariance of (t1, t2, t3) implied by the cube-root law at length l."""
    cs = constants or default_constants()
    sigma = UncertaintyLaw(cs).time_uncertainty(l / cs.c)
    sigma2 = sigma * sigma
    return TripletCovariance(
        sigma2=sigma2,
        cov12=sigma2 * ADJACENT_CORRELATION,
        cov23=sigma2 * ADJACENT_CORRELATION,
        cov13=sigma2 * OUTER_CORRELATION,
    )


def eigenvalues(cov: TripletCovariance) -> tuple[float, float, float]:
    """Eigenvalues of the covariance matrix, descending."""
    values = np.linalg.eigvalsh(cov.matrix())
    return (float(values[2]), float(values[1]), float(values[0]))


def sample_triplets(
    cov: TripletCovariance, mean: TimeInterval, config: McConfig
) -> TripletSample:
    """Draw config.n_samples Gaussian triplets around the given mean.

    Deterministic for fixed (seed, n_partitions): partition substreams
    are concatenated in index order.
    """
    config.validate()
    if not (math.isfinite(mean) and mean > 0):
        raise DomainError(f"mean must be a strictly positive finite time, got {mean!r}")
    factor = _psd_factor(cov)
    parts = [
        _partition_rng(config.seed, index).standard_normal((size, 3)) @ factor.T
        for index, size in enumerate(_partition_sizes(config.n_samples, config.n_partitions))
    ]
    return TripletSample(mean=mean, deltas=np.concatenate(parts, axis=0))


def verify_curvature_uncertainty(
    config: McConfig,
    constants: ConstantSet | None = None,
    cov_override: TripletCovariance | None = None,
) -> McResult:
    """Empirically reproduce the closed-form curvature noise at config.l.

    Samples the cube-root covariance (or cov_override, a test hook),
    accumulates per-partition moment sums of the second difference, and
    compares the sample variance against the closed form.  The empirical
    delta_C uses the linearized estimator sqrt(Var) * c / (11 l^2).
    """
    config.validate()
    cs = constants or default_constants()
    cov = cov_override if cov_override is not None else ngvandam_covariance(config.l, cs)
    if config.n_samples < 2:
        raise DomainError("n_samples must be at least 2 to estimate a variance")
    factor = _psd_factor(cov)

    count = 0
    linear_sum = 0.0
    square_sum = 0.0
    for index, size in enumerate(_partition_sizes(config.n_samples, config.n_partitions)):
        deltas = _partition_rng(config.seed, index).standard_normal((size, 3)) @ factor.T
        diffs = deltas[:, 0] - 2.0 * deltas[:, 1] + deltas[:, 2]
        count += size
        linear_sum += float(diffs.sum())
        square_sum += float(diffs @ diffs)

    empirical_variance = (square_sum - linear_sum * linear_sum / count) / (count - 1)
    closed_form_variance = second_difference_variance(cov)
    relative_error = abs(empirical_variance - closed_form_variance) / closed_form_variance
    empirical_delta_c = math.sqrt(empirical_variance) * cs.c / (11.0 * config.l**2)
    return McResult(
        empirical_variance=empirical_variance,
        closed_form_variance=closed_form_variance,
        relative_error=relative_error,
        empirical_delta_c=empirical_delta_c,
        closed_form_delta_c=curvature_uncertainty(config.l, cs),
        sigma2=cov.sigma2,
    )


def _partition_sizes(n_samples: int, n_partitions: int) -> list[int]:
    base, remainder = divmod(n_samples, n_partitions)
    return [base + 1 if i < remainder else base for i in range(n_partitions)]


def _partition_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _psd_factor(cov: TripletCovariance) -> np.ndarray:
    """Factor F with F F^T = cov, rejecting genuinely indefinite input.

    Cholesky when strictly positive definite; on the PSD boundary (for
    example the all-ones correlation, or an all-zero test matrix) an
    eigenvalue factor with negatives clipped at zero.
    """
    matrix = cov.matrix()
    if not np.all(np.isfinite(matrix)):
        raise DomainError(f"covariance entries must be finite, got {matrix.tolist()!r}")
    smallest = float(np.linalg.eigvalsh(matrix)[0])
    if smallest < -PSD_RTOL * max(cov.sigma2, 1e-300):
        raise DomainError(
            f"covariance is not positive semidefinite: smallest eigenvalue {smallest!r}"
        )
    if not matrix.any():
        return np.zeros((3, 3))
    try:
        return np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError:
        values, vectors = np.linalg.eigh(matrix)
        return vectors * np.sqrt(np.clip(values, 0.0, None))
