"""Numeric kernels shared by the whole simulator.

Everything downstream (state evolution, moments, squeezing factors) is a
weighted sum over two-mode Fock amplitudes.  This module owns the three
ingredients of those sums and the policy for cutting them off:

* ``coherent_coefficient`` / ``photon_distribution`` -- amplitudes and
  Poisson weights of an l-photon coherent state, evaluated in log space
  so they stay finite far into the tail.
* ``rabi_frequency`` -- the photon-number dependent oscillation frequency,
  a square root of rising-factorial ratios computed as a short product of
  integers (never through raw factorials, which overflow near 170!).
* ``select_truncation`` -- the smallest summation cutoff whose excluded
  Poisson tail mass is below a tolerance.

All functions are pure and reentrant.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

# Highest ladder power the shipped quantity set needs (moments up to total
# order four).  Grid padding is derived from it so every shifted coefficient
# index stays inside the truncated grid.
MAX_LADDER_POWER = 4

DEFAULT_EPSILON = 1e-12


def _log_coherent(n: int, alpha: float) -> float:
    """log of exp(-alpha^2/2) * alpha^n / sqrt(n!); -inf for alpha=0, n>0."""
    if alpha == 0.0:
        return 0.0 if n == 0 else -math.inf
    return -0.5 * alpha * alpha + n * math.log(alpha) - 0.5 * math.lgamma(n + 1)


def coherent_coefficient(n: int, alpha: float) -> float:
    """Amplitude of the n-th term of a coherent state with real amplitude alpha.

    Computed as ``exp(-alpha^2/2 + n log(alpha) - log(n!)/2)``; finite and
    non-NaN up to n ~ 1e4 and alpha ~ 1e2 (the tail just underflows to 0).
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if alpha < 0:
        raise ConfigError(f"coherent amplitude must be real >= 0, got {alpha}")
    return math.exp(_log_coherent(n, alpha))


def photon_distribution(n: int, alpha: float) -> float:
    """Poisson weight P(n) = |coherent_coefficient(n, alpha)|^2 (mean alpha^2)."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if alpha < 0:
        raise ConfigError(f"coherent amplitude must be real >= 0, got {alpha}")
    lg = _log_coherent(n, alpha)
    return 0.0 if lg == -math.inf else math.exp(2.0 * lg)


def select_truncation(alpha: float, epsilon: float) -> int:
    """Smallest N such that the Poisson tail mass beyond N is below epsilon.

    Monotone non-increasing in epsilon.  Uses the stable pmf recurrence
    P(n+1) = P(n) * mu / (n+1) with mu = alpha^2.
    """
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if alpha < 0:
        raise ConfigError(f"coherent amplitude must be real >= 0, got {alpha}")
    mu = alpha * alpha
    if mu == 0.0:
        return 0
    p = math.exp(-mu)
    cum = p
    n = 0
    while 1.0 - cum >= epsilon:
        n += 1
        p *= mu / n
        cum += p
        if n > 10_000_000:  # unreachable for sane alpha; guards a runaway loop
            raise RuntimeError("truncation search did not converge")
    return n


@dataclass(frozen=True)
class TruncationSpec:
    """Tail tolerance plus the per-mode summation cutoffs derived from it."""

    epsilon: float
    n_max_1: int
    n_max_2: int

    def __post_init__(self):
        if not (0.0 < self.epsilon < 1.0):
            raise ConfigError(f"trunc.epsilon must lie in (0, 1), got {self.epsilon}")
        if self.n_max_1 < 0 or self.n_max_2 < 0:
            raise ConfigError("truncation cutoffs must be non-negative")

    @classmethod
    def for_amplitudes(cls, alpha1: float, alpha2: float,
                       epsilon: float = DEFAULT_EPSILON) -> "TruncationSpec":
        return cls(epsilon=epsilon,
                   n_max_1=select_truncation(alpha1, epsilon),
                   n_max_2=select_truncation(alpha2, epsilon))


@dataclass(frozen=True)
class ModelConfig:
    """Full parameter set of one run; the single source of truth.

    k1, k2   -- photons exchanged with each mode per atomic transition (>= 1)
    l1, l2   -- photon multiplicity of the initial l-photon coherent states (>= 1)
    alpha1, alpha2 -- real non-negative coherent amplitudes
    trunc    -- tail tolerance and cutoffs; derived from the alphas if omitted
    """

    k1: int
    k2: int
    l1: int = 1
    l2: int = 1
    alpha1: float = 0.0
    alpha2: float = 0.0
    trunc: TruncationSpec | None = field(default=None)

    def __post_init__(self):
        for name in ("k1", "k2", "l1", "l2"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 1:
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")
        for name in ("alpha1", "alpha2"):
            v = getattr(self, name)
            if isinstance(v, complex) or not math.isfinite(float(v)) or float(v) < 0:
                raise ConfigError(f"{name} must be real and >= 0, got {v!r}")
        if self.trunc is None:
            object.__setattr__(
                self, "trunc",
                TruncationSpec.for_amplitudes(self.alpha1, self.alpha2))

    # -- derived geometry -------------------------------------------------

    def pad(self, mode: int) -> int:
        """Index padding beyond the bare cutoff for one mode (1 or 2)."""
        k = self.k1 if mode == 1 else self.k2
        return max(k, 2 * MAX_LADDER_POWER)

    def grid_caps(self) -> tuple[int, int]:
        """Inclusive largest base index per mode, cutoff plus padding."""
        return (self.trunc.n_max_1 + self.pad(1),
                self.trunc.n_max_2 + self.pad(2))

    def mean_photon_initial(self, mode: int) -> float:
        """Initial mean photon number l_j * alpha_j^2 of one mode."""
        if mode == 1:
            return self.l1 * self.alpha1 * self.alpha1
        if mode == 2:
            return self.l2 * self.alpha2 * self.alpha2
        raise ValueError(f"mode must be 1 or 2, got {mode}")

    def cfg_hash(self) -> str:
        """Short stable digest used as provenance key on time series."""
        key = (f"k={self.k1},{self.k2};l={self.l1},{self.l2};"
               f"a={self.alpha1!r},{self.alpha2!r};eps={self.trunc.epsilon!r};"
               f"nmax={self.trunc.n_max_1},{self.trunc.n_max_2}")
        return hashlib.sha256(key.encode()).hexdigest()[:12]


def rabi_frequency(n: int, m: int, cfg: ModelConfig) -> float:
    """Oscillation frequency of the Fock pair (l1*n, l2*m).

    The square root of (l1*n + k1)! (l2*m + k2)! / ((l1*n)! (l2*m)!),
    evaluated as a product of k1 + k2 successive integers.
    """
    if n < 0 or m < 0:
        raise ValueError("Fock indices must be non-negative")
    p = 1.0
    base1 = cfg.l1 * n
    for j in range(1, cfg.k1 + 1):
        p *= base1 + j
    base2 = cfg.l2 * m
    for j in range(1, cfg.k2 + 1):
        p *= base2 + j
    return math.sqrt(p)


def rabi_frequency_grid(cfg: ModelConfig, n: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Vectorised ``rabi_frequency`` over index arrays n (column) and m (row)."""
    p1 = np.ones_like(n, dtype=float)
    for j in range(1, cfg.k1 + 1):
        p1 *= cfg.l1 * n + j
    p2 = np.ones_like(m, dtype=float)
    for j in range(1, cfg.k2 + 1):
        p2 *= cfg.l2 * m + j
    return np.sqrt(np.outer(p1, p2))


def coherent_coefficient_grid(alpha: float, n_cap: int) -> np.ndarray:
    """Coefficients for n = 0..n_cap as one array (log-space evaluation)."""
    n = np.arange(n_cap + 1)
    if alpha == 0.0:
        out = np.zeros(n_cap + 1)
        out[0] = 1.0
        return out
    from scipy.special import gammaln
    logs = -0.5 * alpha * alpha + n * math.log(alpha) - 0.5 * gammaln(n + 1.0)
    return np.exp(logs)
