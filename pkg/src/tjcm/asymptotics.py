"""Strong-intensity asymptotics: frequency-gap ratios and surrogate sums.

The revival structure of a squeezing factor is governed by the gaps
between Rabi frequencies at photon indices two apart.  Dividing a gap by
the standard-model frequency 2 sqrt((n+1)(m+1)) gives a proportionality
ratio; when that ratio is intensity-independent the factor inherits the
revival-collapse pattern of an atomic inversion.  This module provides

* exact gaps and ratios from the frequency table,
* the printed exact rearrangement of the single-mode ratio (an algebraic
  identity used as a transcription check),
* the closed-form strong-field limits of both ratios,
* the classifier of transition-parameter pairs with intensity-independent
  ratio (exactly k1 + k2 = 4), and
* fast surrogate sums for <a1^2(T)> and <a1^2(T) a2^2(T)> that drop the
  slowly varying square-root weights.

Everything here assumes coherent light (unit photon spacing) where noted.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .core import ModelConfig, rabi_frequency
from .dynamics import _state_tables


def shift2_gap(n: int, m: int, cfg: ModelConfig) -> float:
    """Exact frequency gap L_{n+2,m} - L_{n,m}."""
    return rabi_frequency(n + 2, m, cfg) - rabi_frequency(n, m, cfg)


def shift22_gap(n: int, m: int, cfg: ModelConfig) -> float:
    """Exact frequency gap L_{n+2,m+2} - L_{n,m}."""
    return rabi_frequency(n + 2, m + 2, cfg) - rabi_frequency(n, m, cfg)


def gap_ratio(n: int, m: int, cfg: ModelConfig) -> float:
    """Single-mode gap over the standard-model frequency 2 sqrt((n+1)(m+1))."""
    return shift2_gap(n, m, cfg) / (2.0 * math.sqrt((n + 1) * (m + 1)))


def gap_ratio_expanded(n: int, m: int, cfg: ModelConfig) -> float:
    """The printed exact rearrangement of ``gap_ratio`` (same quantity).

    Algebraically equal to the quotient form; evaluated independently as a
    guard against transcription errors in either expression.
    """
    k1, k2 = cfg.k1, cfg.k2
    lead = 1.0
    for j in range(2, k1 + 1):
        lead *= n + j
    for j in range(2, k2 + 1):
        lead *= m + j
    lead = math.sqrt(lead)
    num = (2 * n + 3) * k1 + k1 * k1
    den = 2.0 * math.sqrt((n + 2) * (n + 1)) * (
        math.sqrt((n + k1 + 2) * (n + k1 + 1)) + math.sqrt((n + 2) * (n + 1)))
    return lead * num / den


def gap_ratio_limit(cfg: ModelConfig, nbar: float, mbar: float) -> float:
    """Strong-field limit (k1/2) nbar^((k1-3)/2) mbar^((k2-1)/2).

    Intensity-independent (for nbar ~ mbar) exactly when k1 + k2 = 4:
    3/2 for (3, 1), 1/2 for (1, 3) and 1 for (2, 2).
    """
    if nbar <= 0 or mbar <= 0:
        raise ValueError("mean photon numbers must be positive")
    return 0.5 * cfg.k1 * nbar ** ((cfg.k1 - 3) / 2.0) * mbar ** ((cfg.k2 - 1) / 2.0)


def joint_gap_ratio(n: int, m: int, cfg: ModelConfig) -> float:
    """Joint-shift gap over the standard-model frequency."""
    return shift22_gap(n, m, cfg) / (2.0 * math.sqrt((n + 1) * (m + 1)))


def joint_gap_ratio_limit(cfg: ModelConfig, nbar1: float, nbar2: float) -> float:
    """Strong-field limit of the joint ratio, the eight-term expansion.

    Approaches 2 for (3, 1), (1, 3) and (2, 2) with comparable intensities.
    """
    if nbar1 <= 0 or nbar2 <= 0:
        raise ValueError("mean photon numbers must be positive")
    k1, k2 = cfg.k1, cfg.k2
    x = lambda p: nbar1 ** ((k1 - p) / 2.0)
    y = lambda p: nbar2 ** ((k2 - p) / 2.0)
    return 0.25 * (2 * k2 * x(1) * y(3)
                   + k2 ** 2 * x(1) * y(5)
                   + 2 * k1 * x(3) * y(1)
                   + 4 * k1 * k2 * x(3) * y(3)
                   + 2 * k1 * k2 ** 2 * x(3) * y(5)
                   + k1 ** 2 * x(5) * y(1)
                   + 2 * k1 ** 2 * k2 * x(5) * y(3)
                   + k1 ** 2 * k2 ** 2 * x(5) * y(5))


def joint_gap_ratio_limit_factored(cfg: ModelConfig, nbar1: float, nbar2: float) -> float:
    """The same limit with the eight terms grouped into three products.

    (1 + k_j / (2 nbar_j)) factors multiply out to the printed expansion;
    numerical equality of the two forms checks the transcription.
    """
    k1, k2 = cfg.k1, cfg.k2
    x = lambda p: nbar1 ** ((k1 - p) / 2.0)
    y = lambda p: nbar2 ** ((k2 - p) / 2.0)
    u1 = 1.0 + k1 / (2.0 * nbar1)
    u2 = 1.0 + k2 / (2.0 * nbar2)
    return 0.25 * (2 * k2 * x(1) * y(3) * u2
                   + 2 * k1 * x(3) * y(1) * u1
                   + 4 * k1 * k2 * x(3) * y(3) * u1 * u2)


def rcp_pairs(max_total: int = 6, nbars=(1e2, 1e3, 1e4),
              rel_tol: float = 0.05) -> set[tuple[int, int]]:
    """Transition-parameter pairs whose gap ratio is intensity-independent.

    Scans k1, k2 >= 1 with k1 + k2 <= max_total and keeps the pairs whose
    strong-field ratio at nbar = mbar varies by at most rel_tol across the
    given intensities.  The ratio scales as nbar^((k1+k2-4)/2), so the
    surviving set is exactly the k1 + k2 = 4 diagonal.
    """
    found = set()
    for k1 in range(1, max_total):
        for k2 in range(1, max_total + 1 - k1):
            cfg = ModelConfig(k1=k1, k2=k2, alpha1=1.0, alpha2=1.0)
            vals = [gap_ratio_limit(cfg, nb, nb) for nb in nbars]
            if max(vals) <= (1.0 + rel_tol) * min(vals):
                found.add((k1, k2))
    return found


@lru_cache(maxsize=64)
def _surrogate_tables(cfg: ModelConfig, joint: bool):
    """Poisson weights and frequency gaps for the surrogate cosine sums."""
    _, weight, lam = _state_tables(cfg)
    if joint:
        gaps = lam[2:, 2:] - lam[:-2, :-2]
        w = weight[:-2, :-2]
    else:
        gaps = lam[2:, :] - lam[:-2, :]
        w = weight[:-2, :]
    w = np.ascontiguousarray(w)
    gaps = np.ascontiguousarray(gaps)
    w.setflags(write=False)
    gaps.setflags(write=False)
    return w, gaps


def approx_mode1_squared(cfg: ModelConfig, T: float) -> float:
    """Surrogate for <a1^2(T)>: nbar1 times the weighted gap-cosine sum.

    Drops the square-root weight of the exact double sum (it tends to one
    over the Poisson peak), leaving the frequency comb that carries the
    revival structure.  Exact at T = 0.
    """
    if cfg.l1 != 1 or cfg.l2 != 1:
        raise ValueError("the surrogate sums are defined for coherent light (l = 1)")
    w, gaps = _surrogate_tables(cfg, joint=False)
    nbar1 = cfg.alpha1 * cfg.alpha1
    return nbar1 * float(np.sum(w * np.cos(T * gaps)))


def approx_pair_squared(cfg: ModelConfig, T: float) -> float:
    """Surrogate for <a1^2(T) a2^2(T)> with the joint two-photon shift."""
    if cfg.l1 != 1 or cfg.l2 != 1:
        raise ValueError("the surrogate sums are defined for coherent light (l = 1)")
    w, gaps = _surrogate_tables(cfg, joint=True)
    scale = (cfg.alpha1 * cfg.alpha2) ** 2
    return scale * float(np.sum(w * np.cos(T * gaps)))
