"""Rescaled squeezing factors: atomic-inversion readouts from squeezing traces.

Each function rescales (and where needed time-rescales) one squeezing
factor so that its trace reproduces an atomic-inversion trace:

* ``single_mode_k31`` -- mode-1 Y-factor for (k1, k2) = (3, 1) at 2T/3,
  mimicking the standard (1, 1) inversion;
* ``single_mode_k22`` / ``two_mode_k22`` -- Y-factors for (2, 2),
  mimicking the single-mode two-photon inversion (period-pi revivals);
* ``sum_coherent``  -- sum Y-factor for (3, 1) or (2, 2) coherent light;
* ``difference_k31`` -- difference Y-factor for (3, 1) at T/2;
* ``sum_natural`` / ``difference_natural`` -- exact-regime readouts for
  modes prepared with photon-number spacing >= 3 and k1 = k2 = 1.

All normalisations use the engine's own initial mean photon numbers, so
the T = 0 values are exact (1 for every factor here).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import ModelConfig
from .dynamics import mean_photon
from .errors import ConfigError
from .squeezing import (difference_squeezing, pair_conditions_hold,
                        require_difference_symmetry, single_mode_squeezing,
                        sum_squeezing, two_mode_squeezing)

# Sample times for the cached natural-conditions gate; the moments it
# checks are structural zeros when the gate passes, so any spread works.
_GATE_SAMPLE = np.linspace(0.0, 6.0, 7)


@lru_cache(maxsize=64)
def _initial_mean(cfg: ModelConfig, mode: int) -> float:
    return mean_photon(cfg, 0.0, mode)


@lru_cache(maxsize=64)
def _pair_natural_ok(cfg: ModelConfig) -> bool:
    return pair_conditions_hold(cfg, _GATE_SAMPLE)


def _require(cfg: ModelConfig, condition: bool, what: str) -> None:
    if not condition:
        raise ConfigError(
            f"{what}; got (k1, k2) = ({cfg.k1}, {cfg.k2}), "
            f"(l1, l2) = ({cfg.l1}, {cfg.l2})")


def single_mode_k31(cfg: ModelConfig, T: float) -> float:
    """(n1(0) - Q_1(2T/3)) / n1(0) for coherent light at (k1, k2) = (3, 1)."""
    _require(cfg, (cfg.k1, cfg.k2) == (3, 1) and cfg.l1 == cfg.l2 == 1,
             "this readout requires coherent light with (k1, k2) = (3, 1)")
    nbar = _initial_mean(cfg, 1)
    q = single_mode_squeezing(cfg, 2.0 * T / 3.0, mode=1).q_factor
    return (nbar - q) / nbar


def single_mode_k22(cfg: ModelConfig, T: float) -> float:
    """(n1(0) - Q_1(T)) / n1(0) for coherent light at (k1, k2) = (2, 2)."""
    _require(cfg, (cfg.k1, cfg.k2) == (2, 2) and cfg.l1 == cfg.l2 == 1,
             "this readout requires coherent light with (k1, k2) = (2, 2)")
    nbar = _initial_mean(cfg, 1)
    q = single_mode_squeezing(cfg, T, mode=1).q_factor
    return (nbar - q) / nbar


def two_mode_k22(cfg: ModelConfig, T: float) -> float:
    """(n1(0) + n2(0) - Q_2(T)) / (n1(0) + n2(0)) for (k1, k2) = (2, 2)."""
    _require(cfg, (cfg.k1, cfg.k2) == (2, 2) and cfg.l1 == cfg.l2 == 1,
             "this readout requires coherent light with (k1, k2) = (2, 2)")
    total = _initial_mean(cfg, 1) + _initial_mean(cfg, 2)
    q = two_mode_squeezing(cfg, T).q_factor
    return (total - q) / total


def sum_coherent(cfg: ModelConfig, T: float) -> float:
    """(n1(0) n2(0) - Q_3(T)) / (n1(0) n2(0)) for (3, 1) or (2, 2) coherent light."""
    _require(cfg, (cfg.k1, cfg.k2) in ((3, 1), (2, 2)) and cfg.l1 == cfg.l2 == 1,
             "this readout requires coherent light with (k1, k2) = (3, 1) or (2, 2)")
    prod = _initial_mean(cfg, 1) * _initial_mean(cfg, 2)
    q = sum_squeezing(cfg, T).q_factor
    return (prod - q) / prod


def difference_k31(cfg: ModelConfig, T: float) -> float:
    """(n1(0)(n1(0) + 1) - Q_4(T/2)) / n1(0)^2 for (3, 1) coherent light."""
    _require(cfg, (cfg.k1, cfg.k2) == (3, 1) and cfg.l1 == cfg.l2 == 1,
             "this readout requires coherent light with (k1, k2) = (3, 1)")
    require_difference_symmetry(cfg)
    nbar = _initial_mean(cfg, 1)
    q = difference_squeezing(cfg, T / 2.0).q_factor
    return (nbar * (nbar + 1.0) - q) / (nbar * nbar)


def sum_natural(cfg: ModelConfig, T: float, *, printed_denominator: bool = False) -> float:
    """Inversion readout from the sum factor in the natural regime.

    (2 n1 n2 + n1 + n2 + 1 - 2 S_3(T)) / (n1 + n2 + 1) with all means taken
    at T = 0.  The denominator mixes both modes; ``printed_denominator``
    switches to the variant that repeats mode 1 (2 n1 + 1), kept only so
    the two normalisations can be compared -- it neither equals 1 at T = 0
    for asymmetric modes nor tracks the inversion.
    """
    _require(cfg, cfg.k1 == cfg.k2 == 1,
             "the natural-regime sum readout is defined for k1 = k2 = 1")
    if not _pair_natural_ok(cfg):
        raise ConfigError(
            "natural conditions fail: pair amplitude moments do not vanish "
            f"for (l1, l2) = ({cfg.l1}, {cfg.l2}); prepare at least one mode "
            "with photon-number spacing >= 3")
    n1 = _initial_mean(cfg, 1)
    n2 = _initial_mean(cfg, 2)
    s3 = sum_squeezing(cfg, T).s_factor
    num = 2.0 * n1 * n2 + n1 + n2 + 1.0 - 2.0 * s3
    den = (2.0 * n1 + 1.0) if printed_denominator else (n1 + n2 + 1.0)
    return num / den


def difference_natural(cfg: ModelConfig, T: float) -> float:
    """Inversion readout from the difference factor in the natural regime.

    ((n1(0) + 1)^2 - Q_4(T)) / (n1(0) + 1); requires the symmetric initial
    preparation of difference squeezing plus the natural conditions.
    """
    _require(cfg, cfg.k1 == cfg.k2 == 1,
             "the natural-regime difference readout is defined for k1 = k2 = 1")
    require_difference_symmetry(cfg)
    if not _pair_natural_ok(cfg):
        raise ConfigError(
            "natural conditions fail: pair amplitude moments do not vanish "
            f"for (l1, l2) = ({cfg.l1}, {cfg.l2}); prepare the modes with "
            "photon-number spacing >= 3")
    n1 = _initial_mean(cfg, 1)
    q4 = difference_squeezing(cfg, T).q_factor
    return ((n1 + 1.0) ** 2 - q4) / (n1 + 1.0)


READOUTS = {
    "single_mode_k31": single_mode_k31,
    "single_mode_k22": single_mode_k22,
    "two_mode_k22": two_mode_k22,
    "sum_coherent": sum_coherent,
    "difference_k31": difference_k31,
    "sum_natural": sum_natural,
    "difference_natural": difference_natural,
}
