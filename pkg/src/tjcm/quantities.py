"""Quantity selectors: the string grammar the manifest and CLI speak.

A selector names one scalar observable to map over a time grid:

    inversion                      atomic inversion <sigma_z(T)>
    mean_photon:1  mean_photon:2   mode mean photon number
    moment:s1,s2,s3,s4             normal-ordered moment (real part)
    squeezing:FAMILY:X|Y           squeezing factor; FAMILY one of
                                   single_1 single_2 two_mode sum difference
    rescaled:KIND                  inversion readout; KIND one of
                                   single_mode_k31 single_mode_k22
                                   two_mode_k22 sum_coherent difference_k31
                                   sum_natural difference_natural
    harmonic:mode1_sq              surrogate for <a1^2(T)>
    harmonic:pair_sq               surrogate for <a1^2(T) a2^2(T)>

``resolve`` turns a selector into a vectorised evaluator; unknown selectors
raise ConfigError with the offending text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import asymptotics, rescaled
from .core import ModelConfig
from .dynamics import MomentOrder, atomic_inversion, evolve, mean_photon, moment
from .errors import ConfigError
from .squeezing import FAMILIES, REPORTS

IMAG_TOL = 1e-9


@dataclass(frozen=True)
class QuantitySpec:
    selector: str
    label: str
    evaluate: Callable[[ModelConfig, np.ndarray], np.ndarray]


def _label(selector: str) -> str:
    return selector.replace(":", "_").replace(",", "_")


def _pointwise(fn):
    def evaluate(cfg: ModelConfig, grid: np.ndarray) -> np.ndarray:
        return np.array([fn(cfg, float(t)) for t in grid], dtype=float)
    return evaluate


def _moment_evaluator(order: MomentOrder):
    def evaluate(cfg: ModelConfig, grid: np.ndarray) -> np.ndarray:
        out = np.empty(len(grid))
        for i, t in enumerate(grid):
            z = moment(cfg, float(t), order)
            if abs(z.imag) > IMAG_TOL * max(1.0, abs(z.real)):
                raise ValueError(f"moment {order} is not real at T={t}: {z!r}")
            out[i] = z.real
        return out
    return evaluate


def _squeezing_evaluator(family: str, quadrature: str):
    build = REPORTS[family]

    def evaluate(cfg: ModelConfig, grid: np.ndarray) -> np.ndarray:
        out = np.empty(len(grid))
        for i, t in enumerate(grid):
            out[i] = build(evolve(cfg, float(t))).factor(quadrature)
        return out
    return evaluate


def resolve(selector: str) -> QuantitySpec:
    """Map a selector string to its labelled evaluator."""
    parts = selector.split(":")
    head = parts[0]

    if head == "inversion" and len(parts) == 1:
        return QuantitySpec(selector, "inversion", _pointwise(atomic_inversion))

    if head == "mean_photon" and len(parts) == 2 and parts[1] in ("1", "2"):
        mode = int(parts[1])
        return QuantitySpec(selector, _label(selector),
                            _pointwise(lambda cfg, t: mean_photon(cfg, t, mode)))

    if head == "moment" and len(parts) == 2:
        try:
            powers = tuple(int(x) for x in parts[1].split(","))
            order = MomentOrder(*powers)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"bad moment selector {selector!r}: {exc}") from None
        return QuantitySpec(selector, _label(selector), _moment_evaluator(order))

    if head == "squeezing" and len(parts) == 3:
        family, quadrature = parts[1], parts[2]
        if family not in FAMILIES:
            raise ConfigError(
                f"unknown squeezing family {family!r}; expected one of {FAMILIES}")
        if quadrature not in ("X", "Y"):
            raise ConfigError(f"quadrature must be X or Y, got {quadrature!r}")
        return QuantitySpec(selector, _label(selector),
                            _squeezing_evaluator(family, quadrature))

    if head == "rescaled" and len(parts) == 2:
        kind = parts[1]
        fn = rescaled.READOUTS.get(kind)
        if fn is None:
            raise ConfigError(f"unknown rescaled kind {kind!r}; expected one of "
                              f"{sorted(rescaled.READOUTS)}")
        return QuantitySpec(selector, _label(selector), _pointwise(fn))

    if head == "harmonic" and len(parts) == 2:
        fn = {"mode1_sq": asymptotics.approx_mode1_squared,
              "pair_sq": asymptotics.approx_pair_squared}.get(parts[1])
        if fn is None:
            raise ConfigError(f"unknown harmonic surrogate {parts[1]!r}; "
                              "expected mode1_sq or pair_sq")
        return QuantitySpec(selector, _label(selector), _pointwise(fn))

    raise ConfigError(f"unknown quantity selector {selector!r}")
