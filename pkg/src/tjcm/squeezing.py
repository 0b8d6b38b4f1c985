"""Quadrature-squeezing factors: single-mode, two-mode, sum and difference.

Each family reports an X-quadrature factor (S) and a Y-quadrature factor
(Q); a negative value signals squeezing below the coherent-state floor.
The report also exposes the mean of the commutator operator of the family
(a constant for the single- and two-mode quadratures, photon-number
dependent for sum and difference) purely for diagnostics: the printed
factor expressions are the definitional quantities here.

For initial states whose occupied photon numbers are spaced by three or
more, all first- and second-order amplitude moments vanish identically and
every factor collapses to a mean-photon-number readout of the atomic
inversion (the "natural" regime, see ``natural_conditions_hold``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ModelConfig
from .dynamics import (AMP_MODE1, AMP_MODE2, CROSS_DOWN, CROSS_UP, DIFF_SQ,
                       JointAmplitudes, MEAN_MODE1, MEAN_MODE2, PAIR_NUM,
                       PAIR_SQ, SQ_MODE1, SQ_MODE2, evolve, moment_generic)
from .errors import ConfigError

FAMILIES = ("single_1", "single_2", "two_mode", "sum", "difference")

# Amplitude moments below this magnitude count as identically zero when
# testing the natural-regime conditions; they are exact zeros analytically
# for l >= 3, so the tolerance only absorbs floating-point noise.
ZERO_TOL = 1e-10


@dataclass(frozen=True)
class QuadratureReport:
    """S (X-quadrature) and Q (Y-quadrature) factors of one family at one T."""

    family: str
    T: float
    s_factor: float
    q_factor: float
    commutator_mean: float

    def factor(self, quadrature: str) -> float:
        if quadrature == "X":
            return self.s_factor
        if quadrature == "Y":
            return self.q_factor
        raise ValueError(f"quadrature must be 'X' or 'Y', got {quadrature!r}")


def single_mode_report(amps: JointAmplitudes, mode: int) -> QuadratureReport:
    """Single-mode factors S_j, Q_j from the moments of one mode."""
    if mode not in (1, 2):
        raise ValueError(f"mode must be 1 or 2, got {mode}")
    mean_ord, amp_ord, sq_ord = ((MEAN_MODE1, AMP_MODE1, SQ_MODE1) if mode == 1
                                 else (MEAN_MODE2, AMP_MODE2, SQ_MODE2))
    nbar = moment_generic(amps, mean_ord).real
    a = moment_generic(amps, amp_ord)
    a2 = moment_generic(amps, sq_ord)
    s = nbar + a2.real - 2.0 * a.real ** 2
    q = nbar - a2.real - 2.0 * a.imag ** 2
    return QuadratureReport(family=f"single_{mode}", T=amps.T,
                            s_factor=s, q_factor=q, commutator_mean=1.0)


def single_mode_squeezing(cfg: ModelConfig, T: float, mode: int) -> QuadratureReport:
    return single_mode_report(evolve(cfg, T), mode)


def two_mode_report(amps: JointAmplitudes) -> QuadratureReport:
    """Two-mode factors S_2, Q_2: per-mode terms plus the intermode cross terms."""
    a1 = moment_generic(amps, AMP_MODE1)
    a2 = moment_generic(amps, AMP_MODE2)
    cross_up = moment_generic(amps, CROSS_UP)       # <a2+ a1>
    cross_down = moment_generic(amps, CROSS_DOWN)   # <a1 a2>
    s = (cross_up + cross_down).real - 2.0 * a1.real * a2.real
    q = (cross_up - cross_down).real - 2.0 * a1.imag * a2.imag
    for mode in (1, 2):
        r = single_mode_report(amps, mode)
        s += r.s_factor
        q += r.q_factor
    return QuadratureReport(family="two_mode", T=amps.T,
                            s_factor=s, q_factor=q, commutator_mean=2.0)


def two_mode_squeezing(cfg: ModelConfig, T: float) -> QuadratureReport:
    return two_mode_report(evolve(cfg, T))


def sum_report(amps: JointAmplitudes) -> QuadratureReport:
    """Sum-squeezing factors S_3, Q_3 built on the a1 a2 quadratures."""
    pair_sq = moment_generic(amps, PAIR_SQ)      # <a1^2 a2^2>
    pair_num = moment_generic(amps, PAIR_NUM).real   # <n1 n2>
    pair_amp = moment_generic(amps, CROSS_DOWN)  # <a1 a2>
    s = pair_sq.real + pair_num - 2.0 * pair_amp.real ** 2
    q = pair_num - pair_sq.real - 2.0 * pair_amp.imag ** 2
    n1 = moment_generic(amps, MEAN_MODE1).real
    n2 = moment_generic(amps, MEAN_MODE2).real
    return QuadratureReport(family="sum", T=amps.T, s_factor=s, q_factor=q,
                            commutator_mean=n1 + n2 + 1.0)


def sum_squeezing(cfg: ModelConfig, T: float) -> QuadratureReport:
    return sum_report(evolve(cfg, T))


def require_difference_symmetry(cfg: ModelConfig) -> None:
    """Difference squeezing needs equal initial photon statistics."""
    if cfg.alpha1 != cfg.alpha2 or cfg.l1 != cfg.l2:
        raise ConfigError(
            "difference squeezing requires alpha1 == alpha2 and l1 == l2 "
            f"(same initial photon-number distribution); got alphas "
            f"({cfg.alpha1}, {cfg.alpha2}) and l ({cfg.l1}, {cfg.l2})")


def difference_report(amps: JointAmplitudes) -> QuadratureReport:
    """Difference-squeezing factors S_4, Q_4 built on the a1 a2+ quadratures.

    Valid under the symmetry precondition (both modes initially share one
    photon-number distribution), which kills the mean of the commutator
    operator n2 - n1 at T = 0.
    """
    require_difference_symmetry(amps.cfg)
    diff_sq = moment_generic(amps, DIFF_SQ)      # <a1+^2 a2^2>
    pair_num = moment_generic(amps, PAIR_NUM).real
    n1 = moment_generic(amps, MEAN_MODE1).real
    n2 = moment_generic(amps, MEAN_MODE2).real
    cross = moment_generic(amps, CROSS_UP)       # <a1 a2+>
    s = diff_sq.real + pair_num + n1 - 2.0 * cross.real ** 2
    q = pair_num + n1 - diff_sq.real - 2.0 * cross.imag ** 2
    return QuadratureReport(family="difference", T=amps.T, s_factor=s,
                            q_factor=q, commutator_mean=n2 - n1)


def difference_squeezing(cfg: ModelConfig, T: float) -> QuadratureReport:
    return difference_report(evolve(cfg, T))


REPORTS = {
    "single_1": lambda amps: single_mode_report(amps, 1),
    "single_2": lambda amps: single_mode_report(amps, 2),
    "two_mode": two_mode_report,
    "sum": sum_report,
    "difference": difference_report,
}


def natural_conditions_hold(cfg: ModelConfig, t_sample) -> tuple[bool, bool]:
    """Whether <a_j> and <a_j^2> stay below ZERO_TOL across a time sample.

    Returns one flag per mode.  True for l_j >= 3 (the one- and two-photon
    shifts connect no occupied Fock pairs), false for a coherent mode with
    nonzero amplitude.
    """
    orders = {1: (AMP_MODE1, SQ_MODE1), 2: (AMP_MODE2, SQ_MODE2)}
    ok = {1: True, 2: True}
    for t in np.asarray(t_sample, dtype=float):
        amps = evolve(cfg, float(t))
        for mode in (1, 2):
            if not ok[mode]:
                continue
            for order in orders[mode]:
                if abs(moment_generic(amps, order)) > ZERO_TOL:
                    ok[mode] = False
                    break
        if not (ok[1] or ok[2]):
            break
    return ok[1], ok[2]


def pair_conditions_hold(cfg: ModelConfig, t_sample) -> bool:
    """Natural conditions for the sum/difference families.

    Requires <a1 a2>, <a1 a2+> and the fourth-order amplitude moments to
    vanish across the sample; one mode prepared with spacing >= 3 suffices.
    """
    for t in np.asarray(t_sample, dtype=float):
        amps = evolve(cfg, float(t))
        for order in (CROSS_DOWN, CROSS_UP, PAIR_SQ, DIFF_SQ):
            if abs(moment_generic(amps, order)) > ZERO_TOL:
                return False
    return True
