"""Two-mode multiphoton Jaynes-Cummings simulator.

Atomic inversion, normal-ordered field moments, four families of
quadrature squeezing, rescaled inversion readouts, strong-field
asymptotics and revival-collapse signal analysis, plus a manifest-driven
CLI with figure presets.
"""

from .analysis import RcpReport, align_revivals, detect_revivals, envelope
from .core import ModelConfig, TruncationSpec, coherent_coefficient, \
    photon_distribution, rabi_frequency, select_truncation
from .dynamics import JointAmplitudes, MomentOrder, TimeSeries, \
    atomic_inversion, evolve, mean_photon, moment, moment_closed_form, \
    moment_generic, series
from .errors import ConfigError, ManifestError, TruncationOverflowError
from .manifest import RunManifest, parse_manifest, presets, render_manifest, run
from .squeezing import QuadratureReport, difference_squeezing, \
    natural_conditions_hold, single_mode_squeezing, sum_squeezing, \
    two_mode_squeezing

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "JointAmplitudes", "ManifestError", "ModelConfig",
    "MomentOrder", "QuadratureReport", "RcpReport", "RunManifest",
    "TimeSeries", "TruncationOverflowError", "TruncationSpec",
    "align_revivals", "atomic_inversion", "coherent_coefficient",
    "detect_revivals", "difference_squeezing", "envelope", "evolve",
    "mean_photon", "moment", "moment_closed_form", "moment_generic",
    "natural_conditions_hold", "parse_manifest", "photon_distribution",
    "presets", "rabi_frequency", "render_manifest", "run",
    "select_truncation", "series", "single_mode_squeezing", "sum_squeezing",
    "two_mode_squeezing",
]
