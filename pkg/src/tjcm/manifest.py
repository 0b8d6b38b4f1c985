"""Run manifests: parse, validate, render, execute, plus built-in presets.

A manifest is a flat ``key = value`` text document (``#`` starts a comment):

    k1 = 1
    k2 = 1
    l1 = 1
    l2 = 1
    alpha1 = 5.0
    alpha2 = 5.0
    epsilon = 1e-12
    t_min = 0.0
    t_max = 25.0
    points = 2000
    quantity = inversion
    csv = out

``quantity`` repeats, one line per quantity; every other key appears at
most once.  ``l1``/``l2`` default to 1, ``epsilon`` to the TJCM_EPSILON
environment variable or 1e-12.  ``csv``, ``plot`` and ``report`` name
output directories; at least one quantity and one sink are required.
Files inside a sink are named ``<name>_<label>.<ext>`` (the ``name`` key
is optional and defaults to empty).

Execution is seedless and deterministic: the same manifest on the same
build produces byte-identical CSV files.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .analysis import detect_revivals, render_report
from .core import DEFAULT_EPSILON, ModelConfig, TruncationSpec
from .dynamics import TimeSeries, series
from .errors import ConfigError, ManifestError
from .quantities import resolve

EPSILON_ENV_VAR = "TJCM_EPSILON"

_INT_KEYS = ("k1", "k2", "l1", "l2", "points")
_FLOAT_KEYS = ("alpha1", "alpha2", "epsilon", "t_min", "t_max")
_PATH_KEYS = ("csv", "plot", "report")
_KNOWN_KEYS = set(_INT_KEYS) | set(_FLOAT_KEYS) | set(_PATH_KEYS) | {
    "quantity", "name"}
_REQUIRED_KEYS = ("k1", "k2", "alpha1", "alpha2", "t_min", "t_max", "points")


@dataclass(frozen=True)
class RunManifest:
    """Validated description of one simulation run."""

    cfg: ModelConfig
    t_min: float
    t_max: float
    points: int
    quantities: tuple
    csv: str | None = None
    plot: str | None = None
    report: str | None = None
    name: str = ""

    def grid(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.points)

    def sinks(self) -> dict:
        return {k: v for k, v in
                (("csv", self.csv), ("plot", self.plot), ("report", self.report))
                if v is not None}


def default_epsilon() -> float:
    """Truncation tolerance: TJCM_EPSILON from the environment, else 1e-12."""
    raw = os.environ.get(EPSILON_ENV_VAR)
    if raw is None:
        return DEFAULT_EPSILON
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{EPSILON_ENV_VAR}={raw!r} is not a number") from None
    if not (0.0 < value < 1.0):
        raise ConfigError(f"{EPSILON_ENV_VAR}={raw!r} must lie in (0, 1)")
    return value


def parse_manifest(text: str) -> RunManifest:
    """Parse and validate manifest text; collects every field error."""
    problems: list[tuple[str, str]] = []
    raw: dict[str, str] = {}
    quantities: list[str] = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            problems.append((f"line {lineno}", f"expected 'key = value', got {stripped!r}"))
            continue
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key == "quantity":
            quantities.append(value)
            continue
        if key not in _KNOWN_KEYS:
            problems.append((key, "unknown key"))
            continue
        if key in raw:
            problems.append((key, "duplicate key"))
            continue
        raw[key] = value

    values: dict = {"l1": 1, "l2": 1, "name": ""}
    for key in _INT_KEYS:
        if key in raw:
            try:
                values[key] = int(raw[key])
            except ValueError:
                problems.append((key, f"expected an integer, got {raw[key]!r}"))
    for key in _FLOAT_KEYS:
        if key in raw:
            try:
                values[key] = float(raw[key])
            except ValueError:
                problems.append((key, f"expected a number, got {raw[key]!r}"))
    for key in _PATH_KEYS + ("name",):
        if key in raw:
            values[key] = raw[key]

    for key in _REQUIRED_KEYS:
        if key not in raw:
            problems.append((key, "missing required key"))

    for key in ("k1", "k2", "l1", "l2"):
        if key in values and values[key] < 1:
            problems.append((key, f"must be a positive integer, got {values[key]}"))
    for key in ("alpha1", "alpha2"):
        if key in values and values[key] < 0:
            problems.append((key, f"must be >= 0, got {values[key]}"))
    if "epsilon" in values and not (0.0 < values["epsilon"] < 1.0):
        problems.append(("epsilon", f"must lie in (0, 1), got {values['epsilon']}"))
    if ("t_min" in values and "t_max" in values
            and values["t_min"] >= values["t_max"]):
        problems.append(("t_min", f"t_min {values['t_min']} must be below "
                                  f"t_max {values['t_max']}"))
    if "points" in values and values["points"] < 2:
        problems.append(("points", f"need at least 2 grid points, got {values['points']}"))
    if not quantities:
        problems.append(("quantity", "at least one quantity is required"))
    for q in quantities:
        try:
            resolve(q)
        except ConfigError as exc:
            problems.append(("quantity", str(exc)))
    if not any(k in values for k in _PATH_KEYS):
        problems.append(("csv", "at least one output sink (csv, plot or report) "
                                "is required"))
    if problems:
        raise ManifestError(problems)

    try:
        epsilon = values.get("epsilon", default_epsilon())
        trunc = TruncationSpec.for_amplitudes(values["alpha1"], values["alpha2"],
                                              epsilon)
        cfg = ModelConfig(k1=values["k1"], k2=values["k2"],
                          l1=values["l1"], l2=values["l2"],
                          alpha1=values["alpha1"], alpha2=values["alpha2"],
                          trunc=trunc)
    except (ConfigError, ValueError) as exc:
        raise ManifestError([("cfg", str(exc))]) from None

    return RunManifest(cfg=cfg, t_min=values["t_min"], t_max=values["t_max"],
                       points=values["points"], quantities=tuple(quantities),
                       csv=values.get("csv"), plot=values.get("plot"),
                       report=values.get("report"), name=values["name"])


def render_manifest(manifest: RunManifest) -> str:
    """Serialise a manifest so that parse(render(m)) == m."""
    cfg = manifest.cfg
    lines = []
    if manifest.name:
        lines.append(f"name = {manifest.name}")
    lines += [f"k1 = {cfg.k1}", f"k2 = {cfg.k2}",
              f"l1 = {cfg.l1}", f"l2 = {cfg.l2}",
              f"alpha1 = {cfg.alpha1!r}", f"alpha2 = {cfg.alpha2!r}",
              f"epsilon = {cfg.trunc.epsilon!r}",
              f"t_min = {manifest.t_min!r}", f"t_max = {manifest.t_max!r}",
              f"points = {manifest.points}"]
    lines += [f"quantity = {q}" for q in manifest.quantities]
    for key, value in manifest.sinks().items():
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def format_csv(ts: TimeSeries) -> str:
    """CSV text for one series: header T,<label>, full double precision."""
    lines = [f"T,{ts.label}"]
    lines += [f"{float(t)!r},{float(v)!r}" for t, v in zip(ts.grid, ts.values)]
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> TimeSeries:
    """Read back a CSV produced by ``format_csv``."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("T,"):
        raise ValueError("not a simulator CSV: missing 'T,<label>' header")
    label = lines[0][2:]
    grid, values = [], []
    for ln in lines[1:]:
        t, v = ln.split(",", 1)
        grid.append(float(t))
        values.append(float(v))
    return TimeSeries(grid=np.array(grid), values=np.array(values), label=label)


def _write_plot(path: Path, ts: TimeSeries) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots(figsize=(8, 3))
    ax.plot(ts.grid, ts.values, lw=0.6)
    ax.set_xlabel("scaled time T")
    ax.set_ylabel(ts.label)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def run(manifest: RunManifest) -> list[Path]:
    """Execute a manifest; returns the artifact paths written."""
    grid = manifest.grid()
    prefix = f"{manifest.name}_" if manifest.name else ""
    written: list[Path] = []
    for selector in manifest.quantities:
        spec = resolve(selector)
        ts = series(manifest.cfg, grid, selector)
        if manifest.csv is not None:
            out = Path(manifest.csv)
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"{prefix}{spec.label}.csv"
            path.write_bytes(format_csv(ts).encode("ascii"))
            written.append(path)
        if manifest.plot is not None:
            out = Path(manifest.plot)
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"{prefix}{spec.label}.svg"
            _write_plot(path, ts)
            written.append(path)
        if manifest.report is not None:
            out = Path(manifest.report)
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"{prefix}{spec.label}_report.txt"
            report = detect_revivals(ts)
            path.write_text(render_report(report, extra={
                "quantity": selector, "cfg_hash": ts.cfg_hash}), encoding="ascii")
            written.append(path)
    return written


def _preset(name, k1, k2, alpha1, alpha2, quantity, l1=1, l2=1,
            t_max=25.0, points=2000) -> RunManifest:
    cfg = ModelConfig(k1=k1, k2=k2, l1=l1, l2=l2, alpha1=alpha1, alpha2=alpha2)
    return RunManifest(cfg=cfg, t_min=0.0, t_max=t_max, points=points,
                       quantities=(quantity,), csv=".", name=name)


def presets() -> dict[str, RunManifest]:
    """Built-in manifests reproducing the reference figures.

    fig4 uses a shorter window: with three-photon states the revival
    period drops threefold, so [0, 10] holds the same number of revivals
    as [0, 25] does for the coherent runs.
    """
    entries = [
        _preset("fig1", 1, 1, 5.0, 5.0, "inversion"),
        _preset("fig2a", 3, 1, 5.0, 5.0, "squeezing:single_1:Y"),
        _preset("fig2b", 1, 3, 5.0, 5.0, "squeezing:single_1:Y"),
        _preset("fig2c", 2, 2, 5.0, 5.0, "squeezing:single_1:Y"),
        _preset("fig3a", 3, 1, 5.0, 5.0, "rescaled:single_mode_k31"),
        _preset("fig3b", 2, 2, 5.0, 5.0, "rescaled:single_mode_k22"),
        _preset("fig4", 1, 1, 5.0, 5.0, "rescaled:sum_natural",
                l1=3, l2=3, t_max=10.0),
        _preset("fig5a", 3, 1, 5.0, 5.0, "squeezing:sum:Y"),
        _preset("fig5b", 2, 2, 5.0, 5.0, "squeezing:sum:Y"),
        _preset("fig6a", 3, 1, 5.0, 5.0, "squeezing:difference:Y"),
        _preset("fig6b", 2, 2, 5.0, 5.0, "squeezing:difference:Y"),
    ]
    return {m.name: m for m in entries}


def get_preset(name: str, out_dir: str | None = None) -> RunManifest:
    table = presets()
    if name not in table:
        raise ConfigError(f"unknown preset {name!r}; available: "
                          f"{', '.join(sorted(table))}")
    manifest = table[name]
    if out_dir is not None:
        manifest = replace(manifest, csv=out_dir)
    return manifest
