"""Scenario configuration, trajectory assembly, sweeps, and CSV output."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Iterable, Mapping

from .collisions import classify_case, detect_regime, from_params, iterate
from .correspondence import (
    DEFAULT_STATEVECTOR_CAP,
    AnalogyReport,
    amplitudes_to_velocities,
    velocities_to_amplitudes,
    verify_analogy,
)
from .params import RegimeWarning, SearchParams
from .twolevel import (
    THETA_APPROX,
    THETA_EXACT,
    optimal_iterations,
    step,
    success_probability,
    uniform_state,
)

TRAJECTORY_HEADER = "n,a_n,b_n,p_marked,u_n,v_n,energy_fraction_ball2,case_label,regime"
SWEEP_HEADER = "N,n0,p_at_n0,regime"

ENGINE_ANALYTIC = "analytic"
ENGINE_COLLISION = "collision"
ENGINE_BOTH = "both"

_THETA_ALIASES = {"exact": THETA_EXACT, "paper": THETA_APPROX, "paper-approx": THETA_APPROX}


class ConfigError(ValueError):
    """Invalid scenario configuration (sizing, values, or file syntax)."""


@dataclass
class ScenarioConfig:
    """One run's worth of knobs. Sizing comes either from (n1, n2) or from
    (log2_n, marked_count); if both are given they must agree."""

    n1: int | None = None
    n2: int | None = None
    log2_n: int | None = None
    marked_count: int | None = None
    v_init: float = 1.0
    iterations: int | str = "auto"
    theta_mode: str = THETA_EXACT
    seed: int = 0
    statevector_cap: int = DEFAULT_STATEVECTOR_CAP
    output: str | None = None
    format: str = "csv"

    def validate(self) -> None:
        if self.format != "csv":
            raise ConfigError(f"unsupported output format {self.format!r}")
        if self.theta_mode not in (THETA_EXACT, THETA_APPROX):
            raise ConfigError(f"theta_mode must be 'exact' or 'paper', got {self.theta_mode!r}")
        if not self.v_init > 0:
            raise ConfigError(f"v_init must be positive, got {self.v_init!r}")
        if self.statevector_cap < 2:
            raise ConfigError(f"statevector_cap must be >= 2, got {self.statevector_cap!r}")
        if isinstance(self.iterations, str):
            if self.iterations != "auto":
                raise ConfigError(f"iterations must be an integer or 'auto', got {self.iterations!r}")
        elif self.iterations < 0:
            raise ConfigError(f"iterations must be >= 0, got {self.iterations!r}")
        self.resolved_params()

    def resolved_params(self) -> SearchParams:
        have_counts = self.n1 is not None and self.n2 is not None
        have_log2 = self.log2_n is not None
        if not have_counts and not have_log2:
            if self.n1 is not None or self.n2 is not None:
                raise ConfigError("n1 and n2 must be given together")
            raise ConfigError("no sizing given: set n1/n2 or log2_n (with marked_count)")
        params: SearchParams | None = None
        if have_counts:
            try:
                params = SearchParams(self.n1, self.n2)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if have_log2:
            if self.log2_n < 1:
                raise ConfigError(f"log2_n must be >= 1, got {self.log2_n}")
            n_total = 2**self.log2_n
            n2 = 1 if self.marked_count is None else self.marked_count
            if not 1 <= n2 < n_total:
                raise ConfigError(f"marked_count must be in [1, {n_total - 1}], got {n2}")
            from_log2 = SearchParams(n_total - n2, n2)
            if params is not None and params != from_log2:
                raise ConfigError(
                    f"inconsistent sizing: n1/n2 give N={params.n_total}, n2={params.n2} "
                    f"but log2_n/marked_count give N={from_log2.n_total}, n2={from_log2.n2}"
                )
            params = from_log2
        elif self.marked_count is not None and params is not None and self.marked_count != params.n2:
            raise ConfigError(
                f"marked_count={self.marked_count} contradicts n2={params.n2}"
            )
        return params

    def resolved_iterations(self, params: SearchParams) -> int:
        if self.iterations == "auto":
            # The regime is reported in its own column; no need to warn here.
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RegimeWarning)
                return optimal_iterations(params, self.theta_mode)
        return int(self.iterations)


@dataclass(frozen=True)
class TrajectoryRow:
    """Joint per-iteration record across the engines."""

    n: int
    a_n: float
    b_n: float
    p_marked: float
    u_n: float
    v_n: float
    energy_fraction_ball2: float
    case_label: str
    regime: str


@dataclass(frozen=True)
class SweepRow:
    n_total: int
    n0: int
    p_at_n0: float
    regime: str


def run_search(config: ScenarioConfig, engine: str = ENGINE_BOTH) -> list[TrajectoryRow]:
    """Trajectory rows for n = 0..iterations.

    engine selects who produces the primary columns: ``analytic`` drives the
    two-amplitude recursion and maps velocities through the exact scaling,
    ``collision`` drives the velocity iteration and maps amplitudes back,
    ``both`` runs the two recursions independently side by side.
    """
    if engine not in (ENGINE_ANALYTIC, ENGINE_COLLISION, ENGINE_BOTH):
        raise ConfigError(f"unknown engine {engine!r}")
    config.validate()
    params = config.resolved_params()
    iterations = config.resolved_iterations(params)
    regime = detect_regime(params).value
    v_init = config.v_init

    two = uniform_state(params)
    system = from_params(params, v_init)
    total_energy = 0.5 * (system.ball1.mass + system.ball2.mass) * v_init * v_init

    rows: list[TrajectoryRow] = []
    for n in range(iterations + 1):
        if n > 0:
            if engine != ENGINE_COLLISION:
                two = step(two, params)
            if engine != ENGINE_ANALYTIC:
                system, _ = iterate(system)
        if engine == ENGINE_ANALYTIC:
            a, b = two.a, two.b
            u, v = amplitudes_to_velocities(two, params, v_init)
        elif engine == ENGINE_COLLISION:
            u, v = system.ball1.velocity, system.ball2.velocity
            mapped = velocities_to_amplitudes(u, v, params, v_init)
            a, b = mapped.a, mapped.b
        else:
            a, b = two.a, two.b
            u, v = system.ball1.velocity, system.ball2.velocity
        rows.append(
            TrajectoryRow(
                n=n,
                a_n=a,
                b_n=b,
                p_marked=params.n2 * b * b,
                u_n=u,
                v_n=v,
                energy_fraction_ball2=(0.5 * params.n2 * v * v) / total_energy,
                case_label=classify_case(u, v).value,
                regime=regime,
            )
        )
    return rows


def run_sweep(
    n_min_log2: int,
    n_max_log2: int,
    n2: int,
    config: ScenarioConfig | None = None,
) -> list[SweepRow]:
    """One row per N = 2**k, k in [n_min_log2, n_max_log2], sorted by N.

    Rows are independent of each other, so any execution order (or degree of
    parallelism) assembles to the same output.
    """
    if n_min_log2 > n_max_log2:
        raise ConfigError(f"log2 range is empty: [{n_min_log2}, {n_max_log2}]")
    if n_min_log2 < 1:
        raise ConfigError(f"n_min_log2 must be >= 1, got {n_min_log2}")
    if not 1 <= n2 < 2**n_min_log2:
        raise ConfigError(f"n2 must be in [1, {2**n_min_log2 - 1}], got {n2}")
    theta_mode = config.theta_mode if config is not None else THETA_EXACT

    rows = []
    for k in range(n_min_log2, n_max_log2 + 1):
        params = SearchParams(2**k - n2, n2)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeWarning)
            n0 = optimal_iterations(params, theta_mode)
        rows.append(
            SweepRow(
                n_total=params.n_total,
                n0=n0,
                p_at_n0=success_probability(params, n0, theta_mode),
                regime=detect_regime(params).value,
            )
        )
    rows.sort(key=lambda row: row.n_total)
    return rows


def _fmt(value) -> str:
    # Floats use the shortest representation that round-trips the exact
    # double (at most 17 significant digits), so emitted CSVs are lossless
    # and byte-stable.
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_trajectory_csv(rows: Iterable[TrajectoryRow]) -> str:
    lines = [TRAJECTORY_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    row.n,
                    row.a_n,
                    row.b_n,
                    row.p_marked,
                    row.u_n,
                    row.v_n,
                    row.energy_fraction_ball2,
                    row.case_label,
                    row.regime,
                )
            )
        )
    return "\n".join(lines) + "\n"


def format_sweep_csv(rows: Iterable[SweepRow]) -> str:
    lines = [SWEEP_HEADER]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in (row.n_total, row.n0, row.p_at_n0, row.regime)))
    return "\n".join(lines) + "\n"


def format_report_comments(report: AnalogyReport) -> str:
    lines = [
        f"# max_velocity_residual={_fmt(report.max_velocity_residual)}",
        f"# max_probability_energy_residual={_fmt(report.max_probability_energy_residual)}",
        f"# max_center_velocity_residual={_fmt(report.max_center_velocity_residual)}",
        f"# steps_checked={report.steps_checked}",
        f"# statevector_included={'true' if report.statevector_included else 'false'}",
    ]
    return "\n".join(lines) + "\n"


def emit_csv(rows: Iterable[TrajectoryRow], path) -> None:
    """Write trajectory rows as CSV (header always present, final newline)."""
    emit_text(format_trajectory_csv(rows), path)


def emit_text(text: str, path) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def run_compare(config: ScenarioConfig) -> tuple[list[TrajectoryRow], AnalogyReport]:
    """Rows from the independent engines plus the three-way residual report."""
    rows = run_search(config, engine=ENGINE_BOTH)
    params = config.resolved_params()
    steps = max(1, config.resolved_iterations(params))
    report = verify_analogy(
        params, config.v_init, steps, statevector_cap=config.statevector_cap
    )
    return rows, report


_INT_KEYS = frozenset({"n1", "n2", "log2_n", "marked_count", "seed", "statevector_cap"})
_FLOAT_KEYS = frozenset({"v_init"})
_CONFIG_KEYS = frozenset(f.name for f in fields(ScenarioConfig))


def load_scenario(path) -> dict[str, object]:
    """Parse a flat key=value scenario file (# comments, blank lines ok).

    Keys mirror the CLI flags with underscores; values are coerced to the
    config field types.
    """
    values: dict[str, object] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return coerce_config_values(values, source=str(path))


def coerce_config_values(values: Mapping[str, object], source: str = "config") -> dict[str, object]:
    out: dict[str, object] = {}
    for raw_key, value in values.items():
        key = str(raw_key).replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{source}: unknown key {raw_key!r}")
        try:
            if key in _INT_KEYS:
                out[key] = int(value)
            elif key in _FLOAT_KEYS:
                out[key] = float(value)
            elif key == "iterations":
                out[key] = value if value == "auto" else int(value)
            elif key == "theta_mode":
                mode = str(value)
                if mode not in _THETA_ALIASES:
                    raise ValueError(f"bad theta_mode {value!r}")
                out[key] = _THETA_ALIASES[mode]
            else:
                out[key] = str(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{source}: bad value for {raw_key!r}: {exc}") from None
    return out


def build_config(
    file_values: Mapping[str, object] | None = None,
    overrides: Mapping[str, object] | None = None,
) -> ScenarioConfig:
    """Merge scenario-file values with CLI overrides (overrides win per key)."""
    config = ScenarioConfig()
    for layer in (file_values, overrides):
        if layer:
            config = replace(config, **dict(layer))
    config.validate()
    return config
