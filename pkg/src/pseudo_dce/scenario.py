"""Scenario configuration, presets, runs, and parameter sweeps.

A scenario is a flat key = value configuration (parsed leniently: blank
lines, # comments, and [section] headers are tolerated) that fully
determines a run.  Runs are deterministic: the same configuration yields
byte-identical CSV output.
"""

from __future__ import annotations

import concurrent.futures
import math
import time
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .drive import DriveParams, ZetaMode, alpha_beta, omega as drive_omega
from .dynamics import (
    InitialMoments,
    analytic_squeeze,
    amplification_factor,
    bogoliubov_ode_oracle,
    bogoliubov_uvw,
    evolve,
    mean_photon_general,
)
from .errors import (NotOnResonance, ParseError, PseudoDceError,
                     ValidationError)
from .hermitize import (
    ConstraintState,
    coefficients_general,
    constraint_rhs_polar,
)

CANONICAL_COLUMNS = (
    "tau",
    "r_numeric",
    "r_analytic",
    "phi_numeric_raw",
    "phi_analytic_raw",
    "N_numeric",
    "N_analytic",
    "N_oracle",
    "W",
    "T_abs",
    "phi_T",
    "Phi",
    "chi",
    "varphi",
    "residual_hermiticity",
)


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything a run needs.  Defaults reproduce the weak-drive baseline."""

    omega0: float = 1.0
    eps_mod: float = 0.01
    kappa: float = 2.0
    alpha0_tilde: float = 0.01
    beta0_tilde: float = 0.001
    zeta_mode: str = "exact"
    chi: float = 1.0002
    z_abs: float = 1.0 - 1e-6
    varphi0: float = 0.5 * math.pi
    r0: float = 0.0
    phi0_prime: float = 0.0
    tau_max: float = 50.0
    grid_per_period: int = 200
    dyson_source: str = "approximate"
    seed_r_eps: float = 1e-8
    oracle: bool = True
    rtol: float = 1e-9
    atol: float = 1e-12
    outputs: tuple[str, ...] = CANONICAL_COLUMNS

    def validate(self):
        if self.zeta_mode not in ("exact", "approximate"):
            raise ValidationError(
                f"zeta_mode must be 'exact' or 'approximate', got {self.zeta_mode!r}"
            )
        if self.dyson_source not in ("approximate", "integrated"):
            raise ValidationError(
                f"dyson_source must be 'approximate' or 'integrated', "
                f"got {self.dyson_source!r}"
            )
        if not (self.tau_max > 0.0):
            raise ValidationError(f"tau_max must be > 0, got {self.tau_max}")
        if self.grid_per_period < 200:
            raise ValidationError(
                f"grid_per_period must be at least 200, got {self.grid_per_period}"
            )
        if not (0.0 < self.z_abs <= 1.0):
            raise ValidationError(f"z_abs must lie in (0, 1], got {self.z_abs}")
        if not (self.seed_r_eps > 0.0):
            raise ValidationError(f"seed_r_eps must be > 0, got {self.seed_r_eps}")
        if abs(self.chi - 1.0) < 1e-9:
            raise ValidationError(f"chi = {self.chi} is at the chi = 1 singularity")
        for col in self.outputs:
            if col not in CANONICAL_COLUMNS:
                raise ValidationError(f"unknown output column {col!r}")
        try:
            self.drive_params()
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc

    def drive_params(self) -> DriveParams:
        return DriveParams(
            omega0=self.omega0, eps_mod=self.eps_mod, kappa=self.kappa,
            alpha0_tilde=self.alpha0_tilde, beta0_tilde=self.beta0_tilde,
            zeta_mode=ZetaMode(self.zeta_mode),
        )

    def time_grid(self) -> np.ndarray:
        p = self.drive_params()
        t_max = self.tau_max / self.omega0
        n = int(math.ceil(t_max / p.period() * self.grid_per_period)) + 1
        return np.linspace(0.0, t_max, n)

    def constraint0(self) -> ConstraintState:
        phi0 = -0.5 * self.z_abs * (self.chi + 1.0)
        return ConstraintState(
            z_abs=self.z_abs, Phi=phi0, varphi=self.varphi0,
            Lambda=phi0 * phi0 - self.chi,
        )


_BOOL_WORDS = {"true": True, "on": True, "yes": True, "1": True,
               "false": False, "off": False, "no": False, "0": False}

_FIELD_TYPES = {f.name: f.type for f in fields(ScenarioConfig)}


def _parse_value(key: str, raw: str, lineno: int):
    ftype = _FIELD_TYPES[key]
    raw = raw.strip()
    if key == "outputs":
        cols = tuple(c.strip() for c in raw.split(",") if c.strip())
        if not cols:
            raise ValidationError(f"line {lineno}: outputs must name columns")
        return cols
    if key == "oracle":
        word = raw.lower()
        if word not in _BOOL_WORDS:
            raise ValidationError(
                f"line {lineno}: expected a boolean for {key}, got {raw!r}"
            )
        return _BOOL_WORDS[word]
    if key == "grid_per_period":
        try:
            return int(raw)
        except ValueError as exc:
            raise ValidationError(
                f"line {lineno}: expected an integer for {key}, got {raw!r}"
            ) from exc
    if key in ("zeta_mode", "dyson_source"):
        return raw
    try:
        return float(raw)
    except ValueError as exc:
        raise ValidationError(
            f"line {lineno}: expected a number for {key}, got {raw!r}"
        ) from exc


def parse_config(text: str) -> ScenarioConfig:
    """Parse a flat key = value scenario description.

    Blank lines, # comments and [section] headers are skipped.  Unknown
    keys and malformed lines raise ParseError with the line number;
    well-formed but invalid values raise ValidationError.  An empty
    document yields the defaults.
    """
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            continue
        if "=" not in stripped:
            raise ParseError(f"line {lineno}: expected key = value, got {line!r}")
        key, raw = stripped.split("=", 1)
        key = key.strip()
        if key not in _FIELD_TYPES:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _parse_value(key, raw, lineno)
    cfg = ScenarioConfig(**values)
    cfg.validate()
    return cfg


def load_config(path) -> ScenarioConfig:
    return parse_config(Path(path).read_text())


# Figure presets.  fig3 carries three series; the others one each.
PRESETS: dict[str, tuple[tuple[str, ScenarioConfig], ...]] = {
    "fig1": (("fig1", ScenarioConfig()),),
    "fig2": (("fig2", ScenarioConfig()),),
    "fig3": (
        ("fig3_solid", ScenarioConfig(beta0_tilde=1e-3)),
        ("fig3_dotted", ScenarioConfig(beta0_tilde=1e-4)),
        ("fig3_hermitian", ScenarioConfig(alpha0_tilde=1.0, beta0_tilde=1.0)),
    ),
}


@dataclass(frozen=True)
class RunRecord:
    """Results of one run: columns plus provenance and timing."""

    name: str
    config: ScenarioConfig
    columns: dict[str, np.ndarray]
    wall_seconds: float
    n_steps: int
    n_rejected: int
    csv_path: Optional[str] = None
    plot_path: Optional[str] = None

    def column(self, name: str) -> np.ndarray:
        return self.columns[name]


def _residual_column(cfg: ScenarioConfig, p: DriveParams, traj) -> np.ndarray:
    """|Im W| + |V - conj(T)| of the raw mapped coefficients.

    The map derivatives are those of the source actually used: the flow
    right-hand side for the integrated source, the closed form's own
    derivatives for the approximate source (whose constraint violation
    this column then reports honestly).
    """
    out = np.empty(traj.t.size)
    approximate = cfg.dyson_source == "approximate"
    for i in range(traj.t.size):
        t = float(traj.t[i])
        s = traj.constraint_state(i)
        if approximate:
            dlam = -2j * p.omega0 * s.lam
            dLam = 0.0
        else:
            d = constraint_rhs_polar(s, p, t)
            dlam = (d[0] - 1j * s.Phi * d[1]) * np.exp(-1j * s.varphi)
            dLam = float(d[2])
        a_pol, b_pol = alpha_beta(t, p)
        W, T, V = coefficients_general(
            lam=s.lam, Lambda=s.Lambda, omega=complex(drive_omega(t, p)),
            alpha=a_pol.to_complex(), beta=b_pol.to_complex(),
            dlam_dt=dlam, dLambda_dt=dLam,
        )
        out[i] = abs(W.imag) + abs(V - T.conjugate())
    return out


def run(cfg: ScenarioConfig, out_dir=None, name: str = "run") -> RunRecord:
    """Execute a scenario and optionally write <name>.csv and <name>.gp."""
    cfg.validate()
    started = time.perf_counter()
    p = cfg.drive_params()
    t_grid = cfg.time_grid()

    evolve_kwargs = dict(
        dyson_source=cfg.dyson_source, varphi0=cfg.varphi0, r0=cfg.r0,
        theta0=0j, seed_r_eps=cfg.seed_r_eps, rtol=cfg.rtol, atol=cfg.atol,
    )
    try:
        _, phi_sq0 = analytic_squeeze(0.0, p, cfg.chi, cfg.r0, cfg.phi0_prime)
        on_resonance = True
    except NotOnResonance:
        phi_sq0 = cfg.phi0_prime
        on_resonance = False
    evolve_kwargs["phi_sq0"] = phi_sq0
    if cfg.dyson_source == "approximate":
        evolve_kwargs["chi"] = cfg.chi
    else:
        evolve_kwargs["constraint0"] = cfg.constraint0()

    traj = evolve(p, t_grid, **evolve_kwargs)

    tau = traj.t * cfg.omega0
    m = tau.size
    r_analytic = np.full(m, np.nan)
    phi_analytic = np.full(m, np.nan)
    if on_resonance:
        for i in range(m):
            r_analytic[i], phi_analytic[i] = analytic_squeeze(
                float(traj.t[i]), p, cfg.chi, cfg.r0, cfg.phi0_prime)

    s0 = traj.squeeze_state(0)
    vacuum = InitialMoments()
    n_numeric = np.empty(m)
    for i in range(m):
        n_numeric[i] = mean_photon_general(
            bogoliubov_uvw(s0, traj.squeeze_state(i)), vacuum)
    n_analytic = np.sinh(r_analytic) ** 2

    if cfg.oracle:
        oracle_kwargs = dict(dyson_source=cfg.dyson_source,
                             varphi0=cfg.varphi0, rtol=cfg.rtol,
                             atol=cfg.atol)
        if cfg.dyson_source == "approximate":
            oracle_kwargs["chi"] = cfg.chi
        else:
            oracle_kwargs["constraint0"] = cfg.constraint0()
        _, v = bogoliubov_ode_oracle(p, t_grid, **oracle_kwargs)
        n_oracle = np.abs(v) ** 2
    else:
        n_oracle = np.full(m, np.nan)

    columns = {
        "tau": tau,
        "r_numeric": traj.r,
        "r_analytic": r_analytic,
        "phi_numeric_raw": traj.phi_sq,
        "phi_analytic_raw": phi_analytic,
        "N_numeric": n_numeric,
        "N_analytic": n_analytic,
        "N_oracle": n_oracle,
        "W": traj.W,
        "T_abs": traj.T_abs,
        "phi_T": traj.phi_T,
        "Phi": traj.Phi,
        "chi": traj.chi,
        "varphi": traj.varphi,
        "residual_hermiticity": _residual_column(cfg, p, traj),
    }
    selected = {k: columns[k] for k in cfg.outputs}
    wall = time.perf_counter() - started

    record = RunRecord(name=name, config=cfg, columns=selected,
                       wall_seconds=wall, n_steps=traj.stats.n_steps,
                       n_rejected=traj.stats.n_rejected)
    if out_dir is not None:
        record = write_outputs(record, out_dir)
    return record


def write_outputs(record: RunRecord, out_dir) -> RunRecord:
    """Write <name>.csv (17 significant digits) and a gnuplot script."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{record.name}.csv"
    cols = list(record.columns)
    rows = np.column_stack([record.columns[c] for c in cols])
    lines = [",".join(cols)]
    for row in rows:
        lines.append(",".join(f"{v:.17g}" for v in row))
    csv_path.write_text("\n".join(lines) + "\n")

    plot_path = out / f"{record.name}.gp"
    plot_path.write_text(_plot_script(record.name, cols))
    return replace(record, csv_path=str(csv_path), plot_path=str(plot_path))


def _plot_script(name: str, cols: list[str]) -> str:
    """Generic gnuplot commands referencing the CSV by relative path."""
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set xlabel 'tau'",
        "set grid",
    ]
    if "r_numeric" in cols and "r_analytic" in cols:
        i, j = cols.index("r_numeric") + 1, cols.index("r_analytic") + 1
        lines += [
            "set ylabel 'r'",
            f"plot '{name}.csv' using 1:{i} with lines, "
            f"'{name}.csv' using 1:{j} with lines dashtype 2",
            "pause -1",
        ]
    if "N_numeric" in cols:
        i = cols.index("N_numeric") + 1
        lines += [
            "set ylabel 'N'",
            "set logscale y",
            f"plot '{name}.csv' using 1:{i} with lines",
            "pause -1",
        ]
    return "\n".join(lines) + "\n"


def run_preset(preset: str, out_dir=None) -> list[RunRecord]:
    if preset not in PRESETS:
        raise ValidationError(
            f"unknown preset {preset!r}; expected one of {sorted(PRESETS)}"
        )
    return [run(cfg, out_dir=out_dir, name=label)
            for label, cfg in PRESETS[preset]]


@dataclass(frozen=True)
class SweepFailure:
    """Placeholder record for a sweep cell whose run raised."""

    name: str
    error: str


def _sweep_one(args):
    cfg, out_dir, name = args
    try:
        return run(cfg, out_dir=out_dir, name=name)
    except PseudoDceError as exc:
        return SweepFailure(name=name, error=f"{type(exc).__name__}: {exc}")


def sweep(base: ScenarioConfig, axis: str, values, out_dir=None,
          workers: int = 1) -> tuple[list[RunRecord], str]:
    """Run the base scenario once per value of one configuration key.

    Returns the records (input order) and the summary CSV text with one
    row per value: value, amplification factor, final photon number.
    """
    if axis not in _FIELD_TYPES:
        raise ValidationError(f"unknown sweep axis {axis!r}")
    jobs = []
    for i, value in enumerate(values):
        cfg = replace(base, **{axis: value})
        cfg.validate()
        jobs.append((cfg, out_dir, f"sweep_{axis}_{i}"))

    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as ex:
            records = list(ex.map(_sweep_one, jobs))
    else:
        records = [_sweep_one(job) for job in jobs]

    lines = [f"{axis},amplification,N_final"]
    for value, rec in zip(values, records):
        if isinstance(rec, SweepFailure):
            lines.append(f"{float(value):.17g},failed,failed")
            continue
        cfg = rec.config
        amp = amplification_factor(cfg.alpha0_tilde, cfg.beta0_tilde, cfg.chi)
        n_final = float(rec.columns["N_numeric"][-1])
        lines.append(f"{float(value):.17g},{amp:.17g},{n_final:.17g}")
    summary = "\n".join(lines) + "\n"
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        (Path(out_dir) / f"sweep_{axis}_summary.csv").write_text(summary)
    return records, summary
