"""Config-driven experiment runner and data pipeline.

One JSON config describes a process, a sample size, a seed and a set of
analyses; ``run`` simulates the path once, feeds every requested analysis
from that same path and writes a reproducible result bundle (series CSV,
CCDF/ACF tables, JSON summaries, manifest).  Identical configs produce
byte-identical payloads; timestamps live only in the manifest.

Subcommands: run, ingest, fit-tail, acf, cramer, lyapunov, report.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import importlib.resources
import json
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .distributions import RngStream, law_from_config
from .errors import (
    InvalidConfig,
    KestenLabError,
    MissingArtifacts,
    NonPositivePrice,
    NonStationary,
    ParseError,
)
from .estimators import (
    acf,
    empirical_ccdf,
    hill_estimator,
    returns_from_prices,
    tail_exponent_ls,
    write_acf_csv,
    write_ccdf_csv,
)
from .processes import (
    Garch11,
    InverseMultiplier,
    KestenAR,
    KestenScalar,
    ProcessSpec,
    ReturnSeries,
    garch_to_kesten,
    read_series_csv,
    simulate,
    spec_from_config,
    write_series_csv,
)
from .theory import (
    classify_regime,
    cramer_root,
    density_at_one,
    kesten_conditions_report,
    lyapunov_top,
    moment_lyapunov_root,
    stationarity_check,
)

OUTPUT_ROOT_ENV = "KESTENLAB_OUTPUT_ROOT"

_KNOWN_ANALYSES = (
    "tail_fit",
    "hill",
    "acf",
    "cramer",
    "conditions",
    "lyapunov",
    "moment_lyapunov",
)


@dataclass
class ExperimentConfig:
    """Full description of one experiment; round-trips through canonical JSON."""

    process: ProcessSpec
    n_samples: int
    seed: int
    burn_in: int = 0
    analyses: dict = field(default_factory=dict)
    output_dir: str | None = None

    def __post_init__(self) -> None:
        if self.n_samples < 1:
            raise InvalidConfig(f"n_samples must be >= 1, got {self.n_samples}")
        if self.burn_in < 0:
            raise InvalidConfig(f"burn_in must be >= 0, got {self.burn_in}")
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidConfig(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if not self.analyses:
            raise InvalidConfig("config must request at least one analysis")
        self.analyses = _normalize_analyses(self.analyses, self.process)

    def to_dict(self) -> dict:
        return {
            "process": self.process.to_config(),
            "n_samples": self.n_samples,
            "seed": self.seed,
            "burn_in": self.burn_in,
            "analyses": self.analyses,
            "output_dir": self.output_dir,
        }


def _scalar_feedback_laws(process: ProcessSpec):
    """(a_law, e_law) of the scalar feedback recursion behind a process, if any."""
    if isinstance(process, KestenScalar):
        return process.a_law, process.e_law
    if isinstance(process, Garch11):
        return garch_to_kesten(process.omega, process.alpha, process.beta)
    return None


def _normalize_analyses(analyses: dict, process: ProcessSpec) -> dict:
    if not isinstance(analyses, dict):
        raise InvalidConfig("analyses must be a mapping of analysis name -> params")
    out: dict = {}
    for name, params in analyses.items():
        if name not in _KNOWN_ANALYSES:
            raise InvalidConfig(
                f"unknown analysis {name!r}; known: {', '.join(_KNOWN_ANALYSES)}"
            )
        params = dict(params or {})
        if name == "tail_fit":
            thr = params.get("threshold")
            out[name] = {"threshold": None if thr is None else float(thr)}
        elif name == "hill":
            out[name] = {"k": int(params.get("k", 10_000))}
        elif name == "acf":
            kinds = params.get("kinds", ["raw"])
            if not kinds or any(k not in ("raw", "absolute") for k in kinds):
                raise InvalidConfig(f"acf kinds must be raw/absolute, got {kinds!r}")
            out[name] = {"max_lag": int(params.get("max_lag", 50)), "kinds": list(kinds)}
        elif name in ("cramer", "conditions"):
            if _scalar_feedback_laws(process) is None:
                raise InvalidConfig(
                    f"{name!r} analysis needs a scalar feedback process "
                    "(kesten_scalar or garch11)"
                )
            out[name] = {}
        elif name == "lyapunov":
            if not isinstance(process, (KestenScalar, KestenAR)):
                raise InvalidConfig(
                    "'lyapunov' analysis needs a kesten_scalar or kesten_ar process"
                )
            out[name] = {
                "t_horizon": int(params.get("t_horizon", 1000)),
                "trials": int(params.get("trials", 100)),
            }
        elif name == "moment_lyapunov":
            if not isinstance(process, (KestenScalar, KestenAR)):
                raise InvalidConfig(
                    "'moment_lyapunov' analysis needs a kesten_scalar or "
                    "kesten_ar process"
                )
            grid = [float(x) for x in params.get("grid", [0.5, 6.0])]
            out[name] = {
                "grid": grid,
                "t_horizon": int(params.get("t_horizon", 6)),
                "trials": int(params.get("trials", 200_000)),
            }
    return out


def config_from_dict(data: dict) -> ExperimentConfig:
    if not isinstance(data, dict):
        raise InvalidConfig("experiment config must be a JSON object")
    try:
        process = spec_from_config(data["process"])
        return ExperimentConfig(
            process=process,
            n_samples=int(data["n_samples"]),
            seed=int(data["seed"]),
            burn_in=int(data.get("burn_in", 0)),
            analyses=data.get("analyses", {}),
            output_dir=data.get("output_dir"),
        )
    except KeyError as exc:
        raise InvalidConfig(f"experiment config missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidConfig):
            raise
        raise InvalidConfig(str(exc)) from exc


def config_from_json(text: str) -> ExperimentConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"config is not valid JSON: {exc}") from exc
    return config_from_dict(data)


def config_to_json(config: ExperimentConfig) -> str:
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(config.to_dict(), indent=2, sort_keys=True) + "\n"


def config_digest(config: ExperimentConfig) -> str:
    return hashlib.sha256(config_to_json(config).encode()).hexdigest()


def load_config(path: str | Path) -> ExperimentConfig:
    """Load a config file; bare names fall back to the bundled golden configs."""
    p = Path(path)
    if not p.exists():
        bundled = importlib.resources.files("kestenlab") / "configs" / p.name
        if p.name == str(path) and bundled.is_file():
            return config_from_json(bundled.read_text())
        raise InvalidConfig(f"config file not found: {path}")
    return config_from_json(p.read_text())


@dataclass
class RunManifest:
    """Record of a completed run; written last, so its existence marks success."""

    config_digest: str
    toolkit_version: str
    seed: int
    started_at: str
    finished_at: str
    output_dir: str
    outputs: dict
    counters: dict

    def to_dict(self) -> dict:
        return {
            "config_digest": self.config_digest,
            "toolkit_version": self.toolkit_version,
            "seed": self.seed,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "output_dir": self.output_dir,
            "outputs": self.outputs,
            "counters": self.counters,
        }


def manifest_from_dict(data: dict) -> RunManifest:
    try:
        return RunManifest(
            config_digest=data["config_digest"],
            toolkit_version=data["toolkit_version"],
            seed=int(data["seed"]),
            started_at=data["started_at"],
            finished_at=data["finished_at"],
            output_dir=data["output_dir"],
            outputs=dict(data["outputs"]),
            counters=dict(data["counters"]),
        )
    except KeyError as exc:
        raise InvalidConfig(f"manifest missing field {exc}") from None


def _canonical_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, newline="\n")
    os.replace(tmp, path)


def _write_file_atomic(path: Path, writer) -> None:
    """Run a writer against a .tmp path, then rename into place."""
    tmp = path.with_name(path.name + ".tmp")
    writer(tmp)
    os.replace(tmp, path)


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


def _law_text(law) -> str:
    cfg = law.to_config()
    args = ", ".join(f"{k}={v}" for k, v in cfg.items() if k != "kind")
    return f"{cfg['kind']}({args})"


def resolve_output_dir(
    config: ExperimentConfig, override: str | None = None, name: str | None = None
) -> Path:
    """Explicit override > config.output_dir > $KESTENLAB_OUTPUT_ROOT/<name>."""
    root = os.environ.get(OUTPUT_ROOT_ENV)
    if override is not None:
        return Path(override)
    if config.output_dir is not None:
        p = Path(config.output_dir)
        if not p.is_absolute() and root:
            return Path(root) / p
        return p
    base = Path(root) if root else Path("runs")
    return base / (name or f"run-{config_digest(config)[:12]}")


def run(
    config: ExperimentConfig,
    output_dir: str | Path | None = None,
    seed: int | None = None,
    name: str | None = None,
) -> RunManifest:
    """Simulate once, run every requested analysis, write the result bundle.

    All payload files are written through temp-then-rename, and the
    manifest goes last: an interrupted run leaves only ``.tmp`` debris and
    never a manifest.
    """
    if seed is not None:
        config = config_from_dict({**config.to_dict(), "seed": int(seed)})
    digest = config_digest(config)
    started = _utcnow()
    out_dir = resolve_output_dir(config, None if output_dir is None else str(output_dir), name)
    out_dir.mkdir(parents=True, exist_ok=True)

    process = config.process
    feedback = _scalar_feedback_laws(process)
    summary: dict = {
        "process": process.to_config(),
        "n_samples": config.n_samples,
        "burn_in": config.burn_in,
        "seed": config.seed,
    }

    # fail fast on a provably non-stationary scalar recursion
    if feedback is not None and isinstance(process, KestenScalar):
        stat = stationarity_check(feedback[0])
        summary["stationarity"] = stat.to_dict()
        if stat.verdict == "non-stationary":
            raise NonStationary(
                f"E[log a] = {stat.log_moment:+.4g} > 0: the recursion has no "
                "stationary solution; refusing to simulate"
            )
    elif feedback is not None:
        summary["stationarity"] = stationarity_check(feedback[0]).to_dict()

    if isinstance(process, InverseMultiplier):
        try:
            f1 = density_at_one(process.a_law)
            summary["unit_exponent_prediction"] = {
                "density_at_one": f1,
                "predicted_mu": 1.0 if f1 > 0 else None,
                "tail_constant": 2.0 * f1,
            }
        except KestenLabError:
            pass

    sim_rng = RngStream(config.seed, 0)
    series = simulate(process, sim_rng, config.n_samples, config.burn_in)
    summary["sample_mean"] = float(series.values.mean())
    summary["sample_std"] = float(series.values.std())

    outputs: dict[str, list[str]] = {}

    def record(analysis: str, filename: str) -> None:
        outputs.setdefault(analysis, []).append(filename)

    _write_file_atomic(out_dir / "series.csv", lambda p: write_series_csv(series, p))
    record("series", "series.csv")
    _write_atomic(out_dir / "series_meta.json", _canonical_json(series.metadata()))
    record("series", "series_meta.json")

    for analysis, params in config.analyses.items():
        if analysis == "tail_fit":
            fit = tail_exponent_ls(series, params["threshold"])
            x, p = empirical_ccdf(series, absolute=True)
            _write_file_atomic(out_dir / "ccdf.csv", lambda q: write_ccdf_csv(x, p, q))
            record(analysis, "ccdf.csv")
            _write_atomic(out_dir / "tail_fit.json", _canonical_json(fit.to_dict()))
            record(analysis, "tail_fit.json")
            summary["tail_fit"] = fit.to_dict()
        elif analysis == "hill":
            est = hill_estimator(series, params["k"])
            payload = {"k": params["k"], "estimate": est}
            _write_atomic(out_dir / "hill.json", _canonical_json(payload))
            record(analysis, "hill.json")
            summary["hill"] = payload
        elif analysis == "acf":
            summary_acf = {}
            for kind in params["kinds"]:
                res = acf(series, params["max_lag"], absolute=(kind == "absolute"))
                fname = f"acf_{kind}.csv"
                _write_file_atomic(out_dir / fname, lambda q: write_acf_csv(res, q))
                record(analysis, fname)
                summary_acf[kind] = {
                    "lag_1": res.at(1),
                    f"lag_{params['max_lag']}": res.at(params["max_lag"]),
                }
            summary["acf"] = summary_acf
        elif analysis == "cramer":
            a_law, _ = feedback
            solution = cramer_root(a_law)
            regime = classify_regime(a_law)
            payload = {"solution": solution.to_dict(), "regime": regime.to_dict()}
            _write_atomic(out_dir / "cramer.json", _canonical_json(payload))
            record(analysis, "cramer.json")
            summary["cramer"] = payload
        elif analysis == "conditions":
            a_law, e_law = feedback
            report_ = kesten_conditions_report(a_law, e_law)
            _write_atomic(
                out_dir / "conditions.json", _canonical_json(report_.to_dict())
            )
            record(analysis, "conditions.json")
            summary["conditions"] = {
                "all_verified": report_.all_verified,
                "regime_case": report_.regime_case,
                "mu_star": report_.mu_star,
            }
        elif analysis == "lyapunov":
            est = lyapunov_top(
                process,
                params["t_horizon"],
                params["trials"],
                RngStream(config.seed, 1),
            )
            _write_atomic(out_dir / "lyapunov.json", _canonical_json(est.to_dict()))
            record(analysis, "lyapunov.json")
            summary["lyapunov"] = est.to_dict()
        elif analysis == "moment_lyapunov":
            sol = moment_lyapunov_root(
                process,
                params["grid"],
                params["t_horizon"],
                params["trials"],
                RngStream(config.seed, 2),
            )
            _write_atomic(
                out_dir / "moment_lyapunov.json", _canonical_json(sol.to_dict())
            )
            record(analysis, "moment_lyapunov.json")
            summary["moment_lyapunov"] = sol.to_dict()

    _write_atomic(out_dir / "summary.json", _canonical_json(summary))
    record("summary", "summary.json")

    manifest = RunManifest(
        config_digest=digest,
        toolkit_version=__version__,
        seed=config.seed,
        started_at=started,
        finished_at=_utcnow(),
        output_dir=str(out_dir),
        outputs=outputs,
        counters={"resamples": series.resamples},
    )
    _write_atomic(out_dir / "manifest.json", _canonical_json(manifest.to_dict()))
    return manifest


def ingest_prices(csv_path: str | Path, column_spec: str | int = "close") -> ReturnSeries:
    """Relative returns from a price CSV; provenance is the file digest.

    ``column_spec`` is a header name or a 0-based column index.
    """
    path = Path(csv_path)
    raw = path.read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ParseError(f"{path}: empty file")
        col: int
        try:
            col = int(column_spec)
        except (TypeError, ValueError):
            names = [h.strip().lower() for h in header]
            want = str(column_spec).strip().lower()
            if want not in names:
                raise ParseError(
                    f"{path}: no column named {column_spec!r} in header {header!r}"
                ) from None
            col = names.index(want)
        if not 0 <= col < len(header):
            raise ParseError(f"{path}: column index {col} out of range")
        prices: list[float] = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                value = float(row[col])
            except (IndexError, ValueError):
                raise ParseError(
                    f"{path}: line {lineno}: cannot parse price from {row!r}"
                ) from None
            if not value > 0:
                raise NonPositivePrice(
                    f"{path}: line {lineno}: price {value!r} is not positive"
                )
            prices.append(value)
    if len(prices) < 2:
        raise ParseError(f"{path}: need at least two price rows, got {len(prices)}")
    returns = returns_from_prices(prices)
    return ReturnSeries(returns, digest, None, 0, 0)


def report(manifest: RunManifest | str | Path) -> str:
    """One-screen human-readable summary of a completed run."""
    if not isinstance(manifest, RunManifest):
        mpath = Path(manifest)
        manifest = manifest_from_dict(json.loads(mpath.read_text()))
    out_dir = Path(manifest.output_dir)
    for files in manifest.outputs.values():
        for fname in files:
            if not (out_dir / fname).exists():
                raise MissingArtifacts(f"missing run artifact: {out_dir / fname}")
    summary = json.loads((out_dir / "summary.json").read_text())

    lines = [
        f"kestenlab {manifest.toolkit_version} | run {manifest.config_digest[:12]} "
        f"| seed {manifest.seed}",
    ]
    proc = summary["process"]
    desc = f"process: {proc['kind']}"
    if "a_law" in proc:
        desc += f" | a ~ {_law_text(law_from_config(proc['a_law']))}"
        desc += f" | e ~ {_law_text(law_from_config(proc['e_law']))}"
    elif proc["kind"] == "garch11":
        desc += (
            f" | omega={proc['omega']} alpha={proc['alpha']} beta={proc['beta']}"
        )
    lines.append(desc)
    lines.append(
        f"samples: {summary['n_samples']} after {summary['burn_in']} burn-in "
        f"| sample std {summary['sample_std']:.4g}"
    )
    if "stationarity" in summary:
        st = summary["stationarity"]
        lines.append(
            f"stationarity: E[log a] = {st['log_moment']:+.4f} -> {st['verdict']}"
        )
    if "unit_exponent_prediction" in summary:
        up = summary["unit_exponent_prediction"]
        if up["predicted_mu"] is not None:
            lines.append(
                "tail regime: inverse-multiplier amplification "
                f"(unit-exponent law, predicted mu = {up['predicted_mu']:g}, "
                f"tail constant {up['tail_constant']:.4g})"
            )
    if "cramer" in summary:
        reg = summary["cramer"]["regime"]
        sol = summary["cramer"]["solution"]
        rel = "=" if reg["case"] == "A" else (">" if reg["case"] == "B" else "<")
        lines.append(
            f"regime: {reg['case']} (E(a) = {reg['mean_a']:.4g} {rel} 1) "
            f"-> predicted {reg['predicted']}"
        )
        lines.append(
            f"predicted mu = {sol['mu_star']:.4f} "
            f"(method {sol['method']}, residual {sol['residual']:.2g})"
        )
    if "tail_fit" in summary:
        tf = summary["tail_fit"]
        lines.append(
            f"fitted mu = {tf['exponent']:.4f} +- {tf['stderr']:.4f} "
            f"(log-log LS above {tf['threshold']:.4g}, n_tail {tf['n_tail']})"
        )
    if "hill" in summary:
        lines.append(
            f"hill cross-check (k={summary['hill']['k']}): "
            f"{summary['hill']['estimate']:.4f}"
        )
    if "acf" in summary:
        parts = []
        for kind, vals in summary["acf"].items():
            detail = ", ".join(f"{k.replace('_', ' ')} = {v:+.4f}" for k, v in vals.items())
            parts.append(f"{kind}: {detail}")
        lines.append("acf: " + " | ".join(parts))
    if "conditions" in summary:
        cond = summary["conditions"]
        ok = "all verified" if cond["all_verified"] else "NOT all verified"
        lines.append(f"Kesten-theorem conditions (a)-(h): {ok} (case {cond['regime_case']})")
        report_json = out_dir / "conditions.json"
        if report_json.exists():
            detail = json.loads(report_json.read_text())
            for c in detail["conditions"]:
                ev = "" if c["evidence"] is None else f"{c['evidence']:+.6g}"
                lines.append(
                    f"  ({c['condition']}) {c['status']:<13} {ev:<14} {c['note']}"
                )
    if "lyapunov" in summary:
        ly = summary["lyapunov"]
        lines.append(
            f"top Lyapunov exponent: {ly['gamma_hat']:+.4f} +- {ly['stderr']:.4f} "
            f"({'stationary' if ly['gamma_hat'] < 0 else 'non-stationary'})"
        )
    if "moment_lyapunov" in summary:
        ml = summary["moment_lyapunov"]
        bias = ml.get("finite_t_bias")
        bias_txt = "" if bias is None else f", finite-t drift {bias:+.3f}"
        lines.append(
            f"moment-Lyapunov root: mu = {ml['mu_star']:.3f} "
            f"+- {ml.get('stderr', float('nan')):.3f}{bias_txt}"
        )
    n_files = sum(len(v) for v in manifest.outputs.values())
    lines.append(f"outputs: {manifest.output_dir} ({n_files} files)")
    return "\n".join(lines)


# command line ----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kestenlab",
        description="Simulate feedback-driven return processes and analyze "
        "their power-law tails.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config")
    p_run.add_argument("config", help="config file path or bundled name (fig2.cfg, ...)")
    p_run.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_run.add_argument("--output-dir", default=None, help="override the output directory")

    p_ing = sub.add_parser("ingest", help="turn a price CSV into a return series")
    p_ing.add_argument("csv")
    p_ing.add_argument("--price-col", default="close", help="column name or 0-based index")
    p_ing.add_argument("--out", default=None, help="output series CSV path")

    p_fit = sub.add_parser("fit-tail", help="tail-exponent fit of a series CSV")
    p_fit.add_argument("series")
    p_fit.add_argument("--threshold", type=float, default=None)

    p_acf = sub.add_parser("acf", help="autocorrelation of a series CSV")
    p_acf.add_argument("series")
    p_acf.add_argument("--max-lag", type=int, required=True)
    p_acf.add_argument("--absolute", action="store_true")

    p_cr = sub.add_parser("cramer", help="solve the moment equation for a law")
    p_cr.add_argument("--law", required=True, help='law JSON, e.g. \'{"kind": "exponential", "mean": 0.55}\'')

    p_ly = sub.add_parser("lyapunov", help="top Lyapunov exponent for a config's process")
    p_ly.add_argument("--config", required=True)

    p_rep = sub.add_parser("report", help="summarize a completed run")
    p_rep.add_argument("manifest")
    return parser


def _cmd_run(args) -> int:
    config = load_config(args.config)
    name = Path(args.config).stem
    manifest = run(config, output_dir=args.output_dir, seed=args.seed, name=name)
    print(report(manifest))
    return 0


def _cmd_ingest(args) -> int:
    series = ingest_prices(args.csv, args.price_col)
    out = Path(args.out) if args.out else Path(args.csv).with_suffix(".returns.csv")
    write_series_csv(series, out)
    meta = series.metadata()
    meta["source"] = str(args.csv)
    print(_canonical_json({"out": str(out), **meta}), end="")
    return 0


def _cmd_fit_tail(args) -> int:
    values = read_series_csv(args.series)
    fit = tail_exponent_ls(values, args.threshold)
    print(_canonical_json(fit.to_dict()), end="")
    return 0


def _cmd_acf(args) -> int:
    values = read_series_csv(args.series)
    res = acf(values, args.max_lag, absolute=args.absolute)
    print("lag,acf")
    for lag, v in zip(res.lags, res.values):
        print(f"{int(lag)},{repr(float(v))}")
    return 0


def _cmd_cramer(args) -> int:
    try:
        law_cfg = json.loads(args.law)
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"--law is not valid JSON: {exc}") from exc
    law = law_from_config(law_cfg)
    solution = cramer_root(law)
    print(_canonical_json(solution.to_dict()), end="")
    return 0


def _cmd_lyapunov(args) -> int:
    config = load_config(args.config)
    if not isinstance(config.process, (KestenScalar, KestenAR)):
        raise InvalidConfig(
            "lyapunov needs a kesten_scalar or kesten_ar process in the config"
        )
    params = config.analyses.get("lyapunov", {"t_horizon": 1000, "trials": 100})
    est = lyapunov_top(
        config.process,
        params["t_horizon"],
        params["trials"],
        RngStream(config.seed, 1),
    )
    print(_canonical_json(est.to_dict()), end="")
    return 0


def _cmd_report(args) -> int:
    print(report(args.manifest))
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "ingest": _cmd_ingest,
    "fit-tail": _cmd_fit_tail,
    "acf": _cmd_acf,
    "cramer": _cmd_cramer,
    "lyapunov": _cmd_lyapunov,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (InvalidConfig, ParseError, NonPositivePrice) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except KestenLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
