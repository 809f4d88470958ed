import json
import subprocess
import sys

import numpy as np
import pytest

from kestenlab import RngStream
from kestenlab.cli import (
    ExperimentConfig,
    config_from_dict,
    config_from_json,
    config_to_json,
    ingest_prices,
    load_config,
    report,
    run,
)
from kestenlab.errors import (
    InvalidConfig,
    MissingArtifacts,
    NonPositivePrice,
    ParseError,
)

SMALL_CONFIG = {
    "process": {
        "kind": "kesten_scalar",
        "a_law": {"kind": "exponential", "mean": 0.55},
        "e_law": {"kind": "normal", "mean": 0.0, "sd": 0.0065},
        "r0": 0.0,
    },
    "n_samples": 20000,
    "seed": 7,
    "burn_in": 500,
    "analyses": {
        "tail_fit": {"threshold": None},
        "acf": {"max_lag": 10, "kinds": ["raw", "absolute"]},
        "cramer": {},
    },
    "output_dir": None,
}


def _cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "kestenlab", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


class TestConfig:
    def test_round_trip_is_byte_identical(self):
        cfg = config_from_dict(SMALL_CONFIG)
        text = config_to_json(cfg)
        assert config_to_json(config_from_json(text)) == text
        assert config_from_json(text) == cfg

    def test_requires_analyses(self):
        bad = {**SMALL_CONFIG, "analyses": {}}
        with pytest.raises(InvalidConfig):
            config_from_dict(bad)

    def test_unknown_analysis(self):
        bad = {**SMALL_CONFIG, "analyses": {"spectral": {}}}
        with pytest.raises(InvalidConfig):
            config_from_dict(bad)

    def test_cramer_needs_scalar_feedback(self):
        bad = {
            **SMALL_CONFIG,
            "process": {
                "kind": "inverse_multiplier",
                "a_law": {"kind": "uniform", "lo": 0.0, "hi": 1.0},
                "e_law": {"kind": "normal", "mean": 0.0, "sd": 1.0},
            },
        }
        with pytest.raises(InvalidConfig):
            config_from_dict(bad)

    def test_bundled_configs_load(self):
        for name in ("fig2.cfg", "fig3.cfg", "fig4.cfg"):
            cfg = load_config(name)
            assert isinstance(cfg, ExperimentConfig)
            assert cfg.n_samples == 10**6

    def test_missing_file(self):
        with pytest.raises(InvalidConfig):
            load_config("no-such-config.cfg")


class TestRun:
    def test_bundle_contents(self, tmp_path):
        cfg = config_from_dict(SMALL_CONFIG)
        manifest = run(cfg, output_dir=tmp_path / "out")
        out = tmp_path / "out"
        for fname in (
            "series.csv",
            "series_meta.json",
            "ccdf.csv",
            "tail_fit.json",
            "acf_raw.csv",
            "acf_absolute.csv",
            "cramer.json",
            "summary.json",
            "manifest.json",
        ):
            assert (out / fname).exists(), fname
        assert not list(out.glob("*.tmp"))
        assert manifest.seed == 7
        listed = {f for files in manifest.outputs.values() for f in files}
        assert "series.csv" in listed and "summary.json" in listed

    def test_reruns_are_byte_identical(self, tmp_path):
        cfg = config_from_dict(SMALL_CONFIG)
        run(cfg, output_dir=tmp_path / "a")
        run(cfg, output_dir=tmp_path / "b")
        for fname in ("series.csv", "tail_fit.json", "summary.json", "acf_raw.csv"):
            assert (tmp_path / "a" / fname).read_bytes() == (
                tmp_path / "b" / fname
            ).read_bytes(), fname

    def test_seed_override_changes_payload(self, tmp_path):
        cfg = config_from_dict(SMALL_CONFIG)
        run(cfg, output_dir=tmp_path / "a")
        m = run(cfg, output_dir=tmp_path / "b", seed=8)
        assert m.seed == 8
        assert (tmp_path / "a" / "series.csv").read_bytes() != (
            tmp_path / "b" / "series.csv"
        ).read_bytes()

    def test_output_root_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("KESTENLAB_OUTPUT_ROOT", str(tmp_path))
        cfg = config_from_dict({**SMALL_CONFIG, "output_dir": "nested/run"})
        run(cfg)
        assert (tmp_path / "nested" / "run" / "manifest.json").exists()

    def test_report_text(self, tmp_path):
        cfg = config_from_dict(SMALL_CONFIG)
        manifest = run(cfg, output_dir=tmp_path / "out")
        text = report(manifest)
        assert "regime: C (E(a) = 0.55 < 1)" in text
        assert "predicted mu = 3.0027" in text
        assert "fitted mu" in text

    def test_report_missing_artifacts(self, tmp_path):
        cfg = config_from_dict(SMALL_CONFIG)
        manifest = run(cfg, output_dir=tmp_path / "out")
        (tmp_path / "out" / "tail_fit.json").unlink()
        with pytest.raises(MissingArtifacts):
            report(manifest)

    def test_failed_run_leaves_no_manifest(self, tmp_path):
        # hill needs k < n, so this run dies mid-analysis; whatever was
        # already renamed into place is complete, and no manifest appears
        bad = {
            **SMALL_CONFIG,
            "n_samples": 2000,
            "burn_in": 0,
            "analyses": {"tail_fit": {"threshold": None}, "hill": {"k": 10000}},
        }
        from kestenlab.errors import InsufficientTail

        with pytest.raises(InsufficientTail):
            run(config_from_dict(bad), output_dir=tmp_path / "out")
        out = tmp_path / "out"
        assert not (out / "manifest.json").exists()
        assert not list(out.glob("*.tmp"))
        assert (out / "series.csv").exists()  # completed payloads stay valid


class TestIngest:
    def test_two_row_file(self, tmp_path):
        p = tmp_path / "prices.csv"
        p.write_text("date,close\n2020-01-01,100\n2020-01-02,101\n")
        series = ingest_prices(p)
        assert series.values == pytest.approx([0.01])
        assert series.seed is None

    def test_zero_price_reports_line(self, tmp_path):
        p = tmp_path / "prices.csv"
        p.write_text("date,close\n2020-01-01,100\n2020-01-02,0\n2020-01-03,101\n")
        with pytest.raises(NonPositivePrice, match="line 3"):
            ingest_prices(p)

    def test_unparseable_row_reports_line(self, tmp_path):
        p = tmp_path / "prices.csv"
        p.write_text("date,close\n2020-01-01,100\n2020-01-02,n/a\n")
        with pytest.raises(ParseError, match="line 3"):
            ingest_prices(p)

    def test_missing_column(self, tmp_path):
        p = tmp_path / "prices.csv"
        p.write_text("date,price\n2020-01-01,100\n")
        with pytest.raises(ParseError, match="close"):
            ingest_prices(p)

    def test_column_by_index(self, tmp_path):
        p = tmp_path / "prices.csv"
        p.write_text("date,px\n2020-01-01,100\n2020-01-02,110\n")
        series = ingest_prices(p, 1)
        assert series.values == pytest.approx([0.1])

    def test_round_trip_through_compounded_prices(self, tmp_path):
        # compounding oracle: P_t = P_{t-1} (1 + r_t) must invert to r
        gen = RngStream(55).generator()
        r = gen.normal(0.0, 0.01, 500)
        prices = 100.0 * np.cumprod(np.concatenate([[1.0], 1.0 + r]))
        p = tmp_path / "prices.csv"
        lines = ["date,close"] + [f"d{i},{repr(float(v))}" for i, v in enumerate(prices)]
        p.write_text("\n".join(lines) + "\n")
        series = ingest_prices(p)
        # 1e-12 relative, with an absolute floor for returns near zero where
        # the float-epsilon rounding of the compounding dominates
        assert np.all(np.abs(series.values - r) <= 1e-12 * np.maximum(1.0, np.abs(r)))


class TestCommandLine:
    def test_run_and_report(self, tmp_path):
        cfg_path = tmp_path / "small.cfg"
        cfg_path.write_text(config_to_json(config_from_dict(SMALL_CONFIG)))
        res = _cli("run", str(cfg_path), "--output-dir", str(tmp_path / "out"))
        assert res.returncode == 0, res.stderr
        assert "regime: C" in res.stdout
        res2 = _cli("report", str(tmp_path / "out" / "manifest.json"))
        assert res2.returncode == 0
        assert "fitted mu" in res2.stdout

    def test_config_error_exit_code(self, tmp_path):
        cfg_path = tmp_path / "bad.cfg"
        cfg_path.write_text("{not json")
        res = _cli("run", str(cfg_path))
        assert res.returncode == 2
        assert "error" in res.stderr

    def test_non_stationary_exit_code(self, tmp_path):
        bad = {
            **SMALL_CONFIG,
            "process": {
                "kind": "kesten_scalar",
                "a_law": {"kind": "exponential", "mean": 2.0},
                "e_law": {"kind": "normal", "mean": 0.0, "sd": 1.0},
                "r0": 0.0,
            },
        }
        cfg_path = tmp_path / "expl.cfg"
        cfg_path.write_text(config_to_json(config_from_dict(bad)))
        res = _cli("run", str(cfg_path), "--output-dir", str(tmp_path / "out"))
        assert res.returncode == 3
        assert "+0.1159" in res.stderr

    def test_io_error_exit_code(self, tmp_path):
        cfg_path = tmp_path / "small.cfg"
        cfg_path.write_text(config_to_json(config_from_dict(SMALL_CONFIG)))
        target = tmp_path / "blocked"
        target.write_text("a file, not a directory")
        res = _cli("run", str(cfg_path), "--output-dir", str(target))
        assert res.returncode == 4

    def test_ingest_fit_tail_acf(self, tmp_path):
        prices = tmp_path / "prices.csv"
        gen = RngStream(3).generator()
        r = gen.normal(0.0, 0.01, 3000)
        p = 100.0 * np.cumprod(np.concatenate([[1.0], 1.0 + r]))
        prices.write_text(
            "\n".join(["date,close"] + [f"d{i},{repr(float(v))}" for i, v in enumerate(p)])
            + "\n"
        )
        out = tmp_path / "returns.csv"
        res = _cli("ingest", str(prices), "--out", str(out))
        assert res.returncode == 0, res.stderr
        assert json.loads(res.stdout)["n"] == 3000

        res = _cli("fit-tail", str(out))
        assert res.returncode == 0, res.stderr
        fit = json.loads(res.stdout)
        assert fit["n_tail"] >= 10 and fit["exponent"] > 0

        res = _cli("acf", str(out), "--max-lag", "5", "--absolute")
        assert res.returncode == 0
        lines = res.stdout.strip().splitlines()
        assert lines[0] == "lag,acf"
        assert len(lines) == 7

    def test_cramer_subcommand(self):
        res = _cli("cramer", "--law", '{"kind": "exponential", "mean": 0.55}')
        assert res.returncode == 0, res.stderr
        sol = json.loads(res.stdout)
        assert 2.99 <= sol["mu_star"] <= 3.01

    def test_cramer_thin_tail_exit_code(self):
        res = _cli("cramer", "--law", '{"kind": "uniform", "lo": 0.0, "hi": 0.5}')
        assert res.returncode == 3

    def test_lyapunov_subcommand(self, tmp_path):
        cfg = {
            **SMALL_CONFIG,
            "analyses": {"lyapunov": {"t_horizon": 200, "trials": 16}},
        }
        cfg_path = tmp_path / "ly.cfg"
        cfg_path.write_text(config_to_json(config_from_dict(cfg)))
        res = _cli("lyapunov", "--config", str(cfg_path))
        assert res.returncode == 0, res.stderr
        est = json.loads(res.stdout)
        assert est["gamma_hat"] < 0
