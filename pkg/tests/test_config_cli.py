"""Config schema, layering, hashing, and the command-line front end."""

import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from weakslit import ConfigError, PRESETS, from_dict, parse_config
from weakslit.cli import main
from weakslit.config import DEFAULTS, apply_override

TWO_PI = 2.0 * math.pi


class TestDefaultsAndPresets:
    def test_default_scenario(self):
        cfg = from_dict({})
        assert cfg.data["channel"]["kind"] == "identity"
        assert cfg.eraser() == "none"
        grid = cfg.sim_grid()
        assert grid.n_points == 16384 and grid.x_extent == 64.0
        assert cfg.window_indices() == range(-7, 8)
        assert cfg.focus_window().index == -1

    def test_window_width_crosses_unit_systems(self):
        cfg = from_dict({})
        lab = cfg.data["lab"]
        sliver = cfg.data["windows"]["sliver_width"]
        sep = cfg.data["geometry"]["separation"]
        expected = TWO_PI * sliver * sep / (lab["wavelength"]
                                            * lab["focal_length"])
        assert cfg.window_width_internal() == pytest.approx(expected,
                                                            rel=1e-12)
        # a shade under a quarter of the fringe spacing
        assert cfg.window_width_internal() / TWO_PI == pytest.approx(
            0.2237, abs=1e-4)

    def test_paper_preset_toggles_the_marker_only(self):
        cfg = from_dict(PRESETS["paper"])
        assert cfg.data["channel"]["kind"] == "scully"
        geom = cfg.slit_geometry()
        assert geom.width == pytest.approx(0.5)
        assert geom.separation == 1.0
        base = {k: v for k, v in cfg.data.items() if k != "channel"}
        assert base == {k: v for k, v in from_dict({}).data.items()
                        if k != "channel"}

    def test_regularization_sweeps_fill_in(self):
        reg = from_dict({}).regularization()
        assert len(reg.q_max) == 48
        assert reg.q_max[0] == pytest.approx(0.5)
        assert reg.q_max[-1] == pytest.approx(4.0 * TWO_PI)
        assert reg.kappa == tuple(TWO_PI * k for k in (1.0, 2.0, 4.0, 8.0, 16.0))
        explicit = from_dict({"regularization": {"q_max": [1.0, 2.0]}})
        assert explicit.regularization().q_max == (1.0, 2.0)

    def test_defaults_are_not_mutated_by_merging(self):
        before = json.dumps(DEFAULTS, sort_keys=True)
        from_dict({"grid": {"n_points": 1024}})
        assert json.dumps(DEFAULTS, sort_keys=True) == before


class TestValidation:
    def test_unknown_key_reports_dotted_path(self):
        with pytest.raises(ConfigError, match="windows.widht"):
            from_dict({"windows": {"widht": 3}})

    @pytest.mark.parametrize("overrides", [
        {"lab": {"wavelength": -1.0}},
        {"lab": {"wavelength": "red"}},
        {"geometry": {"width": 90e-6}},          # wider than the separation
        {"geometry": {"edge_profile": "soft"}},
        {"grid": {"n_points": 1000}},            # not a power of two
        {"grid": {"n_points": 4}},
        {"channel": {"kind": "teleport"}},
        {"channel": {"kind": "kick"}},           # kicks list left empty
        {"channel": {"kind": "kick", "kicks": [[1.0, 0.5, 0.2]]}},
        {"windows": {"count": 4}},
        {"windows": {"count": -3}},
        {"windows": {"focus_index": 1.5}},
        {"eraser": "maybe"},
        {"pointer": {"ratios": []}},
        {"pointer": {"ratios": [1.5]}},
        {"pointer": {"ratios": [0.0]}},
        {"regularization": {"q_max": [-1.0]}},
        {"output_dir": ""},
    ])
    def test_rejected(self, overrides):
        with pytest.raises(ConfigError):
            from_dict(overrides)


class TestParsingAndOverrides:
    def test_empty_document_means_defaults(self):
        assert parse_config(" \n ").data == from_dict({}).data

    def test_bad_json_is_a_config_error(self):
        with pytest.raises(ConfigError):
            parse_config("{ nope")
        with pytest.raises(ConfigError):
            parse_config("[1, 2]")

    def test_override_parses_json_values(self):
        raw = apply_override({}, "grid.n_points=1024")
        assert raw == {"grid": {"n_points": 1024}}
        raw = apply_override(raw, "regularization.q_max=[1.0, 2.5]")
        assert raw["regularization"]["q_max"] == [1.0, 2.5]

    def test_override_falls_back_to_bare_string(self):
        assert apply_override({}, "eraser=plus45") == {"eraser": "plus45"}

    def test_override_error_paths(self):
        with pytest.raises(ConfigError):
            apply_override({"eraser": "none"}, "eraser.kind=1")
        with pytest.raises(ConfigError):
            apply_override({}, "no-equals-sign")


class TestConfigHash:
    def test_ignores_output_destination(self):
        assert from_dict({}).config_hash() \
            == from_dict({"output_dir": "elsewhere"}).config_hash()

    def test_sensitive_to_physics(self):
        assert from_dict({}).config_hash() \
            != from_dict({"grid": {"n_points": 8192}}).config_hash()

    def test_insensitive_to_key_order(self):
        a = parse_config('{"grid": {"x_extent": 64.0, "n_points": 16384}}')
        b = parse_config('{"grid": {"n_points": 16384, "x_extent": 64.0}}')
        assert a.config_hash() == b.config_hash()


FAST = ["--set", "grid.n_points=1024"]


class TestCliRuns:
    def test_wvp_end_to_end(self, tmp_path, capsys):
        out = tmp_path / "run"
        assert main(["wvp", "--out", str(out)] + FAST) == 0
        names = sorted(p.name for p in out.iterdir())
        assert names == ["intensity.csv", "summary.json", "wvp.csv", "wvp.svg"]

        header = (out / "wvp.csv").read_text().splitlines()[0]
        assert header == ("p_f [hbar/s],p_f_lab [mm],conditional [1],"
                          "joint [s/hbar],defined [0/1]")

        summary = json.loads((out / "summary.json").read_text())
        assert summary["command"] == "wvp"
        sha = summary["provenance"]["config_sha256"]
        assert len(sha) == 64 and int(sha, 16) >= 0
        assert summary["provenance"]["grid_n_points"] == 1024

        ET.fromstring((out / "wvp.svg").read_text())
        printed = capsys.readouterr().out.splitlines()
        assert sorted(printed) == sorted(str(out / n) for n in names)

    def test_reruns_are_byte_identical(self, tmp_path):
        args = ["wvp", "--preset", "paper"] + FAST
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        for path in sorted(out1.iterdir()):
            assert path.read_bytes() == (out2 / path.name).read_bytes()

    def test_preset_equals_explicit_override(self, tmp_path):
        out1, out2 = tmp_path / "preset", tmp_path / "setkey"
        assert main(["wvp", "--preset", "paper", "--out", str(out1)]
                    + FAST) == 0
        assert main(["wvp", "--set", "channel.kind=scully", "--out", str(out2)]
                    + FAST) == 0
        assert (out1 / "summary.json").read_bytes() \
            == (out2 / "summary.json").read_bytes()

    def test_config_file_layers_between_preset_and_set(self, tmp_path):
        cfg = tmp_path / "scenario.json"
        cfg.write_text(json.dumps(
            {"channel": {"kind": "identity"}, "windows": {"count": 5}}))
        out = tmp_path / "out"
        assert main(["wvp", "--preset", "paper", "--config", str(cfg),
                     "--set", "windows.count=3", "--out", str(out)]
                    + FAST) == 0
        summary = json.loads((out / "summary.json").read_text())
        # file overrode the preset's channel; --set overrode the file's count
        ref = tmp_path / "ref"
        assert main(["wvp", "--set", "windows.count=3", "--out", str(ref)]
                    + FAST) == 0
        assert (out / "summary.json").read_bytes() \
            == (ref / "summary.json").read_bytes()
        assert summary["summary"]["window_index"] == -1

    def test_module_entry_point(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "weakslit", "wvp",
             "--out", str(tmp_path / "m")] + FAST,
            capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr


class TestCliExitCodes:
    def test_unknown_config_key(self, tmp_path, capsys):
        rc = main(["wvp", "--set", "nope.key=1",
                   "--out", str(tmp_path / "x")])
        assert rc == 2
        assert "config error" in capsys.readouterr().err

    def test_malformed_override(self, tmp_path):
        assert main(["wvp", "--set", "no-equals",
                     "--out", str(tmp_path / "x")]) == 2

    def test_bad_config_file(self, tmp_path):
        cfg = tmp_path / "bad.json"
        cfg.write_text("{ not json")
        assert main(["wvp", "--config", str(cfg),
                     "--out", str(tmp_path / "x")]) == 2

    def test_unresolvable_window_width(self, tmp_path, capsys):
        rc = main(["wvp", "--set", "windows.sliver_width=1e-9",
                   "--out", str(tmp_path / "x")] + FAST)
        assert rc == 3
        assert "numeric error" in capsys.readouterr().err

    @pytest.mark.filterwarnings("ignore::weakslit.errors.CoverageWarning")
    def test_cutoff_beyond_grid_range(self, tmp_path):
        assert main(["variance", "--set", "regularization.q_max=[99999]",
                     "--out", str(tmp_path / "x")] + FAST) == 3

    def test_unwritable_output_directory(self, tmp_path, capsys):
        blocker = tmp_path / "blocker"
        blocker.write_text("in the way")
        rc = main(["wvp", "--out", str(blocker / "sub")] + FAST)
        assert rc == 4
        assert "i/o error" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path):
        assert main(["wvp", "--config", str(tmp_path / "absent.json"),
                     "--out", str(tmp_path / "x")]) == 4

    def test_unknown_preset_rejected_by_parser(self, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            main(["wvp", "--preset", "imaginary",
                  "--out", str(tmp_path / "x")])
        assert excinfo.value.code == 2
