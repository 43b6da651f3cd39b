import csv
from pathlib import Path

import pytest

from combbeam.cli import (
    ConfigError,
    load_config_file,
    main,
    parse_config,
    scenario_path,
    serialize_config,
)

BUNDLED = ("single_source", "three_sources", "oblique_map",
           "oblique_map_mirrored", "boresight_curvature")


def _read_csv(path: Path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_scenarios_round_trip(name):
    cfg = load_config_file(scenario_path(name))
    again = parse_config(serialize_config(cfg))
    assert again == cfg


def test_scenario_path_unknown_name():
    with pytest.raises(ConfigError):
        scenario_path("missing_scenario")


def test_parse_rejects_unknown_keys():
    text = scenario_path("single_source").read_text() + "\n"
    with pytest.raises(ConfigError, match=r"sim.*foo"):
        parse_config(text.replace("sim:", "sim:\n  foo: 1"))
    with pytest.raises(ConfigError, match="config"):
        parse_config(text + "extra_section: {}\n")


def test_parse_rejects_bad_values():
    base = load_config_file(scenario_path("single_source"))
    d = base.to_dict()

    def rejects(mutate):
        data = base.to_dict()
        mutate(data)
        import yaml

        with pytest.raises(ConfigError):
            parse_config(yaml.safe_dump(data))

    rejects(lambda c: c["comb"].__setitem__("num_tones", "21"))
    rejects(lambda c: c["comb"].__setitem__("num_tones", True))
    rejects(lambda c: c.pop("comb"))
    rejects(lambda c: c.__setitem__("sources", []))
    rejects(lambda c: c["sources"].__setitem__(
        0, {"az_deg": -45.0, "range_m": 8.0, "position": [1, 2, 3]}))
    rejects(lambda c: c["sources"].__setitem__(0, {"range_m": 8.0}))
    rejects(lambda c: c["sources"].__setitem__(0, {"farfield": [0.1, 0.2, 0.3]}))
    rejects(lambda c: c["sources"].append({"farfield": [0.1, 0.0]}))
    rejects(lambda c: c["array"].__setitem__("kind", "circular"))
    rejects(lambda c: c["sim"].__setitem__("noise", {"sigma": -1.0}))
    assert d == base.to_dict()  # the fixture dict was never mutated in place


def test_simulate_single_source(tmp_path):
    out = tmp_path / "run"
    rc = main(["simulate", "--config", str(scenario_path("single_source")),
               "--out", str(out)])
    assert rc == 0
    header, rows = _read_csv(out / "envelope.csv")
    assert header == ["time_s", "envelope", "u", "azimuth_deg"]
    assert len(rows) == 4096
    header, rows = _read_csv(out / "peaks.csv")
    assert header == ["time_s", "u", "azimuth_deg", "magnitude"]
    assert len(rows) == 1
    assert -47.0 < float(rows[0][2]) < -43.0
    header, rows = _read_csv(out / "phasors.csv")
    assert header == ["element", "tone", "baseband_hz", "magnitude",
                      "phase_rad"]
    assert len(rows) == 21
    assert not list(out.glob("*.tmp"))


def test_simulate_reruns_are_byte_identical(tmp_path):
    args = ["simulate", "--config", str(scenario_path("single_source")),
            "--out", str(tmp_path)]
    assert main(args) == 0
    first = {p.name: p.read_bytes() for p in tmp_path.iterdir()}
    assert main(args) == 0
    second = {p.name: p.read_bytes() for p in tmp_path.iterdir()}
    assert first == second


def test_grid_points_override(tmp_path):
    rc = main(["simulate", "--config", str(scenario_path("single_source")),
               "--out", str(tmp_path), "--grid-points", "1024"])
    assert rc == 0
    _, rows = _read_csv(tmp_path / "envelope.csv")
    assert len(rows) == 1024


def test_simulate_silent_source_writes_empty_peaks(tmp_path):
    text = scenario_path("single_source").read_text().replace(
        "range_m: 8.4853", "range_m: 8.4853\n    amplitude: 0.0")
    cfg = tmp_path / "silent.yaml"
    cfg.write_text(text)
    rc = main(["simulate", "--config", str(cfg), "--out",
               str(tmp_path / "out")])
    assert rc == 0
    _, rows = _read_csv(tmp_path / "out" / "peaks.csv")
    assert rows == []


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("comb: {f0_hz: 1.0}\n")
    assert main(["simulate", "--config", str(bad),
                 "--out", str(tmp_path)]) == 1
    assert main(["simulate", "--config", str(tmp_path / "absent.yaml"),
                 "--out", str(tmp_path)]) == 3
    # single tone: the axis fit needs at least two tones -> runtime error
    single = tmp_path / "single.yaml"
    single.write_text(scenario_path("boresight_curvature").read_text())
    assert main(["simulate", "--config", str(single),
                 "--out", str(tmp_path)]) == 2
    # no output directory anywhere
    assert main(["simulate", "--config",
                 str(scenario_path("single_source"))]) == 1


def test_phase_map_command(tmp_path):
    rc = main(["phase-map", "--config", str(scenario_path("oblique_map")),
               "--out", str(tmp_path)])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "phase_map.csv")
    assert header == ["m", "n", "x_m", "y_m", "phase_deg"]
    assert len(rows) == 14 * 14
    assert all(-180.0 < float(r[4]) <= 180.0 for r in rows)
    header, rows = _read_csv(tmp_path / "curvature.csv")
    assert header == ["m", "n", "residual_cycles"]
    assert len(rows) == 14 * 14


def test_phase_map_rejects_linear_array(tmp_path):
    rc = main(["phase-map", "--config", str(scenario_path("single_source")),
               "--out", str(tmp_path)])
    assert rc == 1


def test_sweep_range(tmp_path):
    rc = main(["sweep", "--config", str(scenario_path("single_source")),
               "--out", str(tmp_path), "--param", "range_m",
               "--values", "2,8,32"])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "sweep.csv")
    assert header == ["value", "az_error_deg", "peak_magnitude", "width_u"]
    assert [float(r[0]) for r in rows] == [2.0, 8.0, 32.0]
    errs = [abs(float(r[1])) for r in rows]
    assert errs[0] > errs[1] > errs[2]


def test_sweep_num_tones_width_scaling(tmp_path):
    rc = main(["sweep", "--config", str(scenario_path("single_source")),
               "--out", str(tmp_path), "--param", "num_tones",
               "--values", "11,21"])
    assert rc == 0
    _, rows = _read_csv(tmp_path / "sweep.csv")
    w11, w21 = (float(r[3]) for r in rows)
    assert w11 / w21 == pytest.approx(21 / 11, rel=0.10)


def test_sweep_bad_param_and_values(tmp_path):
    base = ["sweep", "--config", str(scenario_path("single_source")),
            "--out", str(tmp_path)]
    assert main(base + ["--param", "frequency", "--values", "1"]) == 1
    assert main(base + ["--param", "range_m", "--values", " , "]) == 1
    assert main(base + ["--param", "num_tones", "--values", "eleven"]) == 1
    # range sweep over a plane-wave scene has no range to vary
    ff = tmp_path / "ff.yaml"
    ff.write_text("""
comb: {f0_hz: 19000800000.0, delta_f_hz: 200000.0, num_tones: 21,
       duration_s: 0.000005}
array: {kind: linear, m: 21, dx_m: 0.007887199631675874}
sources: [{farfield: [0.5, 0.0]}]
""")
    assert main(["sweep", "--config", str(ff), "--out", str(tmp_path),
                 "--param", "range_m", "--values", "2,4"]) == 2


def test_sweep_thread_count_does_not_change_output(tmp_path, monkeypatch):
    outputs = {}
    for threads in ("1", "3"):
        monkeypatch.setenv("COMBBEAM_THREADS", threads)
        out = tmp_path / threads
        rc = main(["sweep", "--config", str(scenario_path("single_source")),
                   "--out", str(out), "--param", "range_m",
                   "--values", "2,4,8,16,32"])
        assert rc == 0
        outputs[threads] = (out / "sweep.csv").read_bytes()
    assert outputs["1"] == outputs["3"]
    monkeypatch.setenv("COMBBEAM_THREADS", "0")
    assert main(["sweep", "--config", str(scenario_path("single_source")),
                 "--out", str(tmp_path), "--param", "range_m",
                 "--values", "2"]) == 1
    monkeypatch.setenv("COMBBEAM_THREADS", "many")
    assert main(["sweep", "--config", str(scenario_path("single_source")),
                 "--out", str(tmp_path), "--param", "range_m",
                 "--values", "2"]) == 1


def test_calibrate_prints_axis_and_probes(capsys):
    rc = main(["calibrate", "--config", str(scenario_path("single_source"))])
    assert rc == 0
    text = capsys.readouterr().out
    assert "slope_sign=-1" in text
    probe_lines = [ln for ln in text.splitlines() if ln.startswith("probe")]
    assert len(probe_lines) == 4
    for line in probe_lines:
        residual = float(line.rsplit("residual=", 1)[1])
        assert abs(residual) < 1e-3


def test_calibrate_descending_order(tmp_path, capsys):
    text = scenario_path("single_source").read_text().replace(
        "kind: linear", "kind: linear\n  tuning_order: descending")
    cfg = tmp_path / "desc.yaml"
    cfg.write_text(text)
    assert main(["calibrate", "--config", str(cfg)]) == 0
    assert "slope_sign=1" in capsys.readouterr().out


def test_seed_override_changes_noise(tmp_path):
    text = scenario_path("single_source").read_text().replace(
        "  lo_hz:", "  noise: {sigma: 0.5, seed: 0}\n  lo_hz:")
    cfg = tmp_path / "noisy.yaml"
    cfg.write_text(text)

    def run(seed, tag):
        out = tmp_path / tag
        assert main(["simulate", "--config", str(cfg), "--out", str(out),
                     "--seed", str(seed)]) == 0
        return (out / "envelope.csv").read_bytes()

    assert run(1, "a") == run(1, "b")
    assert run(1, "c") != run(2, "d")
