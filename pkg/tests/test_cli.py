"""End-to-end command line checks: output layout, seed overrides, sweep and
plot subcommands, and error reporting with nonzero exit codes."""

import shutil
import xml.etree.ElementTree as ET

import pytest

from balancebot.cli import main
from balancebot.harness import parse_csv
from balancebot.mlp import load_network
from balancebot.qlearn import load_qtable

NS = "{http://www.w3.org/2000/svg}"

PID_CFG = """
algo = pid-baseline
episodes = 2
seed = 4
"""

Q_CFG = """
algo = q-learning
episodes = 20
iterations = 60
target = 60
seed = 11
"""

DQN_CFG = """
algo = dqn
layer_sizes = 1, 8, 10
episodes = 3
iterations = 40
target = 40
batch_size = 8
seed = 13
"""


def write_cfg(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def svg_polyline_count(path):
    return len(ET.parse(path).getroot().findall(f".//{NS}polyline"))


def test_train_writes_csv_svg_png(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "smoke.cfg", PID_CFG)
    out = tmp_path / "out"
    assert main(["train", "--config", cfg, "--out", str(out)]) == 0
    assert (out / "smoke.csv").is_file()
    assert (out / "smoke.svg").is_file()
    assert (out / "smoke.png").is_file()
    log = parse_csv(out / "smoke.csv")
    assert len(log) == 2
    assert all(rec.reward == 2000.0 for rec in log)
    assert svg_polyline_count(out / "smoke.svg") == 1
    assert (out / "smoke.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    stdout = capsys.readouterr().out
    assert "smoke" in stdout and "2 episodes" in stdout


def test_train_tabular_saves_qtable(tmp_path):
    cfg = write_cfg(tmp_path, "tab.cfg", Q_CFG)
    out = tmp_path / "out"
    assert main(["train", "--config", cfg, "--out", str(out)]) == 0
    table = load_qtable(out / "tab.qtable.txt")
    assert table.values.shape == (20, 10)
    assert not (out / "tab.net.txt").exists()


def test_train_network_saves_net(tmp_path):
    cfg = write_cfg(tmp_path, "net.cfg", DQN_CFG)
    out = tmp_path / "out"
    assert main(["train", "--config", cfg, "--out", str(out)]) == 0
    net = load_network(out / "net.net.txt")
    assert net.layer_sizes == (1, 8, 10)
    assert not (out / "net.qtable.txt").exists()


def test_config_name_key_overrides_file_stem(tmp_path):
    cfg = write_cfg(tmp_path, "file.cfg", PID_CFG + "name = custom\n")
    out = tmp_path / "out"
    assert main(["train", "--config", cfg, "--out", str(out)]) == 0
    assert (out / "custom.csv").is_file()
    assert not (out / "file.csv").exists()


def test_seed_override_controls_reproducibility(tmp_path):
    cfg = write_cfg(tmp_path, "tab.cfg", Q_CFG)
    outs = [tmp_path / f"out{i}" for i in range(3)]
    main(["train", "--config", cfg, "--out", str(outs[0]), "--seed", "5"])
    main(["train", "--config", cfg, "--out", str(outs[1]), "--seed", "5"])
    main(["train", "--config", cfg, "--out", str(outs[2]), "--seed", "6"])
    csv0 = (outs[0] / "tab.csv").read_bytes()
    csv1 = (outs[1] / "tab.csv").read_bytes()
    csv2 = (outs[2] / "tab.csv").read_bytes()
    assert csv0 == csv1
    assert csv0 != csv2


def test_train_requires_exactly_one_config(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "a.cfg", PID_CFG)
    out = str(tmp_path / "out")
    assert main(["train", "--out", out]) == 1
    assert main(
        ["train", "--config", cfg, "--config", cfg, "--out", out]
    ) == 1
    err = capsys.readouterr().err
    assert err.count("error:") == 2


def test_unknown_preset_fails_and_lists_names(tmp_path, capsys):
    out = str(tmp_path / "out")
    assert main(["train", "--preset", "mystery", "--out", out]) == 1
    err = capsys.readouterr().err
    assert "mystery" in err
    assert "q-alpha80" in err


def test_bad_config_reports_line(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "bad.cfg", "alpa = 1\n")
    assert main(["train", "--config", cfg, "--out", str(tmp_path)]) == 1
    err = capsys.readouterr().err
    assert "alpa" in err and "line 1" in err


def test_sweep_writes_individual_and_combined_outputs(tmp_path, capsys):
    cfg_a = write_cfg(tmp_path, "runa.cfg", Q_CFG)
    cfg_b = write_cfg(tmp_path, "runb.cfg", Q_CFG + "alpha = 0.65\n")
    out = tmp_path / "out"
    code = main([
        "sweep", "--config", cfg_a, "--config", cfg_b,
        "--out", str(out), "--name", "alphas",
    ])
    assert code == 0
    for stem in ("runa", "runb"):
        assert (out / f"{stem}.csv").is_file()
        assert (out / f"{stem}.svg").is_file()
        assert (out / f"{stem}.qtable.txt").is_file()
    assert svg_polyline_count(out / "alphas.svg") == 2
    assert (out / "alphas.png").is_file()
    stdout = capsys.readouterr().out
    assert "runa" in stdout and "runb" in stdout


def test_sweep_rejects_duplicate_run_names(tmp_path):
    inner = tmp_path / "inner"
    inner.mkdir()
    cfg_a = write_cfg(tmp_path, "same.cfg", PID_CFG)
    cfg_b = write_cfg(inner, "same.cfg", PID_CFG)
    out = str(tmp_path / "out")
    assert main(["sweep", "--config", cfg_a, "--config", cfg_b,
                 "--out", out]) == 1


def test_plot_rerenders_from_csv(tmp_path):
    cfg = write_cfg(tmp_path, "tab.cfg", Q_CFG)
    out = tmp_path / "out"
    main(["train", "--config", cfg, "--out", str(out)])
    plots = tmp_path / "plots"
    code = main([
        "plot", str(out / "tab.csv"), str(out / "tab.csv"),
        "--out", str(plots), "--name", "replot",
    ])
    assert code == 0
    assert svg_polyline_count(plots / "replot.svg") == 2
    assert (plots / "replot.png").is_file()


def test_plot_missing_csv_fails(tmp_path, capsys):
    code = main(["plot", str(tmp_path / "nope.csv"), "--out", str(tmp_path)])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_help_exits_zero():
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0


def test_console_script_is_installed():
    assert shutil.which("balancebot") is not None
