import csv
import io
import json

import pytest

from holdermd.cli import RunConfig, load_config, main, ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_wdm_table_default_grid(capsys):
    code, out, _ = run(capsys, "wdm-table")
    table = rows(out)
    assert code == 0
    assert table[0] == ["n", "p", "eps", "wdm"]
    assert len(table) == 81
    assert ["4", "2", "1.2", "2"] not in table  # 1.2 is not on the default grid
    assert ["4", "2", "1", "3"] in table  # eps = 2 * 4^(-1/2) exactly: left-closed


def test_wdm_table_spot_row(capsys):
    code, out, _ = run(capsys, "wdm-table", "--n", "4", "--p", "2", "--eps", "1.2")
    assert rows(out)[1] == ["4", "2", "1.2", "2"]


def test_wdm_table_empty_and_invalid(capsys):
    code, out, _ = run(capsys, "wdm-table", "--eps", "")
    assert code == 0 and out == "n,p,eps,wdm\n"
    code, _, err = run(capsys, "wdm-table", "--eps", "0.5,-1")
    assert code == 2 and "eps" in err


def test_profile_bounds(capsys, tmp_path):
    path = tmp_path / "b.csv"
    code, _, _ = run(capsys, "profile-bounds", "--p", "1", "--q", "2", "--c", "1",
                     "--i-max", "1000", "--output", str(path))
    table = rows(path.read_text())
    assert code == 0
    assert table[0] == ["i", "omega_size", "eps_i", "k_i", "lower",
                        "upper_component1", "upper_component2", "upper"]
    last = dict(zip(table[0], table[-1]))
    assert last["i"] == "1000" and last["omega_size"] == "2001"
    assert last["upper_component1"] == f"{2 * 2001 ** -0.5:.12g}"
    assert float(last["upper"]) < 0.05


def test_profile_bounds_p_equals_q(capsys):
    code, out, _ = run(capsys, "profile-bounds", "--p", "2", "--q", "2", "--i-max", "30")
    lower = {r[4] for r in rows(out)[1:]}
    assert code == 0 and len(lower) == 1


def test_profile_bounds_empty(capsys):
    code, out, _ = run(capsys, "profile-bounds", "--i-max", "0")
    assert code == 0 and len(rows(out)) == 1


def test_profile_bounds_reproducible(capsys):
    a = run(capsys, "profile-bounds", "--group", "F2", "--i-max", "8", "--r", "2")[1]
    b = run(capsys, "profile-bounds", "--group", "F2", "--i-max", "8", "--r", "2")[1]
    assert a == b and len(rows(a)) == 9


def test_verdict(capsys):
    code, out, _ = run(capsys, "verdict", "2", "3", "1")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "Obstructed" and "sequence" not in d
    _, out, _ = run(capsys, "verdict", "2", "3", "2/3")
    d = json.loads(out)
    assert d["verdict"] == "NoObstruction" and d["boundary"] is True
    _, out, _ = run(capsys, "verdict", "1", "2", "0.6", "--full-report")
    d = json.loads(out)
    assert d["verdict"] == "Obstructed" and len(d["sequence"]) > 0
    code, _, _ = run(capsys, "verdict", "2", "3", "1.5")
    assert code == 2


def test_mazur_probe(capsys, tmp_path):
    csv_path = tmp_path / "probe.csv"
    code, out, _ = run(capsys, "mazur-probe", "--samples", "400", "--seed", "4",
                       "--output", str(csv_path), "--threads", "2")
    d = json.loads(out)
    assert code == 0 and d["samples"] == 400
    assert d["overall_max_ratio"] <= 2**0.5 + 3e-9
    table = rows(csv_path.read_text())
    assert table[0] == ["decade", "count", "max_ratio"]
    assert sum(int(r[1]) for r in table[1:]) == 400
    again = run(capsys, "mazur-probe", "--samples", "400", "--seed", "4", "--threads", "1")[1]
    assert again == out


def test_mazur_probe_zero_samples(capsys):
    code, out, _ = run(capsys, "mazur-probe", "--samples", "0")
    d = json.loads(out)
    assert code == 0 and d["degenerate"] is True and d["decades"] == []


def test_embed_check(capsys):
    code, out, _ = run(capsys, "embed-check", "--n", "2", "--p", "1", "--r", "1", "--h", "0.05")
    d = json.loads(out)
    assert code == 0 and d["certified"] and 0.9 <= d["max_fiber_diameter"] <= 1.1


def test_embed_check_errors(capsys):
    assert run(capsys, "embed-check", "--n", "2", "--r", "2")[0] == 2
    assert run(capsys, "embed-check", "--n", "4", "--h", "0.01")[0] == 3


def test_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "wdm-table", "--output", str(tmp_path / "missing" / "x.csv"))
    assert code == 4 and "I/O" in err


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[wdm]\nn = 1-3\np = 1\neps = 0.5, 1.5\n")
    code, out, _ = run(capsys, "wdm-table", "--config", str(cfg))
    assert code == 0 and len(rows(out)) == 1 + 3 * 2
    code, out, _ = run(capsys, "wdm-table", "--config", str(cfg), "--n", "5")
    assert len(rows(out)) == 1 + 2
    code, out, _ = run(capsys, "wdm-table", "--config", str(cfg), "--set", "wdm.p=1,2")
    assert len(rows(out)) == 1 + 3 * 2 * 2


def test_config_rejects_unknown_keys(capsys, tmp_path):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[metric]\nr = 2\n\n[profile]\nc = 1\nfoo = 3\n")
    code, _, err = run(capsys, "profile-bounds", "--config", str(cfg))
    assert code == 2 and ":6:" in err and "profile.foo" in err
    cfg.write_text("[metric]\nr = 0.5\n")
    code, _, err = run(capsys, "profile-bounds", "--config", str(cfg))
    assert code == 2 and ":2:" in err
    cfg.write_text("[nonsense]\nx = 1\n")
    with pytest.raises(ConfigError):
        load_config(str(cfg))


def test_config_builds_library_objects(tmp_path):
    cfg = tmp_path / "ok.ini"
    cfg.write_text("[group]\nkind = Z2\n[metric]\nr = inf\ntau = 1e-10\n[windows]\nomega_step = 2\n")
    c = load_config(str(cfg))
    assert isinstance(c, RunConfig)
    assert c.metric_spec().tau == 1e-10 and c.omega_rule().radius(3) == 6
    assert c.model().name == "Z2"
