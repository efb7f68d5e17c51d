import json
import math

import pytest

from ghz_decay import bounds, cli, harness, qstate
from ghz_decay.errors import ConfigError, NumericalError, ResourceError
from ghz_decay.harness import Kind, data_rows, parse_config, parse_config_dict, run, write_tables


def write(tmp_path, text, name="cfg.json"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_empty_file_needs_kind(tmp_path):
    with pytest.raises(ConfigError, match="kind"):
        parse_config(write(tmp_path, ""))
    spec = parse_config(write(tmp_path, ""), kind="bound")
    assert spec.kind is Kind.BOUND and spec.p_grid == harness.DEFAULT_P_GRID


def test_out_of_range_p_names_the_key(tmp_path):
    text = '{\n  "kind": "evolve",\n  "N": 3,\n  "p": 1.5\n}'
    with pytest.raises(ConfigError) as info:
        parse_config(write(tmp_path, text))
    assert info.value.key == "p" and info.value.line == 4
    assert "'p'" in str(info.value)


def test_unknown_key_reported_with_line(tmp_path):
    text = '{\n  "kind": "bound",\n  "colour": 3\n}'
    with pytest.raises(ConfigError) as info:
        parse_config(write(tmp_path, text))
    assert info.value.key == "colour" and info.value.line == 3


def test_malformed_json_line(tmp_path):
    with pytest.raises(ConfigError) as info:
        parse_config(write(tmp_path, '{"kind": "bound",\n "N": [2,,3]}'))
    assert info.value.line == 2


def test_figure_configs_enforce_their_setup():
    with pytest.raises(ConfigError, match="dephasing"):
        parse_config_dict({"kind": "fig3", "channel": {"family": "depolarizing"}})
    with pytest.raises(ConfigError, match="least_balanced"):
        parse_config_dict({"kind": "fig2", "cut_policy": "most_balanced"})
    with pytest.raises(ConfigError):
        parse_config_dict({"kind": "fig3", "p_grid": [0.1, 0.2]})


def test_qubit_cap_is_a_resource_error():
    with pytest.raises(ResourceError, match="bytes"):
        parse_config_dict({"kind": "sample", "N": 11})


@pytest.mark.parametrize("obj", [
    {"kind": "fig3"},
    {"kind": "fig1", "N": [2, 3], "seed": 9, "schedule": {"2": 10, "3": 5}},
    {"kind": "evolve", "N": 3, "initial_state": {"k": 1, "parity": -1, "alpha": 0.6, "beta": [0, 0.8]},
     "channel": {"family": "thermal", "nbar": 0.5}},
    {"kind": "bound", "channel": {"family": "thermal", "diffusive": True}, "p": 0.3},
])
def test_echo_round_trip(obj):
    spec = parse_config_dict(obj)
    assert parse_config_dict(json.loads(spec.echo())) == spec


def test_csv_metadata_and_float_format(tmp_path):
    spec = parse_config_dict({"kind": "bound", "N": [3], "p_grid": [0.1], "seed": 5, "out": str(tmp_path)})
    (table,) = run(spec)
    text = table.to_csv(spec)
    lines = text.splitlines()
    assert lines[0].startswith("# ghz-decay ")
    assert "# seed: 5" in lines
    echo = next(ln for ln in lines if ln.startswith("# config: "))
    assert parse_config_dict(json.loads(echo[len("# config: "):])) == spec
    rows = data_rows(text)
    assert rows[0] == "family,N,p,nbar,kappa,multiplier"
    value = float(rows[1].split(",")[-1])
    assert value == 0.9**3
    assert rows[1].split(",")[-1] == f"{0.9**3:.17g}"


def test_write_tables(tmp_path):
    spec = parse_config_dict({"kind": "sample", "N": 2, "sample_size": 3, "p_grid": [0.0, 0.5],
                              "out": str(tmp_path)})
    paths = write_tables(run(spec), spec)
    assert sorted(p.rsplit("/", 1)[-1] for p in paths) == ["sample_N2.csv", "sample_N2.json"]
    summary = json.loads((tmp_path / "sample_N2.json").read_text())
    assert summary["sample_size"] == 3 and summary["config"]["kind"] == "sample"


def evolve(**kw):
    obj = {"kind": "evolve", "N": 3, "p_grid": [0.0, 0.3, 1.0]}
    obj.update(kw)
    (table,) = run(parse_config_dict(obj))
    return table


def test_evolve_dephased_ghz_matches_bound():
    t = evolve(channel={"family": "dephasing"}, cut_policy="all")
    for p, norm, mult in zip(t.column("p"), t.column("normalized"), t.column("bound_multiplier")):
        assert norm == pytest.approx((1 - p) ** 3, abs=1e-12)
        assert mult == bounds.bound_dephasing(3, p)


def test_evolve_identity_row():
    t = evolve(p_grid=[0.0])
    (row,) = t.rows
    assert row[t.columns.index("normalized")] == 1.0
    assert row[t.columns.index("negativity")] == pytest.approx(0.5, abs=1e-12)


def test_evolve_amplitude_damping_to_ground():
    t = evolve(channel={"family": "thermal", "nbar": 0.0}, p_grid=[1.0])
    assert t.column("negativity")[0] == pytest.approx(0.0, abs=1e-12)


def test_evolve_thermal_bound_uses_max_negativity():
    t = evolve(channel={"family": "thermal", "nbar": 1.0}, p_grid=[0.4], cut_policy="all",
               initial_state={"k": 1, "alpha": 0.6, "beta": 0.8})
    for neg, bound in zip(t.column("negativity"), t.column("bound")):
        assert neg <= bound + 1e-9


def test_evolve_from_state_file(tmp_path):
    psi = qstate.make_generalized_ghz(qstate.GhzSpec.balanced(2))
    path = write(tmp_path, qstate.state_to_json(psi), "bell.json")
    (table,) = run(parse_config_dict({"kind": "evolve", "state_file": str(path), "p": 0.5,
                                      "channel": {"family": "dephasing"}}))
    assert table.column("normalized")[0] == pytest.approx(0.25, abs=1e-12)


def test_bound_table_rows():
    (t,) = run(parse_config_dict({"kind": "bound", "N": [2, 4], "p_grid": [0.5],
                                  "channel": {"family": "thermal", "nbar": 1.0}}))
    assert t.column("family") == ["thermal_uniform", "thermal_uniform"]
    assert t.column("multiplier") == [bounds.bound_thermal_uniform(n, 1.0, 0.5) for n in (2, 4)]


def test_fig3_bound_column_decreasing():
    spec = parse_config_dict({"kind": "fig3", "N": [2, 3, 4], "sample_size": 20})
    (t,) = run(spec)
    b = t.column("bound")
    assert b == [0.7**n for n in (2, 3, 4)]
    assert all(y < x for x, y in zip(b, b[1:]))
    assert all(c + e == 20 for c, e in zip(t.column("count"), t.column("excluded")))


def test_fig1_tables_shape():
    spec = parse_config_dict({"kind": "fig1", "N": [2], "sample_size": 10, "p_grid": [0.0, 0.5], "bins": 4})
    curve, hist = run(spec)
    assert curve.name == "fig1_N2" and hist.name == "fig1_N2_hist"
    # Bell pair at p = 0.5: (1-p)^2 = 1/4 is below the separability threshold 1/3
    assert curve.column("ghz") == [1.0, 0.0]
    assert len(hist.rows) == 8


# -- CLI -------------------------------------------------------------------

def test_cli_success(tmp_path, capsys):
    cfg = write(tmp_path, '{"kind": "bound", "N": [2], "p": 0.5}')
    assert cli.main(["bound", "--config", str(cfg), "--out", str(tmp_path / "o"), "--quiet"]) == 0
    assert (tmp_path / "o" / "bounds.csv").exists()


def test_cli_config_error(tmp_path, capsys):
    cfg = write(tmp_path, '{"kind": "evolve", "N": 2, "p": 1.5}')
    assert cli.main(["evolve", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    assert "'p'" in capsys.readouterr().err


def test_cli_resource_error(tmp_path, capsys):
    cfg = write(tmp_path, '{"kind": "sample", "N": 12}')
    assert cli.main(["sample", "--config", str(cfg), "--out", str(tmp_path)]) == 4
    assert "bytes" in capsys.readouterr().err


def test_cli_numeric_error(tmp_path, monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise NumericalError("eigensolver did not converge")

    monkeypatch.setattr(harness, "negativity", broken)
    cfg = write(tmp_path, '{"kind": "evolve", "N": 2, "p": 0.5}')
    assert cli.main(["evolve", "--config", str(cfg), "--out", str(tmp_path)]) == 3
    assert "converge" in capsys.readouterr().err


def test_cli_seed_override(tmp_path):
    cfg = write(tmp_path, '{"kind": "sample", "N": 2, "sample_size": 4, "p": 0.4, "seed": 1}')
    out = tmp_path / "o"
    assert cli.main(["sample", "--config", str(cfg), "--seed", "8", "--out", str(out), "--quiet"]) == 0
    assert "# seed: 8" in (out / "sample_N2.csv").read_text()
