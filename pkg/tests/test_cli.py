import json
import sys
import types

from chipsplit.cli import run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_icm_table(capsys):
    code, out, err = run(capsys, "icm", "--stacks", "1000,500,100", "--prizes", "100,50,0")
    assert code == 0
    assert "78.79" in out and "58.33" in out and "12.88" in out
    assert "62.5%" in out
    assert "total" in out


def test_icm_json_fields(capsys):
    code, out, _ = run(
        capsys, "icm", "--stacks", "1000,500,100", "--prizes", "100,50,0",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["model"] == "icm"
    assert len(payload["equity"]) == 3
    assert abs(payload["equity"][0] - 78.79) < 0.005
    assert payload["explored_mass"] == 1.0
    assert payload["pruned_nodes"] == 0
    assert "nodes_visited" in payload and "win_prob" in payload


def test_json_round_trips_byte_identically(capsys):
    code, out, _ = run(
        capsys, "dcm", "--stacks", "1000,500,100", "--prizes", "100,50,0",
        "--format", "json",
    )
    assert code == 0
    assert out == json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n"


def test_dcm_table_and_flags(capsys):
    code, out, _ = run(
        capsys, "dcm", "--stacks", "1000,500,100", "--prizes", "100,50,0",
        "--max-depth", "50", "--min-prob", "1e-15", "--leaf-policy", "forced",
    )
    assert code == 0
    assert "80.79" in out and "60.67" in out and "8.54" in out
    assert "nodes=308" in out


def test_dcm_shortcut_flag(capsys):
    code, out, _ = run(
        capsys, "dcm", "--stacks", "1000,500,100", "--prizes", "100,50,0",
        "--two-player-shortcut", "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["nodes_visited"] == 94


def test_dcm_leaf_policy_choices(capsys):
    for policy in ("forced", "icm", "analytic2"):
        code, out, _ = run(
            capsys, "dcm", "--stacks", "1000,500", "--prizes", "100,50",
            "--leaf-policy", policy, "--format", "json",
        )
        assert code == 0
        assert abs(json.loads(out)["equity"][0] - 83.33) < 0.01


def test_compare_table(capsys):
    code, out, _ = run(capsys, "compare", "--stacks", "1000,500,100", "--prizes", "100,50,0")
    assert code == 0
    assert "+2.5" in out and "+4.0" in out and "-33.7" in out


def test_compare_json(capsys):
    code, out, _ = run(
        capsys, "compare", "--stacks", "1000,500,100", "--prizes", "100,50,0",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["model"] == "compare"
    assert payload["players"][2]["pct_diff"] < -33
    assert payload["icm"]["model"] == "icm"
    assert payload["dcm"]["model"] == "dcm"


def test_positions_json(capsys):
    code, out, _ = run(capsys, "positions", "--stacks", "1000,500,100", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    for model in ("icm", "dcm"):
        q = payload[model]["q"]
        assert len(q) == 3 and len(q[0]) == 3
        for s in payload[model]["row_sums"]:
            assert abs(s - 1.0) < 1e-9
    assert abs(payload["dcm"]["q"][0][0] - 0.625) < 1e-9


def test_positions_table(capsys):
    code, out, _ = run(capsys, "positions", "--stacks", "1000,500,100")
    assert code == 0
    assert "icm finish probabilities" in out
    assert "dcm finish probabilities" in out
    assert "62.50" in out


def test_decide_table_and_json(capsys):
    args = (
        "decide", "--prizes", "50,30,20", "--hero", "2",
        "--fold-stacks", "1200,800,2000,3000",
        "--win-stacks", "0,2000,2000,3000",
        "--lose-stacks", "2000,0,2000,3000",
        "--equity", "0.40",
    )
    code, out, _ = run(capsys, *args)
    assert code == 0
    assert "fold" in out and "call" in out
    assert "47.8%" in out and "31.2%" in out

    code, out, _ = run(capsys, *args, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["icm"]["recommendation"] == "fold"
    assert payload["dcm"]["recommendation"] == "call"
    assert abs(payload["icm"]["threshold"] - 0.478) < 0.005
    assert abs(payload["dcm"]["ev_fold"] - 9.57) < 0.02


def test_oracle_command(capsys):
    code, out, _ = run(
        capsys, "oracle", "--stacks", "2,1", "--prizes", "1",
        "--exact-oracle", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["model"] == "oracle"
    assert payload["equity"] == [2.0 / 3.0, 1.0 / 3.0]


def test_exit_code_usage_errors(capsys):
    code, _, err = run(capsys, "dcm", "--stacks", "abc", "--prizes", "100")
    assert code == 1
    assert "--stacks" in err

    code, _, err = run(capsys, "dcm", "--stacks", "100,50")
    assert code == 1

    code, _, err = run(capsys, "nonsense")
    assert code == 1

    code, _, err = run(capsys, "dcm", "--stacks", "", "--prizes", "100")
    assert code == 1
    assert "--stacks" in err


def test_exit_code_validation_errors(capsys):
    code, _, err = run(capsys, "dcm", "--stacks", "0,5", "--prizes", "100")
    assert code == 2
    assert "positive" in err

    code, _, err = run(capsys, "dcm", "--stacks", "100,50", "--prizes", "100,50,25")
    assert code == 2

    code, _, err = run(
        capsys, "dcm", "--stacks", "100,50", "--prizes", "100", "--max-depth", "0"
    )
    assert code == 2
    assert "max_depth" in err

    code, _, err = run(capsys, "icm", "--stacks", "100,50", "--prizes", "50,100")
    assert code == 2


def test_exit_code_resource_and_internal_errors(capsys, monkeypatch):
    import chipsplit.cli as cli_mod
    from chipsplit import InternalError, ResourceLimitError

    def out_of_states(*args, **kwargs):
        raise ResourceLimitError("state budget exceeded (50 states)")

    monkeypatch.setattr(cli_mod, "oracle_equities", out_of_states)
    code, _, err = run(capsys, "oracle", "--stacks", "2,1", "--prizes", "1")
    assert code == 3
    assert "state budget" in err

    def broken(*args, **kwargs):
        raise InternalError("invariant violated")

    monkeypatch.setattr(cli_mod, "dcm_equities", broken)
    code, _, err = run(capsys, "dcm", "--stacks", "2,1", "--prizes", "1")
    assert code == 3
    assert "invariant" in err


def test_negative_stack_is_validation_not_usage(capsys):
    code, _, err = run(capsys, "dcm", "--stacks", "-5,100", "--prizes", "100")
    assert code == 2


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "icm" in out and "dcm" in out and "serve" in out


def test_serve_env_port_overrides_flag(capsys, monkeypatch):
    calls = {}

    def fake_run(app, host, port, log_level):
        calls["host"] = host
        calls["port"] = port

    monkeypatch.setitem(sys.modules, "uvicorn", types.SimpleNamespace(run=fake_run))
    monkeypatch.setenv("CHIPSPLIT_PORT", "9321")
    code, _, _ = run(capsys, "serve", "--port", "8000")
    assert code == 0
    assert calls["port"] == 9321
    assert calls["host"] == "127.0.0.1"


def test_serve_rejects_bad_env_port(capsys, monkeypatch):
    monkeypatch.setitem(
        sys.modules, "uvicorn", types.SimpleNamespace(run=lambda *a, **k: None)
    )
    monkeypatch.setenv("CHIPSPLIT_PORT", "teapot")
    code, _, err = run(capsys, "serve")
    assert code == 1
    assert "CHIPSPLIT_PORT" in err
