"""Tests for the counterexample command."""

import json

from forestpack.cli import cli
from forestpack.utils.parser import load_graph, parse_extend


def test_small_instance_json(cli_runner):
    """Test the Q=4, k=3 audit report."""
    result = cli_runner.invoke(
        cli, ["counterexample", "--Q", "4", "-k", "3", "--json"]
    )
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["instance"]["degree_v"] == 12
    assert payload["instance"]["x_count"] == 10
    assert payload["instance"]["below_conjecture_range"]
    assert payload["audit"]["confirms"]
    assert payload["audit"]["bottleneck"]["verdict"] == "IMPOSSIBLE"
    assert payload["refute_skipped"] is False
    assert payload["extend_option"].startswith(f"{payload['v']}:")


def test_graph_file_round_trip(cli_runner, tmp_path):
    """Test --graph-out and the printed --extend value."""
    path = tmp_path / "lau.mg"
    report = tmp_path / "lau.json"
    result = cli_runner.invoke(
        cli,
        ["counterexample", "--Q", "4", "--graph-out", str(path), "-o", str(report)],
    )
    assert result.exit_code == 0
    payload = json.loads(report.read_text())
    graph, terminals = load_graph(path)
    assert terminals.group_count == 1
    assert len(terminals.groups[0]) == 26
    assert len(terminals.reserve) == 10
    assert graph.degree(payload["v"]) == 12
    sp = parse_extend(payload["extend_option"], graph, 3)
    assert sorted(sp.labels.values()) == [1] * 10 + [2, 3]


def test_refute_skipped_for_large_qk(cli_runner):
    """Test that --refute is ignored above the size limit."""
    result = cli_runner.invoke(cli, ["counterexample", "--Q", "5", "--refute"])
    assert result.exit_code == 0
    assert "--refute ignored" in result.output
    assert "Verdict: IMPOSSIBLE" in result.output


def test_control_instance(cli_runner):
    """Test that the control instance exits 0 with an inconclusive bottleneck."""
    result = cli_runner.invoke(
        cli, ["counterexample", "--Q", "4", "--control", "--json"]
    )
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["instance"]["control"]
    assert payload["audit"]["bottleneck"]["verdict"] == "INCONCLUSIVE"
    assert not payload["audit"]["confirms"]


def test_bad_parameters(cli_runner):
    """Test k below 3."""
    result = cli_runner.invoke(cli, ["counterexample", "--Q", "4", "-k", "2"])
    assert result.exit_code == 1
    assert "Error:" in result.output
