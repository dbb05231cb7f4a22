"""Command line behavior: output formats, stream separation, and exit codes."""

import json

import pytest

from loopygraphs.cli import main
from loopygraphs.degseq import parse_degree_sequences
from loopygraphs.graph import parse_edge_list
from loopygraphs.oracle import verify_sequence


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_check_text_disconnected(capsys):
    rc, out, err = run_cli(capsys, "check", "--seq", "2,2,2,2")
    assert rc == 0
    assert "disconnected" in out
    assert "cycle" in out
    assert "stranded witness" in out


def test_check_text_connected(capsys):
    rc, out, _ = run_cli(capsys, "check", "--seq", "3,3,2,2")
    assert rc == 0
    assert "connected" in out
    assert "witness" not in out


def test_check_json(capsys):
    rc, out, _ = run_cli(capsys, "check", "--seq", "4,4,3,3,2,2,2", "--format", "json")
    assert rc == 0
    obj = json.loads(out)
    assert obj["sequence"] == [4, 4, 3, 3, 2, 2, 2]
    assert obj["loopy_graphical"] is True
    assert obj["m_star"] == 7
    assert obj["status"] == "connected"
    assert obj["method"] == "max_degree_bound"
    assert "witness" not in obj


def test_check_json_witness_realizes_sequence(capsys):
    rc, out, _ = run_cli(capsys, "check", "--seq", "6,3,3,3,3", "--format", "json")
    assert rc == 0
    obj = json.loads(out)
    assert obj["status"] == "disconnected"
    assert obj["detail"] == "hub_triangle"
    degs = [0] * len(obj["sequence"])
    for u, v in obj["witness"]:
        degs[u] += 2 if u == v else 1
        if u != v:
            degs[v] += 1
    assert degs == obj["sequence"]


def test_check_infeasible_sequence_fails(capsys):
    rc, _, err = run_cli(capsys, "check", "--seq", "3,2")
    assert rc == 1
    assert "error:" in err


def test_unparseable_sequence(capsys):
    rc, _, err = run_cli(capsys, "check", "--seq", "2,x")
    assert rc == 2
    assert "error:" in err


def test_seq_and_seq_file_are_exclusive(tmp_path, capsys):
    path = tmp_path / "seqs.txt"
    path.write_text("2,2,2\n")
    rc, _, err = run_cli(capsys, "check", "--seq", "2,2,2", "--seq-file", str(path))
    assert rc == 2
    rc, _, err = run_cli(capsys, "check")
    assert rc == 2


def test_seq_file_input(tmp_path, capsys):
    path = tmp_path / "seqs.txt"
    path.write_text("# two spaces\n2,2,2\n3,3,2,2\n")
    rc, out, _ = run_cli(capsys, "check", "--seq-file", str(path))
    assert rc == 0
    assert len(out.strip().splitlines()) == 3  # verdict, witness line, verdict


def test_missing_seq_file(capsys):
    rc, _, err = run_cli(capsys, "check", "--seq-file", "/nonexistent/seqs.txt")
    assert rc == 2


def test_repeatable_seq_flag(capsys):
    rc, out, _ = run_cli(capsys, "check", "--seq", "2,2,2", "--seq", "4,4,2",
                         "--format", "json")
    assert rc == 0
    lines = out.strip().splitlines()
    assert [json.loads(l)["sequence"] for l in lines] == [[2, 2, 2], [4, 4, 2]]


def test_sample_text_blocks(capsys):
    rc, out, err = run_cli(capsys, "sample", "--seq", "3,3,2,2", "--count", "3",
                           "--seed", "1")
    assert rc == 0
    blocks = out.split("\n\n")
    assert len(blocks) == 3
    for block in blocks:
        g = parse_edge_list(block)
        assert g.degree_sequence() == (3, 3, 2, 2)
    stats = json.loads(err)
    assert stats["samples"] == 3
    assert {"steps", "accepted_double", "accepted_triangle", "rejected"} <= set(stats)
    assert stats["steps"] == stats["accepted_double"] + stats["accepted_triangle"] \
        + stats["rejected"]


def test_sample_json_lines(capsys):
    rc, out, err = run_cli(capsys, "sample", "--seq", "3,3,2,2", "--count", "2",
                           "--seed", "1", "--format", "json")
    assert rc == 0
    for line in out.strip().splitlines():
        edges = json.loads(line)["edges"]
        degs = [0] * 4
        for u, v in edges:
            degs[u] += 2 if u == v else 1
            if u != v:
                degs[v] += 1
        assert sorted(degs, reverse=True) == [3, 3, 2, 2]


def test_sample_deterministic_under_seed(capsys):
    args = ("sample", "--seq", "3,3,2,2", "--count", "5", "--seed", "7",
            "--format", "json")
    rc1, out1, _ = run_cli(capsys, *args)
    rc2, out2, _ = run_cli(capsys, *args)
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_sample_auto_epsilon_on_disconnected_space(capsys):
    rc, out, err = run_cli(capsys, "sample", "--seq", "2,2,2,2", "--count", "1",
                           "--seed", "0")
    assert rc == 0
    assert json.loads(err)["triangle_prob"] == 0.05


def test_sample_auto_epsilon_on_connected_space(capsys):
    rc, out, err = run_cli(capsys, "sample", "--seq", "4,4,3,3,2,2,2",
                           "--count", "1", "--seed", "0")
    assert rc == 0
    assert json.loads(err)["triangle_prob"] == 0.0


def test_sample_zero_epsilon_rejected_when_disconnected(capsys):
    rc, _, err = run_cli(capsys, "sample", "--seq", "2,2,2,2", "--epsilon", "0")
    assert rc == 1
    assert "disconnected" in err


def test_sample_bad_epsilon(capsys):
    rc, _, err = run_cli(capsys, "sample", "--seq", "3,3,2,2", "--epsilon", "1.5")
    assert rc == 1
    rc, _, err = run_cli(capsys, "sample", "--seq", "3,3,2,2", "--epsilon", "nope")
    assert rc == 2


def test_sample_single_graph_space(capsys):
    rc, out, err = run_cli(capsys, "sample", "--seq", "1,1", "--count", "2",
                           "--format", "json")
    assert rc == 0
    assert out.strip().splitlines() == ['{"edges": [[0, 1]]}'] * 2
    assert json.loads(err)["steps"] == 0


def test_sample_requires_single_sequence(capsys):
    rc, _, err = run_cli(capsys, "sample", "--seq", "2,2,2", "--seq", "3,3,2,2")
    assert rc == 2


def test_sample_stats_follow_output_to_file(tmp_path, capsys):
    out_path = tmp_path / "samples.txt"
    rc, out, err = run_cli(capsys, "sample", "--seq", "3,3,2,2", "--count", "2",
                           "--seed", "3", "--out", str(out_path))
    assert rc == 0
    assert err == ""
    assert json.loads(out)["samples"] == 2  # stats on stdout when samples go to a file
    assert out_path.read_text().count("# n=4") == 2


def test_enumerate_text(capsys):
    rc, out, _ = run_cli(capsys, "enumerate", "--seq", "2,2,2")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "# sequence=2,2,2 count=2"
    assert lines[1] == "0,0 1,1 2,2"
    assert lines[2] == "0,1 0,2 1,2"


def test_enumerate_json(capsys):
    rc, out, _ = run_cli(capsys, "enumerate", "--seq", "2,2,2,2", "--format", "json")
    assert rc == 0
    obj = json.loads(out)
    assert obj["count"] == 8
    assert len(obj["graphs"]) == 8


def test_enumerate_bound_exceeded(capsys):
    rc, _, err = run_cli(capsys, "enumerate", "--seq", "6,3,3,3,3")
    assert rc == 1
    assert "error:" in err
    rc, out, _ = run_cli(capsys, "enumerate", "--seq", "6,3,3,3,3",
                         "--max-sum", "18", "--format", "json")
    assert rc == 0
    assert json.loads(out)["count"] == 8


def test_verify_json_matches_library(capsys):
    rc, out, _ = run_cli(capsys, "verify", "--seq", "2,2,2", "--format", "json")
    assert rc == 0
    assert json.loads(out) == verify_sequence((2, 2, 2))


def test_verify_text(capsys):
    rc, out, _ = run_cli(capsys, "verify", "--seq", "5,3,3,3")
    assert rc == 0
    assert "2 graphs" in out
    assert "q2=1" in out
    assert "FAIL" not in out


def test_verify_writes_dot(tmp_path, capsys):
    dot_path = tmp_path / "space.dot"
    rc, _, _ = run_cli(capsys, "verify", "--seq", "2,2,2", "--dot", str(dot_path))
    assert rc == 0
    assert dot_path.read_text().startswith("graph swapspace {")


def test_verify_dot_needs_single_sequence(capsys):
    rc, _, err = run_cli(capsys, "verify", "--seq", "2,2,2", "--seq", "4,4,2",
                         "--dot", "/tmp/unused.dot")
    assert rc == 2


def test_sweep_text_summary(capsys):
    rc, out, _ = run_cli(capsys, "sweep", "--max-sum", "6", "--workers", "1")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[-1].startswith("# 14 sequences,")
    assert "all checks passed" in lines[-1]


def test_sweep_json_to_file(tmp_path, capsys):
    out_path = tmp_path / "reports.jsonl"
    rc, _, _ = run_cli(capsys, "sweep", "--max-sum", "4", "--workers", "1",
                       "--format", "json", "--out", str(out_path))
    assert rc == 0
    reports = [json.loads(l) for l in out_path.read_text().splitlines()]
    assert [r["sequence"] for r in reports] == [[2], [1, 1], [3, 1], [2, 2],
                                                [2, 1, 1], [1, 1, 1, 1]]
    assert all(all(r["checks"].values()) for r in reports)


def test_parse_degree_sequences_round_trips_cli_seq_format():
    assert parse_degree_sequences("5,3,3,3") == [(5, 3, 3, 3)]


def test_unknown_command_exits_via_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
