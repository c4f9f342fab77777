import json
import subprocess
import sys

import pytest

from expander_lab.cli import build_parser, main


def write_set(path, xs):
    path.write_text(json.dumps([str(x) for x in xs]))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_ap(capsys):
    code, out, _ = run(["gen", "--kind", "ap", "--n", "5", "--start", "1", "--step", "1"], capsys)
    assert code == 0
    assert json.loads(out) == ["1", "2", "3", "4", "5"]


def test_gen_to_file(tmp_path, capsys):
    target = tmp_path / "gp.json"
    assert main(["gen", "--kind", "gp", "--n", "4", "--base", "1/2", "--out", str(target)]) == 0
    assert json.loads(target.read_text()) == ["1/8", "1/4", "1/2", "1"]


def test_verify_exact_csv(tmp_path, capsys):
    a = write_set(tmp_path / "a.json", [1, 2])
    code, out, _ = run(["verify", "--suite", "exact", "--in", a], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "statement_id,kind,pass,lhs,rhs,ratio,notes"
    assert lines[1:] == ["balog_quotients,exact,pass,7,7,,", "ungar_quotients,exact,pass,3,2,,"]


def test_verify_json(tmp_path, capsys):
    a = write_set(tmp_path / "a.json", [0, 1])
    code, out, _ = run(["verify", "--suite", "interval", "--in", a, "--format", "json"], capsys)
    assert code == 0
    assert {row["pass"] for row in json.loads(out)} == {"pass"}


def test_count_squares(tmp_path, capsys):
    a = write_set(tmp_path / "a.json", [0, 1])
    assert run(["count", "--kind", "squares", "--in", a], capsys)[1] == "96\n"
    assert run(["count", "--kind", "products", "--in", a], capsys)[1] == "152\n"
    data = json.loads(run(["count", "--kind", "shiftsquare", "--in", a], capsys)[1])
    assert data["solutions"] == "16" and data["lower_holds"] is True


def test_image_and_energy(tmp_path, capsys):
    a = write_set(tmp_path / "a.json", [1, 2, 4])
    assert json.loads(run(["image", "--kind", "product", "--in", a], capsys)[1]) == ["1", "2", "4", "8", "16"]
    assert run(["image", "--kind", "A(A-A)", "--in", a, "--size"], capsys)[1].strip().isdigit()
    assert json.loads(run(["energy", "--kind", "multiplicative", "--in", a], capsys)[1]) == {"value": "19"}
    data = json.loads(run(["energy", "--kind", "moment", "--k", "1.5", "--in", a], capsys)[1])
    assert set(data) == {"lo", "hi"}
    rep = json.loads(run(["energy", "--kind", "rep", "--op", "ratio", "--in", a], capsys)[1])
    assert rep["1"] == "3"


def test_witness(tmp_path, capsys):
    a = write_set(tmp_path / "a.json", [1, 2, 4])
    data = json.loads(run(["witness", "--in", a], capsys)[1])
    assert data["dstar_bound"] == "27/8"
    assert data["witness_check"] == "pass"
    q = write_set(tmp_path / "q.json", [1, 2, 4])
    r = write_set(tmp_path / "r.json", [1])
    data = json.loads(run(["witness", "--in", a, "--Q", q, "--R", r, "--t", "1"], capsys)[1])
    assert data == {"dstar_upper_bound": "3"}


def test_witness_violation_exits_1(tmp_path, capsys):
    a = write_set(tmp_path / "a.json", [1, 2])
    r = write_set(tmp_path / "r.json", [1])
    code, _, err = run(["witness", "--in", a, "--Q", a, "--R", r, "--t", "2"], capsys)
    assert code == 1
    assert err.startswith("error:") and err.count("\n") == 1


def test_search_with_trace(tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    code, out, _ = run(["search", "--objective", "ungar_ratio", "--n", "4", "--iters", "50", "--trace-out", str(trace)], capsys)
    assert code == 0
    assert json.loads(out)["seed"] == 0
    assert trace.read_text().startswith("iteration,value\n0,")


def test_bench(capsys):
    code, out, _ = run(["bench", "--sizes", "4,8", "--ops", "additive_energy"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,operation,seconds,value"
    assert lines[1].startswith("4,additive_energy,") and lines[1].endswith(",44")


def test_domain_error_exit_code(tmp_path, capsys):
    a = write_set(tmp_path / "a.json", [0, 1])
    code, out, err = run(["energy", "--kind", "multiplicative", "--in", a], capsys)
    assert code == 1 and out == ""
    assert err.startswith("error:")


def test_malformed_file_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('[\n"1",\n"2",\n"x/y"\n]')
    code, _, err = run(["image", "--kind", "sum", "--in", str(bad)], capsys)
    assert code == 1
    assert ":4:" in err
    bad.write_text('[\n"1",\n\n"2"')
    code, _, err = run(["image", "--kind", "sum", "--in", str(bad)], capsys)
    assert code == 1 and ":4:" in err


def test_missing_file_exit_1(tmp_path, capsys):
    assert run(["count", "--kind", "squares", "--in", str(tmp_path / "none.json")], capsys)[0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        [],
        ["gen", "--kind", "ap"],
        ["verify", "--suite", "bogus", "--in", "a.json"],
        ["gen", "--kind", "ap", "--n", "3", "--precision-bits", "9999"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


SUBCOMMANDS = ("gen", "image", "energy", "count", "witness", "verify", "search", "bench")


@pytest.mark.parametrize("cmd", SUBCOMMANDS)
def test_help_lists_every_flag(cmd, capsys):
    with pytest.raises(SystemExit) as exc:
        main([cmd, "--help"])
    assert exc.value.code == 0
    text = capsys.readouterr().out
    sub = build_parser()._subparsers._group_actions[0].choices[cmd]
    for action in sub._actions:
        for flag in action.option_strings:
            assert flag in text


def test_reruns_are_byte_identical_across_thread_counts(tmp_path):
    a = write_set(tmp_path / "a.json", [1, 3, 4, 9, 10, 12])
    outputs = []
    for threads in ("1", "4", "auto"):
        target = tmp_path / f"out{threads}.csv"
        assert main(["verify", "--suite", "ratio", "--in", a, "--threads", threads, "--out", str(target)]) == 0
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


def test_precision_env_var(tmp_path, capsys, monkeypatch):
    a = write_set(tmp_path / "a.json", [0, 1])
    monkeypatch.setenv("EXPANDER_LAB_PRECISION_BITS", "8")
    narrow = json.loads(run(["energy", "--kind", "moment", "--k", "3/2", "--in", a], capsys)[1])
    monkeypatch.setenv("EXPANDER_LAB_PRECISION_BITS", "200")
    wide = json.loads(run(["energy", "--kind", "moment", "--k", "3/2", "--in", a], capsys)[1])
    assert narrow != wide


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "expander_lab", "gen", "--kind", "convex", "--n", "3"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout) == ["1", "4", "9"]
