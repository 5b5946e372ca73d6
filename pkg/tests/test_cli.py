from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from persymm import cli, report
from persymm.build import ShapeParams
from persymm.formulas import gamma
from persymm.verify import VerifyConfig, run_sweep, summarize


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gamma_csv(capsys):
    code, out, _ = run(capsys, "gamma", "--s", "3", "--m", "2", "--k", "4", "--method", "closed-form")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["s", "m", "k", "i", "gamma", "method"]
    assert rows[4]["i"] == "4" and rows[4]["gamma"] == "15648"


def test_gamma_single_rank(capsys):
    code, out, _ = run(capsys, "gamma", "--s", "3", "--m", "2", "--k", "4", "--i", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)["counts"] == {"4": "15648"}


def test_tiny_oracle(capsys):
    _, out, _ = run(capsys, "gamma", "--s", "1", "--m", "0", "--k", "1", "--method", "oracle", "--format", "json")
    assert json.loads(out)["counts"] == {"0": "1", "1": "3"}


def test_methods_agree(capsys):
    outputs = {}
    for method in cli.GAMMA_METHODS:
        _, out, _ = run(capsys, "gamma", "--s", "2", "--m", "1", "--k", "5", "--method", method, "--format", "json")
        outputs[method] = json.loads(out)["counts"]
    assert len({json.dumps(v) for v in outputs.values()}) == 1


def test_json_round_trip_and_schema(capsys):
    _, out, _ = run(capsys, "gamma", "--s", "5", "--m", "0", "--k", "6", "--format", "json")
    data = json.loads(out)
    assert set(data) >= {"params", "method", "counts", "checks"}
    assert all(isinstance(v, str) for v in data["counts"].values())
    assert data["checks"]["moments"] == "pass"
    assert report.render_json(data) == out


def test_large_counts_are_strings(capsys):
    _, out, _ = run(capsys, "gamma", "--s", "30", "--m", "3", "--k", "30", "--format", "json")
    data = json.loads(out)
    assert int(data["counts"]["30"]) == gamma(ShapeParams(30, 3, 30), 30) > 2**64


def test_output_independent_of_workers(capsys):
    base = ["gamma", "--s", "2", "--m", "2", "--k", "6", "--method", "oracle", "--format", "json"]
    _, one, _ = run(capsys, *base, "--workers", "1")
    _, two, _ = run(capsys, *base, "--workers", "2")
    _, again, _ = run(capsys, *base, "--workers", "1")
    assert one == two == again


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--q", "3", "--s", "3", "--m", "2", "--k", "4")
    assert code == 0 and "35356672" in out.splitlines()[1].split(",")
    _, out, _ = run(capsys, "count", "--q", "1", "--s", "2", "--m", "0", "--k", "3", "--format", "json")
    assert json.loads(out)["count"] == "23"
    _, brute, _ = run(capsys, "count", "--q", "2", "--s", "2", "--m", "0", "--k", "2", "--method", "bruteforce", "--format", "json")
    _, formula, _ = run(capsys, "count", "--q", "2", "--s", "2", "--m", "0", "--k", "2", "--format", "json")
    assert json.loads(brute)["count"] == json.loads(formula)["count"] == "424"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["gamma", "--s", "0", "--m", "0", "--k", "2"], cli.EXIT_USAGE),
        (["gamma", "--s", "2", "--m", "0", "--k", "2", "--budget-bits", "31"], cli.EXIT_USAGE),
        (["gamma", "--s", "2", "--m", "0", "--k", "2", "--i", "-1"], cli.EXIT_USAGE),
        (["count", "--q", "0", "--s", "2", "--m", "0", "--k", "2"], cli.EXIT_USAGE),
        (["gamma", "--s", "3", "--m", "2", "--k", "9", "--method", "oracle", "--budget-bits", "12"], cli.EXIT_BUDGET),
        (["count", "--q", "3", "--s", "3", "--m", "2", "--k", "4", "--method", "bruteforce"], cli.EXIT_BUDGET),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_argparse_usage_errors(capsys):
    for argv in (["gamma", "--s", "2"], ["verify", "--k-range", "5..2"], ["frobnicate"]):
        with pytest.raises(SystemExit) as err:
            cli.main(argv)
        assert err.value.code == cli.EXIT_USAGE
    capsys.readouterr()


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("PERSYMM_BUDGET_BITS", "10")
    code, _, err = run(capsys, "gamma", "--s", "3", "--m", "2", "--k", "4", "--method", "oracle")
    assert code == cli.EXIT_BUDGET and "2^14" in err


def test_parse_range():
    assert cli.parse_range("2..5") == (2, 5)
    assert cli.parse_range("3") == (3, 3)


def test_verify_small_budget_marks_skips(capsys):
    code, out, _ = run(capsys, "verify", "--s-range", "3", "--m-range", "2", "--k-range", "6", "--budget-bits", "10")
    assert code == 0
    assert any(line.startswith("SKIP oracle") for line in out.splitlines())
    assert "0 failed" in out.splitlines()[-1]


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--s-range", "2", "--m-range", "0..1", "--k-range", "2..3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["summary"]["fail"] == 0 and data["summary"]["pass"] > 0
    assert report.render_json(data) == out


def test_negative_control_cites_the_tuple():
    def corrupted(p, i):
        value = gamma(p, i)
        return value + 1 if (p.s, p.m, p.k, i) == (2, 1, 3, 2) else value

    results = run_sweep(VerifyConfig(s_range=(2, 2), m_range=(1, 1), k_range=(3, 3), gamma_fn=corrupted))
    failures = [r for r in results if not r.ok]
    assert summarize(results)["fail"] == len(failures) > 0
    oracle_fail = [r for r in failures if r.name == "oracle"]
    assert oracle_fail and oracle_fail[0].params[:4] == (2, 1, 3, 2)
    assert "(2,1,3,2)" in oracle_fail[0].line()


def test_default_sweep_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert out.splitlines()[-1].startswith("OK:")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "persymm", "gamma", "--s", "2", "--m", "0", "--k", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "2,0,2,2,54,closed-form"
