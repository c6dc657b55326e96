import json

import pytest

from xns9 import __version__
from xns9.cli import format_factored, main
from xns9.report import CheckReport


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_classnum(capsys):
    code, out = run(capsys, "classnum", "-3511")
    assert code == 0 and out.strip() == "41"
    code, out = run(capsys, "classnum", "-4")
    assert code == 0 and out.strip() == "1"


def test_eval_t(capsys):
    code, out = run(capsys, "eval-t", "--y", "0")
    assert code == 0
    assert out.splitlines() == ["t = -96", "j = -884736"]
    code, out = run(capsys, "eval-t", "--y", "inf")
    assert "t = -15" in out
    code, out = run(capsys, "eval-t", "--y=-1/2")  # negative values need the = form
    assert code == 0 and out.startswith("t = ")
    code, out = run(capsys, "eval-t", "--y", "2/3")
    assert code == 0


def test_thue_json_lines(capsys):
    code, out = run(capsys, "thue", "--targets", "1", "--bound", "100")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert {(r["m"], r["n"]) for r in rows} == {(2, -1), (-3, -2), (-1, -1),
                                                (1, 0), (1, 3), (0, 1)}
    assert all(r["value"] == 1 for r in rows)


def test_verify_groups(capsys):
    code, out = run(capsys, "verify", "groups")
    assert code == 0
    assert "[PASS] reduction-kernel" in out
    assert "[FAIL]" not in out


def test_verify_covering_json(capsys):
    code, out = run(capsys, "verify", "covering", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["version"] == __version__
    assert payload["report"]["passed"] is True
    figure = payload["figure"]
    assert sorted(figure) == ["cusp", "i", "rho"]
    top_cusp = figure["cusp"]["x9_over_intermediate"]
    assert top_cusp == [{"outer_index": 9, "relative_indices": [1, 1, 1]}]


def test_points_text_layout(capsys):
    code, out = run(capsys, "points", "--bound", "100")
    assert code == 0
    assert "integral solution (m,n)" in out
    assert "-2^18*3^3*5^3*23^3*29^3" in out
    assert "none (non-CM)" in out
    assert out.count("|") == 20  # header plus nine table rows, three columns


def test_points_json(capsys):
    code, out = run(capsys, "points", "--bound", "100", "--format", "json")
    payload = json.loads(out)
    rows = payload["rows"]
    assert len(rows) == 9
    assert rows[0] == {"discriminant": -4, "j": 1728, "m": -1, "n": 1, "t": 12}
    assert rows[-1]["discriminant"] is None


def test_ap_text_omits_bad_primes(capsys):
    code, out = run(capsys, "ap", "--pmax", "30")
    lines = out.splitlines()
    assert lines[0].startswith("p   |")
    assert lines[1].startswith("a_p |")
    assert " 5 " not in lines[0]
    assert "(bad reduction at 5, omitted)" in out


def test_ap_json_includes_bad_primes(capsys):
    code, out = run(capsys, "ap", "--pmax", "30", "--format", "json")
    payload = json.loads(out)
    by_p = {r["p"]: r for r in payload["records"]}
    assert by_p[5]["good"] is False
    assert by_p[2]["a_p"] == -1 and by_p[2]["good"] is True


def test_ap_custom_curve(capsys):
    code, out = run(capsys, "ap", "--pmax", "10", "--curve", "0,0,0,1,0",
                    "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert {r["p"] for r in payload["records"]} == {2, 3, 5, 7}


def test_report_deterministic_and_flags_known_discrepancy(capsys):
    code1, out1 = run(capsys, "report", "--bound", "300")
    code2, out2 = run(capsys, "report", "--bound", "300")
    assert out1 == out2              # byte-identical reruns
    assert code1 == code2 == 1       # the frozen trace row check fails
    assert out1.count("[FAIL]") == 1
    assert "[FAIL] reference-trace-row" in out1


def test_report_json_shape(capsys):
    code, out = run(capsys, "report", "--bound", "300", "--format", "json")
    payload = json.loads(out)
    assert payload["version"] == __version__
    failing = [name for name, rep in payload["reports"].items()
               if not rep["passed"]]
    assert failing == ["traces"]
    names = [c["name"] for c in payload["reports"]["traces"]["checks"]
             if not c["passed"]]
    assert names == ["reference-trace-row"]
    assert len(payload["points_table"]) == 9
    # stable key order throughout
    assert out == json.dumps(payload, sort_keys=True, indent=2, default=str) + "\n"


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_domain_errors_exit_2(capsys):
    assert main(["classnum", "-6"]) == 2          # invalid residue class
    assert main(["ap", "--pmax", "10", "--curve", "0,0,0,0,0"]) == 2  # singular
    err = capsys.readouterr().err
    assert "singular" in err


def test_failing_report_yields_exit_one():
    # a report with any failed entry must map to a nonzero exit status
    report = CheckReport("fabricated")
    report.add("broken", False, "negative control")
    assert not report.passed
    assert report.failures[0].name == "broken"


def test_format_factored():
    assert format_factored(1728) == "2^6*3^3"
    assert format_factored(-884736000) == "-2^18*3^3*5^3"
    assert format_factored(1117947 ** 3) == "3^3*41^3*61^3*149^3"
    assert format_factored(0) == "0"
    assert format_factored(-1) == "-1"
    assert format_factored(7) == "7"
