import json

import pytest

from sumsquares.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_h(capsys):
    assert run(capsys, "h", "--field", "q3", "5", "0") == (0, "case=B h=2 r3=48", "")


def test_r3_excluded_residue(capsys):
    assert run(capsys, "r3", "--field", "q17", "7", "0")[:2] == (0, "0")


def test_r3_methods(capsys):
    assert run(capsys, "r3", "--field", "q3", "5", "0", "--method", "closed")[1] == "48"
    assert run(capsys, "r3", "--field", "q3", "2", "1", "--method", "criterion")[1] == "representable=false"
    assert run(capsys, "r2", "--field", "q17", "2", "0", "--method", "criterion")[1] == \
        "representable=true count=4"


def test_classify(capsys):
    assert run(capsys, "classify", "--field", "q17", "6", "1")[1] == "local=D,CB coarse=F"
    assert run(capsys, "classify", "--field", "q3", "2", "1")[1] == "case=C2"


def test_invalid_inputs(capsys):
    code, _, err = run(capsys, "h", "--field", "q3", "4", "0")
    assert code == 2 and err.startswith("error: NotSquarefree")
    assert run(capsys, "h", "--field", "q17", "7", "0")[0] == 2
    assert run(capsys, "r2", "--field", "q3", "1", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["h", "--field", "q5", "1", "0"])
    assert exc.value.code == 2


def test_table_golden(capsys):
    code, out, _ = run(capsys, "table", "--field", "q17", "--check-golden")
    assert code == 0 and out.splitlines()[-1] == "220/220 rows match"


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--field", "q3", "--rows", "4", "--format", "json")
    assert code == 0 and [r["h"] for r in json.loads(out)] == [1, 2, 2, 2]


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--field", "q17", "--series", "xi", "--trace-bound", "2")
    assert code == 0 and out.splitlines() == ["0 0 0 0/1", "2 1 0 1/1"]
    assert run(capsys, "expand", "--field", "q3", "--series", "eis:nope")[0] == 2
    assert "g1chi" in run(capsys, "expand", "--field", "q3", "--series", "eis:list")[1]


def test_verify_report_format(capsys):
    code, out, _ = run(capsys, "verify", "--field", "q17", "--suite", "r2", "--trace-bound", "6")
    lines = out.splitlines()
    assert code == 0 and lines[-1].startswith("PASS total=")
    assert all(line.startswith("r2 ν=") and line.endswith(" ok") for line in lines[:-1])


def test_verify_reports_failures(capsys):
    code, out, _ = run(capsys, "verify", "--field", "q3", "--suite", "cfc",
                       "--alpha-trace", "2", "--nu-trace", "4")
    assert code == 1 and out.splitlines()[-1].startswith("FAIL")
    assert "closed ν=1 α=1 skip documented edge" in out
