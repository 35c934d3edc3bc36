import json
import subprocess
import sys

import numpy as np
import pytest

from codegen import F3, F4, random_code
from qdeflate.cli import main
from qdeflate.errors import QDeflateError
from qdeflate.stabfile import StabParseError, bundled_path, parse_stab, read_stab, serialize_stab


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_stab_round_trip():
    rng = np.random.default_rng(4)
    for F in (F3, F4):
        S = random_code(rng, F, 3, 1)
        S2, comp = parse_stab(serialize_stab(S))
        assert S2 == S and comp == []


def test_parse_errors_have_positions():
    with pytest.raises(StabParseError) as err:
        read_stab("field p=2 r=1\nn 2\n10|0x\n")
    assert err.value.line == 3
    with pytest.raises(StabParseError):
        read_stab("field p=4 r=1\nn 1\n1|0\n")
    with pytest.raises(StabParseError):
        read_stab("field p=2 r=1\nn 2\n10|00|00\n")


def test_bad_completion_rejected():
    with pytest.raises(QDeflateError):
        parse_stab("field p=2 r=1\nn 2\n11|00\nextended\n10|00\n")


def test_bundled_example_has_verified_completion():
    S, comp = parse_stab(bundled_path("ex1.stab").read_text())
    assert (S.n, S.k, len(comp)) == (8, 1, 2)


def test_validate_and_distance(capsys):
    code, out, _ = run(capsys, "validate", "examples/ex1.stab", "--distance")
    assert code == 0 and "[[8,1,2]]_2" in out
    code, out, _ = run(capsys, "distance", "five_qubit.stab", "--json")
    assert code == 0 and json.loads(out)["d"] == 3


def test_deflate_command(capsys):
    code, out, _ = run(capsys, "deflate", "ex1.stab", "--positions", "1,2", "--prefix-row", "11|11", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["output"]["label"] == "[[6,2,2]]_2"
    code, out, _ = run(capsys, "deflate", "ex1.stab", "--positions", "1,2", "--prefix-row", "01|00")
    assert code == 0 and "[[6,2,1]]_2" in out


def test_shorten_and_puncture_commands(capsys):
    code, out, _ = run(capsys, "shorten", "five_qubit.stab", "--positions", "1")
    assert code == 0 and "[[4,2,2]]_2" in out
    code, out, _ = run(capsys, "puncture", "five_qubit.stab", "--positions", "1", "--local", "1|0")
    assert code == 0 and "[[4,1,2]]_2" in out
    code, _, err = run(capsys, "puncture", "five_qubit.stab", "--positions", "1,2", "--local", "1|0")
    assert code == 2 and "--local" in err


def test_search_command(capsys):
    code, out, err = run(capsys, "search", "ex1.stab", "--positions", "1,2", "--kprime", "1")
    lines = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(lines) == 15
    assert lines[0]["report"]["output"]["d"] == 2
    assert json.loads(err)["summary"]["examined"] == 15


def test_count_command(capsys):
    code, out, _ = run(capsys, "count", "--p", "2", "--t", "3", "--kprime", "1")
    assert code == 0 and "4.89·10^17" in out and "213648435" in out
    code, out, _ = run(capsys, "count", "--p", "3", "--t", "2", "--kprime", "1", "--json")
    assert json.loads(out)["Deflation"] == ["40", "298480", "494845859200"]


def test_classical_command(capsys):
    code, out, _ = run(capsys, "classical", "rep3.gen", "--positions", "1", "--prefix-full", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["output"] == "[2,1,2]_2" and doc["information_set"]


def test_verify_example1_command(capsys):
    code, out, _ = run(capsys, "verify-example1")
    assert code == 0 and "[[6,2,2]]" in out


def test_error_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.stab"
    bad.write_text("field p=2 r=1\nn 1\n1|0\n0|1\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 1 and "rows 1 and 2" in err
    code, _, _ = run(capsys, "validate", str(tmp_path / "missing.stab"))
    assert code == 2
    code, _, _ = run(capsys, "deflate", "ex1.stab", "--positions", "1,x")
    assert code == 2


def test_console_script_entry():
    res = subprocess.run(
        [sys.executable, "-m", "qdeflate.cli", "count", "--p", "2", "--t", "2", "--kprime", "1"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and "5355" in res.stdout
