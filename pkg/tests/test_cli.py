import io
import json
import subprocess
import sys

import pytest

from plactic.cli import EXIT_CAP, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_tableau():
    code, out, _ = call("tableau", "421532435452")
    assert code == EXIT_OK
    assert out.splitlines() == ["1 2 2 4 5", "2 3 3 5", "4 4", "5"]
    code, out, _ = call("tableau", "--word", "211", "--format", "json")
    assert json.loads(out)["rows"] == [[1, 1], [2]]


def test_counts_csv():
    code, out, _ = call("counts", "--n-max", "5", "--format", "csv", "--threads", "2")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "n,knuth1,colo1,knuth2,colo2,knuth3,bar_colo3,colo3"
    assert lines[5] == "5,5,31,40,531,1726,2225,6893"


def test_counts_kb_and_plot(tmp_path):
    fig = tmp_path / "counts.png"
    code, out, _ = call("counts", "--n-max", "4", "--format", "csv", "--include-kb", "--plot", str(fig))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].endswith(",kb2,kb3")
    assert lines[3].endswith(",11,27") and lines[4].endswith(",inf,inf")
    assert fig.exists() and fig.stat().st_size > 1000


def test_counts_deterministic_across_threads():
    a = call("counts", "--n-max", "7", "--format", "json", "--threads", "1")
    b = call("counts", "--n-max", "7", "--format", "json", "--threads", "4")
    assert a == b


def test_hexagon():
    code, out, _ = call("hexagon", "--n", "2", "--triple", "2,1,21")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "kind: Cprime"
    assert out.count("=>") == 4
    code, out, _ = call("hexagon", "--n", "3", "--triple", "3/2/1", "--format", "json")
    assert json.loads(out)["kind"] == "A"


def test_hexagon_not_branching():
    code, _, err = call("hexagon", "--n", "2", "--triple", "1,21,21")
    assert code == EXIT_DOMAIN and "not a critical branching" in err


def test_rules_and_normalize():
    code, out, _ = call("rules", "--preset", "colo2", "--n", "2")
    assert code == EXIT_OK and out.splitlines()[-1] == "3 generators, 3 rules"
    code, out, _ = call("normalize", "--preset", "colo2", "--n", "5", "--word", "421532435452", "--trace")
    assert out.splitlines()[-1].startswith("c5421 c432 c32 c54 c5")
    code, out, _ = call("normalize", "--n", "2", "--word", "2211", "--strategy", "random", "--seed", "7",
                        "--format", "json")
    assert json.loads(out)["normal_form"] == ["21", "21"]


def test_random_needs_seed():
    code, _, err = call("normalize", "--n", "2", "--word", "21", "--strategy", "random")
    assert code == EXIT_USAGE and "usage:" in err


def test_complete():
    code, out, _ = call("complete", "--preset", "knuth2", "--n", "3")
    assert code == EXIT_OK and "rules: 11" in out and "3-cells: 27" in out
    code, out, _ = call("complete", "--preset", "knuth2", "--n", "4", "--max-rules", "30")
    assert code == EXIT_CAP and "budget exceeded" in out


def test_crystal_and_component():
    assert call("crystal", "--n", "3", "--word", "312213313", "--op", "f1")[1] == "312223313\n"
    assert call("crystal", "--n", "2", "--word", "12", "--op", "e1")[1] == "0\n"
    code, out, _ = call("crystal", "--n", "3", "--word", "313", "--op", "hw", "--format", "json")
    assert json.loads(out) == {"word": "112", "raising": [2, 2, 1]}
    code, out, _ = call("component", "--n", "3", "--word", "313", "--format", "dot")
    assert code == EXIT_OK and out.startswith("digraph") and out.count("->") == 8


def test_verify():
    code, out, _ = call("verify", "--n", "3", "--samples", "200")
    assert code == EXIT_OK and out.splitlines()[-1] == "all checks passed"


@pytest.mark.parametrize(
    "argv,code",
    [
        (["nonsense"], EXIT_USAGE),
        (["counts"], EXIT_USAGE),
        (["tableau", "1x"], EXIT_DOMAIN),
        (["rules", "--n", "0"], EXIT_DOMAIN),
        (["tableau", "9", "--n", "3"], EXIT_DOMAIN),
        (["crystal", "--n", "3", "--word", "1", "--op", "zz"], EXIT_USAGE),
    ],
)
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "plactic.cli", "tableau", "211"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1 1\n2\n"
