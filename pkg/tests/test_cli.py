import json

import pytest

from k2coh.cli import RunConfig, Target, cmd_verify_algebra, main
from k2coh.symbols import COMPOSE_SIGNS


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_eval(capsys):
    assert run(capsys, "eval", "pb(xi, x)") == (0, "1\n")
    code, _ = run(capsys, "eval", "pb(xi,")
    assert code == 2


def test_h1_json_report(capsys):
    code, out = run(capsys, "h1", "SP:1", "SP:3", "F:-1/2@i=1", "-D", "3")
    assert code == 0
    rep = json.loads(out)
    assert rep["summary"] == {"passed": 3, "failed": 0, "unchecked_pairs": 0}
    dims = [(c["details"]["even"], c["details"]["odd"]) for c in rep["checks"]]
    assert dims == [(1, 0), (0, 0), (0, 2)]
    assert rep["config"]["D"] == 3


def test_verify_cocycles_and_perturbation(capsys):
    code, out = run(capsys, "verify-cocycles", "upsilon:2", "C:1@i=2", "-D", "3")
    assert code == 0
    code, out = run(capsys, "verify-cocycles", "upsilon:2", "-D", "3", "--perturb",
                    "--format", "markdown")
    assert code == 1 and "FAIL Upsilon_2" in out


def test_correspondence_markdown(capsys):
    code, out = run(capsys, "correspondence", "-D", "2", "--format", "markdown")
    assert code == 0
    assert "Upsilon_10 ~ psi_1,0(C3) (i=2)" in out


def test_verify_families_small(capsys):
    code, out = run(capsys, "verify-families", "--n-range=0..0", "-D", "2")
    assert code == 0 and json.loads(out)["summary"]["failed"] == 0


def test_sabotaged_sign_table_exits_1():
    signs = dict(COMPOSE_SIGNS)
    signs[(0, 1, 1)] = -signs[(0, 1, 1)]
    rep = cmd_verify_algebra(RunConfig(D=2), window=2, signs=signs, samples=30)
    assert rep.emit(open("/dev/null", "w")) == 1
    assert any(c["details"]["witness"] for c in rep.checks if not c["passed"])


@pytest.mark.parametrize("argv", [
    ["h1", "SP:1/2"],
    ["h1", "Q:1"],
    ["verify-cocycles", "upsilon:12"],
    ["h1", "SP:0", "-D", "1"],
    ["h1", "SP:0", "-N", "2"],
    ["h1", "--n-range=3..1"],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_config_invariants():
    with pytest.raises(ValueError):
        RunConfig(D=1)
    with pytest.raises(ValueError):
        RunConfig(model="torus")


def test_target_parsing():
    t = Target.parse("J:3/2@i=2")
    assert (t.kind, t.i, t.expected()) == ("J", 2, (0, 1))
    assert Target.parse("SP:-1").expected() == (3, 0)
    assert Target.parse("SP:0@i=1").expected() == (6, 0)


def test_report_small(capsys):
    code, out = run(capsys, "report", "-D", "2", "-N", "4", "--n-range=0..0")
    rep = json.loads(out)
    assert code == 0 and rep["summary"]["failed"] == 0
    sections = {c["section"] for c in rep["checks"]}
    assert {"identities", "module families", "restriction to K(1)_i", "dimensions"} <= sections
