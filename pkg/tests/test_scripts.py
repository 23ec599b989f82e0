import importlib.util
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_reproduce_tables_small_window(capsys):
    assert load("reproduce_tables").main(["-D", "2"]) == 0
    out = capsys.readouterr().out
    assert "K(2) on SP_0" in out and "MISMATCH" not in out


def test_run_acceptance_single_criterion(capsys):
    assert load("run_acceptance").main(["6"]) == 0
    assert "criterion 6 [PASS]" in capsys.readouterr().out
