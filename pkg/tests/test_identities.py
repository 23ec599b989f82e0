from k2coh.grassmann import FOURIER
from k2coh.identities import algebra_suite
from k2coh.symbols import COMPOSE_SIGNS


def test_suite_passes_on_small_window():
    checks = algebra_suite(D=2, samples=20)
    assert checks and all(c.passed for c in checks)
    assert all(c.instances > 0 for c in checks)


def test_wrong_sign_table_is_detected():
    signs = dict(COMPOSE_SIGNS)
    signs[(1, 0, 0)] = -signs[(1, 0, 0)]
    checks = {c.name: c for c in algebra_suite(D=2, samples=30, models=(FOURIER,), signs=signs)}
    failing = [c for c in checks.values() if not c.passed]
    assert failing and all(c.witness for c in failing)
    assert checks["contact bracket super-Jacobi"].passed
