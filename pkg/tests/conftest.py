import numpy as np
import pytest

from bb84_resonance.probes import OneQubitProbeParams

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion check")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n, text = marker.args
    passed = call.excinfo is None
    prev = _ACCEPTANCE.get(n, (text, True))
    _ACCEPTANCE[n] = (text, prev[1] and passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        text, ok = _ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}: {text}")


@pytest.fixture
def rng():
    return np.random.default_rng(20081)


def random_one_qubit(rng, n, delta=None, min_gap=0.0):
    """``n`` random single-qubit strategies; ``delta=None`` draws it uniformly too.

    ``min_gap`` rejects draws whose measurement angle is within that distance
    of degenerate.
    """
    out = []
    while len(out) < n:
        a, c, d = rng.random(3)
        dl = d if delta is None else delta
        p = OneQubitProbeParams(a, c, dl)
        alpha = (p.a**2 - p.c**2) - dl**2 * (p.b**2 - p.c**2)
        beta = dl * np.sqrt(1 - dl**2) * (p.a * p.c - p.b * p.d)
        if np.hypot(alpha, beta) <= max(min_gap, 1e-14):
            continue
        out.append(p)
    return out
