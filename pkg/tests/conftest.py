import numpy as np
import pytest

from rankability import Digraph, is_acyclic


def random_weights(rng, n, density, acyclic=False):
    w = (rng.random((n, n)) < density) * rng.random((n, n))
    np.fill_diagonal(w, 0.0)
    if acyclic:
        w = np.triu(w, 1)
        perm = rng.permutation(n)
        w = w[np.ix_(perm, perm)]
    return w


def random_digraph(rng, n_max=12, acyclic=False, cyclic=False, n_min=1):
    while True:
        n = int(rng.integers(n_min, n_max + 1))
        g = Digraph(random_weights(rng, n, rng.uniform(0.05, 0.7), acyclic=acyclic))
        if not cyclic or not is_acyclic(g):
            return g


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one line per acceptance criterion; printed in the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def record(label, status, detail):
        line = f"criterion {label}: {status} - {detail}"
        lines.append(line)
        print(line)
        return status == "PASS"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
