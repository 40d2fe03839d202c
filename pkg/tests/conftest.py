import itertools
import math

import numpy as np
import pytest

from zqspin.generators import random_connected_multigraph
from zqspin.model import general


def naive_partition(g, weights):
    """Sum over spin assignments with itertools; shares no code with the package."""
    weights = np.asarray(weights)
    q = weights.shape[1]
    total = 0j
    for s in itertools.product(range(q), repeat=g.n):
        term = 1 + 0j
        for e, (h, t) in enumerate(g.edges):
            term *= weights[e][(s[h] - s[t]) % q]
        total += term
    return total


def naive_span(rows, q):
    """All Z_q combinations of the given integer rows, as a set of tuples."""
    rows = [np.asarray(r) % q for r in rows]
    length = len(rows[0]) if rows else 0
    out = {tuple([0] * length)}
    for coeffs in itertools.product(range(q), repeat=len(rows)):
        v = np.zeros(length, dtype=int)
        for c, r in zip(coeffs, rows):
            v = (v + c * r) % q
        out.add(tuple(int(x) for x in v))
    return out


def rel(a, b):
    a, b = complex(a), complex(b)
    return abs(a - b) / abs(b) if b else abs(a)


def random_instance(rng, n_max=8, edges_max=14, qs=(2, 3, 4, 5, 6), betas=(0.1, 0.5, 1.0)):
    n = int(rng.integers(1, n_max + 1))
    N = int(rng.integers(max(n - 1, 0), edges_max + 1))
    q = int(rng.choice(qs))
    g = random_connected_multigraph(rng, n, N)
    m = general(q, rng.uniform(-2, 2, size=(N, q)), float(rng.choice(betas)))
    return g, m


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


E = math.e


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, _ in mod.CRITERIA:
        terminalreporter.write_line(mod.RESULTS.get(name, f"[SKIP] criterion {name}: not run"))
