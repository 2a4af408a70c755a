"""Independent oracles used only by the tests.

None of these call into the package's search or verification paths; they
re-derive answers by brute force from first principles.
"""

import itertools
from fractions import Fraction

import pytest


def triple_collinear(p, q, r):
    """Cross-product test over every coordinate plane, straight from the definition."""
    u = [Fraction(b) - Fraction(a) for a, b in zip(p, q)]
    v = [Fraction(c) - Fraction(a) for a, c in zip(p, r)]
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(len(u)))


def all_triples_ok(points):
    return not any(triple_collinear(*t) for t in itertools.combinations(points, 3))


def naive_max(n, d):
    """Largest subset of {1..n}^d with no three collinear, by subset enumeration."""
    cells = list(itertools.product(range(1, n + 1), repeat=d))
    for size in range(min(len(cells), 2 * n ** (d - 1)), 0, -1):
        for subset in itertools.combinations(cells, size):
            if all_triples_ok(subset):
                return size, subset
    return 0, ()


@pytest.fixture
def circle25():
    return [(5, 0), (-5, 0), (0, 5), (0, -5), (3, 4), (3, -4), (-3, 4), (-3, -4),
            (4, 3), (4, -3), (-4, 3), (-4, -3)]


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
