import random
from fractions import Fraction

import pytest

from divlat import corpus, modelio
from divlat.lattice import IntersectionLattice


@pytest.fixture(scope="session")
def l3():
    return modelio.load_lattice("corpus:l3_surface").lattice


@pytest.fixture(scope="session")
def l3_ample():
    return modelio.load_lattice("corpus:l3_surface").ample


@pytest.fixture(scope="session")
def l2():
    return modelio.load_lattice("corpus:l2_surface").lattice


@pytest.fixture(scope="session")
def l2_ample():
    return modelio.load_lattice("corpus:l2_surface").ample


@pytest.fixture(scope="session")
def fiber():
    return modelio.load_lattice("corpus:l1_fiber").lattice


@pytest.fixture(scope="session")
def elliptic():
    return modelio.load_resolution("corpus:elliptic_resolution")


@pytest.fixture(scope="session")
def resolutions():
    return {f.model.name or f.path: f for f in corpus.corpus_resolution_files()}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    rows = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" in nodeid and getattr(rep, "when", "call") == "call":
                rows.append((nodeid.rsplit("::", 1)[-1], status == "passed"))
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, ok in sorted(rows):
            terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")


def random_lattice(rng: random.Random, n: int, lo: int = -5, hi: int = 5,
                   benign: bool = False) -> IntersectionLattice:
    """Random symmetric lattice; benign forces non-negative off-diagonals."""
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = Fraction(rng.randint(lo, hi))
        for j in range(i + 1, n):
            v = rng.randint(0 if benign else lo, hi)
            m[i][j] = m[j][i] = Fraction(v)
    return IntersectionLattice(tuple(f"P{i}" for i in range(n)), m)


def random_effective(rng: random.Random, lat: IntersectionLattice, maxc: int = 4):
    while True:
        coeffs = [rng.randint(0, maxc) for _ in range(lat.n)]
        if any(coeffs):
            return lat.divisor(coeffs)


def small_divisors(lat: IntersectionLattice, total: int):
    """All integral effective nonzero divisors with coefficient sum <= total."""
    n = lat.n
    out = []

    def rec(i, left, acc):
        if i == n:
            if any(acc):
                out.append(lat.divisor(list(acc)))
            return
        for c in range(left + 1):
            rec(i + 1, left - c, acc + [c])

    rec(0, total, [])
    return out
