"""Exit criteria. Each test prints one PASS/FAIL line in the terminal summary."""

import contextlib
import itertools
import os
import random
import subprocess
import sys
import time
from fractions import Fraction as F

import pytest

from n3l.compression import (
    _gap_sq_direct, _gap_sq_expanded, compress, gap_sq_bounds, gap_squared,
    harmonic_estimate_failures, mass, mass_bounds,
)
from n3l.claims import ClaimDomain, check_cornerstone, check_decider, check_gap_shell, recheck
from n3l.constructions import SphereSpec, erdos_parabola, greedy, is_prime, sphere_section
from n3l.geometry import PointSet, verify_no_three
from n3l.bounds import paper_bound
from n3l.solver import exact_max
from n3l.table import compare_table

from conftest import ACCEPTANCE_RESULTS, all_triples_ok, naive_max


@contextlib.contextmanager
def criterion(label, budget_s):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < budget_s
        status = "PASS" if ok and within else "FAIL"
        ACCEPTANCE_RESULTS.append(f"{status}  {label}  ({elapsed:.2f}s, budget {budget_s}s)")
    assert within, f"{label}: {elapsed:.2f}s exceeds {budget_s}s"


def test_c1_exact_identities():
    with criterion("C1 gap identity + involution, 1000 vectors x 3 scales", 5):
        rng = random.Random(1)
        for _ in range(1000):
            d = rng.randint(2, 6)
            x = tuple(rng.sample(range(1, 1000), d))
            for m in (F(1, 2), F(1), F(2)):
                xs = tuple(F(c) for c in x)
                assert _gap_sq_direct(xs, m) == _gap_sq_expanded(xs, m)
                gap_squared(x, m)
                assert compress(compress(x, m), m) == x


def test_c2_bound_sandwich():
    # mass, gap and both bounds are symmetric in the coordinates, so sorted
    # tuples cover every ordering
    with criterion("C2 mass/gap bound sandwich, coords <= 30, n in {2,3,4}", 30):
        count = 0
        for n in (2, 3, 4):
            for x in itertools.combinations(range(1, 31), n):
                lo, hi = mass_bounds(x, 1)
                assert lo <= mass(x, 1) <= hi, x
                lo, hi = gap_sq_bounds(x, 1)
                assert lo <= gap_squared(x, 1) <= hi, x
                count += 1
        assert count == 435 + 4060 + 27405


def test_c3_harmonic_estimate():
    with criterion("C3 |H(N) - ln N - gamma| < 1/N for N <= 10^4", 1):
        assert harmonic_estimate_failures(10 ** 4) == []


def test_c4_ground_truth_solver():
    with criterion("C4 exact_max(n,2) = 2n for n=2..5, subset oracle n=2..4", 60):
        for n in (2, 3, 4, 5):
            r = exact_max(n, 2)
            assert r.optimal and r.max_count == 2 * n
            if n <= 4:
                size, subset = naive_max(n, 2)
                assert size == r.max_count and subset == r.witness.points


def test_c5_construction_soundness():
    with criterion("C5 200 random constructions verified; verifier vs all-triples on 200 sets", 60):
        rng = random.Random(5)
        primes = [p for p in range(2, 102) if is_prime(p)]
        for i in range(200):
            kind = ("sphere", "greedy", "erdos")[i % 3]
            d = rng.choice((2, 3))
            if kind == "erdos":
                pts = erdos_parabola(rng.choice(primes))
            elif kind == "greedy":
                n = rng.randint(2, 32) if d == 2 else rng.randint(2, 10)
                pts = greedy(n, d, rng.randint(0, 2 ** 32)).points
            else:
                n = rng.randint(2, 32)
                c = tuple(F(rng.randint(2, 2 * n), 2) for _ in range(d))
                r2 = F(rng.randint(0, d * n * n), 4)
                pts = sphere_section(SphereSpec(c, r2, tuple((1, n) for _ in range(d))))
            assert verify_no_three(pts).passed, (kind, pts)
        for _ in range(200):
            d = rng.choice((2, 3))
            k = rng.randint(0, 40)
            cells = list(itertools.product(range(rng.randint(2, 8)), repeat=d))
            pts = rng.sample(cells, min(k, len(cells)))
            if not pts:
                continue
            assert verify_no_three(PointSet.from_points(pts)).passed == all_triples_ok(pts)


def test_c6_claim_falsification():
    with criterion("C6 decider refuted with (1,8),(4,7); cornerstone refuted; gap shell empty", 120):
        r = check_decider(ClaimDomain(2, 8, 1))
        assert r.verdict == "refuted"
        cx = next(c for c in r.counterexamples
                  if c.witness["y"] == (1, 8) and c.witness["z"] == (4, 7))
        assert recheck(cx, 1) == cx
        w = cx.witness
        assert w["gap_sq_z"] == F(47889, 784) and w["gap_sq_y"] == F(3969, 64)
        assert w["gap_sq_z"] < w["gap_sq_y"]
        assert w["distance_sq"] == F(4513, 256) > w["radius_sq"] == F(3969, 256)

        r = check_cornerstone(ClaimDomain(2, 3, 1), [1], vectors=[(2, 3)])
        assert r.verdict == "refuted" and recheck(r.counterexamples[0], 1) is not None

        for n in range(1, 13):
            for d in (2, 3):
                assert check_gap_shell(n, d, 1).details["shell"] == []


def test_c7_bound_consistency():
    with criterion("C7 exact/paper_bound >= 1 for n=2..5; bound(10,2), bound(10,3)", 60):
        rows = compare_table(range(2, 6), 2, ["exact"])
        assert [r.n for r in rows] == [2, 3, 4, 5]
        assert all(r.source == "exact" and r.ratio >= 1 for r in rows)
        assert abs(paper_bound(10, 2) - 11.89207) <= 1e-4
        assert abs(paper_bound(10, 3) - 120.0937) <= 1e-3


def _cli(args, threads):
    env = dict(os.environ, N3L_THREADS=str(threads))
    proc = subprocess.run([sys.executable, "-m", "n3l", *args], capture_output=True, env=env)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


def test_c8_cli_determinism():
    invocations = [
        ["solve", "--n", "5", "--d", "2"],
        ["solve", "--n", "3", "--d", "3", "--symmetry"],
        ["claims", "--claim", "decider", "--max-coord", "10", "--d", "2"],
        ["claims", "--claim", "ballnest", "--max-coord", "8", "--d", "2"],
        ["claims", "--claim", "cornerstone", "--max-coord", "7", "--d", "2"],
        ["claims", "--claim", "admissible", "--max-coord", "5", "--d", "2"],
        ["construct", "--method", "sphere", "--n", "10", "--d", "3"],
        ["construct", "--method", "greedy", "--n", "12", "--d", "2", "--seed", "7"],
        ["construct", "--method", "erdos", "--n", "10", "--d", "2"],
    ]
    with criterion("C8 byte-identical CLI stdout across runs, threads 1 and 4", 120):
        for args in invocations:
            outputs = {_cli(args, t) for t in (1, 4, 1, 4)}
            assert len(outputs) == 1, args
