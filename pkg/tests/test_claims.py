import itertools
import json
from fractions import Fraction as F

import pytest

from n3l.claims import (
    ClaimDomain, Counterexample, check_admissible_equiv, check_ballnest, check_cornerstone,
    check_decider, check_gap_shell, check_involution, gap_shell_scan, recheck, run_claim,
)
from n3l.compression import ball_of, compress, on_boundary
from n3l.errors import DomainError


def decider_oracle(max_coord, m=1):
    """Violations of ball-membership <=> smaller gap, from raw formulas."""
    m = F(m)
    vs = list(itertools.combinations(range(1, max_coord + 1), 2))
    out = []
    for y in vs:
        centre = [(F(c) + m / c) / 2 for c in y]
        gy = sum((F(c) - m / c) ** 2 for c in y)
        for z in vs:
            if z == y:
                continue
            dist = sum((F(a) - c) ** 2 for a, c in zip(z, centre))
            gz = sum((F(c) - m / c) ** 2 for c in z)
            if (dist < gy / 4) != (gz < gy):
                out.append((y, z))
    return out


def test_domain_validation():
    with pytest.raises(DomainError):
        ClaimDomain(3, 2, 1)
    with pytest.raises(DomainError):
        ClaimDomain(1, 5, 1)
    with pytest.raises(DomainError):
        ClaimDomain(2, 5, 1, "reals")
    with pytest.raises(DomainError):
        check_decider(ClaimDomain(2, 5, 1, "rationals-from-grid"))


@pytest.mark.parametrize("d, k, m, cases", [(2, 8, 1, 28), (3, 6, F(1, 2), 20), (2, 3, 5, 3)])
def test_involution_never_refuted(d, k, m, cases):
    r = check_involution(ClaimDomain(d, k, m))
    assert r.verdict == "no-counterexample-found"
    assert r.cases_checked == cases


def test_decider_refuted_with_known_witness():
    r = check_decider(ClaimDomain(2, 8, 1))
    assert r.verdict == "refuted"
    assert r.cases_checked == 28 * 27
    pairs = [(tuple(map(int, c.witness["y"])), tuple(map(int, c.witness["z"])))
             for c in r.counterexamples]
    assert sorted(pairs) == sorted(decider_oracle(8))
    cx = next(c for c in r.counterexamples if c.witness["y"] == (1, 8) and c.witness["z"] == (4, 7))
    assert cx.direction == "backward"
    assert cx.witness["gap_sq_z"] == F(47889, 784) < cx.witness["gap_sq_y"] == F(3969, 64)
    assert cx.witness["distance_sq"] == F(4513, 256) > cx.witness["radius_sq"] == F(3969, 256)
    assert (cx.lhs, cx.rhs) == ("false", "true")


def test_decider_small_domains():
    assert check_decider(ClaimDomain(2, 2, 1)).verdict == "no-counterexample-found"
    # golden: exhaustive at max_coord 4 finds nothing, matching the oracle
    r = check_decider(ClaimDomain(2, 4, 1))
    assert (r.cases_checked, r.verdict) == (30, "no-counterexample-found")
    assert decider_oracle(4) == []


def test_ballnest():
    assert check_ballnest(ClaimDomain(2, 2, 1)).verdict == "no-counterexample-found"
    r = check_ballnest(ClaimDomain(2, 8, 1))
    # golden values from the exhaustive sweep
    assert r.cases_checked == 360
    assert r.verdict == "refuted" and r.total_counterexamples == 175
    assert r.truncated and len(r.counterexamples) == 100
    first = r.counterexamples[0]
    assert first.witness["x"] == (1, 4) and first.witness["y"] == (2, 3)
    # containment fails because the inner radius is too large for the offset
    rx, ry = first.witness["radius_sq_x"], first.witness["radius_sq_y"]
    dc = first.witness["center_distance_sq"]
    assert (rx, ry, dc) == (F(225, 64), F(337, 144), F(157, 576))
    assert 4 * rx * ry > (rx + ry - dc) ** 2


def test_admissible_examples():
    x, y = (2, 3), (F(1, 2), 3)
    assert on_boundary(ball_of(x, 1), y)
    assert ball_of(y, 1) == ball_of(x, 1)
    r = check_admissible_equiv(ClaimDomain(2, 5, 1, "rationals-from-grid"))
    assert (r.cases_checked, r.verdict) == (720, "no-counterexample-found")


def test_admissible_refuted_at_larger_domains():
    r = check_admissible_equiv(ClaimDomain(2, 10, 1, "rationals-from-grid"))
    assert r.verdict == "refuted"
    r = check_admissible_equiv(ClaimDomain(3, 4, 1, "rationals-from-grid"))
    assert r.verdict == "refuted"
    for cx in r.counterexamples:
        assert cx.direction == "forward"
        b = ball_of(cx.witness["x"], 1)
        assert on_boundary(b, cx.witness["y"]) and ball_of(cx.witness["y"], 1) != b


def test_cornerstone():
    r = check_cornerstone(ClaimDomain(2, 3, 1), [1], vectors=[(2, 3)])
    assert r.verdict == "refuted"
    cx = r.counterexamples[0]
    assert cx.witness["a"] == (F(7, 2), F(17, 3))
    assert cx.witness["image"] == (F(2, 7), F(3, 17))
    assert check_cornerstone(ClaimDomain(2, 3, 1), [-1], vectors=[(2, 3)]).verdict == \
        "no-counterexample-found"
    r = check_cornerstone(ClaimDomain(2, 3, 1), [F(-2, 3), 1, 5, F(1, 7)], vectors=[(1, 2)])
    assert r.details["skipped"] == 1 and r.cases_checked == 3
    assert r.verdict == "no-counterexample-found"


@pytest.mark.parametrize("n, d, cases", [(2, 2, 2), (5, 2, 20), (3, 3, 6)])
def test_gap_shell_empty(n, d, cases):
    r = check_gap_shell(n, d)
    assert r.details["shell"] == [] and r.cases_checked == cases
    assert r.verdict == "refuted"


def test_gap_shell_neighbours():
    scan = gap_shell_scan(5, 2)
    assert scan["target"] == 625
    assert [v for _, v in scan["below"]] == [(4, 5), (3, 5), (2, 5)]
    assert scan["below"][0][0] == F(24, 5) ** 2 + F(15, 4) ** 2
    assert scan["above"] == []
    scan = gap_shell_scan(12, 2, neighbours=3)
    assert scan["shell"] == []


def test_gap_shell_hit_at_rational_scale():
    # m = 612/13 is a rational root of 13 m^2/36 - 4m + 13 = 625 for x = (2, 3)
    m = F(612, 13)
    r = check_gap_shell(5, 2, m)
    assert r.details["shell"] == [[2, 3], [3, 2]]
    assert r.verdict == "no-counterexample-found"


def test_every_counterexample_rechecks():
    reports = [
        check_decider(ClaimDomain(2, 8, 1)),
        check_ballnest(ClaimDomain(2, 8, 1)),
        check_admissible_equiv(ClaimDomain(3, 4, 1, "rationals-from-grid")),
        check_cornerstone(ClaimDomain(2, 6, F(1, 2))),
        check_gap_shell(6, 2),
    ]
    for r in reports:
        assert r.counterexamples
        for cx in r.counterexamples:
            assert recheck(cx, r.domain.scale) == cx


def test_reports_deterministic_across_threads():
    for claim, dom in [("decider", ClaimDomain(2, 10, 1)), ("ballnest", ClaimDomain(2, 9, 1)),
                       ("cornerstone", ClaimDomain(2, 7, 1)),
                       ("admissible", ClaimDomain(2, 6, 1, "rationals-from-grid"))]:
        a = run_claim(claim, dom, threads=1).dumps()
        b = run_claim(claim, dom, threads=4).dumps()
        assert a == b


def test_report_json_schema():
    doc = json.loads(check_decider(ClaimDomain(2, 8, 1)).dumps())
    assert set(doc) >= {"claim", "domain", "cases_checked", "verdict", "counterexamples", "truncated"}
    assert doc["domain"] == {"dim": 2, "max_coord": 8, "scale": "1", "kind": "distinct-naturals"}
    for cx in doc["counterexamples"]:
        assert set(cx) == {"witness", "direction", "lhs", "rhs"}
        assert cx["direction"] in ("forward", "backward")


def test_counterexample_order_is_lexicographic():
    r = check_decider(ClaimDomain(2, 9, 1))
    keys = [c.sort_key() for c in r.counterexamples]
    assert keys == sorted(keys)


def test_witness_generators_are_on_boundary():
    dom = ClaimDomain(3, 6, F(1, 2))
    for x in dom.vectors():
        b = ball_of(x, dom.m)
        assert on_boundary(b, x) and on_boundary(b, compress(x, dom.m))


def test_unknown_claim():
    with pytest.raises(DomainError):
        recheck(Counterexample("nope", {}, "forward", "", ""), 1)
    with pytest.raises(DomainError):
        run_claim("gapshell", ClaimDomain(2, 3, 1))
