"""Exhaustive counterexample search for the compression-geometry claims.

Each claim has a single-case predicate that returns a :class:`Counterexample`
or ``None``. Sweeps run that predicate over a lexicographically enumerated
domain, and :func:`recheck` runs it again on a stored witness, so every
report can be verified independently of the sweep that produced it.
"""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .compression import (
    CompressionScale,
    as_scale,
    ball_contains,
    ball_inside,
    ball_of,
    compress,
    distance_sq_to_center,
    gap_squared,
    line_contains,
    line_of,
    line_point,
    on_boundary,
)
from .errors import DomainError
from .rational import as_fraction, format_rational, vector_str

CLAIMS = ("involution", "decider", "ballnest", "admissible", "cornerstone", "gapshell")
KINDS = ("distinct-naturals", "rationals-from-grid")
MAX_REPORTED = 100
DEFAULT_LAMBDAS = tuple(Fraction(v) for v in ("-2", "-1", "-1/2", "1/2", "1", "2"))


@dataclass(frozen=True)
class ClaimDomain:
    dim: int
    max_coord: int
    scale: CompressionScale
    kind: str = "distinct-naturals"

    def __post_init__(self):
        object.__setattr__(self, "scale", as_scale(self.scale))
        if self.dim < 2:
            raise DomainError(f"dimension must be >= 2, got {self.dim}")
        if self.kind not in KINDS:
            raise DomainError(f"unknown domain kind {self.kind!r}")
        if self.max_coord < 1:
            raise DomainError("max_coord must be positive")
        if self.kind == "distinct-naturals" and self.max_coord < self.dim:
            raise DomainError(f"max_coord {self.max_coord} < dim {self.dim}: empty domain")

    @property
    def m(self) -> Fraction:
        return self.scale.m

    def vectors(self) -> list[tuple[Fraction, ...]]:
        """Strictly increasing tuples of ``1..max_coord``."""
        return [tuple(Fraction(c) for c in combo)
                for combo in itertools.combinations(range(1, self.max_coord + 1), self.dim)]

    def symmetric_values(self) -> list[Fraction]:
        """``{k, m/k : 1 <= k <= max_coord}``, closed under ``t -> m/t``."""
        vals = set()
        for k in range(1, self.max_coord + 1):
            vals.add(Fraction(k))
            vals.add(self.m / k)
        return sorted(vals)

    def symmetric_vectors(self) -> list[tuple[Fraction, ...]]:
        return list(itertools.permutations(self.symmetric_values(), self.dim))

    def to_json(self) -> dict:
        return {"dim": self.dim, "max_coord": self.max_coord,
                "scale": format_rational(self.m), "kind": self.kind}


@dataclass(frozen=True)
class Counterexample:
    claim_id: str
    witness: dict
    direction: str
    lhs: str
    rhs: str

    def sort_key(self):
        parts = []
        for v in self.witness.values():
            parts.append(tuple(v) if isinstance(v, tuple) else (v,))
        return (tuple(parts), self.direction)

    def to_json(self) -> dict:
        wit = {}
        for k, v in self.witness.items():
            if isinstance(v, tuple):
                wit[k] = [format_rational(c) if isinstance(c, (int, Fraction)) else c for c in v]
            elif isinstance(v, (int, Fraction)):
                wit[k] = format_rational(v)
            else:
                wit[k] = v
        return {"witness": wit, "direction": self.direction, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class ClaimReport:
    claim_id: str
    domain: ClaimDomain
    cases_checked: int
    counterexamples: list[Counterexample]
    total_counterexamples: int
    truncated: bool
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "refuted" if self.counterexamples else "no-counterexample-found"

    def to_json(self) -> dict:
        doc = {
            "claim": self.claim_id,
            "domain": self.domain.to_json(),
            "cases_checked": self.cases_checked,
            "verdict": self.verdict,
            "counterexamples": [c.to_json() for c in self.counterexamples],
            "truncated": self.truncated,
            "counterexamples_total": self.total_counterexamples,
        }
        if self.details:
            doc["details"] = self.details
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _require_kind(domain: ClaimDomain, kind: str, claim: str):
    if domain.kind != kind:
        raise DomainError(f"{claim} sweeps need a {kind} domain, got {domain.kind}")


def _b(flag: bool) -> str:
    return "true" if flag else "false"


def _sweep(cases: Sequence, check: Callable, threads: int) -> list[Counterexample]:
    if threads <= 1 or len(cases) < 64:
        found = [check(*c) for c in cases]
    else:
        step = max(1, len(cases) // (threads * 4))
        chunks = [cases[i:i + step] for i in range(0, len(cases), step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda ch: [check(*c) for c in ch], chunks))
        found = [cx for part in parts for cx in part]
    return [cx for cx in found if cx is not None]


def _report(claim_id: str, domain: ClaimDomain, cases: int, found: Iterable[Counterexample],
            details: dict | None = None) -> ClaimReport:
    ordered = sorted(found, key=Counterexample.sort_key)
    return ClaimReport(claim_id, domain, cases, ordered[:MAX_REPORTED], len(ordered),
                       len(ordered) > MAX_REPORTED, details or {})


# -- single-case predicates --------------------------------------------------

def case_involution(x, m) -> Counterexample | None:
    back = compress(compress(x, m), m)
    if back == tuple(x):
        return None
    return Counterexample("involution", {"x": tuple(x)}, "forward", vector_str(back), vector_str(x))


def case_decider(y, z, m) -> Counterexample | None:
    """Membership of ``z`` in the ball of ``y`` against ``gap(z) < gap(y)``."""
    by = ball_of(y, m)
    inside = ball_contains(by, z)
    gy, gz = gap_squared(y, m), gap_squared(z, m)
    smaller = gz < gy
    if inside == smaller:
        return None
    witness = {"y": tuple(y), "z": tuple(z), "gap_sq_y": gy, "gap_sq_z": gz,
               "distance_sq": distance_sq_to_center(by, z), "radius_sq": by.radius_sq}
    return Counterexample("decider", witness, "forward" if inside else "backward",
                          _b(inside), _b(smaller))


def case_ballnest(x, y, m) -> Counterexample | None:
    """Assumes ``y`` lies in the ball of ``x``; checks the nesting of balls."""
    bx, by = ball_of(x, m), ball_of(y, m)
    if ball_inside(by, bx):
        return None
    center_sq = sum(((a - b) ** 2 for a, b in zip(bx.center, by.center)), Fraction(0))
    witness = {"x": tuple(x), "y": tuple(y), "radius_sq_x": bx.radius_sq,
               "radius_sq_y": by.radius_sq, "center_distance_sq": center_sq}
    return Counterexample("ballnest", witness, "forward", "true", "false")


def case_admissible(x, y, m) -> Counterexample | None:
    bx = ball_of(x, m)
    boundary = on_boundary(bx, y)
    same = ball_of(y, m) == bx and gap_squared(y, m) == gap_squared(x, m)
    if boundary == same:
        return None
    return Counterexample("admissible", {"x": tuple(x), "y": tuple(y)},
                          "forward" if boundary else "backward", _b(boundary), _b(same))


def _valid_compression_point(a) -> bool:
    return all(c != 0 for c in a) and len(set(a)) == len(a)


def case_cornerstone(x, lam, m) -> Counterexample | None:
    """``None`` also covers skipped lambdas; use :func:`_valid_compression_point` to tell them apart."""
    L = line_of(x, m)
    a = line_point(L, lam)
    if not _valid_compression_point(a):
        return None
    image = compress(a, m)
    if line_contains(L, image):
        return None
    witness = {"x": tuple(x), "lambda": as_fraction(lam), "a": a, "image": image}
    return Counterexample("cornerstone", witness, "forward", _b(line_contains(L, a)), "false")


# -- sweeps ------------------------------------------------------------------

def check_involution(domain: ClaimDomain, threads: int = 1) -> ClaimReport:
    m = domain.m
    if domain.kind == "distinct-naturals":
        xs = domain.vectors()
    else:
        xs = domain.symmetric_vectors()
    found = _sweep([(x, m) for x in xs], case_involution, threads)
    return _report("involution", domain, len(xs), found)


def check_decider(domain: ClaimDomain, threads: int = 1) -> ClaimReport:
    _require_kind(domain, "distinct-naturals", "decider")
    m = domain.m
    vs = domain.vectors()
    cases = [(y, z, m) for y in vs for z in vs if y != z]
    return _report("decider", domain, len(cases), _sweep(cases, case_decider, threads))


def check_ballnest(domain: ClaimDomain, threads: int = 1) -> ClaimReport:
    _require_kind(domain, "distinct-naturals", "ballnest")
    m = domain.m
    vs = domain.vectors()
    balls = {v: ball_of(v, m) for v in vs}
    cases = [(x, y, m) for x in vs for y in vs if x != y and ball_contains(balls[x], y)]
    return _report("ballnest", domain, len(cases), _sweep(cases, case_ballnest, threads))


def check_admissible_equiv(domain: ClaimDomain, threads: int = 1) -> ClaimReport:
    """Generators ``x`` are increasing naturals; candidates ``y`` range over the
    ordered tuples of distinct values from ``{k, m/k}``."""
    _require_kind(domain, "rationals-from-grid", "admissible")
    m = domain.m
    xs = [tuple(Fraction(c) for c in combo)
          for combo in itertools.combinations(range(1, domain.max_coord + 1), domain.dim)]
    ys = domain.symmetric_vectors()
    cases = [(x, y, m) for x in xs for y in ys]
    return _report("admissible", domain, len(cases), _sweep(cases, case_admissible, threads))


def check_cornerstone(domain: ClaimDomain, lambdas: Sequence = DEFAULT_LAMBDAS,
                      vectors: Sequence[Sequence] | None = None, threads: int = 1) -> ClaimReport:
    m = domain.m
    lams = [as_fraction(lam) for lam in lambdas]
    xs = domain.vectors() if vectors is None else [tuple(as_fraction(c) for c in v) for v in vectors]
    cases, skipped = [], 0
    for x in xs:
        L = line_of(x, m)
        for lam in lams:
            if _valid_compression_point(line_point(L, lam)):
                cases.append((x, lam, m))
            else:
                skipped += 1
    details = {"lambdas": [format_rational(lam) for lam in lams], "skipped": skipped}
    return _report("cornerstone", domain, len(cases), _sweep(cases, case_cornerstone, threads), details)


def gap_shell_scan(n: int, d: int, m=1, neighbours: int = 3) -> dict:
    """Vectors of ``{1..n}^d`` with distinct coordinates and ``gap^2 = n^(2d)``.

    ``gap^2`` is symmetric in the coordinates, so the scan runs over sorted
    tuples and expands matches to all orderings. Also returns the nearest
    distinct ``gap^2`` values on either side of the target with the
    lexicographically smallest vector reaching each.
    """
    m = as_scale(m).m
    target = Fraction(n) ** (2 * d)
    shell, by_value = [], {}
    for combo in itertools.combinations(range(1, n + 1), d):
        g = gap_squared(combo, m)
        if g == target:
            shell.extend(itertools.permutations(combo))
        by_value.setdefault(g, combo)
    below = sorted((g for g in by_value if g < target), reverse=True)[:neighbours]
    above = sorted(g for g in by_value if g > target)[:neighbours]
    cases = math.comb(n, d) * math.factorial(d) if n >= d else 0
    return {
        "target": target,
        "shell": sorted(shell),
        "below": [(g, by_value[g]) for g in below],
        "above": [(g, by_value[g]) for g in above],
        "cases": cases,
    }


def _scan_json(scan: dict) -> dict:
    def near(entries):
        return [{"gap_sq": format_rational(g), "x": list(v)} for g, v in entries]

    return {
        "target": format_rational(scan["target"]),
        "shell": [list(v) for v in scan["shell"]],
        "nearest_below": near(scan["below"]),
        "nearest_above": near(scan["above"]),
    }


def case_gapshell(n, d, m) -> Counterexample | None:
    scan = gap_shell_scan(n, d, m)
    if scan["shell"]:
        return None
    misses = [abs(g - scan["target"]) for g, _ in scan["below"][:1] + scan["above"][:1]]
    witness = {"n": n, "d": d, "target": scan["target"]}
    return Counterexample("gapshell", witness, "forward",
                          format_rational(min(misses)) if misses else "none", "0")


def check_gap_shell(n: int, d: int, m=1) -> ClaimReport:
    """Does any grid vector attain ``gap = n^d`` exactly?

    An empty shell is reported as one counterexample whose ``lhs`` is the
    smallest miss ``|gap^2 - n^(2d)|``.
    """
    if n < 1 or d < 2:
        raise DomainError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    scale = as_scale(m)
    domain = ClaimDomain(d, max(n, d), scale, "distinct-naturals")
    scan = gap_shell_scan(n, d, scale.m)
    cx = case_gapshell(n, d, scale.m)
    return _report("gapshell", domain, scan["cases"], [cx] if cx else [], _scan_json(scan))


def recheck(cx: Counterexample, m) -> Counterexample | None:
    """Re-evaluate a stored counterexample from its witness alone."""
    w = cx.witness
    m = as_scale(m).m
    if cx.claim_id == "involution":
        return case_involution(w["x"], m)
    if cx.claim_id == "decider":
        return case_decider(w["y"], w["z"], m)
    if cx.claim_id == "ballnest":
        if not ball_contains(ball_of(w["x"], m), w["y"]):
            return None
        return case_ballnest(w["x"], w["y"], m)
    if cx.claim_id == "admissible":
        return case_admissible(w["x"], w["y"], m)
    if cx.claim_id == "cornerstone":
        return case_cornerstone(w["x"], w["lambda"], m)
    if cx.claim_id == "gapshell":
        return case_gapshell(w["n"], w["d"], m)
    raise DomainError(f"unknown claim {cx.claim_id!r}")


def run_claim(claim: str, domain: ClaimDomain, n: int | None = None,
              lambdas: Sequence | None = None, threads: int = 1) -> ClaimReport:
    if claim == "involution":
        return check_involution(domain, threads)
    if claim == "decider":
        return check_decider(domain, threads)
    if claim == "ballnest":
        return check_ballnest(domain, threads)
    if claim == "admissible":
        return check_admissible_equiv(domain, threads)
    if claim == "cornerstone":
        return check_cornerstone(domain, lambdas if lambdas is not None else DEFAULT_LAMBDAS,
                                 threads=threads)
    if claim == "gapshell":
        if n is None:
            raise DomainError("gapshell needs a grid side n")
        return check_gap_shell(n, domain.dim, domain.scale)
    raise DomainError(f"unknown claim {claim!r}")
