"""Generators of point sets with no three collinear.

* :func:`sphere_section` - lattice points at one exact squared distance from a
  half-integer center. A line meets a sphere at most twice, so the result is
  always in general position.
* :func:`erdos_parabola` - ``(x, x^2 mod p)`` for a prime ``p``.
* :func:`greedy` - seeded first-fit over the grid cells.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bounds import paper_bound
from .errors import ContractError, DomainError
from .geometry import Box, GridPoint, PointSet, grid_box, grid_points, primitive_direction, verify_no_three
from .rational import as_fraction, format_rational


@dataclass(frozen=True)
class SphereSpec:
    center: tuple[Fraction, ...]
    radius_sq: Fraction
    box: Box

    def __post_init__(self):
        center = tuple(as_fraction(c) for c in self.center)
        r2 = as_fraction(self.radius_sq)
        if len(center) < 2 or len(center) != len(self.box):
            raise ContractError("center and box must share a dimension >= 2")
        if any((2 * c).denominator != 1 for c in center):
            raise DomainError(f"center must have half-integer coordinates, got {center}")
        if (4 * r2).denominator != 1 or r2 < 0:
            raise DomainError(f"radius_sq must be a nonnegative multiple of 1/4, got {r2}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius_sq", r2)
        object.__setattr__(self, "box", tuple(tuple(b) for b in self.box))

    @property
    def dim(self) -> int:
        return len(self.center)


@dataclass
class ConstructionReport:
    method: str
    params: dict
    points: PointSet
    verified: bool = False
    bound_value: float = 0.0
    ratio: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_json(self, points_file: str | None = None) -> dict:
        if not self.verified:
            raise ContractError("refusing to serialize an unverified construction")
        return {
            "method": self.method,
            "params": self.params,
            "count": len(self.points),
            "bound": self.bound_value,
            "ratio": self.ratio,
            "points_file": points_file,
        }


def _report(method: str, params: dict, points: PointSet, n: int, d: int) -> ConstructionReport:
    verdict = verify_no_three(points)
    if not verdict.passed:
        raise ContractError(f"{method} construction produced collinear triple {verdict.witness}")
    bound = paper_bound(n, d)
    return ConstructionReport(method, params, points, True, bound, len(points) / bound)


# -- sphere sections ---------------------------------------------------------

def sphere_section(spec: SphereSpec) -> PointSet:
    """All lattice points of ``spec.box`` at squared distance exactly ``radius_sq``.

    Works in doubled coordinates, where ``(2z - 2c)`` and ``4 r^2`` are
    integers. Each level of the recursion clamps its coordinate to what the
    remaining squared radius allows.
    """
    C = [int(2 * c) for c in spec.center]
    R = int(4 * spec.radius_sq)
    d = spec.dim
    out: list[GridPoint] = []
    prefix: list[int] = []

    def descend(i: int, rem: int):
        lo_box, hi_box = spec.box[i]
        s = math.isqrt(rem)
        if i == d - 1:
            if s * s != rem:
                return
            for t in sorted({-s, s}):
                if (C[i] + t) % 2 == 0:
                    z = (C[i] + t) // 2
                    if lo_box <= z <= hi_box:
                        out.append(tuple(prefix) + (z,))
            return
        lo = max(lo_box, -((s - C[i]) // 2))
        hi = min(hi_box, (C[i] + s) // 2)
        for z in range(lo, hi + 1):
            t = 2 * z - C[i]
            prefix.append(z)
            descend(i + 1, rem - t * t)
            prefix.pop()

    descend(0, R)
    return PointSet(d, spec.box, tuple(out))


def _center_candidates(n: int, d: int) -> list[tuple[Fraction, ...]]:
    mid = Fraction(n + 1, 2)
    shifts = (Fraction(-1, 2), Fraction(0), Fraction(1, 2))
    return sorted({tuple(mid + s for s in delta) for delta in itertools.product(shifts, repeat=d)})


def _radius_histogram(n: int, d: int, center: Sequence[Fraction]) -> tuple[np.ndarray, np.ndarray]:
    """Realized doubled squared distances ``4|z - c|^2`` and their multiplicities."""
    axis = np.arange(1, n + 1, dtype=np.int64) * 2
    total = np.zeros((1,), dtype=np.int64)
    for c in center:
        t = (axis - int(2 * c)) ** 2
        total = (total[:, None] + t[None, :]).reshape(-1)
    return np.unique(total, return_counts=True)


def best_sphere(n: int, d: int, strategy: str = "center-scan",
                center: Sequence | None = None, radius_sq=None) -> ConstructionReport:
    """Largest sphere section of the grid ``{1..n}^d``.

    ``center-scan`` tries the grid center and its half-integer shifts;
    ``fixed-center`` uses ``center``. Candidate radii are exactly the squared
    distances realized by grid points. Ties go to the smaller radius, then the
    lexicographically smaller center.
    """
    if n < 2 or d < 2:
        raise DomainError("best_sphere needs n >= 2 and d >= 2")
    if strategy == "center-scan":
        centers = _center_candidates(n, d)
    elif strategy == "fixed-center":
        if center is None:
            raise DomainError("fixed-center strategy needs a center")
        centers = [tuple(as_fraction(c) for c in center)]
        if len(centers[0]) != d:
            raise DomainError(f"center has dimension {len(centers[0])}, expected {d}")
        SphereSpec(centers[0], 0, grid_box(n, d))
    else:
        raise DomainError(f"unknown strategy {strategy!r}")

    best_key = None
    for c in centers:
        if radius_sq is not None:
            r4 = as_fraction(radius_sq) * 4
            if r4.denominator != 1:
                raise DomainError(f"radius_sq must be a multiple of 1/4, got {radius_sq}")
            values, counts = _radius_histogram(n, d, c)
            hit = np.nonzero(values == int(r4))[0]
            options = [(int(counts[hit[0]]) if len(hit) else 0, int(r4))]
        else:
            values, counts = _radius_histogram(n, d, c)
            options = list(zip(counts.tolist(), values.tolist()))
        for count, r4 in options:
            key = (-count, r4, c)
            if best_key is None or key < best_key:
                best_key = key

    count, r4, c = -best_key[0], best_key[1], best_key[2]
    spec = SphereSpec(c, Fraction(r4, 4), grid_box(n, d))
    points = sphere_section(spec)
    if len(points) != count:
        raise ContractError(f"sphere enumeration found {len(points)} points, histogram {count}")
    params = {"n": n, "d": d, "strategy": strategy,
              "center": [format_rational(x) for x in c], "radius_sq": format_rational(spec.radius_sq)}
    return _report("sphere", params, points, n, d)


# -- Erdos parabola ----------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin; exact for every ``p < 3.3e24``."""
    if p < 2:
        return False
    for q in _MR_BASES:
        if p % q == 0:
            return p == q
    r, s = 0, p - 1
    while s % 2 == 0:
        r += 1
        s //= 2
    for a in _MR_BASES:
        x = pow(a, s, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    p = max(2, n)
    while not is_prime(p):
        p += 1
    return p


def erdos_parabola(p: int) -> PointSet:
    """``{(x, x^2 mod p)}`` shifted into the 1-based ``p x p`` grid."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    pts = tuple((x + 1, x * x % p + 1) for x in range(p))
    return PointSet(2, grid_box(p, 2), pts)


def erdos_construction(n: int) -> ConstructionReport:
    """Parabola for the smallest prime ``p >= n``, clipped to ``{1..n}^2``."""
    if n < 2:
        raise DomainError("erdos construction needs n >= 2")
    p = next_prime(n)
    pts = tuple(q for q in erdos_parabola(p) if q[0] <= n and q[1] <= n)
    return _report("erdos", {"n": n, "d": 2, "p": p}, PointSet(2, grid_box(n, 2), pts), n, 2)


# -- greedy ------------------------------------------------------------------

def grid_order(n: int, d: int, seed: int) -> list[GridPoint]:
    cells = list(grid_points(n, d))
    if seed:
        random.Random(seed).shuffle(cells)
    return cells


def block_line(blocked: set, a: GridPoint, b: GridPoint, box: Box) -> None:
    """Add every lattice point of ``box`` on the line through ``a`` and ``b``."""
    step = primitive_direction([y - x for x, y in zip(a, b)])
    for sign in (1, -1):
        cur = a
        while True:
            cur = tuple(c + sign * s for c, s in zip(cur, step))
            if not all(lo <= c <= hi for c, (lo, hi) in zip(cur, box)):
                break
            blocked.add(cur)


def greedy(n: int, d: int, seed: int = 0) -> ConstructionReport:
    """First-fit over a seeded cell order (seed 0 is lexicographic).

    A cell is taken unless it lies on a line through two chosen points. Since
    the chosen set only grows, one pass yields a maximal set.
    """
    if n < 2 or d < 2:
        raise DomainError("greedy needs n >= 2 and d >= 2")
    box = grid_box(n, d)
    chosen: list[GridPoint] = []
    blocked: set[GridPoint] = set()
    for cell in grid_order(n, d, seed):
        if cell in blocked:
            continue
        for p in chosen:
            block_line(blocked, p, cell, box)
        chosen.append(cell)
        blocked.add(cell)
    return _report("greedy", {"n": n, "d": d, "seed": seed}, PointSet(d, box, tuple(chosen)), n, d)
