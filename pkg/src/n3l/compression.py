"""Exact-rational compression map, mass, gap, induced balls and compression lines.

Everything is computed with :class:`fractions.Fraction`. Radii and gaps are
handled in squared form so that equality (admissibility) stays decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ConsistencyError, ContractError, DegenerateError, DomainError
from .geometry import collinear3
from .rational import as_fraction

EULER_GAMMA = 0.5772156649


@dataclass(frozen=True)
class CompressionScale:
    m: Fraction
    strict_unit_range: bool = False

    def __post_init__(self):
        object.__setattr__(self, "m", as_fraction(self.m))
        if self.m <= 0:
            raise DomainError(f"compression scale must be positive, got {self.m}")

    def check_ball_range(self):
        if self.strict_unit_range and not (0 < self.m <= 1):
            raise DomainError(f"ball geometry restricted to 0 < m <= 1, got m = {self.m}")


@dataclass(frozen=True)
class CompressionVector:
    """A vector with nonzero, pairwise distinct rational coordinates."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(as_fraction(c) for c in self.coords)
        if len(coords) < 2:
            raise DomainError("compression vectors need at least 2 coordinates")
        if any(c == 0 for c in coords):
            raise DomainError(f"zero coordinate in {coords}")
        if len(set(coords)) != len(coords):
            raise DomainError(f"repeated coordinate in {coords}")
        object.__setattr__(self, "coords", coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class Ball:
    """Open ball; equality compares only the geometric data."""

    center: tuple[Fraction, ...]
    radius_sq: Fraction
    generator: CompressionVector = field(compare=False)
    scale: CompressionScale = field(compare=False)


@dataclass(frozen=True)
class CompressionLine:
    base: CompressionVector
    direction: tuple[Fraction, ...]
    scale: CompressionScale


def as_scale(m) -> CompressionScale:
    return m if isinstance(m, CompressionScale) else CompressionScale(as_fraction(m))


def as_vector(x) -> CompressionVector:
    return x if isinstance(x, CompressionVector) else CompressionVector(tuple(x))


def _point(z: Sequence) -> tuple[Fraction, ...]:
    return tuple(as_fraction(c) for c in z)


def compress(x, m=1) -> tuple[Fraction, ...]:
    x, m = as_vector(x), as_scale(m).m
    return tuple(m / c for c in x)


def mass(x, m=1) -> Fraction:
    x, m = as_vector(x), as_scale(m).m
    return sum((m / c for c in x), Fraction(0))


def _gap_sq_direct(coords, m) -> Fraction:
    return sum(((c - m / c) ** 2 for c in coords), Fraction(0))


def _gap_sq_expanded(coords, m) -> Fraction:
    squares = sum((c * c for c in coords), Fraction(0))
    inverse_squares = sum((1 / (c * c) for c in coords), Fraction(0))
    return squares + m * m * inverse_squares - 2 * m * len(coords)


def gap_squared(x, m=1) -> Fraction:
    """Squared distance between ``x`` and its compression.

    Evaluated both from the definition and from the expanded identity
    ``sum x_i^2 + m^2 sum 1/x_i^2 - 2mn``; the two must agree exactly.
    """
    x, m = as_vector(x), as_scale(m).m
    direct = _gap_sq_direct(x.coords, m)
    expanded = _gap_sq_expanded(x.coords, m)
    if direct != expanded:
        raise ConsistencyError(f"gap identity failed for {x.coords}, m={m}: {direct} != {expanded}")
    return direct


def _positive_distinct_integers(x) -> list[int]:
    x = as_vector(x)
    if any(c.denominator != 1 or c <= 0 for c in x):
        raise DomainError(f"bounds need distinct positive integers, got {x.coords}")
    return [int(c) for c in x]


def mass_bounds(x, m=1) -> tuple[Fraction, Fraction]:
    """Finite-sum sandwich ``lower <= mass(x, m) <= upper`` for distinct positive integers."""
    xs, m = _positive_distinct_integers(x), as_scale(m).m
    n, lo, hi = len(xs), min(xs), max(xs)
    lower = m * sum(Fraction(1, hi - k) for k in range(n))
    upper = m * sum(Fraction(1, lo + k) for k in range(n))
    return lower, upper


def gap_sq_bounds(x, m=1) -> tuple[Fraction, Fraction]:
    xs, m = _positive_distinct_integers(x), as_scale(m).m
    n, lo, hi = len(xs), min(xs), max(xs)
    upper = n * hi * hi + m * m * sum(Fraction(1, (lo + k) ** 2) for k in range(n)) - 2 * m * n
    lower = n * lo * lo + m * m * sum(Fraction(1, (hi - k) ** 2) for k in range(n)) - 2 * m * n
    return lower, upper


def _harmonic_split(a: int, b: int) -> tuple[int, int]:
    # sum_{k=a}^{b-1} 1/k as an unreduced p/q
    if b - a == 1:
        return 1, a
    mid = (a + b) // 2
    p1, q1 = _harmonic_split(a, mid)
    p2, q2 = _harmonic_split(mid, b)
    return p1 * q2 + p2 * q1, q1 * q2


def harmonic_sum(N: int) -> Fraction:
    """Exact ``H(N) = 1 + 1/2 + ... + 1/N``."""
    if N < 1:
        raise DomainError(f"harmonic sum needs N >= 1, got {N}")
    p, q = _harmonic_split(1, N + 1)
    return Fraction(p, q)


def harmonic_error(N: int) -> float:
    """``H(N) - ln N - gamma`` with ``H(N)`` rounded once from its exact value."""
    h = harmonic_sum(N)
    return h.numerator / h.denominator - math.log(N) - EULER_GAMMA


def harmonic_estimate_failures(n_max: int) -> list[int]:
    """All ``N <= n_max`` with ``|H(N) - ln N - gamma| >= 1/N``.

    ``H(N)`` is carried exactly as ``num / lcm(1..N)`` and rounded once per N,
    which keeps the sweep linear.
    """
    failures = []
    num, den = 0, 1
    for k in range(1, n_max + 1):
        g = math.gcd(den, k)
        if g != k:
            scale = k // g
            num *= scale
            den *= scale
        num += den // k
        err = num / den - math.log(k) - EULER_GAMMA
        if not abs(err) < 1 / k:
            failures.append(k)
    return failures


def ball_of(x, m=1) -> Ball:
    """Open ball centred at ``(x + V_m[x]) / 2`` with radius half the gap."""
    x, scale = as_vector(x), as_scale(m)
    scale.check_ball_range()
    g2 = gap_squared(x, scale)
    if g2 == 0:
        raise DegenerateError(f"zero gap for {x.coords} at m={scale.m}")
    center = tuple((c + scale.m / c) / 2 for c in x)
    return Ball(center, g2 / 4, x, scale)


def distance_sq_to_center(b: Ball, z) -> Fraction:
    z = _point(z)
    if len(z) != len(b.center):
        raise ContractError(f"dimension mismatch: point {len(z)}, ball {len(b.center)}")
    return sum(((a - c) ** 2 for a, c in zip(z, b.center)), Fraction(0))


def ball_contains(b: Ball, z) -> bool:
    return distance_sq_to_center(b, z) < b.radius_sq


def on_boundary(b: Ball, z) -> bool:
    return distance_sq_to_center(b, z) == b.radius_sq


def ball_inside(inner: Ball, outer: Ball) -> bool:
    """Exact test of ``inner ⊆ outer`` for open balls.

    Holds iff ``r_in <= r_out`` and ``|c_in - c_out| <= r_out - r_in``. With
    ``D = |c_in - c_out|^2`` and squared radii ``A = r_out^2``, ``B = r_in^2``
    the second condition is ``2 sqrt(AB) <= A + B - D``, squared once the
    right side is known to be nonnegative.
    """
    A, B = outer.radius_sq, inner.radius_sq
    if B > A:
        return False
    D = sum(((a - c) ** 2 for a, c in zip(inner.center, outer.center)), Fraction(0))
    rhs = A + B - D
    if rhs < 0:
        return False
    return 4 * A * B <= rhs * rhs


def line_of(x, m=1) -> CompressionLine:
    x, scale = as_vector(x), as_scale(m)
    image = compress(x, scale)
    direction = tuple(a - b for a, b in zip(x, image))
    if all(c == 0 for c in direction):
        raise DegenerateError(f"compression line of {x.coords} at m={scale.m} has no direction")
    return CompressionLine(x, direction, scale)


def line_point(L: CompressionLine, lam) -> tuple[Fraction, ...]:
    lam = as_fraction(lam)
    return tuple(b + lam * v for b, v in zip(L.base, L.direction))


def line_contains(L: CompressionLine, a) -> bool:
    a = _point(a)
    if len(a) != len(L.direction):
        raise ContractError(f"dimension mismatch: point {len(a)}, line {len(L.direction)}")
    base = L.base.coords
    ahead = tuple(b + v for b, v in zip(base, L.direction))
    return collinear3(base, ahead, a)
