"""Exact point types, collinearity predicates and the no-three-in-line verifier.

Grid points are plain tuples of Python ints; rational points are tuples of
:class:`fractions.Fraction`. Nothing in this module touches floating point.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ContractError, DomainError

GridPoint = tuple[int, ...]
RationalVector = tuple[Fraction, ...]
Box = tuple[tuple[int, int], ...]


def _lcm_denominator(points) -> int:
    den = 1
    for p in points:
        for c in p:
            if isinstance(c, Fraction):
                den = math.lcm(den, c.denominator)
    return den


def _to_integer_points(p, q, r):
    den = _lcm_denominator((p, q, r))
    if den == 1:
        return [tuple(int(c) for c in pt) for pt in (p, q, r)]
    return [tuple(int(c * den) for c in pt) for pt in (p, q, r)]


def collinear3(p: Sequence, q: Sequence, r: Sequence) -> bool:
    """True iff ``p``, ``q``, ``r`` lie on one line (coincident points count)."""
    if not (len(p) == len(q) == len(r)):
        raise ContractError(f"dimension mismatch: {len(p)}, {len(q)}, {len(r)}")
    if len(p) < 2:
        raise ContractError("points need dimension >= 2")
    p, q, r = _to_integer_points(p, q, r)
    u = [b - a for a, b in zip(p, q)]
    v = [c - a for a, c in zip(p, r)]
    d = len(u)
    for i in range(d):
        for j in range(i + 1, d):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return True


def primitive_direction(v: Sequence[int]) -> GridPoint:
    """Reduce an integer vector by its content and make the first nonzero entry positive."""
    g = 0
    for c in v:
        g = math.gcd(g, c)
    if g == 0:
        raise ContractError("zero vector has no direction")
    for c in v:
        if c != 0:
            if c < 0:
                g = -g
            break
    return tuple(c // g for c in v)


def _direction(a: GridPoint, b: GridPoint) -> GridPoint:
    return primitive_direction([y - x for x, y in zip(a, b)])


@dataclass(frozen=True)
class PointSet:
    """An ordered, duplicate-free collection of integer points inside a box.

    ``box`` holds inclusive ``(lo, hi)`` bounds per axis. Point order is kept
    because the verifier reports witnesses relative to it.
    """

    dim: int
    box: Box
    points: tuple[GridPoint, ...]

    def __post_init__(self):
        if self.dim < 2:
            raise ContractError(f"dimension must be >= 2, got {self.dim}")
        if len(self.box) != self.dim:
            raise ContractError("box dimension does not match dim")
        for lo, hi in self.box:
            if lo > hi:
                raise ContractError(f"empty box interval [{lo}, {hi}]")
        seen = set()
        for p in self.points:
            if len(p) != self.dim:
                raise ContractError(f"point {p} has dimension {len(p)}, expected {self.dim}")
            if not all(lo <= c <= hi for c, (lo, hi) in zip(p, self.box)):
                raise ContractError(f"point {p} lies outside the box {self.box}")
            if p in seen:
                raise ContractError(f"duplicate point {p}")
            seen.add(p)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], dim: int | None = None,
                    box: Box | None = None) -> "PointSet":
        pts = tuple(tuple(int(c) for c in p) for p in points)
        if dim is None:
            if not pts:
                raise ContractError("cannot infer dimension of an empty point set")
            dim = len(pts[0])
        if box is None:
            if pts:
                box = tuple((min(p[i] for p in pts), max(p[i] for p in pts)) for i in range(dim))
            else:
                box = tuple((0, 0) for _ in range(dim))
        return cls(dim, tuple(tuple(b) for b in box), pts)

    @classmethod
    def in_grid(cls, points: Iterable[Sequence[int]], n: int, d: int) -> "PointSet":
        """Point set inside the 1-based grid ``{1..n}^d``."""
        return cls.from_points(points, dim=d, box=grid_box(n, d))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[GridPoint]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.points)


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: tuple[GridPoint, GridPoint, GridPoint] | None = None

    def __bool__(self) -> bool:
        return self.passed


def _scan_anchor(points: Sequence[GridPoint], i: int):
    anchor = points[i]
    keyed: dict[GridPoint, int] = {}
    for j in range(i + 1, len(points)):
        key = _direction(anchor, points[j])
        k = keyed.get(key)
        if k is not None:
            return (anchor, points[k], points[j])
        keyed[key] = j
    return None


def _scan_range(points, lo, hi):
    for i in range(lo, hi):
        w = _scan_anchor(points, i)
        if w is not None:
            return i, w
    return None


def verify_no_three(s: PointSet | Sequence[Sequence[int]], threads: int = 1) -> Verdict:
    """Check that no three points of ``s`` are collinear.

    For each anchor, primitive directions to the later points are hashed; a
    repeated direction is a collinear triple. The witness is the one found at
    the smallest anchor (then the smallest closing point), independent of
    ``threads``.
    """
    points = list(s.points if isinstance(s, PointSet) else (tuple(p) for p in s))
    k = len(points)
    if k < 3:
        return Verdict(True)
    if threads <= 1 or k < 64:
        hit = _scan_range(points, 0, k)
    else:
        step = max(1, k // (threads * 4))
        bounds = [(lo, min(k, lo + step)) for lo in range(0, k, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda b: _scan_range(points, *b), bounds))
        hits = [r for r in results if r is not None]
        hit = min(hits, key=lambda r: r[0]) if hits else None
    if hit is None:
        return Verdict(True)
    return Verdict(False, hit[1])


def grid_box(n: int, d: int) -> Box:
    return tuple((1, n) for _ in range(d))


def grid_points(n: int, d: int) -> Iterator[GridPoint]:
    """All points of ``{1..n}^d`` in lexicographic order."""
    if n < 1:
        raise DomainError(f"grid side must be >= 1, got {n}")
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    return itertools.product(range(1, n + 1), repeat=d)


# -- points file format ------------------------------------------------------

def format_points(s: PointSet) -> str:
    lines = [f"dim {s.dim}"]
    lines.extend(" ".join(str(c) for c in p) for p in s.points)
    return "\n".join(lines) + "\n"


def parse_points(text: str, dim: int | None = None, box: Box | None = None) -> PointSet:
    """Parse the whitespace-separated points format.

    Lines starting with ``#`` are comments; the first other line may be a
    ``dim d`` header. A ``dim`` argument that disagrees with the header is an error.
    """
    header_dim = None
    pts = []
    seen_content = False
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        if not seen_content and line.startswith("dim"):
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise DomainError(f"line {lineno}: malformed header {line!r}")
            try:
                header_dim = int(parts[1])
            except ValueError:
                raise DomainError(f"line {lineno}: malformed header {line!r}") from None
            seen_content = True
            continue
        seen_content = True
        try:
            pts.append(tuple(int(tok) for tok in line.split(" ")))
        except ValueError:
            raise DomainError(f"line {lineno}: expected integers separated by single spaces") from None
    if header_dim is not None and dim is not None and header_dim != dim:
        raise DomainError(f"header declares dim {header_dim} but dim {dim} was requested")
    dim = dim if dim is not None else header_dim
    if dim is None and not pts:
        raise DomainError("empty points file without a dim header")
    try:
        return PointSet.from_points(pts, dim=dim, box=box)
    except ContractError as exc:
        raise DomainError(str(exc)) from None


def read_points(path, dim: int | None = None) -> PointSet:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_points(fh.read(), dim=dim)


def write_points(path, s: PointSet) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_points(s))
