"""Tabulate the claimed bound against exact optima and constructions."""

from __future__ import annotations

from typing import Iterable, Sequence

from .bounds import BoundsRow, make_row
from .constructions import best_sphere, erdos_construction, greedy
from .errors import DomainError
from .solver import exact_max

SOURCES = ("exact", "sphere", "erdos", "greedy")


def exact_supported(n: int, d: int) -> bool:
    """Sizes the exact solver is expected to finish at desk scale."""
    if d == 2:
        return n <= 10
    if d == 3:
        return n <= 3
    return n ** d <= 16


def construction_count(source: str, n: int, d: int) -> int | None:
    if source == "sphere":
        return len(best_sphere(n, d).points)
    if source == "greedy":
        return len(greedy(n, d, 0).points)
    if source == "erdos":
        return len(erdos_construction(n).points) if d == 2 else None
    raise DomainError(f"unknown source {source!r}")


def bounds_row(n: int, d: int, sources: Sequence[str] = (), threads: int = 1) -> BoundsRow:
    """One row; an exact optimum wins over any construction count."""
    for s in sources:
        if s not in SOURCES:
            raise DomainError(f"unknown source {s!r}; choose from {', '.join(SOURCES)}")
    if "exact" in sources:
        if exact_supported(n, d):
            res = exact_max(n, d, threads=threads)
            if res.optimal:
                return make_row(n, d, res.max_count, "exact")
        elif len(sources) == 1:
            return make_row(n, d, None, "skipped")
    best, tag = None, "none"
    if n >= 2:
        for s in sources:
            if s == "exact":
                continue
            count = construction_count(s, n, d)
            if count is not None and (best is None or count > best):
                best, tag = count, s
    if best is None and "exact" in sources:
        tag = "skipped"
    return make_row(n, d, best, tag)


def compare_table(n_range: Iterable[int], d: int, sources: Sequence[str],
                  threads: int = 1) -> list[BoundsRow]:
    return [bounds_row(n, d, sources, threads) for n in sorted(set(n_range))]
