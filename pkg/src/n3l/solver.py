"""Exact maximum no-three-in-line solver for small grids.

The search runs iterative deepening on the target size ``T``, from the
axis-line ceiling ``2 n^(d-1)`` down to the size of a greedy solution. For
each ``T`` a depth-first search visits cells in lexicographic order, trying
"include" before "exclude", so the first set of size ``T`` it meets is the
lexicographically smallest one. The first ``T`` that succeeds is therefore
the optimum, and its witness is canonical.

Top-level branches (the choice of the smallest selected cell) are
independent and may run on several threads. A branch is discarded once a
smaller branch has succeeded, and node counts are only summed over the
branches up to the winner. Results and node counts do not depend on the
thread count.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .constructions import block_line, greedy
from .errors import ContractError, DomainError
from .geometry import PointSet, grid_box, grid_points, primitive_direction, verify_no_three


@dataclass
class SolveResult:
    n: int
    d: int
    max_count: int
    witness: PointSet
    nodes_explored: int
    time_ms: int
    optimal: bool

    def to_json(self, witness_file: str | None = None, timing: bool = False) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "max": self.max_count,
            "optimal": self.optimal,
            "nodes": self.nodes_explored,
            "time_ms": self.time_ms if timing else None,
            "witness_file": witness_file,
            "witness": [list(p) for p in self.witness],
        }


class _Timeout(Exception):
    pass


class _Abandon(Exception):
    pass


def fundamental_cell(cell, n: int) -> bool:
    """True iff ``cell`` is the lexicographically smallest cell of its orbit
    under the symmetries of the cube (axis reflections and permutations)."""
    return all(2 * c <= n + 1 for c in cell) and all(a <= b for a, b in zip(cell, cell[1:]))


class _Branch:
    """DFS for a set of size ``target`` whose smallest cell is ``cells[first]``."""

    def __init__(self, solver: "_Search", target: int, first: int):
        self.s = solver
        self.target = target
        self.first = first
        self.nodes = 0
        self.chosen: list[int] = []
        self.dirs: list[set] = []
        self.line_count = [0] * solver.n_lines

    def run(self) -> list[int] | None:
        if not self._try_add(self.first):
            return None
        if self._dfs(self.first + 1):
            return list(self.chosen)
        return None

    def _try_add(self, idx: int) -> bool:
        s = self.s
        line = idx // s.n
        if self.line_count[line] >= 2:
            return False
        c = s.cells[idx]
        new_dirs = []
        for j, p_idx in enumerate(self.chosen):
            p = s.cells[p_idx]
            dv = primitive_direction([b - a for a, b in zip(p, c)])
            if dv in self.dirs[j]:
                return False
            new_dirs.append(dv)
        for j, dv in enumerate(new_dirs):
            self.dirs[j].add(dv)
        self.chosen.append(idx)
        self.dirs.append(set(new_dirs))
        self.line_count[line] += 1
        return True

    def _undo(self):
        s = self.s
        idx = self.chosen.pop()
        self.dirs.pop()
        c = s.cells[idx]
        for j, p_idx in enumerate(self.chosen):
            p = s.cells[p_idx]
            self.dirs[j].discard(primitive_direction([b - a for a, b in zip(p, c)]))
        self.line_count[idx // s.n] -= 1

    def _bound(self, idx: int) -> int:
        s = self.s
        if idx >= s.size:
            return 0
        line, pos = divmod(idx, s.n)
        here = min(2 - self.line_count[line], s.n - pos)
        return here + 2 * (s.n_lines - line - 1)

    def _dfs(self, idx: int) -> bool:
        self.nodes += 1
        if self.nodes & 1023 == 0:
            self.s.poll(self.first)
        k = len(self.chosen)
        if k == self.target:
            return True
        if idx >= self.s.size or k + self._bound(idx) < self.target:
            return False
        if self._try_add(idx):
            if self._dfs(idx + 1):
                return True
            self._undo()
        return self._dfs(idx + 1)


class _Search:
    def __init__(self, n: int, d: int, deadline: float | None, symmetry: bool, threads: int):
        self.n, self.d = n, d
        self.cells = list(grid_points(n, d))
        self.size = len(self.cells)
        self.n_lines = self.size // n
        self.deadline = deadline
        self.threads = max(1, threads)
        self.symmetry = symmetry
        self._lock = threading.Lock()
        self._winner: int | None = None

    def poll(self, first: int):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Timeout
        w = self._winner
        if w is not None and w < first:
            raise _Abandon

    def _firsts(self) -> list[int]:
        if not self.symmetry:
            return list(range(self.size))
        return [i for i, c in enumerate(self.cells) if fundamental_cell(c, self.n)]

    def _run_branch(self, target: int, first: int):
        br = _Branch(self, target, first)
        try:
            self.poll(first)
            found = br.run()
        except _Abandon:
            return first, None, br.nodes, True
        if found is not None:
            with self._lock:
                if self._winner is None or first < self._winner:
                    self._winner = first
        return first, found, br.nodes, False

    def attempt(self, target: int) -> tuple[list[int] | None, int]:
        """Search for the lexicographically smallest set of size ``target``."""
        self._winner = None
        firsts = self._firsts()
        if self.threads == 1:
            total = 0
            for f in firsts:
                _, found, nodes, _ = self._run_branch(target, f)
                total += nodes
                if found is not None:
                    return found, total
            return None, total
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            results = list(pool.map(lambda f: self._run_branch(target, f), firsts))
        total = 0
        for first, found, nodes, abandoned in results:
            total += nodes
            if found is not None:
                return found, total
        return None, total


def axis_ceiling(n: int, d: int) -> int:
    """At most two points on each of the ``n^(d-1)`` lines parallel to one axis."""
    return min(n ** d, 2 * n ** (d - 1))


def exact_max(n: int, d: int, time_limit: float | None = None, threads: int = 1,
              symmetry_reduction: bool = False) -> SolveResult:
    """Maximum number of points of ``{1..n}^d`` with no three collinear.

    On timeout the best set known so far is returned with ``optimal=False``.
    """
    if n < 1 or d < 2:
        raise DomainError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    start = time.monotonic()
    deadline = None if time_limit is None else start + time_limit
    box = grid_box(n, d)

    if n == 1:
        fallback = PointSet(d, box, ((1,) * d,))
    else:
        fallback = greedy(n, d, 0).points
    search = _Search(n, d, deadline, symmetry_reduction, threads)
    nodes = 0
    best, optimal = fallback, False
    try:
        for target in range(axis_ceiling(n, d), len(fallback) - 1, -1):
            found, used = search.attempt(target)
            nodes += used
            if found is not None:
                best = PointSet(d, box, tuple(search.cells[i] for i in found))
                optimal = True
                break
    except _Timeout:
        pass
    elapsed = int((time.monotonic() - start) * 1000)

    if not verify_no_three(best).passed:
        raise ContractError("solver produced a set with three collinear points")
    if len(best) > axis_ceiling(n, d):
        raise ContractError("solver exceeded the axis-line ceiling")
    return SolveResult(n, d, len(best), best, nodes, elapsed, optimal)


def is_maximal(s: PointSet, n: int, d: int) -> bool:
    """True iff no cell of ``{1..n}^d`` outside ``s`` can join ``s``."""
    if s.dim != d:
        raise ContractError(f"point set has dimension {s.dim}, expected {d}")
    if any(not all(1 <= c <= n for c in p) for p in s):
        raise ContractError("point set leaves the grid")
    if not verify_no_three(s).passed:
        raise ContractError("point set already has three collinear points")
    box = grid_box(n, d)
    blocked = set(s.points)
    pts = list(s.points)
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            block_line(blocked, a, b, box)
    return all(cell in blocked for cell in grid_points(n, d))
