"""The claimed lower bound, cited reference bounds, and the CSV row format."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .errors import DomainError

# Reference constants at their limiting values (epsilon -> 0). They are table
# entries for comparison, not theorems at finite n.
ERDOS_CONSTANT = 1.0
HALL_CONSTANT = 1.5
CONJECTURE_CONSTANT = 1.814

CSV_COLUMNS = ("n", "d", "paper_bound", "erdos_ref", "hall_ref", "conjecture_ref",
               "best", "source", "ratio")


def paper_bound(n: int, d: int) -> float:
    """``n^(d-1) * d^(1/(2d))`` with the implicit constant set to 1."""
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    if n < 1:
        raise DomainError(f"grid side must be >= 1, got {n}")
    return float(n) ** (d - 1) * float(d) ** (1.0 / (2 * d))


@dataclass(frozen=True)
class BoundsRow:
    n: int
    d: int
    paper_bound: float
    erdos_ref: float
    hall_ref: float | None
    conjecture_ref: float | None
    best: int | None
    source: str
    ratio: float | None

    @property
    def theta_n2_ref(self) -> bool:
        """The 3-d row cites the Theta(n^2) result instead of planar constants."""
        return self.d == 3

    def to_json(self) -> dict:
        return {
            "n": self.n, "d": self.d, "paper_bound": self.paper_bound,
            "erdos_ref": self.erdos_ref, "hall_ref": self.hall_ref,
            "conjecture_ref": self.conjecture_ref, "theta_n2_ref": self.theta_n2_ref,
            "best": self.best, "source": self.source, "ratio": self.ratio,
        }


def make_row(n: int, d: int, best: int | None = None, source: str = "none") -> BoundsRow:
    pb = paper_bound(n, d)
    planar = d == 2
    return BoundsRow(
        n=n, d=d, paper_bound=pb,
        erdos_ref=ERDOS_CONSTANT * n,
        hall_ref=HALL_CONSTANT * n if planar else None,
        conjecture_ref=CONJECTURE_CONSTANT * n if planar else None,
        best=best, source=source,
        ratio=None if best is None else best / pb,
    )


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([_fmt(getattr(r, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def rows_from_csv(text: str) -> list[BoundsRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise DomainError(f"unexpected CSV header {header}")

    def opt(s, kind):
        return None if s == "" else kind(s)

    rows = []
    for rec in reader:
        v = dict(zip(CSV_COLUMNS, rec))
        rows.append(BoundsRow(
            n=int(v["n"]), d=int(v["d"]), paper_bound=float(v["paper_bound"]),
            erdos_ref=float(v["erdos_ref"]), hall_ref=opt(v["hall_ref"], float),
            conjecture_ref=opt(v["conjecture_ref"], float), best=opt(v["best"], int),
            source=v["source"], ratio=opt(v["ratio"], float),
        ))
    return rows
