"""Class-number tables of K(sqrt(-alpha)) for the first inequivalent alpha."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .characters import classify3, classify17, coarse17
from .closedform import class_number
from .idealarith import is_squarefree, reduce_by_unit_squares
from .quadfield import K3, K17, QuadInt

# sha256 of the shipped golden CSV files, guarding against accidental edits
GOLDEN_SHA256 = {
    K3: "8d15b0fbcf77f1a83bae0de93b732daff5434e342f5f54753a2b78f1ee4df7e6",
    K17: "7fd084fd253b31cea0424abbad84599d253320a2262cd29cbbbfdfea5a0b051f",
}

_GOLDEN_FILES = {K3: "q3_golden.csv", K17: "q17_golden.csv"}


@dataclass(frozen=True)
class TableRow:
    a: int
    b: int
    marker: tuple[int, ...]
    h: int

    def as_dict(self, field: str) -> dict[str, int]:
        if field == K3:
            return {"a": self.a, "b": self.b, "m": self.marker[0], "h": self.h}
        return {"a": self.a, "b": self.b, "e": self.marker[0], "ep": self.marker[1], "h": self.h}


def galois_conjugate(z: QuadInt) -> QuadInt:
    return z.conjugate()


def orbit_key(alpha: QuadInt) -> tuple[int, int]:
    """Invariant of alpha under unit squares and the Galois automorphism."""
    w1, _ = reduce_by_unit_squares(alpha)
    w2, _ = reduce_by_unit_squares(galois_conjugate(alpha))
    return min((w1.x, w1.y), (w2.x, w2.y))


def _admissible(alpha: QuadInt) -> bool:
    if not is_squarefree(alpha):
        return False
    return alpha.field != K17 or coarse17(alpha) != "Excluded"


def enumerate_alphas(field: str, n: int) -> list[QuadInt]:
    """First ``n`` admissible alpha in (a, b) order, one per equivalence class."""
    seen: set[tuple[int, int]] = set()
    out: list[QuadInt] = []
    a = 0
    while len(out) < n:
        a += 1
        b = 0
        while len(out) < n:
            alpha = QuadInt(a, b, field)
            if not alpha.is_totally_positive():
                break
            b += 1
            if not _admissible(alpha):
                continue
            key = orbit_key(alpha)
            if key in seen:
                continue
            seen.add(key)
            out.append(alpha)
    return out


_MARKER3 = {"A": 1, "B": 1, "C1": 2, "C2": 4, "D": 4}
_LOCAL17 = {"A": 0, "B": 0, "CA": 2, "CB": 2, "D": 2}


def disc_marker(alpha: QuadInt) -> tuple[int, ...]:
    """Extra power of the primes above 2 in the relative discriminant, beyond (alpha)."""
    if alpha.field == K3:
        return (_MARKER3[classify3(-alpha)],)
    here, there = classify17(-alpha)
    return (_LOCAL17[here], _LOCAL17[there])


def table_row(alpha: QuadInt) -> TableRow:
    return TableRow(alpha.x, alpha.y, disc_marker(alpha), class_number(alpha).h)


def worker_count() -> int:
    env = os.environ.get("THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def generate_table(field: str, n: int = 220, workers: int | None = None) -> list[TableRow]:
    alphas = enumerate_alphas(field, n)
    workers = worker_count() if workers is None else workers
    if workers <= 1:
        return [table_row(a) for a in alphas]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(table_row, alphas, chunksize=4))


# ---------------------------------------------------------------------------
# golden data

def golden_text(field: str) -> str:
    return resources.files("sumsquares.data").joinpath(_GOLDEN_FILES[field]).read_text()


def golden_rows(field: str) -> list[TableRow]:
    text = golden_text(field)
    digest = hashlib.sha256(text.encode()).hexdigest()
    if GOLDEN_SHA256[field] and digest != GOLDEN_SHA256[field]:
        raise RuntimeError(f"golden data for {field} has checksum {digest}")
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        marker = (int(rec["m"]),) if field == K3 else (int(rec["e"]), int(rec["ep"]))
        rows.append(TableRow(int(rec["a"]), int(rec["b"]), marker, int(rec["h"])))
    return rows


@dataclass
class TableDiff:
    matched: int
    total: int
    missing: list[TableRow]
    extra: list[TableRow]
    changed: list[tuple[TableRow, TableRow]]

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.changed)

    def summary(self) -> str:
        return f"{self.matched}/{self.total} rows match"

    def details(self) -> list[str]:
        out = [f"missing a={r.a} b={r.b}" for r in self.missing]
        out += [f"extra a={r.a} b={r.b}" for r in self.extra]
        out += [f"changed a={g.a} b={g.b} golden={g.marker},{g.h} computed={c.marker},{c.h}"
                for g, c in self.changed]
        return out


def diff_against_golden(field: str, rows: list[TableRow],
                        golden: list[TableRow] | None = None) -> TableDiff:
    golden = golden_rows(field)[: len(rows)] if golden is None else golden
    by_key = {(r.a, r.b): r for r in rows}
    gold_key = {(r.a, r.b): r for r in golden}
    missing = [g for k, g in gold_key.items() if k not in by_key]
    extra = [r for k, r in by_key.items() if k not in gold_key]
    changed = [(g, by_key[k]) for k, g in gold_key.items() if k in by_key and by_key[k] != g]
    matched = len(golden) - len(missing) - len(changed)
    return TableDiff(matched, len(golden), missing, extra, changed)


def to_csv(field: str, rows: list[TableRow]) -> str:
    buf = io.StringIO()
    header = ["a", "b", "m", "h"] if field == K3 else ["a", "b", "e", "ep", "h"]
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r.as_dict(field))
    return buf.getvalue()


def to_json(field: str, rows: list[TableRow]) -> str:
    return json.dumps([r.as_dict(field) for r in rows], indent=1)
