"""Census tables: aggregation, serialisation and minimum-order derivation."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

SCHEMA = "copwin.census/1"


class IncompleteCensusError(ValueError):
    pass


@dataclass
class CensusRow:
    """Counts for one order.  ``f[k-1]`` is the number of connected k-cop-win graphs;
    ``overflow`` counts connected graphs needing more than ``len(f)`` cops."""

    n: int
    g: int
    g_connected: int
    f: list[int]
    overflow: int = 0
    complete: bool = True
    witnesses: dict[int, str] = field(default_factory=dict)

    def conserved(self) -> bool:
        return self.g_connected == sum(self.f) + self.overflow


@dataclass
class CensusTable:
    k_max: int
    rows: dict[int, CensusRow] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def add(self, row: CensusRow) -> None:
        if len(row.f) != self.k_max:
            raise ValueError(f"row has {len(row.f)} f-columns, table has k_max={self.k_max}")
        self.rows[row.n] = row

    def sorted_rows(self) -> list[CensusRow]:
        return [self.rows[n] for n in sorted(self.rows)]


@dataclass
class MinOrder:
    k: int
    horizon: int
    m: int | None  # least order with c(G) >= k, None when beyond the horizon or unknown
    M: int | None  # least order with c(G) == k
    m_witness: str | None = None
    M_witness: str | None = None
    M_unknown: bool = False  # capped counts leave the answer open

    def describe(self) -> str:
        def show(name, value, unknown, witness):
            if value is not None:
                return f"{name}_{self.k} = {value}" + (f" (witness {witness})" if witness else "")
            if unknown:
                return f"{name}_{self.k} undetermined (cop counts capped)"
            return f"{name}_{self.k} > {self.horizon}"

        return "; ".join([
            show("m", self.m, False, self.m_witness),
            show("M", self.M, self.M_unknown, self.M_witness),
        ])


@dataclass
class MinOrderReport:
    horizon: int
    entries: dict[int, MinOrder]

    def render(self) -> str:
        lines = [f"complete through order {self.horizon}"]
        lines += [self.entries[k].describe() for k in sorted(self.entries)]
        return "\n".join(lines) + "\n"


def complete_horizon(t: CensusTable) -> int:
    if not t.rows:
        raise IncompleteCensusError("census table has no rows")
    orders = sorted(t.rows)
    if orders != list(range(1, orders[-1] + 1)):
        missing = sorted(set(range(1, orders[-1] + 1)) - set(orders))
        raise IncompleteCensusError(f"census table is missing orders {missing}")
    horizon = 0
    for n in orders:
        if not t.rows[n].complete:
            break
        horizon = n
    if horizon == 0:
        raise IncompleteCensusError("no complete rows starting at order 1")
    return horizon


def derive_min_orders(t: CensusTable) -> MinOrderReport:
    """Least orders with ``c(G) >= k`` and ``c(G) == k`` inside the complete horizon.

    Runs for ``k`` up to ``k_max + 1``; the overflow bucket (``c > k_max``)
    settles ``m`` for ``k_max + 1`` but leaves the matching ``M`` open.
    """
    horizon = complete_horizon(t)
    rows = [t.rows[n] for n in range(1, horizon + 1)]
    entries = {}
    for k in range(1, t.k_max + 2):
        e = MinOrder(k, horizon, None, None)
        for row in rows:
            if e.m is None and sum(row.f[k - 1:]) + row.overflow > 0:
                e.m = row.n
                e.m_witness = next(
                    (row.witnesses[j] for j in range(k, t.k_max + 2) if j in row.witnesses), None
                )
            if e.M is None and not e.M_unknown:
                if k <= t.k_max and row.f[k - 1] > 0:
                    e.M, e.M_witness = row.n, row.witnesses.get(k)
                elif k > t.k_max and row.overflow > 0:
                    e.M_unknown = True
        entries[k] = e
    return MinOrderReport(horizon, entries)


# rendering ------------------------------------------------------------------


def _header(k_max: int) -> list[str]:
    return ["n", "g", "g_connected", *[f"f{k}" for k in range(1, k_max + 1)], "overflow", "complete"]


def _row_cells(row: CensusRow) -> list[str]:
    return [str(row.n), str(row.g), str(row.g_connected), *map(str, row.f),
            str(row.overflow), "1" if row.complete else "0"]


def to_dict(t: CensusTable) -> dict:
    return {
        "schema": SCHEMA,
        "k_max": t.k_max,
        "metadata": dict(sorted(t.metadata.items())),
        "rows": [
            {
                "n": r.n,
                "g": r.g,
                "g_connected": r.g_connected,
                "f": r.f,
                "overflow": r.overflow,
                "complete": r.complete,
                "witnesses": {str(k): w for k, w in sorted(r.witnesses.items())},
            }
            for r in t.sorted_rows()
        ],
    }


def from_dict(d: dict) -> CensusTable:
    if d.get("schema") != SCHEMA:
        raise ValueError(f"unknown census schema {d.get('schema')!r}")
    t = CensusTable(d["k_max"], metadata=dict(d.get("metadata", {})))
    for r in d["rows"]:
        t.add(CensusRow(r["n"], r["g"], r["g_connected"], list(r["f"]), r["overflow"],
                        r["complete"], {int(k): w for k, w in r["witnesses"].items()}))
    return t


def parse_json(data: bytes | str) -> CensusTable:
    return from_dict(json.loads(data))


def _fmt(x: int) -> str:
    return f"{x:,}"


def _render_text(t: CensusTable) -> str:
    head = ["order n", "g(n)", "g_c(n)", *[f"f_{k}(n)" for k in range(1, t.k_max + 1)]]
    has_overflow = any(r.overflow for r in t.rows.values())
    if has_overflow:
        head.append(f"c>{t.k_max}")
    body = []
    for r in t.sorted_rows():
        cells = [str(r.n), _fmt(r.g), _fmt(r.g_connected), *map(_fmt, r.f)]
        if has_overflow:
            cells.append(_fmt(r.overflow))
        if not r.complete:
            cells[0] += "*"
        body.append(cells)
    widths = [max(len(row[i]) for row in [head, *body]) for i in range(len(head))]
    line = lambda cells: " | ".join(c.rjust(w) for c, w in zip(cells, widths))
    out = [line(head), "-+-".join("-" * w for w in widths)]
    out += [line(b) for b in body]
    if any(not r.complete for r in t.rows.values()):
        out.append("* partial row (run interrupted; resume from checkpoint)")
    return "\n".join(out) + "\n"


def render(t: CensusTable, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(to_dict(t), indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_header(t.k_max))
        for r in t.sorted_rows():
            w.writerow(_row_cells(r))
        return buf.getvalue().encode()
    if fmt == "text":
        return _render_text(t).encode()
    raise ValueError(f"unknown format {fmt!r}")
