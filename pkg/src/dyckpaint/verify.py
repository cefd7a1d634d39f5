"""Sweeps over small instance families with per-row pass/fail reporting.

A row whose inner computation exceeds a solver cap is marked ``cap`` and the
sweep carries on; only ``fail`` rows count as violations.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement, product
from typing import Sequence

from .choose import EnumerationCapExceeded, MC_MAX_TOKENS, MC_MAX_VERTICES, format_kappa, m_c_small
from .graphcore import SimpleGraph, build_graph, union_instance
from .paintgame import (
    CapExceeded,
    clique_join,
    lister_beats_all_painters,
    m_p,
    optimal_strategy_from_solver,
    painter_join_strategy,
    painter_survives_all_listers,
)
from .pathcount import psi, x_of_f

COLUMNS = ("instance", "psi_dp", "psi_rec", "psi_det", "m_p", "m_c", "expected", "status")
MULT_LIMIT = 96


@dataclass
class Row:
    instance: str
    psi_dp: int | None = None
    psi_rec: int | None = None
    psi_det: int | None = None
    m_p: int | None = None
    m_c: int | float | None = None
    expected: int | None = None
    status: str = "pass"
    note: str = ""

    def cells(self) -> list[str]:
        def show(v):
            if v is None:
                return "-"
            if isinstance(v, float):
                return format_kappa(v)
            return str(v)

        return [self.instance] + [show(getattr(self, c)) for c in COLUMNS[1:-1]] + [self.status]


@dataclass
class Report:
    name: str
    rows: list[Row] = field(default_factory=list)

    @property
    def violations(self) -> list[Row]:
        return [r for r in self.rows if r.status == "fail"]

    @property
    def capped(self) -> list[Row]:
        return [r for r in self.rows if r.status == "cap"]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> dict:
        return {
            "rows": len(self.rows),
            "pass": sum(r.status == "pass" for r in self.rows),
            "fail": len(self.violations),
            "cap": len(self.capped),
        }

    def to_tsv(self) -> str:
        lines = ["\t".join(COLUMNS)]
        lines += ["\t".join(r.cells()) for r in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = []
        for r in self.rows:
            d = asdict(r)
            if isinstance(d["m_c"], float):
                d["m_c"] = format_kappa(d["m_c"])
            rows.append(d)
        return json.dumps({"report": self.name, "summary": self.summary(), "rows": rows}, indent=2) + "\n"


def _fmt(f: Sequence[int]) -> str:
    return "(" + ",".join(map(str, f)) + ")"


def _psi_row(row: Row, f: Sequence[int]) -> int:
    """Fill the three psi columns for ``x(f)``; flag disagreement."""
    x = x_of_f(f)
    row.psi_dp, row.psi_rec, row.psi_det = (psi(x, m) for m in ("dp", "rec", "det"))
    if len({row.psi_dp, row.psi_rec, row.psi_det}) != 1:
        row.status = "fail"
        row.note = "psi methods disagree"
    return row.psi_dp


def _mc_feasible(g: SimpleGraph, f: Sequence[int]) -> bool:
    return g.n_vertices <= MC_MAX_VERTICES and sum(f) <= MC_MAX_TOKENS


def _finish(row: Row, g: SimpleGraph, f: Sequence[int], limit: int | None, with_mc: bool = True) -> None:
    """Compute m_p (and m_c when feasible) and compare against ``row.expected``."""
    try:
        row.m_p = m_p(g, f, limit=limit)
    except CapExceeded as exc:
        row.status = "cap"
        row.note = str(exc)
        return
    if with_mc and _mc_feasible(g, f):
        try:
            row.m_c = m_c_small(g, f)
        except EnumerationCapExceeded as exc:
            row.note = str(exc)
    if row.status == "fail":
        return
    if row.m_p != row.expected or (row.m_c is not None and row.m_c != row.expected):
        row.status = "fail"
        row.note = "identity violated"


def monotone_maps(n: int, f_max: int):
    return combinations_with_replacement(range(1, f_max + 1), n)


def verify_theorem2(n_max: int = 3, f_max: int = 4, limit: int | None = None) -> Report:
    """``m_p(K_n, f) = psi(x(f))`` (and ``m_c`` where enumerable)."""
    report = Report("thm2")
    for n in range(1, n_max + 1):
        g = build_graph("complete", n)
        for f in monotone_maps(n, f_max):
            row = Row(f"K_{n} f={_fmt(f)}")
            row.expected = _psi_row(row, f)
            _finish(row, g, f, limit)
            report.rows.append(row)
    return report


def verify_theorem1(n_max: int = 2, f_max: int = 3, limit: int | None = None) -> Report:
    """``m_p(K̄_n, f) = m_c(K̄_n, f) = prod f``."""
    report = Report("thm1")
    for n in range(1, n_max + 1):
        g = build_graph("edgeless", n)
        for f in monotone_maps(n, f_max):
            row = Row(f"E_{n} f={_fmt(f)}", expected=math.prod(f))
            _finish(row, g, f, limit)
            report.rows.append(row)
    return report


@dataclass(frozen=True)
class Part:
    name: str
    graph: SimpleGraph
    f: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.name}{_fmt(self.f)}"


def small_parts(f_max: int = 3) -> list[Part]:
    """K_1, K_2 and E_2 (two isolated vertices) with every sorted token map up to ``f_max``."""
    parts = []
    for name, g in (
        ("K_1", build_graph("complete", 1)),
        ("K_2", build_graph("complete", 2)),
        ("E_2", build_graph("edgeless", 2)),
    ):
        parts += [Part(name, g, f) for f in monotone_maps(g.n_vertices, f_max)]
    return parts


def verify_multiplicativity(
    parts: Sequence[Part] | None = None, arity: int = 2, limit: int = MULT_LIMIT
) -> Report:
    """``m_p`` (and ``m_c`` where enumerable) of a disjoint union is the product over parts."""
    parts = small_parts() if parts is None else list(parts)
    report = Report("mult")
    part_mp: dict[Part, int | None] = {}
    part_mc: dict[Part, int | float | None] = {}
    for p in parts:
        try:
            part_mp[p] = m_p(p.graph, p.f, limit=limit)
        except CapExceeded:
            part_mp[p] = None
        part_mc[p] = m_c_small(p.graph, p.f) if _mc_feasible(p.graph, p.f) else None
    for combo in combinations_with_replacement(parts, arity):
        row = Row(" + ".join(map(str, combo)))
        values = [part_mp[p] for p in combo]
        if any(v is None for v in values):
            row.status = "cap"
            row.note = "part exceeds solver cap"
            report.rows.append(row)
            continue
        row.expected = math.prod(values)
        g, f = union_instance([(p.graph, p.f) for p in combo])
        _finish(row, g, f, limit, with_mc=False)
        mcs = [part_mc[p] for p in combo]
        if row.status == "pass" and _mc_feasible(g, f) and all(v is not None for v in mcs):
            row.m_c = m_c_small(g, f)
            if row.m_c != math.prod(mcs):
                row.status = "fail"
                row.note = "m_c not multiplicative"
        report.rows.append(row)
    return report


def explore_p3(f_max: int = 3, limit: int | None = None) -> Report:
    """``m_p`` and, where enumerable, ``m_c`` of the three-vertex path, for every token map."""
    report = Report("p3")
    g = build_graph("path", 3)
    for f in product(range(1, f_max + 1), repeat=3):
        row = Row(f"P_3 f={_fmt(f)}")
        try:
            row.m_p = m_p(g, f, limit=limit)
        except CapExceeded as exc:
            row.status, row.note = "cap", str(exc)
            report.rows.append(row)
            continue
        if _mc_feasible(g, f):
            row.m_c = m_c_small(g, f)
            if row.m_p > row.m_c:
                row.status = "fail"
                row.note = "m_p exceeds m_c"
        report.rows.append(row)
    return report


def verify_strategies(n_max: int = 3, f_max: int = 3) -> Report:
    """Branch-strategy Painter at ``m = psi - 1`` and solver Lister at ``m = psi``.

    ``m_p`` records whether the branch strategy survived every Lister line and
    ``m_c`` whether the solver's Lister beat every Painter reply (1 = yes).
    """
    report = Report("duel")
    for n in range(1, n_max + 1):
        for f in monotone_maps(n, f_max):
            row = Row(f"K_{n} f={_fmt(f)}")
            total = _psi_row(row, f)
            row.expected = 1
            painter_ok = True
            if total >= 1:
                g, tokens = clique_join(f, total - 1)
                painter_ok = painter_survives_all_listers(g, tokens, painter_join_strategy(n, f, total - 1))
            g, tokens = clique_join(f, total)
            strategy = optimal_strategy_from_solver(g, tokens, limit=max(16, g.n_vertices))
            lister_ok = lister_beats_all_painters(g, tokens, strategy.lister)
            row.m_p, row.m_c = int(painter_ok), int(lister_ok)
            if not (painter_ok and lister_ok) and row.status != "fail":
                row.status = "fail"
                row.note = "strategy lost on the winning side"
            report.rows.append(row)
    return report


SWEEPS = {
    "thm1": verify_theorem1,
    "thm2": verify_theorem2,
    "mult": verify_multiplicativity,
    "p3": explore_p3,
    "duel": verify_strategies,
}
