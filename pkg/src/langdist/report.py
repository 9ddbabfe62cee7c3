"""Analysis drivers and renderers for CSV, Markdown and JSON output.

Each ``*_report`` function returns a JSON-ready dict carrying full-precision
values. :func:`render` turns such a dict into text. CSV and JSON keep full
precision; Markdown rounds in the style of published tables (distances to
two decimals, r, F and p to three, r with significance stars).
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

from .core import SCORE_COLUMNS, DistanceTable, Method
from .errors import DegenerateInputError
from .ingest import (
    AnalysisFrame,
    CountryLanguageMap,
    DistanceRow,
    _csv_text,
    _fmt,
    assemble_frame,
    write_distance_rows,
)
from .stats import DEFAULT_CUTLINES, Group, descriptives, levene, manova, pearson, split_groups

__all__ = [
    "dist_report",
    "corr_report",
    "manova_report",
    "describe_report",
    "build_frames",
    "render",
    "FORMATS",
]

FORMATS = ("csv", "markdown", "json")
_TITLES = {c: c.capitalize() for c in SCORE_COLUMNS}
_METHOD_TITLES = {Method.EMBEDDING: "BERT", Method.ASJP: "ASJP", Method.TREE: "Tree"}


def _num(v):
    if v is None:
        return None
    v = float(v)
    if math.isfinite(v):
        return v
    return "inf" if v > 0 else "-inf"


def _f(v: float, places: int) -> str:
    if isinstance(v, str):
        return v
    if v is None:
        return ""
    return f"{v:.{places}f}"


def build_frames(score_tables, cmap: CountryLanguageMap, distances: DistanceTable,
                 methods: Sequence[Method], exclude_flagged: bool = False) -> list[AnalysisFrame]:
    frames = []
    for table in score_tables:
        for method in methods:
            frames.append(assemble_frame(table, cmap, distances, method, exclude_flagged))
    return frames


def _context(frame: AnalysisFrame, what: str = "") -> str:
    return f"{frame.year}/{frame.method.value}" + (f"/{what}" if what else "")


def dist_report(rows: Iterable[DistanceRow]) -> dict:
    return {
        "kind": "dist",
        "rows": [
            {"language": r.language, "method": r.method.value, "value": _num(r.value),
             **({"coverage": _num(r.coverage)} if r.coverage is not None else {})}
            for r in rows
        ],
    }


def corr_report(frames: Sequence[AnalysisFrame]) -> dict:
    """Pearson r of distance against each score column, per year and method."""
    rows = []
    for frame in frames:
        for col in SCORE_COLUMNS:
            try:
                res = pearson(frame.distances, frame.column(col))
            except DegenerateInputError as exc:
                raise DegenerateInputError(f"{_context(frame, col)}: {exc}") from None
            except ValueError as exc:
                raise ValueError(f"{_context(frame, col)}: {exc}") from None
            rows.append({
                "year": frame.year, "method": frame.method.value, "variable": col,
                "r": _num(res.r), "n": res.n, "t": _num(res.t_stat),
                "p": _num(res.p_two_tailed), "stars": res.stars,
            })
    return {"kind": "corr", "rows": rows, "excluded": _exclusions(frames)}


def _exclusions(frames):
    return [
        {"year": f.year, "method": f.method.value, "country": c, "reason": why}
        for f in frames for c, why in f.exclusions
    ]


def manova_report(frames: Sequence[AnalysisFrame], cutlines=None) -> dict:
    """Two-group comparison per year and method, grouped by distance cutline."""
    cutlines = {**DEFAULT_CUTLINES, **(cutlines or {})}
    analyses = []
    for frame in frames:
        cut = cutlines[frame.method]
        groups = split_groups(zip(frame.countries, frame.distances), cut, frame.method)
        try:
            res = manova(groups, frame.scores())
        except (DegenerateInputError, ValueError) as exc:
            raise type(exc)(f"{_context(frame)}: {exc}") from None
        by_country = {r.country: r for r in frame.rows}
        a, b = groups.members(Group.A), groups.members(Group.B)
        variables = {}
        for col in SCORE_COLUMNS:
            v = res[col]
            try:
                lev = levene([by_country[c].score(col) for c in a],
                             [by_country[c].score(col) for c in b])
                lev = {"W": _num(lev.W), "p": _num(lev.p)}
            except (DegenerateInputError, ValueError):
                lev = None
            variables[col] = {
                "mean_a": _num(v.mean_a), "mean_b": _num(v.mean_b),
                "F": _num(v.F), "p": _num(v.p), "df_between": v.df_between,
                "df_within": v.df_within, "levene": lev,
            }
        overall = None
        if res.overall is not None:
            w = res.overall
            overall = {"wilks_lambda": _num(w.wilks_lambda), "F": _num(w.F_approx),
                       "df1": w.df1, "df2": w.df2, "p": _num(w.p)}
        analyses.append({
            "year": frame.year, "method": frame.method.value, "cutline": cut,
            "n_a": res.n_a, "n_b": res.n_b, "variables": variables, "wilks": overall,
        })
    return {"kind": "manova", "analyses": analyses, "excluded": _exclusions(frames)}


def describe_report(score_tables, cmap: CountryLanguageMap) -> dict:
    """Mean and SD of each score column over the mapped countries, per year."""
    years = []
    for table in score_tables:
        rows = [r for r in table if cmap.get(r.country) is not None]
        if not rows:
            raise DegenerateInputError(f"{table.year}: no score row has a language mapping")
        variables = {}
        for col in ("total",) + SCORE_COLUMNS[:4]:
            d = descriptives(r.score(col) for r in rows)
            variables[col] = {"mean": _num(d.mean), "sd": _num(d.sd)}
        years.append({"year": table.year, "n": len(rows), "variables": variables})
    return {"kind": "describe", "years": years}


# -- rendering ----------------------------------------------------------------------

def render(report: dict, fmt: str) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    kind = report["kind"]
    return _RENDERERS[kind][fmt](report)


def _md_table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |",
             "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return _fmt(v)
    return str(v)


def _dist_csv(rep):
    from .core import Method as M

    rows = [DistanceRow(r["language"], M(r["method"]), float(r["value"]), r.get("coverage"))
            for r in rep["rows"]]
    return write_distance_rows(rows)


def _dist_md(rep):
    cov = any("coverage" in r for r in rep["rows"])
    header = ["Language", "Method", "Distance"] + (["Coverage"] if cov else [])
    rows = []
    for r in rep["rows"]:
        row = [r["language"], r["method"], _f(r["value"], 2)]
        if cov:
            row.append(_f(r.get("coverage"), 3))
        rows.append(row)
    return _md_table(header, rows)


def _corr_csv(rep):
    cols = ("year", "method", "variable", "r", "n", "t", "p", "stars")
    return _csv_text(cols, ([_cell(r[c]) for c in cols] for r in rep["rows"]))


def _corr_md(rep):
    out = []
    years = list(dict.fromkeys(r["year"] for r in rep["rows"]))
    for year in years:
        by_method: dict[str, dict] = {}
        for r in rep["rows"]:
            if r["year"] == year:
                by_method.setdefault(r["method"], {})[r["variable"]] = r
        rows = []
        for method, cells in by_method.items():
            title = _METHOD_TITLES[Method(method)]
            rows.append([title] + [
                _f(cells[c]["r"], 3) + cells[c]["stars"] for c in SCORE_COLUMNS
            ])
        n = sorted({r["n"] for r in rep["rows"] if r["year"] == year})
        out.append(f"### {year} (n = {', '.join(map(str, n))})\n\n"
                   + _md_table([""] + [_TITLES[c] for c in SCORE_COLUMNS], rows))
    out.append("Note. * p < 0.05, ** p < 0.01, *** p < 0.001, two-tailed.\n")
    return "\n".join(out)


def _manova_csv(rep):
    cols = ("year", "method", "cutline", "variable", "n_a", "n_b", "mean_a", "mean_b", "F", "p")
    rows = []
    for a in rep["analyses"]:
        for var, v in a["variables"].items():
            rows.append([_cell(a["year"]), a["method"], _cell(a["cutline"]), var,
                         _cell(a["n_a"]), _cell(a["n_b"]),
                         _cell(v["mean_a"]), _cell(v["mean_b"]), _cell(v["F"]), _cell(v["p"])])
    return _csv_text(cols, rows)


def _manova_md(rep):
    out = []
    for a in rep["analyses"]:
        v = a["variables"]
        rows = [
            ["Mean_A"] + [_f(v[c]["mean_a"], 2) for c in SCORE_COLUMNS],
            ["Mean_B"] + [_f(v[c]["mean_b"], 2) for c in SCORE_COLUMNS],
            ["F"] + [_f(v[c]["F"], 3) for c in SCORE_COLUMNS],
            ["Sig"] + [_f(v[c]["p"], 3) for c in SCORE_COLUMNS],
        ]
        title = _METHOD_TITLES[Method(a["method"])]
        out.append(f"### {title} distance, {a['year']} (cutline {a['cutline']:g}; "
                   f"n_A = {a['n_a']}, n_B = {a['n_b']})\n\n"
                   + _md_table([""] + [_TITLES[c] for c in SCORE_COLUMNS], rows))
    return "\n".join(out)


def _describe_csv(rep):
    cols = ("year", "variable", "n", "mean", "sd")
    rows = []
    for y in rep["years"]:
        for var, d in y["variables"].items():
            rows.append([_cell(y["year"]), var, _cell(y["n"]), _cell(d["mean"]), _cell(d["sd"])])
    return _csv_text(cols, rows)


def _describe_md(rep):
    years = rep["years"]
    header = [""]
    for y in years:
        header += [f"{y['year']} (N={y['n']}) M", "SD"]
    rows = []
    for col in ("total",) + SCORE_COLUMNS[:4]:
        row = [_TITLES[col]]
        for y in years:
            d = y["variables"][col]
            row += [_f(d["mean"], 2), _f(d["sd"], 3)]
        rows.append(row)
    return _md_table(header, rows)


_RENDERERS = {
    "dist": {"csv": _dist_csv, "markdown": _dist_md},
    "corr": {"csv": _corr_csv, "markdown": _corr_md},
    "manova": {"csv": _manova_csv, "markdown": _manova_md},
    "describe": {"csv": _describe_csv, "markdown": _describe_md},
}
