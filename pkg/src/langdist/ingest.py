"""Readers and writers for every on-disk format, plus frame assembly.

All files are UTF-8. CSV files use commas, double-quote escaping and a
mandatory header; blank lines and lines starting with ``#`` are skipped.
Each ``write_*`` function emits text that its ``read_*`` counterpart parses
back to an equal object, and writing that object again reproduces the same
bytes.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .asjp import AsjpWordlist
from .core import (
    ENGLISH,
    SCORE_COLUMNS,
    SUSPECT,
    DistanceRecord,
    DistanceTable,
    LanguageId,
    Method,
    ScoreRow,
    ScoreTable,
    Status,
    normalize_code,
)
from .embedding import BilingualLexicon, EmbeddingTable, normalize_word
from .errors import DegenerateInputError, ParseError
from .tree import TreeClassification

__all__ = [
    "read_text",
    "read_distance_csv",
    "write_distance_csv",
    "parse_distance_csv",
    "read_embedding",
    "write_embedding",
    "parse_embedding_file",
    "read_lexicon",
    "write_lexicon",
    "parse_lexicon_file",
    "read_wordlist",
    "write_wordlist",
    "parse_wordlist_file",
    "read_classifications",
    "write_classifications",
    "parse_classification_file",
    "bundled_classifications",
    "read_scores",
    "write_scores",
    "parse_scores_csv",
    "CountryLanguageMap",
    "read_country_language",
    "write_country_language",
    "parse_country_language_csv",
    "DistanceRow",
    "read_distance_rows",
    "write_distance_rows",
    "Manifest",
    "read_manifest",
    "write_manifest",
    "parse_manifest",
    "FrameRow",
    "AnalysisFrame",
    "assemble_frame",
]


def read_text(path) -> str:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror or exc}", path) from exc
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data[: exc.start].count(b"\n") + 1
        raise ParseError("file is not valid UTF-8", path, line) from exc


def _content_lines(text: str, comments: bool = True) -> Iterator[tuple[int, str]]:
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if comments and line.lstrip().startswith("#"):
            continue
        yield lineno, line


def _csv_records(text: str, required: Sequence[str], source=None,
                 optional: Sequence[str] = ()) -> Iterator[tuple[int, dict]]:
    lines = _content_lines(text)
    try:
        lineno, header_line = next(lines)
    except StopIteration:
        raise ParseError("missing CSV header", source) from None
    header = [h.strip() for h in next(csv.reader([header_line]))]
    absent = [c for c in required if c not in header]
    if absent:
        raise ParseError(f"missing column(s): {', '.join(absent)}", source, lineno)
    unknown = [c for c in header if c not in required and c not in optional]
    if unknown:
        raise ParseError(f"unexpected column(s): {', '.join(unknown)}", source, lineno)
    for lineno, line in lines:
        cells = next(csv.reader([line]))
        if len(cells) != len(header):
            raise ParseError(
                f"expected {len(header)} fields, found {len(cells)}", source, lineno
            )
        yield lineno, {h: c.strip() for h, c in zip(header, cells)}


def _csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _num(text: str, what: str, source, lineno) -> float:
    try:
        v = float(text)
    except ValueError:
        raise ParseError(f"{what}: not a number: {text!r}", source, lineno) from None
    if not math.isfinite(v):
        raise ParseError(f"{what}: must be finite", source, lineno)
    return v


def _fmt(v: float) -> str:
    return repr(float(v))


# -- distance table ---------------------------------------------------------

_DIST_COLUMNS = ("language", "family", "bert", "asjp", "tree")


def _auto_flags(language: LanguageId, value: float | None) -> frozenset:
    # Zero distance is only plausible for English itself.
    if value == 0.0 and language.code != ENGLISH.code:
        return frozenset({SUSPECT})
    return frozenset()


def read_distance_csv(text: str, source=None) -> DistanceTable:
    """Parse ``language,family,bert,asjp,tree``; an empty cell is Missing.

    A zero distance for any language other than English is kept but flagged
    ``"suspect"``.
    """
    records = []
    seen = set()
    for lineno, row in _csv_records(text, _DIST_COLUMNS, source):
        if not row["language"]:
            raise ParseError("empty language name", source, lineno)
        lang = LanguageId.from_name(row["language"], row["family"])
        if lang.code in seen:
            raise ParseError(f"duplicate language {row['language']!r}", source, lineno)
        seen.add(lang.code)
        for method in Method:
            cell = row[method.column]
            if cell == "":
                records.append(DistanceRecord.missing(lang, method))
                continue
            value = _num(cell, f"{method.column} distance", source, lineno)
            try:
                records.append(DistanceRecord(lang, method, value, Status.PRESENT,
                                              _auto_flags(lang, value)))
            except ValueError as exc:
                raise ParseError(str(exc), source, lineno) from None
    return DistanceTable(records)


def write_distance_csv(table: DistanceTable) -> str:
    rows = []
    for lang in table:
        cells = [lang.display_name, lang.family]
        for method in Method:
            rec = table.get(lang.code, method)
            cells.append("" if rec.is_missing else _fmt(rec.value))
        rows.append(cells)
    return _csv_text(_DIST_COLUMNS, rows)


def parse_distance_csv(path) -> DistanceTable:
    return read_distance_csv(read_text(path), path)


# -- embeddings ----------------------------------------------------------------

def read_embedding(text: str, language, source=None) -> EmbeddingTable:
    """Parse the ``n d`` header followed by ``word v1 ... vd`` lines."""
    lines = [(i, ln) for i, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines:
        raise ParseError("empty embedding file", source)
    lineno, header = lines[0]
    parts = header.split()
    try:
        if len(parts) != 2:
            raise ValueError
        n, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"header must be 'n d', got {header!r}", source, lineno) from None
    if n < 1 or dim < 1:
        raise ParseError("header counts must be positive", source, lineno)
    if len(lines) - 1 != n:
        raise ParseError(f"header announces {n} words, file has {len(lines) - 1}", source, lineno)
    entries: dict[str, np.ndarray] = {}
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != dim + 1:
            raise ParseError(
                f"expected a word and {dim} values, found {len(parts) - 1} values", source, lineno
            )
        word = normalize_word(parts[0])
        if word in entries:
            raise ParseError(f"duplicate word {parts[0]!r}", source, lineno)
        vec = np.array([_num(p, "vector component", source, lineno) for p in parts[1:]])
        if not np.any(vec):
            raise ParseError(f"zero vector for {parts[0]!r}", source, lineno)
        entries[word] = vec
    if not isinstance(language, LanguageId):
        language = LanguageId(language)
    return EmbeddingTable(language, dim, entries)


def write_embedding(table: EmbeddingTable) -> str:
    out = [f"{len(table)} {table.dim}"]
    for word, vec in table.entries.items():
        out.append(word + " " + " ".join(_fmt(v) for v in vec))
    return "\n".join(out) + "\n"


def parse_embedding_file(path, language=None) -> EmbeddingTable:
    """Read an embedding file; the language defaults to the file stem."""
    path = Path(path)
    return read_embedding(read_text(path), language or path.stem, path)


# -- bilingual lexicon -----------------------------------------------------------

def read_lexicon(text: str, source_language, target_language=ENGLISH,
                 source=None) -> BilingualLexicon:
    """Two tab-separated columns: source word, target word."""
    pairs = []
    for lineno, line in _content_lines(text):
        cols = line.split("\t")
        if len(cols) != 2 or not cols[0].strip() or not cols[1].strip():
            raise ParseError("expected 'source<TAB>target'", source, lineno)
        pairs.append((cols[0].strip(), cols[1].strip()))
    if not pairs:
        raise ParseError("lexicon has no pairs", source)
    if not isinstance(source_language, LanguageId):
        source_language = LanguageId(source_language)
    if not isinstance(target_language, LanguageId):
        target_language = LanguageId(target_language)
    return BilingualLexicon(source_language, tuple(pairs), target_language)


def write_lexicon(lexicon: BilingualLexicon) -> str:
    return "".join(f"{s}\t{t}\n" for s, t in lexicon.pairs)


def parse_lexicon_file(path, source_language, target_language=ENGLISH) -> BilingualLexicon:
    return read_lexicon(read_text(path), source_language, target_language, path)


# -- ASJP wordlists ---------------------------------------------------------------

def read_wordlist(text: str, language, source=None) -> AsjpWordlist:
    """CSV with ``concept_id,form``; repeated concept ids are synonyms."""
    items: dict[int, list[str]] = {}
    for lineno, row in _csv_records(text, ("concept_id", "form"), source):
        try:
            concept = int(row["concept_id"])
        except ValueError:
            raise ParseError(f"bad concept id {row['concept_id']!r}", source, lineno) from None
        if not 1 <= concept <= 40:
            raise ParseError(f"concept id {concept} outside 1..40", source, lineno)
        form = row["form"]
        try:
            AsjpWordlist(language, {concept: form})
        except ValueError as exc:
            raise ParseError(str(exc), source, lineno) from None
        forms = items.setdefault(concept, [])
        if form not in forms:
            forms.append(form)
    return AsjpWordlist(language, items)


def write_wordlist(wordlist: AsjpWordlist) -> str:
    return _csv_text(("concept_id", "form"),
                     ((c, f) for c, forms in wordlist.items.items() for f in forms))


def parse_wordlist_file(path, language=None) -> AsjpWordlist:
    path = Path(path)
    return read_wordlist(read_text(path), language or path.stem, path)


# -- tree classifications -----------------------------------------------------------

def read_classifications(text: str, source=None) -> dict[str, TreeClassification]:
    """CSV ``language,path`` with ``>``-separated path segments."""
    out: dict[str, TreeClassification] = {}
    for lineno, row in _csv_records(text, ("language", "path"), source):
        if not row["language"]:
            raise ParseError("empty language name", source, lineno)
        lang = LanguageId.from_name(row["language"])
        if lang.code in out:
            raise ParseError(f"duplicate language {row['language']!r}", source, lineno)
        try:
            out[lang.code] = TreeClassification.parse(lang, row["path"])
        except ValueError as exc:
            raise ParseError(str(exc), source, lineno) from None
    return out


def write_classifications(classifications: Mapping[str, TreeClassification] | Iterable) -> str:
    items = classifications.values() if isinstance(classifications, Mapping) else classifications
    return _csv_text(("language", "path"),
                     ((c.language.display_name, ">".join(c.path)) for c in items))


def parse_classification_file(path) -> dict[str, TreeClassification]:
    return read_classifications(read_text(path), path)


def bundled_classifications() -> dict[str, TreeClassification]:
    """Classification paths calibrated against the bundled Tree distances."""
    from importlib import resources

    text = resources.files("langdist").joinpath("data/tree_paths.csv").read_text("utf-8")
    return read_classifications(text, "tree_paths.csv")


# -- score tables --------------------------------------------------------------------

_SCORE_HEADER = ("country", "year") + SCORE_COLUMNS


def read_scores(text: str, source=None) -> ScoreTable:
    """One year of country means: ``country,year,reading,...,total``."""
    rows = []
    year = None
    seen = set()
    for lineno, row in _csv_records(text, _SCORE_HEADER, source):
        try:
            y = int(row["year"])
        except ValueError:
            raise ParseError(f"bad year {row['year']!r}", source, lineno) from None
        if year is None:
            year = y
        elif y != year:
            raise ParseError(f"file mixes years {year} and {y}", source, lineno)
        country = row["country"]
        if not country:
            raise ParseError("empty country name", source, lineno)
        if country in seen:
            raise ParseError(f"duplicate country {country!r} for {y}", source, lineno)
        seen.add(country)
        vals = {c: _num(row[c], c, source, lineno) for c in SCORE_COLUMNS}
        try:
            rows.append(ScoreRow(country, **vals))
        except ValueError as exc:
            raise ParseError(str(exc), source, lineno) from None
    if year is None:
        raise ParseError("score file has no rows", source)
    return ScoreTable(year, tuple(rows))


def write_scores(table: ScoreTable) -> str:
    return _csv_text(_SCORE_HEADER, (
        [r.country, table.year] + [_fmt(r.score(c)) for c in SCORE_COLUMNS] for r in table
    ))


def parse_scores_csv(path) -> ScoreTable:
    return read_scores(read_text(path), path)


# -- country to language map ------------------------------------------------------------

@dataclass(frozen=True)
class CountryLanguageMap:
    """One official language per country; unknown codes are listed, not fatal."""

    entries: Mapping[str, LanguageId]
    unresolved: tuple = ()

    def __len__(self):
        return len(self.entries)

    def get(self, country: str) -> LanguageId | None:
        return self.entries.get(country)


def _known_codes(known) -> set[str]:
    if known is None:
        from .core import bundled_table1

        known = bundled_table1()
    if isinstance(known, DistanceTable):
        codes = {lang.code for lang in known}
    else:
        codes = {normalize_code(c) for c in known}
    return codes | {ENGLISH.code}


def read_country_language(text: str, known=None, source=None) -> CountryLanguageMap:
    """CSV ``country,language_code``.

    ``known`` lists the resolvable language codes (a :class:`DistanceTable`
    or iterable of codes); it defaults to the bundled table plus English.
    """
    codes = _known_codes(known)
    entries: dict[str, LanguageId] = {}
    unresolved = []
    for lineno, row in _csv_records(text, ("country", "language_code"), source):
        country, code = row["country"], row["language_code"]
        if not country or not code:
            raise ParseError("empty country or language code", source, lineno)
        if country in entries:
            raise ParseError(f"duplicate country {country!r}", source, lineno)
        try:
            lang = ENGLISH if normalize_code(code) == ENGLISH.code else LanguageId(code)
        except ValueError as exc:
            raise ParseError(str(exc), source, lineno) from None
        entries[country] = lang
        if lang.code not in codes:
            unresolved.append(country)
    return CountryLanguageMap(entries, tuple(unresolved))


def write_country_language(cmap: CountryLanguageMap) -> str:
    return _csv_text(("country", "language_code"),
                     ((c, lang.code) for c, lang in cmap.entries.items()))


def parse_country_language_csv(path, known=None) -> CountryLanguageMap:
    return read_country_language(read_text(path), known, path)


# -- long-format distance rows (command output) ------------------------------------------

@dataclass(frozen=True)
class DistanceRow:
    language: str
    method: Method
    value: float
    coverage: float | None = None


def write_distance_rows(rows: Sequence[DistanceRow]) -> str:
    with_cov = any(r.coverage is not None for r in rows)
    header = ("language", "method", "value") + (("coverage",) if with_cov else ())
    out = []
    for r in rows:
        cells = [r.language, r.method.value, _fmt(r.value)]
        if with_cov:
            cells.append("" if r.coverage is None else _fmt(r.coverage))
        out.append(cells)
    return _csv_text(header, out)


def read_distance_rows(text: str, source=None) -> list[DistanceRow]:
    rows = []
    for lineno, row in _csv_records(text, ("language", "method", "value"), source,
                                    optional=("coverage",)):
        try:
            method = Method.parse(row["method"])
        except ValueError as exc:
            raise ParseError(str(exc), source, lineno) from None
        cov = row.get("coverage", "")
        rows.append(DistanceRow(
            row["language"], method, _num(row["value"], "value", source, lineno),
            _num(cov, "coverage", source, lineno) if cov else None,
        ))
    return rows


# -- manifest -------------------------------------------------------------------------------

@dataclass
class Manifest:
    """Inputs for an analysis run.

    Text format, one ``key = value`` per line, ``#`` comments::

        scores.2019 = scores_2019.csv
        countries   = countries.csv
        distances   = table1.csv        # optional, bundled table otherwise
        cutline.asjp = 0.83             # optional overrides

    Relative paths resolve against the manifest's directory.
    """

    scores: dict[int, Path] = field(default_factory=dict)
    countries: Path | None = None
    distances: Path | None = None
    cutlines: dict[Method, float] = field(default_factory=dict)


def read_manifest(text: str, base=".", source=None) -> Manifest:
    base = Path(base)
    man = Manifest()
    seen = set()
    for lineno, line in _content_lines(text):
        line = line.split(" #", 1)[0].strip()
        if "=" not in line:
            raise ParseError("expected 'key = value'", source, lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if not key or not value:
            raise ParseError("empty key or value", source, lineno)
        if key in seen:
            raise ParseError(f"duplicate key {key!r}", source, lineno)
        seen.add(key)
        if key.startswith("scores."):
            try:
                year = int(key.split(".", 1)[1])
            except ValueError:
                raise ParseError(f"bad year in key {key!r}", source, lineno) from None
            man.scores[year] = base / value
        elif key == "countries":
            man.countries = base / value
        elif key == "distances":
            man.distances = base / value
        elif key.startswith("cutline."):
            try:
                method = Method.parse(key.split(".", 1)[1])
            except ValueError as exc:
                raise ParseError(str(exc), source, lineno) from None
            man.cutlines[method] = _num(value, key, source, lineno)
        else:
            raise ParseError(f"unknown key {key!r}", source, lineno)
    if not man.scores:
        raise ParseError("manifest names no score files", source)
    if man.countries is None:
        raise ParseError("manifest has no 'countries' entry", source)
    man.scores = dict(sorted(man.scores.items()))
    return man


def write_manifest(man: Manifest, base=".") -> str:
    base = Path(base)

    def rel(p: Path) -> str:
        try:
            return Path(p).relative_to(base).as_posix()
        except ValueError:
            return Path(p).as_posix()

    lines = [f"scores.{y} = {rel(p)}" for y, p in sorted(man.scores.items())]
    lines.append(f"countries = {rel(man.countries)}")
    if man.distances is not None:
        lines.append(f"distances = {rel(man.distances)}")
    for method in Method:
        if method in man.cutlines:
            lines.append(f"cutline.{method.value} = {_fmt(man.cutlines[method])}")
    return "\n".join(lines) + "\n"


def parse_manifest(path) -> Manifest:
    path = Path(path)
    return read_manifest(read_text(path), path.parent, path)


# -- analysis frames ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrameRow:
    country: str
    language: LanguageId
    distance: float
    reading: float
    listening: float
    speaking: float
    writing: float
    total: float

    def score(self, column: str) -> float:
        if column not in SCORE_COLUMNS:
            raise KeyError(column)
        return getattr(self, column)


@dataclass(frozen=True)
class AnalysisFrame:
    """Scores joined with one distance method, sorted by country."""

    year: int
    method: Method
    rows: tuple
    exclusions: tuple = ()

    def __len__(self):
        return len(self.rows)

    @property
    def countries(self) -> list[str]:
        return [r.country for r in self.rows]

    @property
    def distances(self) -> list[float]:
        return [r.distance for r in self.rows]

    def column(self, name: str) -> list[float]:
        return [r.score(name) for r in self.rows]

    def scores(self) -> ScoreTable:
        return ScoreTable(self.year, tuple(
            ScoreRow(r.country, r.reading, r.listening, r.speaking, r.writing, r.total, r.language)
            for r in self.rows
        ))


def assemble_frame(scores: ScoreTable, cmap: CountryLanguageMap, distances: DistanceTable,
                   method: Method, exclude_flagged: bool = False) -> AnalysisFrame:
    """Join scores to distances through the country map.

    English-speaking countries get distance 0. Every score row ends up either
    in the frame or in ``exclusions`` as ``(country, reason)``.
    """
    rows = []
    excluded = []
    for srow in sorted(scores, key=lambda r: r.country):
        lang = cmap.get(srow.country)
        if lang is None:
            excluded.append((srow.country, "no language mapping"))
            continue
        if lang.code == ENGLISH.code:
            value = 0.0
        elif lang.code not in distances:
            excluded.append((srow.country, "unresolved language"))
            continue
        else:
            rec = distances.get(lang.code, method)
            lang = rec.language
            if rec.is_missing:
                excluded.append((srow.country, "missing distance"))
                continue
            if exclude_flagged and rec.is_flagged:
                excluded.append((srow.country, "flagged distance"))
                continue
            value = rec.value
        rows.append(FrameRow(srow.country, lang, value, srow.reading, srow.listening,
                             srow.speaking, srow.writing, srow.total))
    if not rows:
        raise DegenerateInputError(
            f"no {scores.year} country has a usable {method.value} distance"
        )
    return AnalysisFrame(scores.year, method, tuple(rows), tuple(excluded))
