"""Shared domain types and the bundled reference data.

Everything here is immutable value data. Distances to English for 33
languages ship with the package together with the TOEFL iBT to CEFR cut
scores; both are exposed through :func:`bundled_table1` and
:func:`cefr_level`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .errors import LangDistError, MissingValueError

__all__ = [
    "LanguageId",
    "Method",
    "Status",
    "DistanceRecord",
    "DistanceTable",
    "ScoreRow",
    "ScoreTable",
    "Skill",
    "CefrLevel",
    "CefrBands",
    "CEFR_BANDS",
    "SCORE_COLUMNS",
    "ENGLISH",
    "SUSPECT",
    "normalize_code",
    "bundled_table1",
    "cefr_level",
]

SUSPECT = "suspect"
SCORE_COLUMNS = ("reading", "listening", "speaking", "writing", "total")


def normalize_code(text: str) -> str:
    """Turn a language name or code into the canonical lowercase key."""
    code = "_".join(text.strip().lower().split())
    if not code:
        raise ValueError("language code must be non-empty")
    if not code.isascii():
        raise ValueError(f"language code must be ASCII: {text!r}")
    return code


@dataclass(frozen=True)
class LanguageId:
    code: str
    display_name: str = ""
    family: str = ""

    def __post_init__(self):
        object.__setattr__(self, "code", normalize_code(self.code))
        if not self.display_name:
            object.__setattr__(self, "display_name", self.code.replace("_", " ").title())

    @classmethod
    def from_name(cls, name: str, family: str = "") -> "LanguageId":
        return cls(normalize_code(name), name.strip(), family.strip())

    def __str__(self):
        return self.code


ENGLISH = LanguageId("english", "English", "Indo-European")


class Method(enum.Enum):
    EMBEDDING = "embedding"
    ASJP = "asjp"
    TREE = "tree"

    @property
    def column(self) -> str:
        """Column name used in the distance CSV."""
        return "bert" if self is Method.EMBEDDING else self.value

    @classmethod
    def parse(cls, text: str) -> "Method":
        key = text.strip().lower()
        aliases = {"bert": "embedding", "embed": "embedding", "sld": "embedding"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown distance method {text!r}") from None


class Status(enum.Enum):
    PRESENT = "present"
    MISSING = "missing"


@dataclass(frozen=True)
class DistanceRecord:
    """A single language-to-English distance under one method.

    ``value`` is ``None`` exactly when ``status`` is ``MISSING``; use
    :attr:`require` to read it in arithmetic contexts.
    """

    language: LanguageId
    method: Method
    value: float | None
    status: Status = Status.PRESENT
    flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.status is Status.MISSING:
            if self.value is not None:
                raise ValueError("a Missing record cannot carry a value")
            return
        if self.value is None:
            raise ValueError("a Present record needs a value")
        v = float(self.value)
        if not math.isfinite(v) or v < 0:
            raise ValueError(f"{self.method.value} distance must be finite and >= 0, got {v}")
        if self.method is Method.EMBEDDING and v > 2:
            raise ValueError(f"embedding distance must lie in [0, 2], got {v}")
        if self.method is Method.TREE and v > 1:
            raise ValueError(f"tree distance must lie in [0, 1], got {v}")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "flags", frozenset(self.flags))

    @classmethod
    def missing(cls, language: LanguageId, method: Method) -> "DistanceRecord":
        return cls(language, method, None, Status.MISSING)

    @property
    def is_missing(self) -> bool:
        return self.status is Status.MISSING

    @property
    def is_flagged(self) -> bool:
        return bool(self.flags)

    @property
    def require(self) -> float:
        if self.status is Status.MISSING:
            raise MissingValueError(
                f"{self.method.value} distance for {self.language.display_name} is missing"
            )
        return self.value


class DistanceTable:
    """Per-language distance records for the three methods, in input order."""

    def __init__(self, records: Sequence[DistanceRecord]):
        self._languages: dict[str, LanguageId] = {}
        self._records: dict[tuple[str, Method], DistanceRecord] = {}
        for rec in records:
            key = (rec.language.code, rec.method)
            if key in self._records:
                raise LangDistError(
                    f"duplicate {rec.method.value} record for {rec.language.code}"
                )
            self._languages.setdefault(rec.language.code, rec.language)
            self._records[key] = rec

    @property
    def languages(self) -> list[LanguageId]:
        return list(self._languages.values())

    @property
    def records(self) -> list[DistanceRecord]:
        return list(self._records.values())

    def __len__(self):
        return len(self._languages)

    def __iter__(self) -> Iterator[LanguageId]:
        return iter(self._languages.values())

    def __contains__(self, code) -> bool:
        if isinstance(code, LanguageId):
            code = code.code
        return normalize_code(code) in self._languages

    def language(self, code: str) -> LanguageId:
        return self._languages[normalize_code(code)]

    def get(self, code, method: Method) -> DistanceRecord:
        """Record for ``code`` under ``method``; Missing when never recorded."""
        if isinstance(code, LanguageId):
            code = code.code
        code = normalize_code(code)
        rec = self._records.get((code, method))
        if rec is None:
            if code not in self._languages:
                raise KeyError(code)
            return DistanceRecord.missing(self._languages[code], method)
        return rec

    def row(self, code) -> dict[Method, DistanceRecord]:
        return {m: self.get(code, m) for m in Method}

    def column(self, method: Method) -> list[DistanceRecord]:
        return [self.get(lang.code, method) for lang in self._languages.values()]

    def __eq__(self, other):
        if not isinstance(other, DistanceTable):
            return NotImplemented
        return self.records == other.records

    def __repr__(self):
        return f"DistanceTable({len(self)} languages)"


def bundled_table1() -> DistanceTable:
    """Distances of 33 languages to English shipped with the package.

    Burmese (asjp) and Serbian (tree) are Missing. Serbian's asjp value of
    0.0 is kept but carries the ``"suspect"`` flag.
    """
    from importlib import resources

    from .ingest import read_distance_csv

    text = resources.files("langdist").joinpath("data/table1.csv").read_text("utf-8")
    return read_distance_csv(text)


@dataclass(frozen=True)
class ScoreRow:
    country: str
    reading: float
    listening: float
    speaking: float
    writing: float
    total: float
    language: LanguageId | None = None

    def __post_init__(self):
        if not self.country.strip():
            raise ValueError("country must be non-empty")
        for name in SCORE_COLUMNS:
            v = float(getattr(self, name))
            top = 120.0 if name == "total" else 30.0
            if not (0.0 <= v <= top):
                raise ValueError(f"{self.country}: {name} score {v} outside [0, {top:g}]")
            object.__setattr__(self, name, v)

    def score(self, column: str) -> float:
        if column not in SCORE_COLUMNS:
            raise KeyError(column)
        return getattr(self, column)


@dataclass(frozen=True)
class ScoreTable:
    """Country-level TOEFL iBT means for one year.

    Section scores are not required to add up to the total.
    """

    year: int
    rows: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        seen = set()
        for row in self.rows:
            if row.country in seen:
                raise ValueError(f"duplicate country {row.country!r} in {self.year}")
            seen.add(row.country)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    @property
    def countries(self) -> list[str]:
        return [r.country for r in self.rows]

    def by_country(self) -> dict[str, ScoreRow]:
        return {r.country: r for r in self.rows}

    def column(self, name: str) -> list[float]:
        return [r.score(name) for r in self.rows]


class Skill(enum.Enum):
    TOTAL = "total"
    READING = "reading"
    LISTENING = "listening"
    SPEAKING = "speaking"
    WRITING = "writing"

    @property
    def max_score(self) -> float:
        return 120.0 if self is Skill.TOTAL else 30.0

    @classmethod
    def parse(cls, text: str) -> "Skill":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown skill {text!r}") from None


class CefrLevel(enum.IntEnum):
    BELOW_A2 = 0
    A2 = 1
    B1 = 2
    B2 = 3
    C1 = 4
    C2 = 5

    @property
    def label(self) -> str:
        return "BelowA2" if self is CefrLevel.BELOW_A2 else self.name

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class CefrBands:
    """Cut scores per CEFR level and skill; ``None`` means not applicable."""

    cuts: Mapping

    def __post_init__(self):
        for skill in Skill:
            applicable = [
                self.cuts[level][skill]
                for level in sorted(self.cuts, reverse=True)
                if self.cuts[level][skill] is not None
            ]
            if any(a <= b for a, b in zip(applicable, applicable[1:])):
                raise ValueError(f"{skill.value} cut scores must strictly decrease from C2")

    def cut(self, level: CefrLevel, skill: Skill) -> float | None:
        return self.cuts[level][skill]

    def level(self, skill: Skill, score: float) -> CefrLevel:
        if not (0 <= score <= skill.max_score):
            raise ValueError(
                f"{skill.value} score {score} outside [0, {skill.max_score:g}]"
            )
        for level in sorted(self.cuts, reverse=True):
            cut = self.cuts[level][skill]
            if cut is not None and score >= cut:
                return level
        return CefrLevel.BELOW_A2


def _bands(rows):
    skills = (Skill.TOTAL, Skill.READING, Skill.LISTENING, Skill.SPEAKING, Skill.WRITING)
    return CefrBands({level: dict(zip(skills, cuts)) for level, cuts in rows.items()})


# TOEFL iBT cut scores (total, reading, listening, speaking, writing).
CEFR_BANDS = _bands({
    CefrLevel.C2: (114, 29, 28, 28, 29),
    CefrLevel.C1: (95, 24, 22, 25, 24),
    CefrLevel.B2: (72, 18, 17, 20, 17),
    CefrLevel.B1: (42, 4, 9, 16, 13),
    CefrLevel.A2: (None, None, None, 10, 7),
})


def cefr_level(skill, score: float, bands: CefrBands = CEFR_BANDS) -> CefrLevel:
    """Highest CEFR level whose cut score is at or below ``score``.

    >>> cefr_level("total", 114).label
    'C2'
    >>> cefr_level("speaking", 9).label
    'BelowA2'
    """
    if not isinstance(skill, Skill):
        skill = Skill.parse(skill)
    return bands.level(skill, float(score))
