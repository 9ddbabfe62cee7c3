"""Family-tree distance from classification paths.

Two languages are as close as the number of leading branches their
classification paths share. A proximity scale turns that count into a value
in [0, 1] and the distance is ``1 - proximity``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import LanguageId

__all__ = [
    "TreeClassification",
    "ProximityScale",
    "DEFAULT_SCALE",
    "shared_branches",
    "tree_distance",
    "distances_to",
]


@dataclass(frozen=True)
class TreeClassification:
    language: LanguageId
    path: tuple

    def __post_init__(self):
        if not isinstance(self.language, LanguageId):
            object.__setattr__(self, "language", LanguageId(self.language))
        path = tuple(p.strip() for p in self.path)
        if not path:
            raise ValueError(f"{self.language.code}: classification path is empty")
        if any(not p for p in path):
            raise ValueError(f"{self.language.code}: empty branch name in path")
        for x, y in zip(path, path[1:]):
            if x == y:
                raise ValueError(f"{self.language.code}: repeated adjacent branch {x!r}")
        object.__setattr__(self, "path", path)

    @classmethod
    def parse(cls, language, text: str, sep: str = ">") -> "TreeClassification":
        return cls(language, tuple(text.split(sep)))


@dataclass(frozen=True)
class ProximityScale:
    """Proximity for each shared-branch count; counts past the top clamp."""

    values: Mapping[int, float] = field(
        default_factory=lambda: {0: 0.0, 1: 0.1, 2: 0.25, 3: 0.45, 4: 0.7}
    )
    same_language: float = 1.0

    def __post_init__(self):
        vals = dict(sorted((int(k), float(v)) for k, v in self.values.items()))
        if list(vals) != list(range(len(vals))):
            raise ValueError("proximity scale must cover counts 0..k without gaps")
        if vals[0] != 0.0:
            raise ValueError("proximity for zero shared branches must be 0")
        seq = list(vals.values()) + [self.same_language]
        if any(x >= y for x, y in zip(seq, seq[1:])):
            raise ValueError("proximity must increase strictly with shared branches")
        if self.same_language != 1.0:
            raise ValueError("same-language proximity must be 1")
        object.__setattr__(self, "values", vals)

    @property
    def max_count(self) -> int:
        return max(self.values)

    def proximity(self, count: int) -> float:
        if count < 0:
            raise ValueError("shared-branch count must be non-negative")
        return self.values[min(count, self.max_count)]


DEFAULT_SCALE = ProximityScale()


def shared_branches(a: TreeClassification, b: TreeClassification) -> int:
    """Length of the longest common prefix of the two paths."""
    n = 0
    for x, y in zip(a.path, b.path):
        if x != y:
            break
        n += 1
    return n


def tree_distance(a: TreeClassification, b: TreeClassification,
                  scale: ProximityScale = DEFAULT_SCALE) -> float:
    """``1 - proximity``; zero for the same language.

    >>> ie = "Indo-European>Germanic"
    >>> tree_distance(TreeClassification.parse("x", ie + ">West"),
    ...               TreeClassification.parse("y", ie + ">North"))
    0.75
    """
    if a.language.code == b.language.code:
        return 1.0 - scale.same_language
    return 1.0 - scale.proximity(shared_branches(a, b))


def distances_to(reference: TreeClassification, others: Sequence[TreeClassification],
                 scale: ProximityScale = DEFAULT_SCALE) -> dict[str, float]:
    """Tree distance from every classification in ``others`` to ``reference``."""
    return {c.language.code: tree_distance(c, reference, scale) for c in others}
