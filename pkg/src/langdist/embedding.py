"""Semantic language distance from word embeddings.

Each bilingual dictionary pair contributes the cosine similarity of its two
word vectors; the similarity of the language is the mean over pairs and the
distance is one minus that mean.
"""

from __future__ import annotations

import logging
import math
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .core import ENGLISH, LanguageId
from .errors import DegenerateInputError

__all__ = [
    "EmbeddingTable",
    "BilingualLexicon",
    "SldResult",
    "normalize_word",
    "cosine_similarity",
    "semantic_similarity",
]

log = logging.getLogger(__name__)


def normalize_word(word: str) -> str:
    return unicodedata.normalize("NFC", word).lower()


def _as_vector(values) -> np.ndarray:
    vec = np.array(values, dtype=np.float64)
    if vec.ndim != 1 or vec.size == 0:
        raise ValueError("embedding vectors must be one-dimensional and non-empty")
    if not np.all(np.isfinite(vec)):
        raise ValueError("embedding vectors must be finite")
    vec.setflags(write=False)
    return vec


def cosine_similarity(u, v) -> float:
    """Cosine of the angle between ``u`` and ``v``, clamped to [-1, 1].

    Dot products and norms use exactly rounded summation (:func:`math.fsum`)
    so the result depends only on the values, not on BLAS or the platform.

    Raises
    ------
    ValueError
        On a length mismatch or a zero-norm vector.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape or u.ndim != 1:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    if u.size == 0:
        raise ValueError("vectors must have length >= 1")
    uu = math.fsum(u * u)
    vv = math.fsum(v * v)
    if uu == 0.0 or vv == 0.0:
        raise ValueError("cosine similarity is undefined for a zero vector")
    denom = math.sqrt(uu * vv)
    if denom == 0.0 or math.isinf(denom):
        denom = math.sqrt(uu) * math.sqrt(vv)
    cos = math.fsum(u * v) / denom
    return min(1.0, max(-1.0, cos))


@dataclass(frozen=True)
class EmbeddingTable:
    """Word vectors for one language, keyed by normalized word."""

    language: LanguageId
    dim: int
    entries: Mapping[str, np.ndarray]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        normalized: dict[str, np.ndarray] = {}
        for word, values in self.entries.items():
            key = normalize_word(word)
            if key in normalized:
                raise ValueError(f"duplicate word after normalization: {word!r}")
            vec = _as_vector(values)
            if vec.size != self.dim:
                raise ValueError(f"vector for {word!r} has length {vec.size}, expected {self.dim}")
            if not np.any(vec):
                raise ValueError(f"vector for {word!r} is all zeros")
            normalized[key] = vec
        object.__setattr__(self, "entries", normalized)

    @classmethod
    def from_pairs(cls, language, pairs: Iterable[tuple[str, Sequence[float]]]) -> "EmbeddingTable":
        pairs = list(pairs)
        if not pairs:
            raise ValueError("an embedding table needs at least one word")
        dim = len(pairs[0][1])
        entries: dict[str, Sequence[float]] = {}
        for word, vec in pairs:
            if word in entries:
                raise ValueError(f"duplicate word {word!r}")
            entries[word] = vec
        if not isinstance(language, LanguageId):
            language = LanguageId(language)
        return cls(language, dim, entries)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, word):
        return normalize_word(word) in self.entries

    def __getitem__(self, word) -> np.ndarray:
        return self.entries[normalize_word(word)]

    def get(self, word, default=None):
        return self.entries.get(normalize_word(word), default)

    @property
    def words(self) -> list[str]:
        return list(self.entries)


@dataclass(frozen=True)
class BilingualLexicon:
    """Aligned (source word, English word) pairs; duplicates are collapsed."""

    source_language: LanguageId
    pairs: tuple
    target_language: LanguageId = ENGLISH

    def __post_init__(self):
        seen: dict[tuple[str, str], None] = {}
        for src, tgt in self.pairs:
            src, tgt = normalize_word(src).strip(), normalize_word(tgt).strip()
            if not src or not tgt:
                raise ValueError("lexicon words must be non-empty")
            seen.setdefault((src, tgt), None)
        if not seen:
            raise ValueError("a bilingual lexicon needs at least one pair")
        object.__setattr__(self, "pairs", tuple(seen))

    @classmethod
    def identity(cls, table: EmbeddingTable) -> "BilingualLexicon":
        """Every word of ``table`` paired with itself."""
        return cls(table.language, tuple((w, w) for w in table.words), table.language)

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class SldResult:
    language: LanguageId
    sls: float
    sld: float
    pairs_total: int
    pairs_covered: int
    skipped: tuple = field(default=(), repr=False)

    @property
    def coverage(self) -> float:
        return self.pairs_covered / self.pairs_total


def semantic_similarity(lexicon: BilingualLexicon, source: EmbeddingTable,
                        target: EmbeddingTable) -> SldResult:
    """Mean pairwise cosine similarity over a bilingual dictionary.

    Pairs in which either word is missing from its table are skipped and
    reported through ``pairs_total - pairs_covered`` and ``skipped``. The mean
    is taken over covered pairs in lexicon order with exactly rounded
    summation, so repeated runs agree bit for bit.

    Parameters
    ----------
    lexicon : BilingualLexicon
        Dictionary pairs (source word, target word).
    source, target : EmbeddingTable
        Vectors for the lexicon's source and target languages. Both tables
        must share ``dim``.

    Returns
    -------
    SldResult
        ``sls`` is the mean similarity, ``sld = 1 - sls``.

    Raises
    ------
    ValueError
        When the tables disagree on dimension or language.
    DegenerateInputError
        When no pair is covered by both tables.
    """
    if source.dim != target.dim:
        raise ValueError(f"embedding dimensions differ: {source.dim} vs {target.dim}")
    if source.language.code != lexicon.source_language.code:
        raise ValueError(
            f"source table is {source.language.code}, lexicon expects {lexicon.source_language.code}"
        )
    if target.language.code != lexicon.target_language.code:
        raise ValueError(
            f"target table is {target.language.code}, lexicon expects {lexicon.target_language.code}"
        )

    scores = []
    skipped = []
    for src, tgt in lexicon.pairs:
        u = source.entries.get(src)
        v = target.entries.get(tgt)
        if u is None or v is None:
            skipped.append((src, tgt))
            continue
        scores.append(cosine_similarity(u, v))
    if skipped:
        log.info("%s: skipped %d of %d lexicon pairs (out of vocabulary)",
                 lexicon.source_language.code, len(skipped), len(lexicon))
    if not scores:
        raise DegenerateInputError(
            f"no lexicon pair for {lexicon.source_language.code} is covered by both tables"
        )
    sls = math.fsum(scores) / len(scores)
    return SldResult(
        language=lexicon.source_language,
        sls=sls,
        sld=1.0 - sls,
        pairs_total=len(lexicon),
        pairs_covered=len(scores),
        skipped=tuple(skipped),
    )
