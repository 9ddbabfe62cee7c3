"""ASJP phonetic distance between two 40-concept wordlists.

Forms are written in the ASJP code. Before any edit-distance computation a
form is split into segments: a base symbol plus any modifiers that belong to
it. ``*`` (nasalization) and ``"`` (glottalization) attach to the preceding
segment, ``~`` fuses the two preceding symbols into one segment and ``$``
fuses the three preceding symbols. Each segment then costs one edit.

The language-level measure is LDND: the mean normalized edit distance over
same-concept pairs (LDN) divided by the mean over different-concept pairs,
which corrects for chance resemblance between the two sound systems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import LanguageId
from .errors import DegenerateInputError

__all__ = [
    "ASJP_VOWELS",
    "ASJP_CONSONANTS",
    "ASJP_MODIFIERS",
    "ASJP_SYMBOLS",
    "N_CONCEPTS",
    "AsjpWordlist",
    "AsjpResult",
    "segments",
    "levenshtein",
    "ldn_pair",
    "ldn",
    "global_divergence",
    "distance_matrix",
    "ldnd",
]

ASJP_VOWELS = frozenset("ieE3auo")
ASJP_CONSONANTS = frozenset("pbfvmw8tdszcnrlSZCjT5kgxNqXh7L4G!y")
ASJP_MODIFIERS = frozenset('*"~$')
ASJP_SYMBOLS = ASJP_VOWELS | ASJP_CONSONANTS | ASJP_MODIFIERS
N_CONCEPTS = 40

_FUSE = {"~": 2, "$": 3}


def segments(form: str) -> tuple[str, ...]:
    """Split an ASJP form into edit units.

    >>> segments('ts~a*')
    ('ts~', 'a*')
    """
    out: list[str] = []
    for ch in form:
        if ch in _FUSE:
            k = min(_FUSE[ch], len(out))
            if k == 0:
                out.append(ch)
            else:
                fused = "".join(out[-k:]) + ch
                del out[-k:]
                out.append(fused)
        elif ch in ('*', '"') and out:
            out[-1] += ch
        else:
            out.append(ch)
    return tuple(out)


def _units(x) -> tuple:
    return segments(x) if isinstance(x, str) else tuple(x)


def levenshtein(a, b) -> int:
    """Unit-cost edit distance between two ASJP forms.

    Strings are segmented first (see :func:`segments`); pre-segmented
    sequences are compared element by element.
    """
    a, b = _units(a), _units(b)
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        for j, y in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def ldn_pair(a, b) -> float:
    """Edit distance divided by the length of the longer form, in [0, 1]."""
    a, b = _units(a), _units(b)
    longest = max(len(a), len(b))
    if longest == 0:
        raise ValueError("ldn_pair is undefined for two empty forms")
    return levenshtein(a, b) / longest


class AsjpWordlist:
    """Forms for up to 40 concepts of one language.

    ``items`` maps a concept id (1..40) to one or more synonym forms.
    """

    def __init__(self, language, items: Mapping[int, Sequence[str] | str]):
        if not isinstance(language, LanguageId):
            language = LanguageId(language)
        self.language = language
        clean: dict[int, tuple[str, ...]] = {}
        for concept, forms in items.items():
            concept = int(concept)
            if not 1 <= concept <= N_CONCEPTS:
                raise ValueError(f"concept id {concept} outside 1..{N_CONCEPTS}")
            if isinstance(forms, str):
                forms = (forms,)
            forms = tuple(forms)
            if not forms:
                continue
            for form in forms:
                _check_form(form)
            clean[concept] = forms
        self.items = dict(sorted(clean.items()))
        self._segmented = {c: tuple(segments(f) for f in fs) for c, fs in self.items.items()}

    @property
    def concepts(self) -> list[int]:
        return list(self.items)

    @property
    def absent_concepts(self) -> list[int]:
        return [c for c in range(1, N_CONCEPTS + 1) if c not in self.items]

    def __len__(self):
        return len(self.items)

    def __eq__(self, other):
        if not isinstance(other, AsjpWordlist):
            return NotImplemented
        return self.language == other.language and self.items == other.items

    def __repr__(self):
        return f"AsjpWordlist({self.language.code!r}, {len(self)} concepts)"


def _check_form(form: str):
    if not form:
        raise ValueError("ASJP forms must be non-empty")
    bad = sorted(set(form) - ASJP_SYMBOLS)
    if bad:
        raise ValueError(f"form {form!r} contains non-ASJP symbols {''.join(bad)!r}")
    if form[0] in ASJP_MODIFIERS:
        raise ValueError(f"form {form!r} starts with a modifier")


@dataclass(frozen=True)
class AsjpResult:
    language_a: LanguageId
    language_b: LanguageId
    ldn: float
    global_divergence: float
    ldnd: float
    concepts_used: int


def _concept_distance(forms_a, forms_b, synonyms: str) -> float:
    if synonyms == "first":
        return ldn_pair(forms_a[0], forms_b[0])
    if synonyms == "min":
        return min(ldn_pair(x, y) for x in forms_a for y in forms_b)
    raise ValueError(f"synonyms must be 'min' or 'first', not {synonyms!r}")


def _shared(a: AsjpWordlist, b: AsjpWordlist) -> list[int]:
    return [c for c in a.items if c in b.items]


def distance_matrix(a: AsjpWordlist, b: AsjpWordlist, synonyms: str = "min"):
    """Concept-by-concept LDN matrix over the concepts both lists attest.

    Returns ``(concepts, rows)`` where ``rows[i][j]`` compares concept
    ``concepts[i]`` of ``a`` with concept ``concepts[j]`` of ``b``.
    """
    shared = _shared(a, b)
    rows = [
        [_concept_distance(a._segmented[ci], b._segmented[cj], synonyms) for cj in shared]
        for ci in shared
    ]
    return shared, rows


def _local(rows) -> float:
    return math.fsum(rows[i][i] for i in range(len(rows))) / len(rows)


def _global(rows) -> float:
    m = len(rows)
    off = math.fsum(rows[i][j] for i in range(m) for j in range(m) if i != j)
    return off / (m * (m - 1))


def ldn(a: AsjpWordlist, b: AsjpWordlist, synonyms: str = "min") -> tuple[float, int]:
    """Mean same-concept distance and the number of concepts it averages over.

    With several synonyms per concept the closest pair is used
    (``synonyms="min"``); ``synonyms="first"`` compares first forms only.
    """
    shared = _shared(a, b)
    if not shared:
        raise DegenerateInputError(f"{a.language.code} and {b.language.code} share no concepts")
    vals = [_concept_distance(a._segmented[c], b._segmented[c], synonyms) for c in shared]
    return math.fsum(vals) / len(vals), len(vals)


def global_divergence(a: AsjpWordlist, b: AsjpWordlist, synonyms: str = "min") -> float:
    """Mean distance over ordered pairs of different shared concepts."""
    shared, rows = distance_matrix(a, b, synonyms)
    if len(shared) < 2:
        raise DegenerateInputError(
            f"global divergence needs >= 2 shared concepts, got {len(shared)}"
        )
    return _global(rows)


def ldnd(a: AsjpWordlist, b: AsjpWordlist, synonyms: str = "min") -> AsjpResult:
    """LDND of two wordlists; symmetric in its arguments.

    Raises
    ------
    DegenerateInputError
        If the lists share fewer than two concepts, or every cross-concept
        pair is identical so the divergence is zero.
    """
    shared, rows = distance_matrix(a, b, synonyms)
    if not shared:
        raise DegenerateInputError(f"{a.language.code} and {b.language.code} share no concepts")
    if len(shared) < 2:
        raise DegenerateInputError(
            f"global divergence needs >= 2 shared concepts, got {len(shared)}"
        )
    local = _local(rows)
    glob = _global(rows)
    if glob == 0.0:
        raise DegenerateInputError(
            f"zero global divergence between {a.language.code} and {b.language.code}"
        )
    return AsjpResult(a.language, b.language, local, glob, local / glob, len(shared))
