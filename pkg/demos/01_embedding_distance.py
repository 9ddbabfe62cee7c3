"""Embedding distance on a toy bilingual dictionary.

Two tiny vector tables stand in for real embedding files. The source language
shares directions with English for some words and not for others, so the
distance lands between the two extremes.
"""

from langdist import BilingualLexicon, EmbeddingTable, semantic_similarity
from langdist.core import ENGLISH, LanguageId

english = EmbeddingTable.from_pairs(ENGLISH, [
    ("water", (1.0, 0.0, 0.0)),
    ("fire", (0.0, 1.0, 0.0)),
    ("stone", (0.0, 0.0, 1.0)),
    ("tree", (0.6, 0.8, 0.0)),
])
german = EmbeddingTable.from_pairs("german", [
    ("Wasser", (0.9, 0.1, 0.0)),
    ("Feuer", (0.1, 0.9, 0.1)),
    ("Stein", (0.0, 0.2, 0.9)),
    ("Baum", (0.0, 0.0, 1.0)),
])

# "Licht" has no vector, so that pair is skipped and counted.
lexicon = BilingualLexicon(LanguageId("german"), (
    ("Wasser", "water"), ("Feuer", "fire"), ("Stein", "stone"),
    ("Baum", "tree"), ("Licht", "light"),
))

result = semantic_similarity(lexicon, german, english)
print(f"similarity        {result.sls:.4f}")
print(f"distance          {result.sld:.4f}")
print(f"pairs used        {result.pairs_covered} of {result.pairs_total}")
print(f"skipped           {result.skipped}")

# Sanity check: a table against itself is at distance zero.
same = semantic_similarity(BilingualLexicon.identity(english), english, english)
print(f"self distance     {same.sld:.1e}")
