"""Phonetic distance with normalized and divided Levenshtein distance.

Wordlists use the ASJP transcription. Each concept pair gets an edit distance
normalized by the longer form; the mean over matching concepts is then divided
by the mean over mismatched concepts, which discounts chance resemblance.
"""

from langdist import AsjpWordlist, ldn_pair, ldnd, levenshtein

print("first person singular pronoun")
print("  edit distance", levenshtein("Ei", "wataSi"))
print("  normalized   ", round(ldn_pair("Ei", "wataSi"), 4))

english = AsjpWordlist("english", {1: "Ei", 2: "yu", 3: "wi", 4: "wan", 5: "tu"})
dutch = AsjpWordlist("dutch", {1: "ik", 2: "yEi", 3: "wEi", 4: "en", 5: "twe"})
japanese = AsjpWordlist("japanese", {1: "wataSi", 2: "anata", 3: "wareware", 4: "iti", 5: "ni"})

for other in (dutch, japanese):
    res = ldnd(other, english)
    print(f"{other.language.code:9s} ldn={res.ldn:.3f} global={res.global_divergence:.3f} "
          f"ldnd={res.ldnd:.3f} concepts={res.concepts_used}")

# Synonyms: by default the closest form counts.
variants = AsjpWordlist("variant", {1: ["mi", "Ei"], 2: "yu", 3: "wi", 4: "wan", 5: "tu"})
print("with synonym, min  ", round(ldnd(variants, english).ldnd, 4))
print("with synonym, first", round(ldnd(variants, english, synonyms="first").ldnd, 4))
