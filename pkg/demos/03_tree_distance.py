"""Family-tree distance from classification paths.

Two languages are close when their paths share many leading branches. The
bundled classification reproduces the tree distances shipped in the reference
table.
"""

from langdist import bundled_table1
from langdist.core import Method
from langdist.ingest import bundled_classifications
from langdist.tree import DEFAULT_SCALE, ProximityScale, shared_branches, tree_distance

classes = bundled_classifications()
english = classes["english"]

for code in ("german", "norwegian", "french", "nepali", "japanese"):
    c = classes[code]
    print(f"{code:10s} shared={shared_branches(c, english)} "
          f"distance={tree_distance(c, english):.2f}")

table = bundled_table1()
agree = sum(
    tree_distance(classes[rec.language.code], english) == rec.value
    for rec in table.column(Method.TREE) if not rec.is_missing
)
print(f"matches reference table: {agree} values")

# A custom scale with a coarser step.
coarse = ProximityScale({0: 0.0, 1: 0.2, 2: 0.5})
print("german, coarse scale:", tree_distance(classes["german"], english, coarse))
print("default scale:", DEFAULT_SCALE.values)
