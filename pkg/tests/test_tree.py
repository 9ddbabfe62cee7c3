import pytest
from hypothesis import given
from hypothesis import strategies as st

from langdist.core import Method, bundled_table1
from langdist.ingest import bundled_classifications
from langdist.tree import ProximityScale, TreeClassification, shared_branches, tree_distance

IE = "Indo-European>Germanic"


def tc(name, path):
    return TreeClassification.parse(name, path)


def test_shared_branches():
    a = tc("a", "A>B>C>D>E")
    assert shared_branches(a, tc("b", "A>B>C>D>E")) == 5
    assert shared_branches(a, tc("b", "X>B>C")) == 0
    assert shared_branches(tc("x", IE + ">West"), tc("y", IE + ">North")) == 2


def test_tree_distance_examples():
    en = tc("english", IE + ">West>English")
    assert tree_distance(en, en) == 0.0
    assert tree_distance(en, tc("arabic", "Afro-Asiatic>Semitic")) == 1.0
    assert tree_distance(en, tc("german", IE + ">West>German")) == 0.55


def test_deep_paths_clamp_to_top_band():
    a = tc("a", "A>B>C>D>E>F>G")
    b = tc("b", "A>B>C>D>E>F>H")
    assert shared_branches(a, b) == 6
    assert tree_distance(a, b) == pytest.approx(0.3)


def test_same_language_beats_path():
    # identical ids count as the same language even with different paths
    assert tree_distance(tc("x", "A>B"), tc("x", "C")) == 0.0


def test_classification_validation():
    with pytest.raises(ValueError):
        TreeClassification("x", ())
    with pytest.raises(ValueError):
        tc("x", "A>>B")
    with pytest.raises(ValueError):
        tc("x", "A>A>B")


def test_scale_validation():
    with pytest.raises(ValueError):
        ProximityScale({0: 0.0, 1: 0.3, 2: 0.2})
    with pytest.raises(ValueError):
        ProximityScale({0: 0.1, 1: 0.3})
    with pytest.raises(ValueError):
        ProximityScale({0: 0.0, 2: 0.3})
    custom = ProximityScale({0: 0.0, 1: 0.5})
    assert tree_distance(tc("a", "A>B"), tc("b", "A>C"), custom) == 0.5


paths = st.lists(st.sampled_from("ABCD"), min_size=1, max_size=7).map(
    lambda xs: [x + str(i) for i, x in enumerate(xs)]
)


@given(paths, paths, paths)
def test_symmetric_bounded_monotone(p, q, r):
    a, b, c = (TreeClassification(n, tuple(x)) for n, x in zip("abc", (p, q, r)))
    d = tree_distance(a, b)
    assert d == tree_distance(b, a)
    assert 0.0 <= d <= 1.0
    if shared_branches(a, b) >= shared_branches(a, c):
        assert tree_distance(a, b) <= tree_distance(a, c)


def test_bundled_paths_reproduce_tree_column():
    classes = bundled_classifications()
    english = classes["english"]
    table = bundled_table1()
    checked = 0
    for rec in table.column(Method.TREE):
        if rec.is_missing:
            assert rec.language.code not in classes
            continue
        assert tree_distance(classes[rec.language.code], english) == rec.value
        checked += 1
    assert checked == 32
