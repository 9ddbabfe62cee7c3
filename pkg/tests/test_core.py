import pytest
from hypothesis import given
from hypothesis import strategies as st

from langdist.core import (
    CEFR_BANDS,
    SUSPECT,
    CefrLevel,
    DistanceRecord,
    LanguageId,
    Method,
    ScoreRow,
    ScoreTable,
    Skill,
    bundled_table1,
    cefr_level,
)
from langdist.errors import MissingValueError


def test_bundled_has_33_languages():
    table = bundled_table1()
    assert len(table) == 33
    assert table.language("vietnamese").family == "Austroasiatic"


@pytest.mark.parametrize("name, expected", [
    ("German", (0.16, 0.69, 0.55)),
    ("Vietnamese", (0.22, 1.04, 1.00)),
    ("Japanese", (0.38, 1.01, 1.00)),
    ("Norwegian", (0.19, 0.64, 0.75)),
])
def test_bundled_values(name, expected):
    row = bundled_table1().row(name)
    got = tuple(row[m].value for m in (Method.EMBEDDING, Method.ASJP, Method.TREE))
    assert got == expected


def test_bundled_missing_and_flagged():
    table = bundled_table1()
    burmese = table.row("burmese")
    assert burmese[Method.EMBEDDING].value == 0.33
    assert burmese[Method.ASJP].is_missing
    assert burmese[Method.TREE].value == 1.0

    serbian = table.row("serbian")
    assert serbian[Method.TREE].is_missing
    assert not serbian[Method.ASJP].is_missing
    assert serbian[Method.ASJP].value == 0.0
    assert SUSPECT in serbian[Method.ASJP].flags
    assert not serbian[Method.EMBEDDING].is_flagged


def test_missing_is_not_a_number():
    rec = bundled_table1().get("burmese", Method.ASJP)
    assert rec.value is None
    with pytest.raises(MissingValueError):
        rec.require + 1


def test_record_ranges():
    lang = LanguageId("xx")
    with pytest.raises(ValueError):
        DistanceRecord(lang, Method.EMBEDDING, 2.5)
    with pytest.raises(ValueError):
        DistanceRecord(lang, Method.TREE, 1.1)
    # ASJP values may exceed one.
    assert DistanceRecord(lang, Method.ASJP, 1.04).value == 1.04


def test_language_id_normalizes():
    assert LanguageId("  German ").code == "german"
    assert LanguageId.from_name("Saudi Arabic").code == "saudi_arabic"
    with pytest.raises(ValueError):
        LanguageId("")
    with pytest.raises(ValueError):
        LanguageId("日本語")


def test_score_row_bounds():
    with pytest.raises(ValueError):
        ScoreRow("X", 31, 20, 20, 20, 90)
    with pytest.raises(ValueError):
        ScoreRow("X", 20, 20, 20, 20, 121)
    # section scores need not sum to the total
    ScoreRow("X", 20, 20, 20, 20, 79)


def test_score_table_unique_countries():
    row = ScoreRow("X", 20, 20, 20, 20, 80)
    with pytest.raises(ValueError):
        ScoreTable(2019, (row, row))


@pytest.mark.parametrize("skill, score, level", [
    ("total", 114, "C2"),
    ("total", 95, "C1"),
    ("total", 94.9, "B2"),
    ("total", 41, "BelowA2"),
    ("speaking", 9, "BelowA2"),
    ("speaking", 10, "A2"),
    ("writing", 7, "A2"),
    ("listening", 8, "BelowA2"),
    ("reading", 0, "BelowA2"),
    ("reading", 4, "B1"),
])
def test_cefr_examples(skill, score, level):
    assert cefr_level(skill, score).label == level


def test_cefr_out_of_range():
    with pytest.raises(ValueError):
        cefr_level("reading", 31)
    with pytest.raises(ValueError):
        cefr_level("total", -1)


def test_cefr_bands_cut_scores_hit_their_level():
    for level, cuts in CEFR_BANDS.cuts.items():
        for skill, cut in cuts.items():
            if cut is not None:
                assert cefr_level(skill, cut) is level
                assert cefr_level(skill, cut - 0.5) < level


@given(st.sampled_from(list(Skill)), st.floats(0, 1), st.floats(0, 1))
def test_cefr_monotone(skill, u, v):
    s1, s2 = sorted((u * skill.max_score, v * skill.max_score))
    assert cefr_level(skill, s1) <= cefr_level(skill, s2)


def test_cefr_level_order():
    assert CefrLevel.BELOW_A2 < CefrLevel.A2 < CefrLevel.C2
    assert str(CefrLevel.BELOW_A2) == "BelowA2"
