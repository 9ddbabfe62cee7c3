import random
from importlib import resources

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from langdist.core import ENGLISH, Method, ScoreRow, ScoreTable, bundled_table1
from langdist.errors import DegenerateInputError, ParseError
from langdist.ingest import (
    DistanceRow,
    assemble_frame,
    bundled_classifications,
    parse_country_language_csv,
    parse_embedding_file,
    parse_lexicon_file,
    parse_manifest,
    parse_scores_csv,
    parse_wordlist_file,
    read_classifications,
    read_country_language,
    read_distance_csv,
    read_distance_rows,
    read_embedding,
    read_lexicon,
    read_manifest,
    read_scores,
    read_wordlist,
    write_classifications,
    write_country_language,
    write_distance_csv,
    write_distance_rows,
    write_embedding,
    write_lexicon,
    write_manifest,
    write_scores,
    write_wordlist,
)


def write(tmp_path, name, text, encoding="utf-8"):
    p = tmp_path / name
    p.write_bytes(text.encode(encoding) if isinstance(text, str) else text)
    return p


# -- distance table -----------------------------------------------------------------

def test_bundled_table_roundtrips_bit_exactly():
    raw = resources.files("langdist").joinpath("data/table1.csv").read_bytes()
    text = raw.decode("utf-8")
    assert write_distance_csv(read_distance_csv(text)).encode("utf-8") == raw
    assert read_distance_csv(write_distance_csv(bundled_table1())) == bundled_table1()


def test_distance_csv_errors():
    with pytest.raises(ParseError, match="missing column"):
        read_distance_csv("language,family,bert,asjp\nX,F,0.1,0.2\n")
    with pytest.raises(ParseError) as err:
        read_distance_csv("language,family,bert,asjp,tree\nX,F,0.1,abc,0.2\n")
    assert err.value.line == 2
    with pytest.raises(ParseError, match="duplicate"):
        read_distance_csv("language,family,bert,asjp,tree\nX,F,,,\nx,F,,,\n")
    with pytest.raises(ParseError, match="tree"):
        read_distance_csv("language,family,bert,asjp,tree\nX,F,0.1,0.2,1.5\n")


def test_distance_csv_comments_and_flags():
    text = "# comment\nlanguage,family,bert,asjp,tree\n\nX,F,0.0,0.5,\nEnglish,IE,0.0,0.0,0.0\n"
    table = read_distance_csv(text)
    assert table.get("x", Method.EMBEDDING).is_flagged
    assert table.get("x", Method.TREE).is_missing
    assert not table.get("english", Method.ASJP).is_flagged


# -- embeddings -------------------------------------------------------------------------

def test_embedding_small(tmp_path):
    p = write(tmp_path, "de.vec", "2 3\nHund 0.1 0.2 0.3\nkatze -1 0 2.5e-3\n")
    table = parse_embedding_file(p)
    assert table.language.code == "de"
    assert (len(table), table.dim) == (2, 3)
    assert table["hund"].tolist() == [0.1, 0.2, 0.3]


@pytest.mark.parametrize("text, line, match", [
    ("2 3\na 1 2 3\nb 1 2\n", 3, "2 values"),
    ("2 3\na 1 2 3\nA 1 2 3\n", 3, "duplicate"),
    ("1 2\na 0 0\n", 2, "zero vector"),
    ("two 3\na 1 2 3\n", 1, "header"),
    ("3 2\na 1 2\n", 1, "announces 3"),
    ("1 2\na 1 x\n", 2, "not a number"),
])
def test_embedding_errors(text, line, match):
    with pytest.raises(ParseError, match=match) as err:
        read_embedding(text, "xx")
    assert err.value.line == line


def test_embedding_rejects_non_utf8(tmp_path):
    p = write(tmp_path, "x.vec", b"1 2\n\xff\xfe 1 2\n")
    with pytest.raises(ParseError, match="UTF-8") as err:
        parse_embedding_file(p)
    assert err.value.line == 2


def test_embedding_roundtrip_10k():
    rng = np.random.default_rng(1)
    vecs = rng.normal(size=(10_000, 8)) * 10.0 ** rng.integers(-6, 6, size=(10_000, 1))
    text = "10000 8\n" + "".join(
        f"w{i} " + " ".join(repr(float(v)) for v in row) + "\n" for i, row in enumerate(vecs)
    )
    table = read_embedding(text, "xx")
    out = write_embedding(table)
    assert out == text
    again = read_embedding(out, "xx")
    assert all(np.array_equal(again[w], table[w]) for w in table.words)


# -- lexicon, wordlists, classifications ------------------------------------------------------

def test_lexicon(tmp_path):
    p = write(tmp_path, "de-en.tsv", "# German to English\nHund\tdog\nhund\tDog\nKatze\tcat\n")
    lex = parse_lexicon_file(p, "german")
    assert lex.pairs == (("hund", "dog"), ("katze", "cat"))
    assert lex.target_language == ENGLISH
    assert write_lexicon(read_lexicon(write_lexicon(lex), "german")) == write_lexicon(lex)
    with pytest.raises(ParseError) as err:
        read_lexicon("a\tb\nonly-one-column\n", "x")
    assert err.value.line == 2


def test_wordlist(tmp_path):
    p = write(tmp_path, "english.csv", "concept_id,form\n1,Ei\n2,yu\n2,yu\n2,Ei\n# skip\n")
    wl = parse_wordlist_file(p)
    assert wl.language.code == "english"
    assert wl.items == {1: ("Ei",), 2: ("yu", "Ei")}
    assert write_wordlist(read_wordlist(write_wordlist(wl), "english")) == write_wordlist(wl)
    with pytest.raises(ParseError, match="outside") as err:
        read_wordlist("concept_id,form\n41,a\n", "x")
    assert err.value.line == 2
    with pytest.raises(ParseError, match="non-ASJP"):
        read_wordlist("concept_id,form\n1,a b\n", "x")


def test_classifications_roundtrip():
    text = write_classifications(bundled_classifications())
    assert write_classifications(read_classifications(text)) == text
    with pytest.raises(ParseError, match="repeated"):
        read_classifications("language,path\nX,A>A\n")


# -- scores ------------------------------------------------------------------------------------

def test_demo_scores(demo_dir):
    table = parse_scores_csv(demo_dir / "scores_2019.csv")
    assert table.year == 2019
    by = table.by_country()
    g = by["Germany"]
    assert (g.reading, g.listening, g.speaking, g.writing, g.total) == (24, 26, 25, 24, 98)
    s = by["Saudi Arabia"]
    assert (s.reading, s.listening, s.speaking, s.writing, s.total) == (16, 20, 21, 18, 74)


@pytest.mark.parametrize("body, match", [
    ("X,2019,31,20,20,20,90", "reading"),
    ("X,2019,20,20,20,20,90\nX,2019,20,20,20,20,90", "duplicate"),
    ("X,2019,20,20,20,20,90\nY,2018,20,20,20,20,90", "mixes years"),
    ("X,20x9,20,20,20,20,90", "year"),
])
def test_score_errors(body, match):
    with pytest.raises(ParseError, match=match):
        read_scores("country,year,reading,listening,speaking,writing,total\n" + body + "\n")


def test_score_missing_column():
    with pytest.raises(ParseError, match="total"):
        read_scores("country,year,reading,listening,speaking,writing\nX,2019,1,2,3,4\n")


scores_rows = st.lists(
    st.tuples(st.floats(0, 30), st.floats(0, 30), st.floats(0, 30), st.floats(0, 30),
              st.floats(0, 120)),
    min_size=1, max_size=10,
)


@settings(max_examples=50)
@given(scores_rows)
def test_scores_roundtrip(rows):
    table = ScoreTable(2018, tuple(ScoreRow(f"Country {i}, \"quoted\"", *r)
                                   for i, r in enumerate(rows)))
    text = write_scores(table)
    assert read_scores(text) == table
    assert write_scores(read_scores(text)) == text


# -- country map -------------------------------------------------------------------------------

def test_country_map(tmp_path):
    p = write(tmp_path, "c.csv", "country,language_code\nGermany,german\nAtlantis,xx\n")
    cmap = parse_country_language_csv(p)
    assert cmap.get("Germany").code == "german"
    assert cmap.unresolved == ("Atlantis",)
    text = write_country_language(cmap)
    assert write_country_language(read_country_language(text)) == text
    with pytest.raises(ParseError, match="duplicate"):
        read_country_language("country,language_code\nGermany,german\nGermany,german\n")
    with pytest.raises(ParseError, match="empty"):
        read_country_language("country,language_code\nGermany,\n")


# -- distance rows and manifest ----------------------------------------------------------------

def test_distance_rows_roundtrip():
    rows = [DistanceRow("german", Method.EMBEDDING, 0.1600000001, 0.75),
            DistanceRow("x", Method.ASJP, 1.04)]
    text = write_distance_rows(rows)
    assert read_distance_rows(text) == rows
    assert write_distance_rows(read_distance_rows(text)) == text


def test_manifest(tmp_path):
    text = ("# run\nscores.2019 = s19.csv\nscores.2017 = s17.csv  # older\n"
            "countries = c.csv\ncutline.bert = 0.2\n")
    p = write(tmp_path, "m.txt", text)
    man = parse_manifest(p)
    assert list(man.scores) == [2017, 2019]
    assert man.scores[2019] == tmp_path / "s19.csv"
    assert man.countries == tmp_path / "c.csv"
    assert man.distances is None
    assert man.cutlines == {Method.EMBEDDING: 0.2}
    out = write_manifest(man, tmp_path)
    assert write_manifest(read_manifest(out, tmp_path), tmp_path) == out


@pytest.mark.parametrize("text, match", [
    ("countries = c.csv\n", "no score"),
    ("scores.2019 = s.csv\n", "countries"),
    ("scores.2019 = s.csv\ncountries = c.csv\nfoo = 1\n", "unknown key"),
    ("scores.2019 = s.csv\nscores.2019 = t.csv\ncountries = c\n", "duplicate"),
    ("scores.x = s.csv\ncountries = c\n", "year"),
])
def test_manifest_errors(text, match):
    with pytest.raises(ParseError, match=match):
        read_manifest(text)


# -- frame assembly -----------------------------------------------------------------------------

ROWS = [
    ("Germany", "german"), ("Myanmar", "burmese"), ("United Kingdom", "english"),
    ("Serbia", "serbian"), ("Japan", "japanese"), ("Atlantis", "xx"),
]


def _inputs():
    scores = ScoreTable(2019, tuple(
        ScoreRow(c, 20, 21, 22, 20, 83) for c, _ in ROWS + [("Nowhere", None)]
    ))
    cmap = read_country_language(
        "country,language_code\n" + "".join(f"{c},{code}\n" for c, code in ROWS)
    )
    return scores, cmap


def test_assemble_embedding():
    scores, cmap = _inputs()
    frame = assemble_frame(scores, cmap, bundled_table1(), Method.EMBEDDING)
    assert frame.countries == ["Germany", "Japan", "Myanmar", "Serbia", "United Kingdom"]
    assert dict(zip(frame.countries, frame.distances))["United Kingdom"] == 0.0
    assert dict(frame.exclusions) == {"Atlantis": "unresolved language",
                                      "Nowhere": "no language mapping"}
    assert len(frame) + len(frame.exclusions) == len(scores)


def test_assemble_missing_and_flagged():
    scores, cmap = _inputs()
    asjp = assemble_frame(scores, cmap, bundled_table1(), Method.ASJP)
    assert dict(asjp.exclusions)["Myanmar"] == "missing distance"
    assert "Serbia" in asjp.countries
    flagged = assemble_frame(scores, cmap, bundled_table1(), Method.ASJP, exclude_flagged=True)
    assert dict(flagged.exclusions)["Serbia"] == "flagged distance"
    tree = assemble_frame(scores, cmap, bundled_table1(), Method.TREE)
    assert dict(tree.exclusions)["Serbia"] == "missing distance"


def test_assemble_order_independent():
    scores, cmap = _inputs()
    rows = list(scores.rows)
    random.Random(0).shuffle(rows)
    a = assemble_frame(scores, cmap, bundled_table1(), Method.TREE)
    b = assemble_frame(ScoreTable(2019, tuple(rows)), cmap, bundled_table1(), Method.TREE)
    assert a == b


def test_assemble_empty_errors():
    scores = ScoreTable(2019, (ScoreRow("Nowhere", 1, 1, 1, 1, 4),))
    cmap = read_country_language("country,language_code\n")
    with pytest.raises(DegenerateInputError):
        assemble_frame(scores, cmap, bundled_table1(), Method.ASJP)
