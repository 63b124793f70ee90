from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from fpverify.presentation import (ParseError, Presentation, WordTable, WordTableError,
                                   format_word_file, parse_presentation, parse_word,
                                   read_word_file)
from fpverify.words import Word


def test_parse_normalizes_powers_and_comments():
    p = parse_presentation("< a, b | a^2, (a b)^3   # trailing comment\n , b^-1 >")
    assert p.generator_names == ("a", "b")
    assert p.format() == "< a, b | a^2, a*b*a*b*a*b, b^-1 >"


def test_identity_relators_dropped():
    p = parse_presentation("< a | a*a^-1, 1, a^3 >")
    assert p.relators == (Word.generator(0, 3),)


def test_empty_presentation():
    assert parse_presentation("< | >").n_generators == 0


@pytest.mark.parametrize("text, line, col", [
    ("< a, b | a^2, c >", 1, 15),
    ("< a, a | >", 1, 8),
    ("< a | a^ >", 1, 10),
    ("<a | (a >", 1, 9),
    ("< a |\n  a^2,\n  a b >", 3, 5),
])
def test_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert (info.value.line, info.value.col) == (line, col)
    assert str(info.value).startswith(f"{line}:{col}:")


def test_lattice_presentation(gamma_bar):
    assert gamma_bar.generator_names == ("z", "b")
    assert len(gamma_bar.relators) == 8
    assert gamma_bar.relators[0] == Word.generator(0, 7)


@given(st.lists(st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), min_size=1,
                         max_size=12), max_size=6))
def test_format_round_trip(rels):
    p = Presentation(("x", "y", "t"), tuple(Word.from_letters(r) for r in rels))
    assert parse_presentation(p.format()) == p


def test_word_table_expands_nested_definitions():
    p = parse_presentation("< a, b | >")
    table = WordTable(p)
    table.define("u", "a*b")
    table.define("v", "u^2*a^-1")
    assert table.expand("v") == parse_word("a*b*a*b*a^-1", p)


def test_word_table_detects_cycles():
    p = parse_presentation("< a | >")
    table = WordTable(p)
    table.define("u", "v*a")
    table.define("v", "u")
    with pytest.raises(WordTableError):
        table.expand("u")


def test_word_file_rejects_forward_reference():
    p = parse_presentation("< a, b | >")
    with pytest.raises(ParseError) as info:
        read_word_file("x = y\ny = a", WordTable(p))
    assert info.value.line == 1


def test_word_file_mixes_definitions_and_words():
    p = parse_presentation("< a, b | >")
    words = read_word_file("x = a*b\n\n# note\nx^2\n1\n", WordTable(p))
    assert [w.format(p.generator_names) for w in words] == ["a*b", "a*b*a*b", "1"]


def test_word_file_round_trip(lattice_words, gamma_bar):
    pi, _ = lattice_words
    assert read_word_file(format_word_file(pi, gamma_bar), WordTable(gamma_bar)) == pi
    named = format_word_file(pi, gamma_bar, [f"g{i}" for i in range(1, 7)])
    assert named.startswith("g1 = b^3\n")
    assert read_word_file(named, WordTable(gamma_bar)) == pi


def test_pi_words_as_printed(lattice_words, gamma_bar):
    pi, sigma = lattice_words
    assert len(pi) == 6 and len(sigma) == 10
    assert pi[0] == parse_word("b^3", gamma_bar)
    assert pi[5] == parse_word("b z^-1 b z^-1 b z^-1", gamma_bar)
