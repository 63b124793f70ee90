from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from fpverify.cosets import (CosetTable, EnumerationLimitExceeded, EnumerationLimits, standardize,
                             todd_coxeter)
from fpverify.perms import Permutation, group_order
from fpverify.presentation import parse_presentation, parse_word
from fpverify.words import EMPTY, Word

SMALL = [
    ("< z | z^7 >", []),
    ("< a, b | a^2, b^3, (a*b)^2 >", []),
    ("< a, b | a^2, b^3, (a*b)^2 >", ["a"]),
    ("< a, b | a^2, b^3, (a*b)^3 >", ["b"]),
    ("< a, b | a^2, b^3, (a*b)^4 >", ["a*b"]),
    ("< a, b | a^2, b^3, (a*b)^5 >", []),
    ("< a, b | a^2, b^3, (a*b)^5 >", ["b", "a*b*a*b^-1*a"]),
    ("< r, s | r^8, s^2, s*r*s*r >", ["r^2"]),
    ("< x, y | x^2, y^2, (x*y)^2 >", ["x*y"]),
    ("< a, b | a^3, b^3, (a b)^3, (a b^-1)^3 >", []),
]


def _enum(text, gens, strategy="hlt"):
    p = parse_presentation(text)
    return p, todd_coxeter(p, [parse_word(g, p) for g in gens], EnumerationLimits(strategy=strategy))


def test_cyclic_group():
    p, t = _enum("< z | z^7 >", [])
    assert t.index == 7
    assert len(t.coset_action()[0].cycles()) == 1
    assert [w.format(p.generator_names) for w in t.representatives()] == [
        "1", "z", "z^-1", "z^2", "z^-2", "z^3", "z^-3"]


def test_cyclic_group_standard_orders():
    # BFS over g1, g1^-1 labels z^-1 as coset 2, so z^3 lands on coset 5;
    # scanning forward columns only gives z^k -> k.
    p, t = _enum("< z | z^7 >", [])
    z3 = parse_word("z^3", p)
    assert t.trace(0, z3) == 5
    semi = t.standardized("semilenlex")
    assert semi.trace(0, z3) == 3
    assert semi.coset_action()[0].cycles() == [tuple(range(7))]
    assert semi.standardized("lenlex").rows == t.rows


def test_known_indices():
    assert _enum(SMALL[1][0], [])[1].index == 6
    assert _enum(SMALL[2][0], ["a"])[1].index == 3
    assert _enum(SMALL[5][0], [])[1].index == 60
    assert _enum(SMALL[7][0], ["r^2"])[1].index == 4
    assert _enum(SMALL[9][0], [])[1].index == 27


@pytest.mark.parametrize("text, gens", SMALL)
def test_strategy_independence(text, gens):
    _, hlt = _enum(text, gens, "hlt")
    _, felsch = _enum(text, gens, "felsch")
    assert hlt.rows == felsch.rows


@pytest.mark.parametrize("text, gens", SMALL)
def test_table_properties(text, gens):
    p, t = _enum(text, gens)
    t.check(p.relators)
    for h in t.subgroup_generators:
        assert t.contains(h)
    reps = t.representatives()
    assert reps[0] == EMPTY
    assert all(t.trace(0, w) == i for i, w in enumerate(reps))
    order = group_order(t.coset_action(), t.index)
    assert _factorial(t.index) % order == 0 and order % t.index == 0
    if t.is_normal():
        assert order == t.index


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def test_standardized_numbering_is_bfs_first_appearance():
    _, t = _enum(SMALL[5][0], [])
    seen = [0]
    for row in t.rows:
        for c in row:
            if c not in seen:
                seen.append(c)
    assert seen == list(range(t.index))
    assert standardize([list(r) for r in t.rows]) == t.rows


def test_trivial_subgroup_is_normal():
    assert _enum(SMALL[5][0], [])[1].is_normal()
    assert not _enum(SMALL[2][0], ["a"])[1].is_normal()


def test_limit_exceeded():
    p = parse_presentation("< a, b | a^2, b^3 >")
    with pytest.raises(EnumerationLimitExceeded):
        todd_coxeter(p, [], EnumerationLimits(max_cosets=500))


def test_infinite_index_is_reported_not_looped():
    p = parse_presentation("< a | >")
    with pytest.raises(EnumerationLimitExceeded):
        todd_coxeter(p, [], EnumerationLimits(max_cosets=100))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), max_size=25))
def test_membership_matches_permutation_image(letters):
    # In A5 = <a, b | a^2, b^3, (ab)^5> acting on cosets of <b>, w is in the
    # subgroup iff it fixes coset 0; compare with composing the permutations.
    p, t = _enum(SMALL[6][0], SMALL[6][1])
    w = Word.from_letters(letters)
    perms = t.coset_action()
    g = Permutation.identity(t.index)
    for gen, sign in w.letters:
        g = g * (perms[gen] if sign > 0 else perms[gen].inverse())
    assert t.trace(0, w) == g.images[0]
    unreduced = Word(tuple(letters) + ((0, 1), (0, -1)))
    assert t.contains(unreduced) == t.contains(w)


def test_lattice_tables(lattice, gamma_bar, lattice_words):
    pi, sigma = lattice_words
    t_pi, t_sigma = lattice.table("Pi"), lattice.table("Sigma")
    assert (t_pi.index, t_sigma.index) == (21, 84)
    assert all(t_pi.contains(w) for w in pi)
    assert not t_pi.contains(Word.generator(0))
    assert t_pi.contains(EMPTY)
    assert all(t_pi.contains(w) for w in sigma)
    assert t_pi.is_normal() and not t_sigma.is_normal()
    assert group_order(t_pi.coset_action()) == 21
    for r in gamma_bar.relators:
        acted = Permutation.identity(84)
        perms = t_sigma.coset_action()
        for gen, sign in r.letters:
            acted = acted * (perms[gen] if sign > 0 else perms[gen].inverse())
        assert acted.is_identity()


def test_lattice_felsch_agrees(gamma_bar, lattice_words, lattice):
    _, sigma = lattice_words
    t = todd_coxeter(gamma_bar, sigma, EnumerationLimits(strategy="felsch"))
    assert t.rows == lattice.table("Sigma").rows


def test_export_text_header(lattice):
    text = lattice.table("Pi").export_text(["z", "b"])
    lines = text.splitlines()
    assert lines[0] == "# z z' b b'"
    assert len([l for l in lines if not l.startswith("#")]) == 21
