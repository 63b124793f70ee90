from __future__ import annotations

import random
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from fpverify.cosets import todd_coxeter
from fpverify.homology import (AbelianInvariants, NotInSubgroupError, Rewriter, abelian_invariants,
                               presentation_of_subgroup, rewrite_word, schreier_generators,
                               simplify_presentation, smith_decomposition, smith_normal_form,
                               subgroup_presentation)
from fpverify.lowindex import SubgroupSearchOptions, low_index_subgroups
from fpverify.presentation import Presentation, parse_presentation, parse_word
from fpverify.words import EMPTY, Word, cyclic_reduce


def det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)))


def determinantal_divisors(m):
    """d_k = gcd of all k x k minors, for k = 1.. until it vanishes."""
    rows, cols = len(m), len(m[0]) if m else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[m[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g)
    return out


def random_matrices(seed: int, count: int):
    rng = random.Random(seed)
    return [[[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
            for r, c in ((rng.randint(1, 4), rng.randint(1, 4)) for _ in range(count))]


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 2]]) == [2, 2]
    assert smith_normal_form([[1, 2], [3, 4]]) == [1, 2]
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form([]) == []


def test_snf_against_minor_oracle():
    for m in random_matrices(seed=1, count=200):
        diag = smith_normal_form(m)
        assert all(d > 0 for d in diag)
        assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
        prefix, expected = 1, determinantal_divisors(m)
        assert len(diag) == len(expected)
        for d, dk in zip(diag, expected):
            prefix *= d
            assert prefix == dk


def test_snf_big_entries_stay_exact():
    m = [[2 ** 70, 3 ** 40], [5 ** 30, 7 ** 25]]
    diag = smith_normal_form(m)
    assert diag[0] == 1 and diag[1] == abs(det(m))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_snf_metamorphic(seed):
    rng = random.Random(seed)
    m = random_matrices(seed, 1)[0]
    base = smith_normal_form(m)
    rows = m[:]
    rng.shuffle(rows)
    assert smith_normal_form(rows) == base
    perm = list(range(len(m[0])))
    rng.shuffle(perm)
    assert smith_normal_form([[r[j] for j in perm] for r in m]) == base
    if len(m) > 1:
        i, j = rng.sample(range(len(m)), 2)
        k = rng.randint(-5, 5)
        added = [r[:] for r in m]
        added[i] = [a + k * b for a, b in zip(added[i], added[j])]
        assert smith_normal_form(added) == base


def test_column_transform_is_unimodular():
    for m in random_matrices(seed=3, count=40):
        diag, v = smith_decomposition(m)
        assert abs(det(v)) == 1


def test_abelian_invariants_examples():
    assert abelian_invariants(parse_presentation("< z | z^7 >")) == AbelianInvariants(0, (7,))
    assert abelian_invariants(parse_presentation("< a, b | >")) == AbelianInvariants(2, ())
    assert abelian_invariants(parse_presentation("< a, b | a^2, b^3, (a*b)^2 >")) == AbelianInvariants(0, (2,))
    assert abelian_invariants(parse_presentation("< a, b | a^4, b^6 >")) == AbelianInvariants(0, (2, 12))


def test_invariants_reject_broken_chain():
    with pytest.raises(ValueError):
        AbelianInvariants(0, (4, 2))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_invariants_stable_under_relator_moves(seed):
    rng = random.Random(seed)
    rels = []
    for _ in range(rng.randint(1, 4)):
        rels.append(Word.from_letters([(rng.randint(0, 2), rng.choice([1, -1]))
                                       for _ in range(rng.randint(1, 9))]))
    p = Presentation(("x", "y", "t"), tuple(rels))
    base = abelian_invariants(p)
    moved = []
    for r in rels:
        r = cyclic_reduce(r)
        if r.letters and rng.random() < 0.5:
            k = rng.randrange(len(r.letters))
            r = Word(r.letters[k:] + r.letters[:k])
        if rng.random() < 0.5:
            r = r.inverse()
        moved.append(r)
    rng.shuffle(moved)
    assert abelian_invariants(Presentation(p.generator_names, tuple(moved))) == base


@pytest.mark.parametrize("k", range(1, 7))
def test_nielsen_schreier(k):
    free = parse_presentation("< a, b | >")
    found = low_index_subgroups(free, SubgroupSearchOptions(k, exact_index=k, node_budget=10 ** 6))
    assert found
    for t in found[:25]:
        assert abelian_invariants(subgroup_presentation(free, t)) == AbelianInvariants(k + 1, ())


def test_index_two_subgroup_of_infinite_cyclic():
    p = parse_presentation("< a | >")
    t = todd_coxeter(p, [parse_word("a^2", p)])
    gens = [s for s in schreier_generators(p, t) if not s.trivial]
    assert [s.word for s in gens] == [parse_word("a^2", p)]
    sub = subgroup_presentation(p, t)
    assert sub.n_generators == 1 and sub.relators == ()


def test_index_one_keeps_abelianization():
    p = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >")
    t = todd_coxeter(p, [parse_word("a", p), parse_word("b", p)])
    assert t.index == 1
    assert subgroup_presentation(p, t).n_generators == 2
    assert abelian_invariants(subgroup_presentation(p, t)) == abelian_invariants(p)


def test_rewrite_round_trip():
    p = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >")
    t = todd_coxeter(p, [parse_word("b", p), parse_word("a*b*a*b^-1*a", p)])
    r = Rewriter(p, t)
    for h in t.subgroup_generators:
        assert r.expand(r.rewrite(h)) == h
    assert rewrite_word(p, t, EMPTY) == EMPTY
    with pytest.raises(NotInSubgroupError):
        r.rewrite(parse_word("a", p))


@pytest.mark.parametrize("text, sub, order", [
    ("< a, b | a^2, b^3, (a*b)^5 >", ["b"], 3),
    ("< a, b | a^2, b^3, (a*b)^5 >", ["a", "b*a*b^-1"], 10),
    ("< a, b | a^2, b^3, (a*b)^4 >", ["a*b"], 4),
    ("< r, s | r^8, s^2, s*r*s*r >", ["r^2", "s"], 8),
])
def test_subgroup_presentation_defines_the_subgroup(text, sub, order):
    p = parse_presentation(text)
    t = todd_coxeter(p, [parse_word(w, p) for w in sub])
    q = subgroup_presentation(p, t)
    assert todd_coxeter(q).index == order
    s = simplify_presentation(q)
    assert s.presentation.n_generators <= q.n_generators
    assert todd_coxeter(s.presentation).index == order
    assert abelian_invariants(s.presentation) == abelian_invariants(q)


def test_simplified_rewriting_lands_in_the_new_generators():
    p = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >")
    t = todd_coxeter(p, [parse_word("b", p), parse_word("a*b*a*b^-1*a", p)])
    sp = presentation_of_subgroup(p, t)
    q = sp.presentation
    for h in t.subgroup_generators:
        w = sp.rewrite(h)
        assert w.max_generator() < q.n_generators


def test_schreier_rank_for_pi(lattice, gamma_bar):
    t = lattice.table("Pi")
    gens = schreier_generators(gamma_bar, t)
    assert len(gens) == 42
    assert sum(not s.trivial for s in gens) == 22


def test_lattice_homology(lattice):
    assert abelian_invariants(lattice.rs_presentation("Pi")) == AbelianInvariants(0, (2, 2, 2, 2))
    h1 = abelian_invariants(lattice.rs_presentation("Sigma"))
    assert h1 == AbelianInvariants(0, (2, 2, 2, 2, 2, 4))
    assert h1.torsion_order == 128


def test_simplified_pi_keeps_homology(lattice):
    q = lattice.sub_presentation("Pi").presentation
    assert q.n_generators < 22
    assert abelian_invariants(q) == AbelianInvariants(0, (2, 2, 2, 2))
