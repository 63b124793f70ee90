from __future__ import annotations

import random

import pytest

from fpverify.cosets import todd_coxeter
from fpverify.perms import group_order
from fpverify.presentation import parse_presentation, parse_word
from fpverify.quotients import (CayleyTable, UnknownGroupError, cayley_table, fingerprint,
                                fixed_cosets, identify, is_normal_in, normalizer_index,
                                quotient_on_fixed)
from fpverify.smallgroups import GROUP_COUNTS, MAX_ORDER, catalog, lookup

S3 = "< a, b | a^2, b^3, (a*b)^2 >"


def _table(text, gens=()):
    p = parse_presentation(text)
    return p, todd_coxeter(p, [parse_word(g, p) for g in gens])


def test_catalog_is_complete():
    cat = catalog()
    for n in range(1, MAX_ORDER + 1):
        assert sum(e.order == n for e in cat) == GROUP_COUNTS[n], n
    assert len(cat) == 74


def test_catalog_fingerprints_are_distinct():
    prints = [e.fingerprint for e in catalog()]
    assert len(set(prints)) == len(prints)
    names = [e.name for e in catalog()]
    assert len(set(names)) == len(names)


def test_catalog_tables_are_groups():
    for e in catalog():
        assert e.table.is_associative(), e.name


@pytest.mark.parametrize("name", ["S3", "A4", "Z7:Z3", "V4", "Q8", "SL(2,3)", "D8xZ2", "Z4oD8"])
def test_identify_is_relabeling_invariant(name):
    rng = random.Random(name)
    c = lookup(name).table
    for _ in range(100):
        perm = list(range(1, c.order))
        rng.shuffle(perm)
        assert identify(c.relabel([0] + perm)).name == name


def test_identify_rejects_orders_outside_catalog():
    p, t = _table("< z | z^25 >")
    with pytest.raises(UnknownGroupError):
        identify(quotient_on_fixed(p, t))


def test_cayley_table_validation():
    with pytest.raises(ValueError):
        CayleyTable(2, ((0, 1), (1, 1)))


def test_s3_subgroup_is_self_normalizing():
    p, t = _table(S3, ["a"])
    assert fixed_cosets(t) == [0]
    assert normalizer_index(t) == (1, 3)


def test_normal_subgroup_fixes_every_coset():
    p, t = _table(S3, ["b"])
    assert t.is_normal()
    assert fixed_cosets(t) == [0, 1]
    assert normalizer_index(t) == (2, 1)
    assert identify(quotient_on_fixed(p, t)).name == "Z2"


def test_trivial_subgroup_of_cyclic_group():
    p, t = _table("< z | z^7 >")
    assert normalizer_index(t) == (7, 1)
    assert identify(cayley_table(p, t)).name == "Z7"


@pytest.mark.parametrize("text, gens, name", [
    ("< a, b | a^2, b^3, (a*b)^3 >", [], "A4"),
    ("< a, b | a^2, b^3, (a*b)^4 >", [], "S4"),
    ("< a, b | a^2, b^3, (a*b)^4 >", ["(a*b)^2", "b^-1*(a*b)^2*b"], "S3"),
    ("< a, b | a^2, b^3, (a*b)^4 >", ["b", "a*b*a"], "Z2"),
    ("< a, b | a^2, b^3, (a*b)^5 >", ["b", "a*b*a*b^-1*a*b*a"], None),
    ("< r, s | r^8, s^2, s*r*s*r >", ["r^4"], "D8"),
])
def test_quotients_are_groups(text, gens, name):
    p, t = _table(text, gens)
    c = quotient_on_fixed(p, t)
    assert c.order == normalizer_index(t)[0]
    assert c.is_associative()
    for a in range(c.order):
        assert c.mul(a, c.inverse(a)) == 0 and c.mul(0, a) == a == c.mul(a, 0)
    if t.is_normal():
        assert group_order(t.coset_action(), t.index) == t.index
    if name:
        assert identify(c).name == name


def test_normal_subsets_of_a4():
    c = lookup("A4").table
    assert is_normal_in(c, range(12))
    assert is_normal_in(c, c.derived_subgroup())
    involution = next(a for a in range(1, 12) if c.element_order(a) == 2)
    assert not is_normal_in(c, [0, involution])
    with pytest.raises(ValueError):
        is_normal_in(c, [0, next(a for a in range(1, 12) if c.element_order(a) == 3)])


def test_fingerprint_fields():
    f = fingerprint(lookup("A4").table)
    assert f.order == 12 and not f.abelian
    assert dict(f.element_orders) == {1: 1, 2: 3, 3: 8}
    assert (f.center_order, f.derived_order, f.exponent) == (1, 4, 6)


def test_lattice_quotients(lattice):
    pi_quotient = lattice.quotient("Pi")
    assert pi_quotient.order == 21
    assert identify(pi_quotient).name == "Z7:Z3"
    t = lattice.table("Sigma")
    assert len(fixed_cosets(t)) == 12
    assert normalizer_index(t) == (12, 7)
    assert normalizer_index(lattice.table("Pi")) == (21, 1)
    aut = lattice.quotient("Sigma")
    assert identify(aut).name == "A4"
    sub = lattice.relative_table("Sigma", "Pi")
    assert identify(quotient_on_fixed(lattice.sub_presentation("Pi").presentation, sub)).name == "V4"
