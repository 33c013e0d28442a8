import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from famalg.algebra import lift, lower, zero_algebra
from famalg.errors import MissingProduct
from famalg.fields import F2, F3, Q
from famalg.search import SearchConfig, enumerate_semigroups, find_witnesses, random_algebra
from famalg.semigroup import cyclic_group, trivial_semigroup
from famalg.tensorization import equivalence_verify, flat_index, split_index, tensor_expand

from conftest import e1_dendriform


def test_index_map_is_bijective():
    m, n = 3, 2
    flat = {flat_index(i, a, m) for i in range(n) for a in range(m)}
    assert flat == set(range(n * m))
    assert all(split_index(flat_index(i, a, m), m) == (i, a) for i in range(n) for a in range(m))


def test_trivial_semigroup_expansion_is_the_source():
    a = lift(e1_dendriform(), 1)
    exp = tensor_expand(a).result
    assert exp.products == lower(a).products


def test_zero_expansion():
    for m in (1, 2, 3):
        a = zero_algebra(Q, 2, cyclic_group(m))
        eq = equivalence_verify(a)
        assert eq.expansion.result.dimension == 2 * m
        assert eq.expansion.result.entry_count() == 0
        assert eq.agree and eq.family_report.empty and eq.expanded_report.empty


def test_entry_count_is_exact():
    # one target per source entry and per free index
    rng = np.random.default_rng(0)
    sg = cyclic_group(3)
    fam = random_algebra("pre-anti-flexible-family", Q, sg, 2, rng, sparsity=6)
    rel = random_algebra("relative-pre-anti-flexible", Q, sg, 2, rng, sparsity=6)
    assert tensor_expand(fam).result.entry_count() == 3 * fam.entry_count()
    assert tensor_expand(rel).result.entry_count() == rel.entry_count()


def test_expansion_rule_by_hand():
    # prec_1(e0, e1) = e1 over Z/2: (e0 x a) prec (e1 x 1) = e1 x (a+1)
    from famalg.algebra import AlgebraPresentation, FamilyProduct
    sg = cyclic_group(2)
    prods = {"prec": FamilyProduct("prec", 1, 2, {((1,), 0, 1, 1): 1}), "succ": FamilyProduct("succ", 1, 2)}
    a = AlgebraPresentation(Q, sg, 2, prods)
    got = tensor_expand(a).result.product("prec").entries
    assert got == {((), 0, 3, 3): 1, ((), 1, 3, 2): 1}


def test_witness_expands_to_valid_ordinary_algebra():
    w = find_witnesses(SearchConfig("pre-anti-flexible-family", "F2", 2, 2, samples=3000, seed=1, nontrivial=True,
                                    max_witnesses=5, semigroup=((0, 1), (1, 0))))
    for a in w:
        eq = equivalence_verify(a)
        assert eq.expansion.result.dimension == 4
        assert eq.family_report.empty and eq.expanded_report.empty


def test_perturbation_breaks_both_sides():
    from famalg.algebra import FamilyProduct
    w = find_witnesses(SearchConfig("pre-anti-flexible-family", "F3", 2, 2, samples=3000, seed=2, nontrivial=True,
                                    max_witnesses=10))
    broken = 0
    for a in w:
        p = a.product("succ")
        entries = dict(p.entries)
        key = ((0,), 0, 0, 0)
        entries[key] = entries.get(key, F3.zero) + 1
        b = a.with_products({"prec": a.product("prec"), "succ": FamilyProduct("succ", 1, 2, entries)})
        eq = equivalence_verify(b)
        assert eq.agree
        broken += not eq.family_report.empty
    assert broken > 0


def test_needs_prec_and_succ():
    with pytest.raises(MissingProduct):
        tensor_expand(zero_algebra(Q, 2, names=("prec",)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([F2, F3]), st.sampled_from(["pre-anti-flexible-family",
                                                                            "relative-pre-anti-flexible"]))
def test_iff_on_random_algebras(seed, fld, kind):
    rng = np.random.default_rng(seed)
    sgs = enumerate_semigroups(2)
    a = random_algebra(kind, fld, sgs[seed % len(sgs)], 2, rng, sparsity=int(rng.integers(1, 4)))
    assert equivalence_verify(a).agree
