import pytest
from hypothesis import given, settings, strategies as st

from cdgraph import constructions as C
from cdgraph.characters import (DegreeMultiset, cd_set, character_degrees, conjugacy_classes,
                                degrees_direct_product, dixon_prime, linear_character_count, rho)
from cdgraph.errors import CapExceeded
from cdgraph.limits import use_limits
from cdgraph.perm import PermGroup, symmetric

import corpus
import oracles

SMALL = ["C6", "V4", "S3", "S4", "S5", "D8", "D10", "Q8", "SL(2,3)", "GL(2,3)", "3^(1+2)",
         "5^(1+2)", "AGammaL(1,4)", "AGammaL(1,8)", "AGammaL(1,9)", "2^3:7", "5^(1+2):2",
         "3^2:SL(2,3)", "S3xC5", "Q8xC3"]

# Frozen from the complex-eigenvector oracle.
FROZEN = {
    "S4": {1: 2, 2: 1, 3: 2},
    "S5": {1: 2, 4: 2, 5: 2, 6: 1},
    "Q8": {1: 4, 2: 1},
    "SL(2,3)": {1: 3, 2: 3, 3: 1},
    "GL(2,3)": {1: 2, 2: 3, 3: 2, 4: 1},
    "5^(1+2)": {1: 25, 5: 4},
    "AGammaL(1,8)": {1: 3, 3: 2, 7: 3},
    "AGammaL(1,9)": {1: 4, 2: 3, 8: 2},
    "2^3:7": {1: 7, 7: 1},
    "5^(1+2):2": {1: 2, 2: 12, 5: 8},
    "3^2:SL(2,3)": {1: 3, 2: 3, 3: 1, 8: 3},
    "3^2:GL(2,3)": {1: 2, 2: 3, 3: 2, 4: 1, 8: 2, 16: 1},
    "11^(1+2):5": {1: 5, 5: 24, 11: 50},
    "AGammaL(1,32)": {1: 5, 5: 6, 31: 5},
}


def element_set(g):
    return {tuple(r) for r in g.array.tolist()}


@pytest.mark.parametrize("name", SMALL)
def test_degrees_match_oracle(name):
    g = corpus.group(name)
    assert list(character_degrees(g).degrees) == oracles.character_degrees(element_set(g))


@pytest.mark.parametrize("name", SMALL)
def test_classes_match_oracle(name):
    g = corpus.group(name)
    cl = conjugacy_classes(g)
    ref = oracles.conjugacy_classes(element_set(g))
    assert sorted(cl.sizes.tolist()) == sorted(len(c) for c in ref)
    assert cl.representatives[0] == 0 and cl.sizes[0] == 1


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_multisets(name):
    assert character_degrees(corpus.group(name)).counts() == FROZEN[name]


@pytest.mark.parametrize("name", SMALL + ["11^(1+2):5", "AGammaL(1,32)"])
def test_degree_identities(name):
    g = corpus.group(name)
    dm = character_degrees(g)
    assert dm.invariant_failures(len(conjugacy_classes(g)), linear_character_count(g)) == []


@settings(max_examples=25, deadline=None)
@given(st.lists(st.permutations(list(range(6))), min_size=1, max_size=2))
def test_random_subgroups_of_s6(gens):
    from cdgraph.perm import Permutation
    g = PermGroup(6, [Permutation(x) for x in gens])
    dm = character_degrees(g)
    assert list(dm.degrees) == oracles.character_degrees(element_set(g))


def test_direct_product_degrees_multiply():
    a, b = corpus.group("S4"), corpus.group("Q8")
    prod = C.direct_product(a, b)
    expected = degrees_direct_product(character_degrees(a), character_degrees(b))
    assert character_degrees(prod) == expected


def test_abelian_group_shortcut():
    dm = character_degrees(C.cyclic(12))
    assert dm.degrees == (1,) * 12 and rho(dm) == set()


def test_cd_and_rho():
    dm = DegreeMultiset((1, 1, 2, 3, 3, 6), 60)
    assert cd_set(dm) == {1, 2, 3, 6}
    assert rho(dm) == {2, 3}
    assert rho([1, 10, 21]) == {2, 3, 5, 7}


def test_invariant_failures_named():
    assert DegreeMultiset((1, 2), 4).invariant_failures() == ["sum-of-squares"]
    assert set(DegreeMultiset((2, 2), 8).invariant_failures()) == {"trivial-character"}
    assert "class-count" in DegreeMultiset((1, 1), 2).invariant_failures(class_count=3)


def test_dixon_prime_properties():
    for order, exp in [(24, 12), (168, 42), (159720, 330)]:
        ell = dixon_prime(order, exp)
        assert ell % exp == 1 and ell * ell > 4 * order


def test_class_cap():
    with use_limits(max_classes=5):
        with pytest.raises(CapExceeded):
            character_degrees(symmetric(5))
