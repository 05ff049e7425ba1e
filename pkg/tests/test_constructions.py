import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cdgraph import constructions as C
from cdgraph.characters import character_degrees, degrees_direct_product
from cdgraph.errors import CapExceeded, InputError
from cdgraph.limits import use_limits
from cdgraph.perm import Permutation, compose, symmetric
from cdgraph.structure import center, derived_series, derived_subgroup
from cdgraph.subgroup import generate, is_normal, whole

import corpus
import oracles

# (order, element-order histogram), histograms from the set-closure oracle
EXPECTED = {
    "C6": (6, {1: 1, 2: 1, 3: 2, 6: 2}),
    "V4": (4, {1: 1, 2: 3}),
    "D8": (8, {1: 1, 2: 5, 4: 2}),
    "D10": (10, {1: 1, 2: 5, 5: 4}),
    "Q8": (8, {1: 1, 2: 1, 4: 6}),
    "SL(2,3)": (24, {1: 1, 2: 1, 3: 8, 4: 6, 6: 8}),
    "GL(2,3)": (48, {1: 1, 2: 13, 3: 8, 4: 6, 6: 8, 8: 12}),
    "3^(1+2)": (27, {1: 1, 3: 26}),
    "5^(1+2)": (125, {1: 1, 5: 124}),
    "AGammaL(1,4)": (24, {1: 1, 2: 9, 3: 8, 4: 6}),
    "AGammaL(1,8)": (168, {1: 1, 2: 7, 3: 56, 6: 56, 7: 48}),
    "2^3:7": (56, {1: 1, 2: 7, 7: 48}),
    "5^(1+2):2": (250, {1: 1, 2: 25, 5: 124, 10: 100}),
    "3^2:SL(2,3)": (216, None),
    "3^2:GL(2,3)": (432, None),
    "11^(1+2):5": (6655, None),
    "AGammaL(1,32)": (4960, None),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_orders_and_histograms(name):
    g = corpus.group(name)
    order, hist = EXPECTED[name]
    assert g.order == order
    if hist is not None:
        elements = oracles.closure(corpus.images(g), g.degree)
        assert len(elements) == order
        assert oracles.order_histogram(elements) == hist


def test_dihedral_small_cases():
    assert C.dihedral(1).order == 2
    d4 = C.dihedral(2)
    assert d4.order == 4 and derived_subgroup(d4).order == 1


def test_builder_input_errors():
    with pytest.raises(InputError):
        C.cyclic(0)
    with pytest.raises(InputError):
        C.elementary_abelian(6, 2)
    with pytest.raises(InputError):
        C.agammal(6, 1)
    with pytest.raises(InputError):
        C.extraspecial_by_cyclic(7, 4)


def test_field_cap():
    with use_limits(max_field=64):
        with pytest.raises(CapExceeded):
            C.agammal(2, 7)


@pytest.mark.parametrize("q, m", [(2, 1), (3, 1), (4, 1), (2, 2), (2, 3), (3, 2), (4, 2), (2, 4)])
def test_agammal_order(q, m):
    n = q**m
    assert C.agammal(q, m).order == n * (n - 1) * m


def test_extraspecial_center_and_derived():
    for p in (3, 5, 7):
        g = C.extraspecial(p)
        z = center(g)
        assert g.order == p**3 and z.order == p and derived_subgroup(g) == z


def test_frobenius_21_on_8_is_frobenius():
    g = corpus.group("2^3:7")
    assert is_normal(g, generate(g, g.generator_indices[:3]))
    assert character_degrees(g).counts() == {1: 7, 7: 1}
    assert center(g).order == 1


def test_bad_action_rejected():
    n = C.cyclic(3)
    x = n.generators[0]
    # x -> x^2 has order 2, so a C_3 actor cannot realise it
    with pytest.raises(InputError, match="relations"):
        C.semidirect(n, C.cyclic(3), C.ActionSpec(n, ((compose(x, x),),)))


def test_non_automorphism_rejected():
    n = C.cyclic(4)
    ident = Permutation.identity(4)
    with pytest.raises(InputError):
        C.semidirect(n, C.cyclic(2), C.ActionSpec(n, ((ident,),)))


def test_action_target_must_match():
    n = C.cyclic(3)
    with pytest.raises(InputError):
        C.semidirect(n, C.cyclic(2), C.ActionSpec(C.cyclic(3), ((n.generators[0],),)))


def test_trivial_action_matches_direct_product():
    n, h = C.quaternion8(), symmetric(3)
    spec = C.ActionSpec(n, tuple(tuple(n.generators) for _ in h.generators))
    g = C.semidirect(n, h, spec)
    assert g.order == 48
    assert character_degrees(g) == degrees_direct_product(character_degrees(n), character_degrees(h))


def test_inversion_action_gives_dihedral():
    n = C.cyclic(5)
    x = n.generators[0]
    g = C.semidirect(n, C.cyclic(2), C.ActionSpec(n, ((C.perm_power(x, 4),),)))
    assert g.order == 10
    assert oracles.order_histogram(oracles.closure(corpus.images(g), g.degree)) == {1: 1, 2: 5, 5: 4}


def test_direct_product_orders():
    g = C.direct_product(symmetric(3), C.cyclic(4))
    assert g.order == 24 and g.degree == 7


@pytest.mark.parametrize("name, kind, order", [
    ("SL(2,3)", "center", 12), ("GL(2,3)", "center", 24), ("S4", "derived", 2),
    ("Q8", "center", 4), ("3^2:GL(2,3)", "derived", 2), ("5^(1+2)", "center", 25),
])
def test_quotient_orders(name, kind, order):
    g = corpus.group(name)
    n = center(g) if kind == "center" else derived_subgroup(g)
    qm = C.quotient_map(g, n)
    assert qm.group.order == order
    # proj is a homomorphism with kernel n
    rng = np.random.default_rng(0)
    i, j = rng.integers(0, g.order, size=(2, 40))
    assert np.array_equal(qm.proj[g.mul(i, j)], qm.group.mul(qm.proj[i], qm.proj[j]))
    assert np.array_equal(qm.proj == 0, n.mask)


def test_quotient_image_preimage():
    g = corpus.group("S4")
    v = derived_series(g)[2]
    qm = C.quotient_map(g, v)
    assert qm.group.order == 6
    assert qm.preimage(qm.image(whole(g))) == whole(g)
    assert qm.image(v).order == 1


def test_quotient_by_non_normal_rejected():
    g = symmetric(3)
    with pytest.raises(InputError):
        C.quotient(g, generate(g, [g.index_of(Permutation.from_cycles(3, (0, 1)))]))


def test_shuffle_identity_seed():
    g = corpus.group("S4")
    assert C.shuffle_generators(g, C.IDENTITY_SEED).generators == g.generators


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 2**32))
def test_shuffle_preserves_group(seed):
    g = corpus.group("GL(2,3)")
    s = C.shuffle_generators(g, seed)
    assert s.order == g.order
    assert {p.images for p in s.generators} <= {tuple(r) for r in g.array.tolist()}
    assert character_degrees(s) == character_degrees(g)


def test_shuffle_is_deterministic():
    g = corpus.group("AGammaL(1,8)")
    assert C.shuffle_generators(g, 7).generators == C.shuffle_generators(g, 7).generators
