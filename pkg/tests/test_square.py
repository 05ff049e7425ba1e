import dataclasses
import functools

import pytest

from cdgraph import constructions as C
from cdgraph.characters import character_degrees, degrees_direct_product, rho
from cdgraph.disconnected import classify_disconnected
from cdgraph.errors import CapExceeded, HypothesisError
from cdgraph.limits import use_limits
from cdgraph.perm import symmetric
from cdgraph.square import (Counterexample, check_frattini_invariance, check_h2_corollary,
                            check_h_bound, check_two_nonab_corollary, find_direct_factorizations,
                            normal_nonabelian_sylow_primes, verify_hypothesis1,
                            verify_main_theorem)
from cdgraph.subgroup import intersection, is_normal

import corpus

SQUARES = sorted(corpus.SQUARE_FACTORS)

# observed Fitting heights, from the Fitting chains of the factors
HEIGHTS = {
    "SL(2,3) x 11^(1+2):5": 2,
    "S4 x 11^(1+2):5": 3,
    "SL(2,3) x AGammaL(1,32)": 3,
    "S4 x AGammaL(1,32)": 3,
    "5^(1+2):2 x AGammaL(1,8)": 3,
}


@pytest.fixture(autouse=True)
def class_cap():
    with use_limits(max_classes=corpus.SQUARE_CLASS_CAP):
        yield


@functools.lru_cache(maxsize=None)
def certificate(name):
    with use_limits(max_classes=corpus.SQUARE_CLASS_CAP):
        return verify_main_theorem(corpus.group(name))


def orders(pairs):
    return sorted((a.order, b.order) for a, b in pairs)


def test_factorizations_of_small_groups():
    assert orders(find_direct_factorizations(C.cyclic(6))) == [(2, 3)]
    assert find_direct_factorizations(C.quaternion8()) == []
    assert (5, 6) in orders(find_direct_factorizations(corpus.group("S3xC5")))
    assert orders(find_direct_factorizations(C.cyclic(6), include_trivial=True)) == [(1, 6), (2, 3)]


def test_factorizations_are_direct():
    g = corpus.group("Q8xC3")
    for a, b in find_direct_factorizations(g):
        assert is_normal(g, a) and is_normal(g, b)
        assert intersection(a, b).order == 1 and a.order * b.order == g.order


@pytest.mark.parametrize("name, shape", [
    ("C6", "empty"), ("SL(2,3)", "disconnected, 2 components, 2 vertices"),
    ("S3xC5", "connected, 1 vertices, 0 edges"),
])
def test_hypothesis_errors_name_the_shape(name, shape):
    with pytest.raises(HypothesisError) as err:
        verify_hypothesis1(corpus.group(name))
    assert err.value.shape == shape


def test_cyclic30_rejected():
    with pytest.raises(HypothesisError, match="empty"):
        verify_main_theorem(C.cyclic(30))


def test_nonsolvable_rejected():
    with pytest.raises(HypothesisError, match="solvable"):
        verify_hypothesis1(symmetric(5))


def test_showcase_labeling():
    g = corpus.group("SL(2,3) x 11^(1+2):5")
    assert verify_hypothesis1(g) == ((2, 3), (5, 11))
    assert character_degrees(g).cd() == {1, 2, 3, 5, 10, 11, 15, 22, 33}


@pytest.mark.parametrize("name", SQUARES)
def test_certificate_round_trip(name):
    g = corpus.group(name)
    a_name, b_name = corpus.SQUARE_FACTORS[name]
    cert = certificate(name)
    assert not isinstance(cert, Counterexample)
    assert cert.verified
    assert sorted([cert.factor_a.order, cert.factor_b.order]) == sorted(
        [corpus.group(a_name).order, corpus.group(b_name).order])
    assert set(cert.rho_a) == set(cert.labeling[0]) and set(cert.rho_b) == set(cert.labeling[1])
    # independent re-check of the certificate
    da = character_degrees(cert.factor_a.as_group())
    db = character_degrees(cert.factor_b.as_group())
    assert degrees_direct_product(da, db) == character_degrees(g)
    assert rho(da) == set(cert.rho_a) and rho(db) == set(cert.rho_b)
    assert cert.type_a.claimed_type == classify_disconnected(corpus.group(a_name)).claimed_type
    assert cert.type_b.claimed_type == classify_disconnected(corpus.group(b_name)).claimed_type


@pytest.mark.parametrize("name", SQUARES)
def test_nonab_sylow_factor_shape(name):
    g = corpus.group(name)
    cert = certificate(name)
    for t in normal_nonabelian_sylow_primes(g):
        if cert.factor_a.order % t == 0:
            inside, other = cert.type_a, cert.type_b
        else:
            inside, other = cert.type_b, cert.type_a
        assert inside.claimed_type == 1
        assert other.claimed_type != 6


def test_showcase_certificate_dict():
    cert = certificate("SL(2,3) x 11^(1+2):5")
    d = cert.to_dict()
    assert d["factor_orders"] == [24, 6655]
    assert d["rho_a"] == [2, 3] and d["rho_b"] == [5, 11]
    assert d["type_a"]["label"] == d["type_b"]["label"] == "Type 1"
    assert d["checks"]["degree_product_identity"] and d["alternatives"] == 0


def test_certificate_checks_are_live():
    cert = certificate("5^(1+2):2 x AGammaL(1,8)")
    broken = dataclasses.replace(cert, checks={**cert.checks, "rho_a_matches": False})
    assert cert.verified and not broken.verified


@pytest.mark.parametrize("name", SQUARES)
def test_h_bound(name):
    rep = check_h_bound(corpus.group(name))
    assert rep.passed and rep.detail["fitting_height"] == HEIGHTS[name]


@pytest.mark.parametrize("name", SQUARES)
def test_two_nonab_corollary(name):
    g = corpus.group(name)
    rep = check_two_nonab_corollary(g)
    assert rep.passed
    if not rep.detail["vacuous"]:
        assert rep.detail["fitting_height"] == 2


def test_two_nonab_primes_of_showcase():
    assert normal_nonabelian_sylow_primes(corpus.group("SL(2,3) x 11^(1+2):5")) == [2, 11]


@pytest.mark.parametrize("name", SQUARES)
def test_h2_corollary(name):
    rep = check_h2_corollary(corpus.group(name))
    if HEIGHTS[name] == 2:
        assert rep.status == "pass" and rep.detail["factor_types"] == [1, 1]
    else:
        assert rep.status == "skipped"


def test_h2_corollary_failure_injection():
    def wrong(g):
        return dataclasses.replace(classify_disconnected(g), claimed_type=4)

    rep = check_h2_corollary(corpus.group("SL(2,3) x 11^(1+2):5"), classifier=wrong)
    assert rep.status == "fail" and rep.detail["factor_types"] == [4, 4]


@pytest.mark.parametrize("name", SQUARES)
def test_frattini_invariance_on_square_corpus(name):
    # Every square corpus group either has a normal Sylow subgroup at a
    # labeled prime or is above the Frattini cap, so the check never runs.
    g = corpus.group(name)
    if name == "S4 x AGammaL(1,32)":
        with pytest.raises(CapExceeded):
            check_frattini_invariance(g)
    else:
        assert check_frattini_invariance(g).status == "skipped"


def test_frattini_check_rejects_non_square():
    with pytest.raises(HypothesisError):
        check_frattini_invariance(corpus.group("S4"))
