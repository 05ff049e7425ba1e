import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cdgraph.errors import CapExceeded, InputError
from cdgraph.numtheory import (cyclotomic_eval, cyclotomic_quotient_product, divisors, factorize,
                               is_power_of, is_prime, is_prime_power, next_prime_congruent, p_part,
                               repunit_quotient, type4_not_square_check, zsig_check)


@given(st.integers(0, 10**7))
def test_is_prime_matches_sympy_small(n):
    assert is_prime(n) == sympy.isprime(n)


@settings(max_examples=200)
@given(st.integers(2**40, 2**80))
def test_is_prime_matches_sympy_large(n):
    assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("n", [
    3215031751,               # strong pseudoprime to bases 2, 3, 5, 7
    3825123056546413051,      # strong pseudoprime to the first nine prime bases
    2**61 - 1,
    (2**31 - 1) * (2**61 - 1),
])
def test_is_prime_hard_cases(n):
    assert is_prime(n) == sympy.isprime(n)


@settings(max_examples=150)
@given(st.integers(1, 2**90))
def test_factorize_matches_sympy(n):
    f = factorize(n)
    assert dict(f.factors) == sympy.factorint(n)
    assert f.value() == n


def test_factorize_semiprime_with_large_factors():
    p, q = 1_000_000_007, 998_244_353
    assert factorize(p * q * q).factors == ((q, 2), (p, 1))


def test_factorize_magnitude_cap():
    with pytest.raises(CapExceeded):
        factorize(2**200 + 1)
    with pytest.raises(InputError):
        factorize(0)


@pytest.mark.parametrize("n, expected", [
    (2, (2, 1)), (9, (3, 2)), (121, (11, 2)), (63, None), (1024, (2, 10)), (12, None),
])
def test_is_prime_power(n, expected):
    assert is_prime_power(n) == expected


def test_is_prime_power_rejects_small():
    with pytest.raises(InputError):
        is_prime_power(1)


@given(st.integers(1, 5000))
def test_divisors_match_sympy(n):
    assert divisors(n) == sympy.divisors(n)


def test_small_helpers():
    assert p_part(2**5 * 3 * 7, 2) == 32
    assert is_power_of(1, 5) and is_power_of(25, 5) and not is_power_of(10, 5)
    assert next_prime_congruent(1, 6, 20) == 31


@pytest.mark.parametrize("d", range(1, 40))
@pytest.mark.parametrize("x", [2, 3, 5, 10])
def test_cyclotomic_eval_matches_sympy(d, x):
    assert cyclotomic_eval(d, x) == sympy.cyclotomic_poly(d, x)


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(1, 8), st.integers(2, 8))
def test_cyclotomic_quotient_identity(p, a, n):
    assert cyclotomic_quotient_product(p, a, n) == repunit_quotient(p, a, n)


def test_zsig_exception_triple():
    r = zsig_check(2, 3, 2)
    assert r.quotient == 9 and r.prime_power == (3, 2)
    assert r.exception_case and r.lemma_conclusion_holds


def test_zsig_not_prime_power():
    r = zsig_check(2, 1, 6)
    assert r.quotient == 63 and not r.is_prime_power


def test_zsig_square_of_eleven():
    r = zsig_check(3, 1, 5)
    assert r.quotient == 121 and r.prime_power == (11, 2) and r.lemma_conclusion_holds


def test_zsig_input_errors():
    with pytest.raises(InputError):
        zsig_check(4, 1, 2)
    with pytest.raises(InputError):
        zsig_check(2, 1, 1)


def test_type4_report_on_mersenne():
    # (2^5 - 1)/(2 - 1) = 31, n = 5 odd, m = 5 a power of 5, 2^5 not a square
    r = type4_not_square_check(2, 1, 5, 31)
    assert r.premise_holds and r.conclusions_hold
    assert r.n_odd and r.m_power_of_n and not r.order_is_square


def test_type4_report_premise_fails():
    r = type4_not_square_check(2, 1, 6, 3)
    assert not r.premise_holds and r.conclusions_hold is None


def test_type4_report_same_prime():
    # p = n = 2: 2^2 - 1 = 3 is a power of r = 3, and n = 2 is prime
    r = type4_not_square_check(2, 1, 2, 3)
    assert r.premise_holds and not r.conditional_applies and r.conclusions_hold
