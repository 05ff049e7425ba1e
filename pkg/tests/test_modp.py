import numpy as np
import sympy
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, settings, strategies as st

from cdgraph.modp import krylov_minpoly, matmul, nullspace, poly_roots, rref

PRIMES = st.sampled_from([2, 3, 5, 7, 31, 1009])


def matrices(p, max_dim=6):
    dims = st.tuples(st.integers(1, max_dim), st.integers(1, max_dim))
    return dims.flatmap(lambda d: st.lists(st.integers(0, p - 1), min_size=d[0] * d[1],
                                           max_size=d[0] * d[1]).map(
        lambda xs: np.array(xs, dtype=np.int64).reshape(d)))


@settings(max_examples=80)
@given(PRIMES.flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_rref_matches_sympy(pa):
    p, a = pa
    red, piv = rref(a, p)
    gf = sympy.GF(p)
    dm = DomainMatrix([[gf(int(x)) for x in row] for row in a.tolist()], a.shape, gf)
    rr, rpiv = dm.rref()
    assert tuple(piv) == tuple(rpiv)
    expected = np.array([[int(x) % p for x in row] for row in rr.to_list()[:len(rpiv)]],
                        dtype=np.int64).reshape(len(rpiv), a.shape[1])
    assert np.array_equal(red, expected)


@settings(max_examples=80)
@given(PRIMES.flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_nullspace_is_kernel_of_full_dimension(pa):
    p, a = pa
    ns = nullspace(a, p)
    rank = len(rref(a, p)[1])
    assert ns.shape == (a.shape[1] - rank, a.shape[1])
    if ns.size:
        assert not np.any(matmul(a, ns.T, p))
        assert len(rref(ns, p)[1]) == ns.shape[0]


def test_matmul_large_prime_uses_exact_path():
    # too large for the float64 path, small enough for exact int64 products
    p = 1_000_000_007
    a = np.full((3, 3), p - 1, dtype=np.int64)
    assert np.all(matmul(a, a, p) == (3 * (p - 1) ** 2) % p)


@settings(max_examples=60)
@given(PRIMES.flatmap(lambda p: st.tuples(st.just(p), st.integers(1, 5).flatmap(
    lambda n: st.lists(st.integers(0, p - 1), min_size=n * n + n, max_size=n * n + n)))))
def test_krylov_minpoly_annihilates(pa):
    p, xs = pa
    n = int(round((-1 + (1 + 4 * len(xs)) ** 0.5) / 2))
    r = np.array(xs[:n * n], dtype=np.int64).reshape(n, n)
    u = np.array(xs[n * n:], dtype=np.int64)
    coeffs = krylov_minpoly(u, r, p)
    assert coeffs[-1] == 1
    acc = np.zeros(n, dtype=np.int64)
    v = u % p
    for c in coeffs:
        acc = (acc + int(c) * v) % p
        v = matmul(v[None, :], r, p)[0]
    assert not np.any(acc)
    if not np.any(u % p):
        assert len(coeffs) == 1


@given(st.sampled_from([5, 7, 13, 101]), st.lists(st.integers(0, 100), min_size=1, max_size=4))
def test_poly_roots_of_product(p, roots):
    poly = sympy.Poly(sympy.prod(sympy.Symbol("x") - r for r in roots), modulus=p)
    coeffs = np.array([int(c) % p for c in reversed(poly.all_coeffs())], dtype=np.int64)
    assert poly_roots(coeffs, p) == sorted({r % p for r in roots})
