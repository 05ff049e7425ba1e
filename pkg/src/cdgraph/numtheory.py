"""Exact integer arithmetic: factoring, prime powers, cyclotomic values.

Also hosts the two arithmetic facts about Type 4 disconnected groups:
when ``(p^(an) - 1)/(p^a - 1)`` is a prime power, ``n`` is prime and ``a``
is a power of ``n`` (with the single exception ``p, a, n = 2, 3, 2``), and
the consequence that ``|[E,F]|`` is then not a square.
"""

from __future__ import annotations

import dataclasses
import math
from functools import lru_cache

import numpy as np

from .errors import CapExceeded, InputError, InternalError

TRIAL_BOUND = 10**6
MAGNITUDE_BITS = 128

# Strong-pseudoprime bases that are deterministic below 3.3e24 (covers 64 bits).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _sieve(limit: int) -> np.ndarray:
    s = np.ones(limit + 1, dtype=bool)
    s[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if s[i]:
            s[i * i::i] = False
    return np.flatnonzero(s)


_PRIMES = _sieve(TRIAL_BOUND)


def is_prime(n: int) -> bool:
    """Trial division by small primes, then strong-pseudoprime tests."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime_congruent(residue: int, modulus: int, above: int) -> int:
    """Smallest prime ``> above`` that is ``residue`` mod ``modulus``."""
    x = above + 1
    x += (residue - x) % modulus
    while not is_prime(x):
        x += modulus
    return x


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise InternalError(f"Pollard rho found no factor of {n}")


@dataclasses.dataclass(frozen=True)
class Factorization:
    input: int
    factors: tuple[tuple[int, int], ...]

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


def factorize(n: int) -> Factorization:
    if n < 1:
        raise InputError(f"cannot factor {n}")
    if n.bit_length() > MAGNITUDE_BITS:
        raise CapExceeded("magnitude-bits", MAGNITUDE_BITS, n.bit_length())
    counts: dict[int, int] = {}
    m = n
    if m < 2**62:
        hits = _PRIMES[np.asarray(m, dtype=np.int64) % _PRIMES == 0]
    else:
        hits = (int(p) for p in _PRIMES if m % int(p) == 0)
    for p in hits:
        p = int(p)
        while m % p == 0:
            m //= p
            counts[p] = counts.get(p, 0) + 1
    stack = [m] if m > 1 else []
    while stack:
        x = stack.pop()
        if is_prime(x):
            counts[x] = counts.get(x, 0) + 1
            continue
        r = math.isqrt(x)
        if r * r == x:
            stack += [r, r]
            continue
        d = _pollard_brent(x)
        stack += [d, x // d]
    return Factorization(n, tuple(sorted(counts.items())))


def prime_factors(n: int) -> list[int]:
    return factorize(n).primes()


def is_prime_power(n: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``n == p**k`` and ``k >= 1``, else ``None``."""
    if n < 2:
        raise InputError("is_prime_power needs n >= 2")
    f = factorize(n).factors
    return f[0] if len(f) == 1 else None


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize(n).factors:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def is_power_of(a: int, n: int) -> bool:
    """True when ``a == n**j`` for some ``j >= 0`` (so ``a == 1`` counts)."""
    while a > 1 and a % n == 0:
        a //= n
    return a == 1


@lru_cache(maxsize=4096)
def cyclotomic_eval(d: int, x: int) -> int:
    """``Phi_d(x)`` exactly, from ``x^d - 1 = prod_{e | d} Phi_e(x)``."""
    if d < 1 or x < 2:
        raise InputError("cyclotomic_eval needs d >= 1 and x >= 2")
    num = x**d - 1
    den = 1
    for e in divisors(d)[:-1]:
        den *= cyclotomic_eval(e, x)
    q, r = divmod(num, den)
    if r:
        raise InternalError(f"inexact division computing Phi_{d}({x})")
    return q


def repunit_quotient(p: int, a: int, n: int) -> int:
    return (p ** (a * n) - 1) // (p**a - 1)


def cyclotomic_quotient_product(p: int, a: int, n: int) -> int:
    """Product of ``Phi_d(p)`` over divisors ``d`` of ``a*n`` not dividing ``a``."""
    out = 1
    for d in divisors(a * n):
        if a % d:
            out *= cyclotomic_eval(d, p)
    return out


@dataclasses.dataclass(frozen=True)
class ZsigReport:
    p: int
    a: int
    n: int
    quotient: int
    is_prime_power: bool
    prime_power: tuple[int, int] | None
    lemma_conclusion_holds: bool
    exception_case: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p, "a": self.a, "n": self.n,
            "quotient": self.quotient,
            "is_prime_power": self.is_prime_power,
            "prime_power": list(self.prime_power) if self.prime_power else None,
            "lemma_conclusion_holds": self.lemma_conclusion_holds,
            "exception_case": self.exception_case,
        }


def zsig_check(p: int, a: int, n: int) -> ZsigReport:
    if not is_prime(p):
        raise InputError(f"p = {p} is not prime")
    if a < 1 or n < 2:
        raise InputError("need a >= 1 and n > 1")
    q = repunit_quotient(p, a, n)
    pp = is_prime_power(q)
    exception = (p, a, n) == (2, 3, 2)
    conclusion = is_prime(n) and (is_power_of(a, n) or exception)
    return ZsigReport(p, a, n, q, pp is not None, pp, conclusion, exception)


@dataclasses.dataclass(frozen=True)
class Type4SquareReport:
    p: int
    a: int
    n: int
    r: int
    quotient: int
    premise_holds: bool
    n_prime: bool
    conditional_applies: bool
    n_odd: bool | None
    m_power_of_n: bool | None
    order_is_square: bool
    conclusions_hold: bool | None

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def type4_not_square_check(p: int, a: int, n: int, r: int) -> Type4SquareReport:
    """Check the Type 4 size facts for ``|[E,F]| = (p^a)^n`` and ``pi(E:F) = {r}``.

    The premise is that the quotient is a power of ``r`` and that ``r != n``
    (the two graph components ``{n}`` and ``{r}`` are distinct).  When the
    premise fails the conclusions are reported as ``None``, never as false.
    """
    if not is_prime(p) or not is_prime(r):
        raise InputError("p and r must be prime")
    if a < 1 or n < 2:
        raise InputError("need a >= 1 and n > 1")
    q = repunit_quotient(p, a, n)
    pp = is_prime_power(q)
    premise = pp is not None and pp[0] == r and r != n
    m = a * n
    square = m % 2 == 0
    n_prime = is_prime(n)
    applies = p != n
    if not premise:
        return Type4SquareReport(p, a, n, r, q, False, n_prime, applies, None, None, square, None)
    if applies:
        n_odd = n % 2 == 1
        m_pow = is_power_of(m, n)
        holds = n_prime and n_odd and m_pow and not square
    else:
        n_odd = m_pow = None
        holds = n_prime
    return Type4SquareReport(p, a, n, r, q, True, n_prime, applies, n_odd, m_pow, square, holds)
