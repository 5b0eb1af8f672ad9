"""Exact integer arithmetic for radicands.

Primality is decided by deterministic Miller-Rabin (exact below 3.3e24),
factorization by trial division followed by Pollard's rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import reduce

from .errors import DegenerateRadicand, NotFifthPowerFree, NotPrime

# Free residues modulo 25: the fourth roots of unity {±1, ±7}.
FREE_RESIDUES = frozenset({1, 7, 18, 24})

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
_TRIAL_LIMIT = 1000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
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


def _pollard_rho(n: int) -> int:
    """Return a non-trivial factor of the odd composite ``n``."""
    for c in range(1, n):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"no factor found for {n}")


def _prime_factors(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _prime_factors(d, out)
    _prime_factors(n // d, out)


@dataclass(frozen=True, order=True)
class PrimePower:
    prime: int
    exponent: int

    def __post_init__(self):
        if not 1 <= self.exponent <= 4:
            raise NotFifthPowerFree(self.prime, self.exponent)
        if not is_prime(self.prime):
            raise NotPrime(f"{self.prime} is not prime")

    @property
    def value(self) -> int:
        return self.prime**self.exponent

    def __str__(self) -> str:
        return str(self.prime) if self.exponent == 1 else f"{self.prime}^{self.exponent}"


@dataclass(frozen=True)
class Factorization:
    """Fifth-power-free factorization, primes strictly increasing."""

    factors: tuple[PrimePower, ...]

    def __post_init__(self):
        primes = [f.prime for f in self.factors]
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise ValueError(f"primes not strictly increasing: {primes}")

    @classmethod
    def from_pairs(cls, pairs) -> Factorization:
        return cls(tuple(PrimePower(p, e) for p, e in sorted(pairs)))

    @property
    def value(self) -> int:
        return reduce(lambda acc, f: acc * f.value, self.factors, 1)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(f.prime for f in self.factors)

    def exponent(self, prime: int) -> int:
        for f in self.factors:
            if f.prime == prime:
                return f.exponent
        return 0

    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0].exponent == 1

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return "·".join(str(f) for f in self.factors) or "1"


def factorize(n: int, raw: bool = False):
    """Factor ``n >= 2``.

    Returns a :class:`Factorization`, or with ``raw=True`` the ascending list of
    ``(prime, exponent)`` pairs with exponents left unreduced.
    Raises :class:`NotFifthPowerFree` in strict mode if an exponent reaches 5.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"factorize needs an integer >= 2, got {n!r}")
    found: dict[int, int] = {}
    m = n
    p = 2
    while p <= _TRIAL_LIMIT and p * p <= m:
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        _prime_factors(m, found)
    pairs = sorted(found.items())
    if raw:
        return pairs
    for q, e in pairs:
        if e >= 5:
            raise NotFifthPowerFree(q, e)
    return Factorization.from_pairs(pairs)


def reduce_exponents(pairs) -> int:
    """Product of ``q**(e % 5)`` over the given prime powers."""
    out = 1
    for q, e in pairs:
        out *= q ** (e % 5)
    return out


def normalize_radicand(D: int) -> tuple[int, int]:
    """Return ``(Dstar, k)``: the minimal exponent-reduced power ``D**k``, ``1 <= k <= 4``.

    The four powers generate the same field, so ``Dstar`` is the canonical
    radicand of the normalization class and ``k`` the smallest witness.
    """
    pairs = factorize(D, raw=True)
    if reduce_exponents(pairs) == 1:
        raise DegenerateRadicand(f"{D} is a perfect fifth power")
    best, k_best = None, None
    for k in range(1, 5):
        cand = reduce_exponents((q, e * k) for q, e in pairs)
        if best is None or cand < best:
            best, k_best = cand, k
    return best, k_best


def is_normalized(D: int) -> bool:
    try:
        return normalize_radicand(D)[0] == D
    except DegenerateRadicand:
        return False


def normalized_radicands(bound: int) -> list[int]:
    """All normalized radicands ``2 <= D < bound`` in ascending order."""
    return [D for D in range(2, bound) if is_normalized(D)]


class SplitDegree(Enum):
    NON_SPLIT = "non-split"
    TWO_SPLIT = "2-split"
    FOUR_SPLIT = "4-split"


@dataclass(frozen=True)
class PrimeClass:
    prime: int
    mod5: int
    mod25: int
    is_free: bool
    split_degree: SplitDegree | None
    special_five: bool = False

    @property
    def restrictive(self) -> bool:
        return not self.special_five and not self.is_free


def classify_prime(q: int) -> PrimeClass:
    if not is_prime(q):
        raise NotPrime(f"{q} is not prime")
    if q == 5:
        return PrimeClass(5, 0, 5, False, None, special_five=True)
    r5 = q % 5
    if r5 == 1:
        split = SplitDegree.FOUR_SPLIT
    elif r5 == 4:
        split = SplitDegree.TWO_SPLIT
    else:
        split = SplitDegree.NON_SPLIT
    return PrimeClass(q, r5, q % 25, q % 25 in FREE_RESIDUES, split)
