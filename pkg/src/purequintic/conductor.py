"""Dedekind species, conductors and multiplicities of pure quintic fields."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product

from .arith import (
    FREE_RESIDUES,
    Factorization,
    SplitDegree,
    classify_prime,
    factorize,
    normalize_radicand,
)
from .errors import InvalidCounters, TooManyPrimes

MAX_ENUMERATION_PRIMES = 6


class Species(Enum):
    """Refined Dedekind species; the value is the exponent of 5 in ``f**4``."""

    S1A = "1a"
    S1B = "1b"
    S2 = "2"

    @property
    def kind(self) -> str:
        return self.value

    @property
    def e0(self) -> int:
        return {"1a": 6, "1b": 2, "2": 0}[self.value]

    @classmethod
    def parse(cls, text: str) -> Species:
        return cls(text.strip())

    @classmethod
    def of(cls, D: int) -> Species:
        if D % 5 == 0:
            return cls.S1A
        if D % 25 in FREE_RESIDUES:
            return cls.S2
        return cls.S1B

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Counters:
    t: int
    u: int
    v: int
    n: int
    s2: int
    s4: int
    u_free_split2: int = 0
    u_free_split4: int = 0

    def __post_init__(self):
        if self.t != self.u + self.v or self.t != self.n + self.s2 + self.s4:
            raise InvalidCounters(f"inconsistent counters {self}")
        if self.u_free_split2 > min(self.u, self.s2) or self.u_free_split4 > min(self.u, self.s4):
            raise InvalidCounters(f"primed counters out of range in {self}")

    @classmethod
    def from_primes(cls, primes) -> Counters:
        t = u = n = s2 = s4 = f2 = f4 = 0
        for q in primes:
            pc = classify_prime(q)
            if pc.special_five:
                continue
            t += 1
            u += pc.is_free
            if pc.split_degree is SplitDegree.TWO_SPLIT:
                s2 += 1
                f2 += pc.is_free
            elif pc.split_degree is SplitDegree.FOUR_SPLIT:
                s4 += 1
                f4 += pc.is_free
            else:
                n += 1
        return cls(t, u, t - u, n, s2, s4, f2, f4)


@dataclass(frozen=True)
class ConductorProfile:
    species: Species
    primes: tuple[int, ...]
    counters: Counters

    @property
    def e0(self) -> int:
        return self.species.e0

    @property
    def T(self) -> int:
        """Number of primes dividing the conductor, 5 included."""
        return self.counters.t + (1 if self.e0 > 0 else 0)

    def f4(self) -> list[tuple[int, int]]:
        """Factored fourth power of the conductor, 5 first."""
        out = [(5, self.e0)] if self.e0 else []
        return out + [(q, 4) for q in self.primes]

    def f4_text(self) -> str:
        return "·".join(f"{p}^{e}" for p, e in self.f4())

    @property
    def multiplicity(self) -> int:
        c = self.counters
        return multiplicity(self.species, c.t, c.u, c.v)


def profile(D: Factorization | int) -> ConductorProfile:
    """Conductor profile of a normalized radicand."""
    fac = D if isinstance(D, Factorization) else factorize(D)
    value = fac.value
    primes = tuple(q for q in fac.primes if q != 5)
    return ConductorProfile(Species.of(value), primes, Counters.from_primes(primes))


def sequence_X(j: int) -> int:
    """``(4**j - (-1)**j) / 5`` for ``j >= 0``: 0, 1, 3, 13, 51, 205, ..."""
    if j < 0:
        raise ValueError("sequence_X is only materialized for j >= 0")
    return (4**j - (-1) ** j) // 5


def multiplicity(species: Species, t: int, u: int, v: int) -> int:
    """Number of normalized radicands sharing a conductor of the given shape.

    Zero is a legal answer (no field has this conductor).
    """
    if min(t, u, v) < 0 or t != u + v:
        raise InvalidCounters(f"t={t} != u+v={u}+{v}")
    if species is Species.S1A:
        return 4**t
    if species is Species.S1B:
        return 4**u * sequence_X(v)
    if v == 0:
        # 4**u * X_{-1} with X_{-1} = 1/4
        return 4 ** (u - 1) if u >= 1 else 0
    return 4**u * sequence_X(v - 1)


def enumerate_multiplet(prof: ConductorProfile) -> list[int]:
    """All normalized radicands whose conductor profile equals ``prof``, ascending."""
    if len(prof.primes) > MAX_ENUMERATION_PRIMES:
        raise TooManyPrimes(f"t={len(prof.primes)} exceeds {MAX_ENUMERATION_PRIMES}")
    bases = list(prof.primes)
    if prof.species is Species.S1A:
        bases = [5] + bases
    found = set()
    for exps in product(range(1, 5), repeat=len(bases)):
        D = 1
        for q, e in zip(bases, exps):
            D *= q**e
        if D < 2 or Species.of(D) is not prof.species:
            continue
        if normalize_radicand(D)[0] == D:
            found.add(D)
    return sorted(found)


def conductor_key(D: int) -> tuple[Species, tuple[int, ...]]:
    """Hashable identity of the conductor of ``D``."""
    p = profile(D)
    return p.species, p.primes
