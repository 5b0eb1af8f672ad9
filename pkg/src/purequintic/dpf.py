"""The thirteen differential principal factorization (DPF) types.

A type is fixed by the sextuple ``(U, norm_kind; A, I, R)`` where ``U`` is the
5-valuation of the unit norm index, ``norm_kind`` records which of the
fundamental unit ``eta`` of Q(sqrt 5) and the root of unity ``zeta`` are norms
of units of the degree-20 field, and ``A, I, R`` are the F_5-dimensions of the
absolute, intermediate and relative principal factor spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .conductor import ConductorProfile, Counters, Species
from .errors import NoSuchSignature


class DpfType(Enum):
    ALPHA1 = "a1"
    ALPHA2 = "a2"
    ALPHA3 = "a3"
    BETA1 = "b1"
    BETA2 = "b2"
    GAMMA = "g"
    DELTA1 = "d1"
    DELTA2 = "d2"
    EPSILON = "e"
    ZETA1 = "z1"
    ZETA2 = "z2"
    ETA = "h"
    THETA = "t"

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @classmethod
    def parse(cls, text: str) -> DpfType:
        text = text.strip()
        for t in cls:
            if text in (t.value, t.name, t.name.lower(), t.symbol):
                return t
        raise ValueError(f"unknown DPF type {text!r}")

    def __str__(self) -> str:
        return self.value


_SYMBOLS = {
    DpfType.ALPHA1: "α1", DpfType.ALPHA2: "α2", DpfType.ALPHA3: "α3",
    DpfType.BETA1: "β1", DpfType.BETA2: "β2", DpfType.GAMMA: "γ",
    DpfType.DELTA1: "δ1", DpfType.DELTA2: "δ2", DpfType.EPSILON: "ε",
    DpfType.ZETA1: "ζ1", DpfType.ZETA2: "ζ2", DpfType.ETA: "η",
    DpfType.THETA: "ϑ",
}

#: Canonical order, used for every tabular output.
TYPE_ORDER = tuple(DpfType)


class NormKind(Enum):
    """Which of eta, zeta lie in the norm group of the units."""

    NONE = "none"
    ETA = "eta"
    ZETA = "zeta"
    BOTH = "both"

    @property
    def eta(self) -> bool:
        return self in (NormKind.ETA, NormKind.BOTH)

    @property
    def zeta(self) -> bool:
        return self in (NormKind.ZETA, NormKind.BOTH)


@dataclass(frozen=True)
class DpfSignature:
    U: int
    norm_kind: NormKind
    A: int
    I: int  # noqa: E741
    R: int

    def __post_init__(self):
        if not (0 <= self.U <= 2 and 1 <= self.A <= 3 and 0 <= self.I <= 2 and 0 <= self.R <= 2):
            raise NoSuchSignature(f"component out of range in {self}")
        if self.U + 1 != self.A + self.I + self.R:
            raise NoSuchSignature(f"U+1 != A+I+R in {self}")
        expected_U = {NormKind.NONE: 2, NormKind.ETA: 1, NormKind.ZETA: 1, NormKind.BOTH: 0}
        if expected_U[self.norm_kind] != self.U:
            raise NoSuchSignature(f"norm kind {self.norm_kind.value} incompatible with U={self.U}")

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.A, self.I, self.R


_N, _E, _Z, _B = NormKind.NONE, NormKind.ETA, NormKind.ZETA, NormKind.BOTH
_TABLE = {
    DpfType.ALPHA1: (2, _N, 1, 0, 2),
    DpfType.ALPHA2: (2, _N, 1, 1, 1),
    DpfType.ALPHA3: (2, _N, 1, 2, 0),
    DpfType.BETA1: (2, _N, 2, 0, 1),
    DpfType.BETA2: (2, _N, 2, 1, 0),
    DpfType.GAMMA: (2, _N, 3, 0, 0),
    DpfType.DELTA1: (1, _E, 1, 0, 1),
    DpfType.DELTA2: (1, _E, 1, 1, 0),
    DpfType.EPSILON: (1, _E, 2, 0, 0),
    DpfType.ZETA1: (1, _Z, 1, 0, 1),
    DpfType.ZETA2: (1, _Z, 1, 1, 0),
    DpfType.ETA: (1, _Z, 2, 0, 0),
    DpfType.THETA: (0, _B, 1, 0, 0),
}
_SIGNATURES = {t: DpfSignature(*row) for t, row in _TABLE.items()}
_BY_SIGNATURE = {s: t for t, s in _SIGNATURES.items()}

# Logarithmic indices (E, E+) of subfield units observed per type; heuristic.
_INDEX_PAIRS = {
    DpfType.ALPHA1: {(2, 1)},
    DpfType.ALPHA2: {(1, 0), (3, 1)},
    DpfType.ALPHA3: {(2, 0)},
    DpfType.BETA1: {(3, 1), (5, 2)},
    DpfType.BETA2: {(4, 1)},
    DpfType.GAMMA: {(6, 2)},
    DpfType.DELTA1: {(2, 1), (4, 2)},
    DpfType.DELTA2: {(3, 1)},
    DpfType.EPSILON: {(5, 2)},
    DpfType.ZETA1: {(5, 2)},
    DpfType.ZETA2: {(4, 1)},
    DpfType.ETA: {(6, 2)},
    DpfType.THETA: {(5, 2)},
}

ZETA_NORM_TYPES = frozenset(t for t, s in _SIGNATURES.items() if s.norm_kind.zeta)
ZETA_FORBIDDEN_IF_RESTRICTIVE = frozenset(
    {DpfType.ZETA1, DpfType.ZETA2, DpfType.ETA, DpfType.THETA}
)

# Admissible types for prime radicands, keyed by the residue situation.
_PRIME_CASES = {
    "free_nonsplit": {DpfType.THETA},
    "free_2split": {DpfType.DELTA2, DpfType.ZETA2, DpfType.THETA},
    "free_4split": {DpfType.ALPHA1, DpfType.ALPHA2, DpfType.DELTA1, DpfType.DELTA2,
                    DpfType.ZETA1, DpfType.ZETA2, DpfType.THETA},
    "restrictive_nonsplit": {DpfType.EPSILON},
    "restrictive_2split": {DpfType.BETA2, DpfType.DELTA2, DpfType.EPSILON},
    "restrictive_4split": {DpfType.ALPHA1, DpfType.ALPHA2, DpfType.BETA1, DpfType.BETA2,
                           DpfType.DELTA1, DpfType.DELTA2, DpfType.EPSILON},
}


def type_from_signature(sig: DpfSignature) -> DpfType:
    try:
        return _BY_SIGNATURE[sig]
    except KeyError:
        raise NoSuchSignature(f"no DPF type has signature {sig}") from None


def signature_from_type(T: DpfType) -> DpfSignature:
    return _SIGNATURES[T]


def type_from_dims(A: int, I: int, R: int, zeta_norm: bool) -> DpfType:  # noqa: E741
    """Type of a field with dimensions ``A, I, R``; ``zeta_norm`` only matters when U=1."""
    U = A + I + R - 1
    kind = {0: NormKind.BOTH, 2: NormKind.NONE}.get(U, NormKind.ZETA if zeta_norm else NormKind.ETA)
    return type_from_signature(DpfSignature(U, kind, A, I, R))


def index_pairs_for_type(T: DpfType) -> frozenset[tuple[int, int]]:
    return frozenset(_INDEX_PAIRS[T])


def _T(c: Counters, s: Species) -> int:
    return c.t + (1 if s.e0 > 0 else 0)


def dimension_bounds(c: Counters, s: Species) -> tuple[int, int, int]:
    """Upper bounds ``(Amax, Imax, Rmax)``; lower bounds are ``A >= 1``, ``I, R >= 0``."""
    return min(3, _T(c, s)), min(2, 2 * (c.s2 + c.s4)), min(2, 4 * c.s4)


def within_bounds(sig: DpfSignature, c: Counters, s: Species) -> bool:
    Amax, Imax, Rmax = dimension_bounds(c, s)
    return sig.A <= Amax and sig.I <= Imax and sig.R <= Rmax


def prime_case(c: Counters, s: Species) -> str:
    """Residue situation of a prime radicand, recovered from its counters."""
    if c.t == 0:
        return "free_nonsplit"  # D = 5
    if c.t != 1:
        raise ValueError("a prime radicand has exactly one prime other than 5")
    side = "free" if c.u else "restrictive"
    split = "4split" if c.s4 else "2split" if c.s2 else "nonsplit"
    return f"{side}_{split}"


def admissible_types(c: Counters, s: Species, prime_radicand: bool = False) -> frozenset[DpfType]:
    Amax, Imax, Rmax = dimension_bounds(c, s)
    if prime_radicand and c.s2 + c.s4 >= 1:
        # the radical already fills one of the two intermediate directions
        Imax = min(Imax, 1)
    out = {
        t for t, sig in _SIGNATURES.items()
        if sig.A <= Amax and sig.I <= Imax and sig.R <= Rmax
    }
    if c.v >= 1:
        out -= ZETA_FORBIDDEN_IF_RESTRICTIVE
    if prime_radicand:
        out &= _PRIME_CASES[prime_case(c, s)]
    return frozenset(out)


def admissible_for_profile(prof: ConductorProfile, prime_radicand: bool) -> frozenset[DpfType]:
    return admissible_types(prof.counters, prof.species, prime_radicand)


def polya_predicate(A: int, c: Counters, s: Species) -> bool:
    """A field is a Polya field iff all primes of the conductor give principal factors."""
    return A == _T(c, s)


@dataclass(frozen=True)
class StateVector:
    """5-valuations of the class numbers of L, M, N and the subfield unit index E."""

    V_L: int
    V_M: int
    V_N: int
    E: int

    @property
    def E_plus(self) -> int:
        return 2 + self.V_M - 2 * self.V_L

    def e_relation_holds(self) -> bool:
        return self.E == 5 + self.V_N - 4 * self.V_L

    @classmethod
    def from_valuations(cls, V_L: int, V_M: int, V_N: int) -> StateVector:
        return cls(V_L, V_M, V_N, 5 + V_N - 4 * V_L)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.V_L, self.V_M, self.V_N, self.E
