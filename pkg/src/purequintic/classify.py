"""Staged classification of pure metacyclic fields into DPF types.

Steps are ordered by the cost of the number field computation they need.
Step 1 is purely rational; steps 2-5 each delegate one computation to an
:class:`~purequintic.oracle.ArithmeticOracle` and stop as soon as the type
is determined.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .arith import factorize
from .conductor import ConductorProfile, Species, multiplicity, profile
from .dpf import (
    DpfType,
    admissible_types,
    polya_predicate,
    signature_from_type,
    type_from_dims,
)
from .errors import InconsistentOracle, LengthMismatch
from .oracle import ArithmeticOracle, QueryKind, ask, check_answer


class Step(Enum):
    STEP1 = "1"
    STEP2 = "2"
    STEP3 = "3"
    STEP4 = "4"
    STEP5 = "5"
    THEOREM = "theorem"


@dataclass
class ClassificationTrace:
    radicand: int
    steps_visited: list[Step] = field(default_factory=list)
    oracle_queries: list[tuple[QueryKind, int | bool]] = field(default_factory=list)
    resolved_A: int | None = None
    resolved_I: int | None = None
    resolved_R: int | None = None
    final_type: DpfType | None = None
    polya: bool | None = None

    @property
    def stop_step(self) -> Step:
        return self.steps_visited[-1]

    def queried(self, kind: QueryKind) -> bool:
        return any(k is kind for k, _ in self.oracle_queries)

    def summary(self) -> str:
        polya = "unknown" if self.polya is None else str(self.polya).lower()
        return f"type={self.final_type} step={self.stop_step.value} polya={polya}"


def _prime_rule(D: int, prof: ConductorProfile) -> DpfType | None:
    fac = factorize(D)
    if not fac.is_prime():
        return None
    if D == 5 or D % 25 in (7, 18):
        return DpfType.THETA
    if D % 5 in (2, 3):
        return DpfType.EPSILON
    return None


def _theorem_family(prof: ConductorProfile) -> DpfType | None:
    """Conductor shapes whose multiplet is known to be homogeneous of type epsilon."""
    c = prof.counters
    restrictive_nonsplit = c.n == c.t and c.v == c.t
    if not restrictive_nonsplit:
        return None
    if prof.species is Species.S1B and c.t == 1:
        return DpfType.EPSILON
    if prof.species is Species.S1A and c.t == 1:
        return DpfType.EPSILON
    if prof.species is Species.S2 and c.t == 2:
        return DpfType.EPSILON
    return None


def deterministic_classify(D: int, shortcuts: bool = True) -> DpfType | None:
    """DPF type of ``D`` from rational data alone, or ``None`` if an oracle is needed."""
    prof = profile(D)
    found = _prime_rule(D, prof)
    if found is None and shortcuts:
        found = _theorem_family(prof)
    return found


def classify(D: int, oracle: ArithmeticOracle, shortcuts_enabled: bool = True) -> ClassificationTrace:
    """Run the staged classification of the normalized radicand ``D``.

    Oracle answers are checked against the dimension bounds when received and
    the final type against the admissible types of the conductor; violations
    raise :class:`InconsistentOracle`.
    """
    prof = profile(D)
    c, s = prof.counters, prof.species
    trace = ClassificationTrace(D)
    split = c.s2 + c.s4

    def query(kind: QueryKind):
        answer = ask(oracle, kind, D)
        check_answer(kind, D, answer)
        trace.oracle_queries.append((kind, answer))
        return answer

    def done(T: DpfType) -> ClassificationTrace:
        allowed = admissible_types(c, s, factorize(D).is_prime())
        if T not in allowed:
            raise InconsistentOracle(
                f"D={D}: oracle answers lead to type {T.symbol}, not admissible "
                f"(admissible: {' '.join(sorted(t.symbol for t in allowed))})"
            )
        sig = signature_from_type(T)
        resolved = (trace.resolved_A, trace.resolved_I, trace.resolved_R)
        if any(got is not None and got != want for got, want in zip(resolved, sig.dims)):
            raise InconsistentOracle(f"D={D}: resolved dimensions {resolved} disagree with type {T.symbol}")
        trace.final_type = T
        if trace.resolved_A is not None:
            trace.polya = polya_predicate(trace.resolved_A, c, s)
        else:
            trace.polya = True
        return trace

    # Step 1: rational shortcuts
    trace.steps_visited.append(Step.STEP1)
    T = _prime_rule(D, prof)
    if T is not None:
        return done(T)
    if shortcuts_enabled:
        T = _theorem_family(prof)
        if T is not None:
            trace.steps_visited.append(Step.THEOREM)
            return done(T)

    # Step 2: absolute principal factors in L
    trace.steps_visited.append(Step.STEP2)
    A = trace.resolved_A = query(QueryKind.ABS)
    if split == 0:
        trace.resolved_I = 0
    if c.s4 == 0:
        trace.resolved_R = 0
    if A == 3:
        return done(DpfType.GAMMA)
    if A == 2 and split == 0 and c.v >= 1:
        return done(DpfType.EPSILON)
    if A == 1 and split == 0:
        return done(DpfType.THETA)

    # Step 3: intermediate principal factors in M
    if split >= 1:
        trace.steps_visited.append(Step.STEP3)
        trace.resolved_I = query(QueryKind.INT)
        if trace.resolved_I == 2:
            return done(DpfType.ALPHA3)
        if trace.resolved_I == 1 and A == 2:
            return done(DpfType.BETA2)
    I = trace.resolved_I  # noqa: E741

    # Step 4: relative principal factors in N
    if c.s4 >= 1:
        trace.steps_visited.append(Step.STEP4)
        trace.resolved_R = query(QueryKind.REL)
        if trace.resolved_R == 2:
            return done(DpfType.ALPHA1)
        if trace.resolved_R == 1 and I == 1:
            return done(DpfType.ALPHA2)
        if trace.resolved_R == 1 and A == 2:
            return done(DpfType.BETA1)
    R = trace.resolved_R

    # Step 5: U = 1 remains, except A = 1, I = R = 0 which forces U = 0
    trace.steps_visited.append(Step.STEP5)
    if A + I + R == 1:
        return done(DpfType.THETA)
    zeta = False
    if c.v == 0:
        zeta = bool(query(QueryKind.ZNORM))
    return done(type_from_dims(A, I, R, zeta))


class Verdict(Enum):
    OK = "ok"
    MISMATCH = "mismatch"
    NOT_APPLICABLE = "not applicable"


def theorem_family_types(prof: ConductorProfile) -> frozenset[DpfType] | None:
    """Types a whole multiplet may take when its conductor is one of the known families."""
    c = prof.counters
    S = prof.species
    if c.n != c.t:
        return None
    restrictive, free = c.v, c.u
    if S is Species.S1B and c.t == 1 and restrictive == 1:
        return frozenset({DpfType.EPSILON})
    if S is Species.S2 and c.t == 1 and free == 1:
        return frozenset({DpfType.THETA})
    if S is Species.S1A and c.t == 1:
        return frozenset({DpfType.EPSILON} if restrictive else {DpfType.EPSILON, DpfType.ETA})
    if S is Species.S2 and c.t == 2:
        if restrictive == 2:
            return frozenset({DpfType.EPSILON})
        if free == 2:
            return frozenset({DpfType.EPSILON, DpfType.ETA})
        return None
    if S is Species.S1A and c.t == 2 and restrictive >= 1:
        return frozenset({DpfType.EPSILON, DpfType.GAMMA})
    return None


def multiplet_type_pattern_check(prof: ConductorProfile, types: list[DpfType]) -> Verdict:
    c = prof.counters
    m = multiplicity(prof.species, c.t, c.u, c.v)
    if len(types) != m:
        raise LengthMismatch(f"expected {m} types for conductor {prof.f4_text()}, got {len(types)}")
    allowed = theorem_family_types(prof)
    if allowed is None:
        return Verdict.NOT_APPLICABLE
    return Verdict.OK if set(types) <= allowed else Verdict.MISMATCH
