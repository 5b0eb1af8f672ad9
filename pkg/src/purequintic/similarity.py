"""Similarity classes of radicands and their prototypes.

Two radicands are similar when they share the Dedekind multiplet (species and
prime counters, with free split primes counted separately), the DPF signature
and the class number state. The prototype of a class is its least radicand.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .conductor import Counters, Species, profile
from .dpf import TYPE_ORDER, DpfSignature, DpfType, signature_from_type

DEFAULT_BOUND = 1000

#: Number of similarity classes per type below the default bound, in table order.
EXPECTED_CLASS_COUNTS = dict(zip(TYPE_ORDER, (5, 22, 5, 10, 25, 29, 3, 5, 22, 1, 3, 2, 2)))


@dataclass(frozen=True)
class SimilarityKey:
    species: Species
    m: int
    counters: Counters
    dpf: DpfSignature
    state: tuple[int, int, int, int]
    abelian_type: str | None = None

    @property
    def e0(self) -> int:
        return self.species.e0

    @property
    def dedekind(self) -> tuple:
        c = self.counters
        return (self.e0, c.t, c.u, c.v, self.m, c.n, c.s2, c.s4, c.u_free_split2, c.u_free_split4)

    def dedekind_text(self) -> str:
        """Counters in the usual notation, with a prime mark on free split counts."""
        c = self.counters

        def mark(n: int, primed: int) -> str:
            return f"{n}'" if primed else str(n)

        u = mark(c.u, c.u_free_split2 + c.u_free_split4)
        return (
            f"({self.e0};{c.t},{u},{c.v},{self.m};"
            f"{c.n},{mark(c.s2, c.u_free_split2)},{mark(c.s4, c.u_free_split4)})"
        )

    @property
    def dpf_type(self) -> DpfType:
        from .dpf import type_from_signature

        return type_from_signature(self.dpf)


@dataclass
class SimilarityClass:
    key: SimilarityKey
    members: list[int] = field(default_factory=list)
    bound: int = DEFAULT_BOUND

    @property
    def prototype(self) -> int:
        return self.members[0]

    @property
    def cardinality(self) -> int:
        return sum(1 for D in self.members if D < self.bound)

    @property
    def dpf_type(self) -> DpfType:
        return self.key.dpf_type


def similarity_key(record) -> SimilarityKey:
    prof = profile(record.D)
    return SimilarityKey(
        species=prof.species,
        m=prof.multiplicity,
        counters=prof.counters,
        dpf=signature_from_type(record.dpf_type),
        state=record.state.as_tuple(),
        abelian_type=record.abelian_type,
    )


def group_into_classes(records, B: int = DEFAULT_BOUND) -> list[SimilarityClass]:
    """Partition records with ``D < B`` into classes ordered by prototype."""
    groups: dict[SimilarityKey, SimilarityClass] = {}
    for rec in sorted(records, key=lambda r: r.D):
        if rec.D >= B:
            continue
        key = similarity_key(rec)
        cls = groups.get(key)
        if cls is None:
            cls = groups[key] = SimilarityClass(key, bound=B)
        cls.members.append(rec.D)
    return sorted(groups.values(), key=lambda c: c.prototype)


REFINEMENT_COLUMNS = ("type", "S", "e0", "t", "u", "v", "m", "n", "s2", "s4", "VL", "VM", "VN", "E", "M", "card")


def refinement_rows(T: DpfType, classes) -> list[tuple]:
    rows = []
    for cls in classes:
        if cls.dpf_type is not T:
            continue
        k, c = cls.key, cls.key.counters
        rows.append(
            (T, k.species, k.e0, c.t, c.u, c.v, k.m, c.n, c.s2, c.s4, *k.state, cls.prototype, cls.cardinality)
        )
    return rows


def refinement_table(T: DpfType, classes) -> str:
    """TSV of the classes of type ``T``, one row per class."""
    lines = ["\t".join(REFINEMENT_COLUMNS)]
    lines += ["\t".join(map(str, row)) for row in refinement_rows(T, classes)]
    return "\n".join(lines) + "\n"


def prototype_table(classes) -> str:
    lines = ["no\tM\ttype\tcard"]
    for i, cls in enumerate(classes, start=1):
        lines.append(f"{i}\t{cls.prototype}\t{cls.dpf_type}\t{cls.cardinality}")
    return "\n".join(lines) + "\n"


@dataclass
class ConsistencyVerdict:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def prototype_consistency(records, classes=None) -> ConsistencyVerdict:
    """Compare computed prototypes against the flagged rows and the per-type class counts."""
    records = list(records)
    if classes is None:
        classes = group_into_classes(records)
    verdict = ConsistencyVerdict()
    computed = {c.prototype for c in classes}
    flagged = {r.D for r in records if r.is_prototype}
    if computed != flagged:
        missing = sorted(computed - flagged)
        extra = sorted(flagged - computed)
        verdict.problems.append(f"prototype set differs: unflagged {missing[:10]}, spurious {extra[:10]}")
    counts = Counter(c.dpf_type for c in classes)
    for T in TYPE_ORDER:
        if counts.get(T, 0) != EXPECTED_CLASS_COUNTS[T]:
            verdict.problems.append(
                f"type {T.symbol}: {counts.get(T, 0)} classes, expected {EXPECTED_CLASS_COUNTS[T]}"
            )
    return verdict


def classes_by_type(classes) -> dict[DpfType, list[SimilarityClass]]:
    out: dict[DpfType, list[SimilarityClass]] = defaultdict(list)
    for c in classes:
        out[c.dpf_type].append(c)
    return dict(out)
