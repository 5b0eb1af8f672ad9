"""The table of all 900 pure metacyclic fields with normalized radicand below 1000.

The shipped TSV has one header line and the columns::

    no D species m VL VM VN E flags type pf proto nonelem

``flags`` is four characters over ``- x p o`` (absent, enabled, partially used,
fully used) for the positions 1, 2, 4, 5. ``pf`` is the principal factor
column, kept verbatim and never interpreted.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from importlib import resources
from pathlib import Path

from .arith import factorize, is_normalized, normalized_radicands
from .classify import Verdict, multiplet_type_pattern_check, theorem_family_types
from .conductor import ConductorProfile, Species, profile
from .dpf import (
    TYPE_ORDER,
    ZETA_NORM_TYPES,
    DpfType,
    StateVector,
    admissible_types,
    dimension_bounds,
    index_pairs_for_type,
    signature_from_type,
)
from .errors import CountMismatch, DegenerateRadicand, DuplicateRadicand, ParseError

COLUMNS = ("no", "D", "species", "m", "VL", "VM", "VN", "E", "flags", "type", "pf", "proto", "nonelem")
SHIPPED_COUNT = 900
BOUND = 1000

#: Abelian type invariants of the non-elementary 5-class groups, per field L, M, N.
NONELEMENTARY = {
    259: {"N": (25, 5, 5, 5)},
    281: {"M": (25, 5, 5, 5), "N": (25,) + (5,) * 7},
    465: {"N": (25,) + (5,) * 5},
    473: {"N": (25,) + (5,) * 5},
    502: {"L": (25,), "M": (25, 5, 5), "N": (25,) + (5,) * 6},
    590: {"N": (25,) + (5,) * 5},
    620: {"M": (25, 5, 5), "N": (25, 25) + (5,) * 4},
    955: {"L": (25,), "M": (25, 5), "N": (25,) + (5,) * 4},
}


def abelian_type_text(D: int) -> str | None:
    groups = NONELEMENTARY.get(D)
    if groups is None:
        return None
    return ";".join(f"{F}=" + ",".join(map(str, groups[F])) for F in "LMN" if F in groups)


class Flag(Enum):
    ABSENT = "-"
    ENABLED = "x"
    PARTIAL = "p"
    FULL = "o"

    @property
    def present(self) -> bool:
        return self is not Flag.ABSENT


@dataclass(frozen=True)
class FlagQuartet:
    c1: Flag
    c2: Flag
    c4: Flag
    c5: Flag

    @classmethod
    def parse(cls, text: str) -> FlagQuartet:
        if len(text) != 4:
            raise ValueError(f"flag quartet needs 4 characters, got {text!r}")
        return cls(*(Flag(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(f.value for f in (self.c1, self.c2, self.c4, self.c5))


@dataclass(frozen=True)
class FieldRecord:
    index: int
    D: int
    species: Species
    m: int
    state: StateVector
    flags: FlagQuartet
    dpf_type: DpfType
    principal_factors: str = ""
    is_prototype: bool = False
    nonelementary: bool = False

    @property
    def profile(self) -> ConductorProfile:
        return profile(self.D)

    @property
    def abelian_type(self) -> str | None:
        return abelian_type_text(self.D) if self.nonelementary else None

    def to_row(self) -> str:
        st = self.state
        cells = (
            self.index, self.D, self.species, self.m, st.V_L, st.V_M, st.V_N, st.E,
            self.flags, self.dpf_type, self.principal_factors,
            int(self.is_prototype), int(self.nonelementary),
        )
        return "\t".join(map(str, cells))


def _int(text: str, line: int, name: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(line, f"column {name}: not an integer: {text!r}") from None


def _bit(text: str, line: int, name: str) -> bool:
    if text not in ("0", "1"):
        raise ParseError(line, f"column {name}: expected 0 or 1, got {text!r}")
    return text == "1"


def parse_record(row: str, line: int = 0) -> FieldRecord:
    cells = row.split("\t")
    if len(cells) != len(COLUMNS):
        raise ParseError(line, f"expected {len(COLUMNS)} columns, got {len(cells)}")
    v = dict(zip(COLUMNS, cells))
    try:
        species = Species.parse(v["species"])
    except ValueError:
        raise ParseError(line, f"bad species {v['species']!r}") from None
    try:
        flags = FlagQuartet.parse(v["flags"])
    except ValueError as exc:
        raise ParseError(line, str(exc)) from None
    try:
        dpf_type = DpfType(v["type"])
    except ValueError:
        raise ParseError(line, f"bad type {v['type']!r}") from None
    state = StateVector(*(_int(v[k], line, k) for k in ("VL", "VM", "VN", "E")))
    return FieldRecord(
        index=_int(v["no"], line, "no"),
        D=_int(v["D"], line, "D"),
        species=species,
        m=_int(v["m"], line, "m"),
        state=state,
        flags=flags,
        dpf_type=dpf_type,
        principal_factors=v["pf"],
        is_prototype=_bit(v["proto"], line, "proto"),
        nonelementary=_bit(v["nonelem"], line, "nonelem"),
    )


def parse_dataset(text: str, expected_count: int | None = SHIPPED_COUNT) -> list[FieldRecord]:
    """Parse a TSV document into records in ascending radicand order.

    Row numbers must run 1, 2, 3, ... without gaps and radicands must strictly
    increase. Pass ``expected_count=None`` to accept any number of rows.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    records: list[FieldRecord] = []
    if lines:
        if tuple(lines[0].split("\t")) != COLUMNS:
            raise ParseError(1, "missing or malformed header")
        seen: set[int] = set()
        for lineno, row in enumerate(lines[1:], start=2):
            rec = parse_record(row, lineno)
            if rec.D in seen:
                raise DuplicateRadicand(f"line {lineno}: D={rec.D} appears twice")
            if rec.index != len(records) + 1:
                raise ParseError(lineno, f"row number {rec.index}, expected {len(records) + 1}")
            if records and rec.D <= records[-1].D:
                raise ParseError(lineno, f"D={rec.D} out of ascending order")
            seen.add(rec.D)
            records.append(rec)
    if expected_count is not None and len(records) != expected_count:
        raise CountMismatch(f"expected {expected_count} records, found {len(records)}")
    return records


def serialize_dataset(records) -> str:
    return "\t".join(COLUMNS) + "\n" + "".join(r.to_row() + "\n" for r in records)


def shipped_path() -> Path:
    return Path(str(resources.files("purequintic") / "data" / "fields.tsv"))


def shipped_text() -> str:
    return resources.files("purequintic").joinpath("data/fields.tsv").read_text(encoding="utf-8")


@dataclass(frozen=True)
class Erratum:
    D: int
    column: str
    printed: object
    corrected: object
    reason: str


#: Known misprints in the table. The TSV keeps the printed values.
ERRATA = (
    Erratum(549, "m", 3, 1, "species 2 with t=2, u=0 has m=X_1=1; the conductor column 3^4 61^4 agrees"),
    Erratum(549, "is_prototype", False, True, "its key (species 2, m=1, state (2,2,4;1)) occurs nowhere else"),
    Erratum(982, "is_prototype", True, False, "shares its key with 82, 93, 99, ... all smaller"),
)


def apply_errata(records, errata=ERRATA) -> list[FieldRecord]:
    """Replace known misprints; rows not holding the printed value are left alone."""
    fixes: dict[int, list[Erratum]] = defaultdict(list)
    for e in errata:
        fixes[e.D].append(e)
    out = []
    for rec in records:
        for e in fixes.get(rec.D, ()):
            if getattr(rec, e.column) == e.printed:
                rec = replace(rec, **{e.column: e.corrected})
        out.append(rec)
    return out


# ``load_dataset`` shadows the name with its flag
_apply = apply_errata


def load_dataset(
    path: str | Path | None = None,
    expected_count: int | None = SHIPPED_COUNT,
    apply_errata: bool = True,
) -> list[FieldRecord]:
    text = shipped_text() if path is None else Path(path).read_text(encoding="utf-8")
    records = parse_dataset(text, expected_count)
    return _apply(records) if apply_errata else records



# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    check: str
    row: int | None
    D: int | None
    detail: str

    def __str__(self) -> str:
        where = f" row {self.row}" if self.row is not None else ""
        subject = f" (D={self.D})" if self.D is not None else ""
        return f"{self.check}{where}{subject}: {self.detail}"


@dataclass
class ValidationReport:
    records: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, check: str, rec: FieldRecord | None, detail: str) -> None:
        self.violations.append(
            Violation(check, rec.index if rec else None, rec.D if rec else None, detail)
        )

    def checks(self) -> set[str]:
        return {v.check for v in self.violations}

    def __str__(self) -> str:
        head = f"{self.records} records, {len(self.violations)} violations"
        return "\n".join([head] + [str(v) for v in self.violations])


def _flag_checks(rec: FieldRecord, prof: ConductorProfile, report: ValidationReport) -> None:
    c, fl = prof.counters, rec.flags
    expect_c1 = c.s2 == 0 and c.s4 == 0 and c.v >= 1
    if fl.c1.present != expect_c1:
        report.add("flags c1", rec, f"flag {fl.c1.value}, expected {'present' if expect_c1 else 'absent'}")
    if fl.c1.present and rec.dpf_type not in (DpfType.GAMMA, DpfType.EPSILON):
        report.add("flags c1 type", rec, f"type {rec.dpf_type.symbol} with component 1 set")
    if fl.c2.present != (c.s2 > 0):
        report.add("flags c2", rec, f"flag {fl.c2.value} but s2={c.s2}")
    if fl.c4.present != (c.s4 > 0):
        report.add("flags c4", rec, f"flag {fl.c4.value} but s4={c.s4}")
    if fl.c5.present != (c.v == 0):
        report.add("flags c5", rec, f"flag {fl.c5.value} but v={c.v}")
    if fl.c5.present:
        full = fl.c5 is Flag.FULL
        if full != (rec.dpf_type in ZETA_NORM_TYPES):
            report.add("flags c5 type", rec, f"flag {fl.c5.value} with type {rec.dpf_type.symbol}")
        if fl.c5 is Flag.PARTIAL:
            report.add("flags c5", rec, "component 5 cannot be partially used")


def validate_record(rec: FieldRecord, report: ValidationReport) -> None:
    try:
        normalized = is_normalized(rec.D)
    except (ValueError, DegenerateRadicand):
        normalized = False
    if not normalized:
        report.add("normalization", rec, f"D={rec.D} is not a normalized radicand")
        return
    prof = profile(rec.D)
    c, S = prof.counters, prof.species
    if rec.species is not S:
        report.add("species", rec, f"recorded {rec.species}, computed {S}")
    if rec.m != prof.multiplicity:
        report.add("multiplicity", rec, f"recorded m={rec.m}, computed {prof.multiplicity}")
    st = rec.state
    if not st.e_relation_holds():
        report.add("E-relation", rec, f"E={st.E} but 5+V_N-4*V_L={5 + st.V_N - 4 * st.V_L}")
    pair = (st.E, st.E_plus)
    if pair == (0, 0):
        report.add("index pair", rec, "(E,E+)=(0,0) cannot occur")
    if pair not in index_pairs_for_type(rec.dpf_type):
        report.add("index pair", rec, f"(E,E+)={pair} not listed for type {rec.dpf_type.symbol}")
    sig = signature_from_type(rec.dpf_type)
    if sig.U + 1 != sig.A + sig.I + sig.R:
        report.add("unit norm relation", rec, f"U+1 != A+I+R for {sig}")
    Amax, Imax, Rmax = dimension_bounds(c, S)
    for name, val, hi in (("A", sig.A, Amax), ("I", sig.I, Imax), ("R", sig.R, Rmax)):
        if val > hi:
            report.add("dimension bounds", rec, f"{name}={val} > {hi}")
    prime = factorize(rec.D).is_prime()
    if rec.dpf_type not in admissible_types(c, S, prime):
        check = "admissible_types (prime radicand)" if prime else "admissible_types"
        report.add(check, rec, f"type {rec.dpf_type.symbol} not admissible")
    if prime and rec.dpf_type in (DpfType.ALPHA3, DpfType.GAMMA, DpfType.ETA):
        report.add("prime radicand type", rec, f"type {rec.dpf_type.symbol} never occurs for primes")
    _flag_checks(rec, prof, report)
    if rec.nonelementary:
        groups = NONELEMENTARY.get(rec.D, {})
        vals = {"L": st.V_L, "M": st.V_M, "N": st.V_N}
        for F, inv in groups.items():
            log5 = sum({5: 1, 25: 2}[x] for x in inv)
            if log5 != vals[F]:
                report.add("non-elementary", rec, f"Cl_5({F}) of type {inv} has V_{F}={log5}, recorded {vals[F]}")


def validate(records, bound: int = BOUND) -> ValidationReport:
    """Check every relation derivable without number field arithmetic.

    Violations are collected, never raised.
    """
    records = list(records)
    report = ValidationReport(records=len(records))
    for rec in records:
        validate_record(rec, report)

    present = {r.D for r in records}
    expected = set(normalized_radicands(bound))
    missing = sorted(expected - present)
    extra = sorted(D for D in present - expected if D < bound)
    if missing:
        report.add("coverage", None, f"{len(missing)} normalized radicands missing, first {missing[:5]}")
    if extra:
        report.add("coverage", None, f"unexpected radicands {extra[:5]}")

    flagged = {r.D for r in records if r.nonelementary}
    if flagged != set(NONELEMENTARY):
        report.add(
            "non-elementary", None,
            f"flagged {sorted(flagged)}, expected {sorted(NONELEMENTARY)}",
        )

    _multiplet_checks(records, report)

    from .similarity import prototype_consistency

    verdict = prototype_consistency(records)
    for problem in verdict.problems:
        report.add("prototypes", None, problem)
    return report


def _multiplet_checks(records, report: ValidationReport) -> None:
    by_conductor: dict[tuple, list[FieldRecord]] = defaultdict(list)
    for rec in records:
        try:
            prof = profile(rec.D)
        except ValueError:
            continue
        by_conductor[(prof.species, prof.primes)].append(rec)
    for members in by_conductor.values():
        prof = profile(members[0].D)
        if theorem_family_types(prof) is None or len(members) != prof.multiplicity:
            continue
        verdict = multiplet_type_pattern_check(prof, [r.dpf_type for r in members])
        if verdict is Verdict.MISMATCH:
            types = ",".join(r.dpf_type.symbol for r in members)
            report.add("multiplet pattern", members[0], f"conductor {prof.f4_text()} has types ({types})")


# ---------------------------------------------------------------------------
# statistics

CENTURY_EDGES = tuple(range(100, 1001, 100))
TOP_TYPES = (DpfType.ALPHA2, DpfType.BETA2, DpfType.GAMMA, DpfType.DELTA2, DpfType.EPSILON)


@dataclass(frozen=True)
class FrequencyTable:
    edges: tuple[int, ...]
    counts: dict[DpfType, tuple[int, ...]]
    totals: tuple[int, ...]
    percentages: dict[DpfType, Decimal]

    def final(self, T: DpfType) -> int:
        return self.counts[T][-1]

    def to_tsv(self, percent_types=TOP_TYPES) -> str:
        head = ["type"] + [str(e) for e in self.edges] + ["%"]
        lines = ["\t".join(head)]
        for T in TYPE_ORDER:
            pct = str(self.percentages[T]) if T in percent_types else ""
            lines.append("\t".join([T.value] + [str(x) for x in self.counts[T]] + [pct]))
        total_pct = percent(self.totals[-1], self.totals[-1]) if self.totals[-1] else Decimal(0)
        lines.append("\t".join(["total"] + [str(x) for x in self.totals] + [str(total_pct)]))
        return "\n".join(lines) + "\n"


def percent(part: int, whole: int) -> Decimal:
    """``100 * part / whole`` rounded half-up to one decimal."""
    return (Decimal(100 * part) / Decimal(whole)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)


def statistics(records, century_edges=CENTURY_EDGES) -> FrequencyTable:
    """Cumulative type counts for ``D < edge`` and percentages over all records."""
    records = list(records)
    counts = {}
    for T in TYPE_ORDER:
        counts[T] = tuple(sum(1 for r in records if r.dpf_type is T and r.D < e) for e in century_edges)
    totals = tuple(sum(1 for r in records if r.D < e) for e in century_edges)
    n = len(records)
    pct = {T: percent(sum(1 for r in records if r.dpf_type is T), n) for T in TYPE_ORDER}
    return FrequencyTable(tuple(century_edges), counts, totals, pct)


def counts_by_prime_count(records) -> dict[int, Counter]:
    """Per-type tallies keyed by the number ``T`` of primes dividing the conductor."""
    out: dict[int, Counter] = defaultdict(Counter)
    for r in records:
        out[profile(r.D).T][r.dpf_type] += 1
    return dict(sorted(out.items()))


def prime_count_tsv(tallies: dict[int, Counter]) -> str:
    lines = ["\t".join(["T"] + [t.value for t in TYPE_ORDER] + ["total", "% gamma"])]
    for T, tally in tallies.items():
        total = sum(tally.values())
        row = [str(T)] + [str(tally.get(t, 0)) for t in TYPE_ORDER]
        row += [str(total), str(percent(tally.get(DpfType.GAMMA, 0), total))]
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


__all__ = [
    "COLUMNS", "ERRATA", "NONELEMENTARY", "Erratum", "FieldRecord", "Flag", "FlagQuartet",
    "FrequencyTable", "ValidationReport", "Violation", "abelian_type_text", "apply_errata",
    "counts_by_prime_count", "load_dataset", "parse_dataset", "parse_record", "percent",
    "prime_count_tsv", "serialize_dataset", "shipped_path", "statistics", "validate",
]
