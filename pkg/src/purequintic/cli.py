"""Command line front end.

Every subcommand prints space-separated ``key=value`` pairs or TSV. Exit codes:
0 on success, 1 on validation failure or a missing oracle answer, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import sys

from .arith import normalize_radicand
from .classify import classify
from .conductor import enumerate_multiplet, profile
from .dataset import counts_by_prime_count, load_dataset, prime_count_tsv, statistics, validate
from .dpf import DpfType
from .errors import InconsistentOracle, OracleUnavailable, ParseError, QuinticError
from .oracle import NullOracle, TableOracle, external_oracle
from .similarity import group_into_classes, prototype_table, refinement_table


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _radicand(text: str) -> int:
    try:
        D = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if D < 2:
        raise argparse.ArgumentTypeError(f"radicand must be >= 2, got {D}")
    return D


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="purequintic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("normalize", help="minimal radicand of the normalization class")
    s.add_argument("D", type=_radicand)

    s = sub.add_parser("conductor", help="species, factored f^4, counters and multiplicity")
    s.add_argument("D", type=_radicand)

    s = sub.add_parser("multiplet", help="all radicands sharing the conductor of D")
    s.add_argument("D", type=_radicand)

    s = sub.add_parser("classify", help="DPF type of D")
    s.add_argument("D", type=_radicand)
    s.add_argument("--oracle", default="none", help="table:<path>, table (shipped data), extern:<cmd> or none")
    s.add_argument("--no-shortcuts", action="store_true", help="skip the conductor family rules")

    s = sub.add_parser("validate", help="check a dataset against every derivable relation")
    s.add_argument("path", nargs="?", help="dataset TSV; defaults to the shipped table")
    s.add_argument("--raw", action="store_true", help="do not correct the known misprints")

    s = sub.add_parser("stats", help="type frequencies")
    s.add_argument("path", nargs="?")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--by-century", action="store_true", help="cumulative counts per century (default)")
    g.add_argument("--by-primes", action="store_true", help="counts by number of primes dividing f")

    s = sub.add_parser("prototypes", help="similarity classes and prototypes")
    s.add_argument("path", nargs="?")
    s.add_argument("--type", dest="dpf_type", help="restrict to one DPF type and print its refinement table")
    return p


def _open_oracle(spec: str):
    if spec == "none":
        return NullOracle()
    if spec == "table":
        return TableOracle.from_records(load_dataset())
    if spec.startswith("table:"):
        return TableOracle.from_records(load_dataset(spec[6:], expected_count=None))
    if spec.startswith("extern:"):
        return external_oracle(spec[7:])
    raise UsageError(f"unknown oracle {spec!r}")


def _cmd_normalize(args, out) -> int:
    Dstar, k = normalize_radicand(args.D)
    print(f"Dstar={Dstar} k={k}", file=out)
    return 0


def _cmd_conductor(args, out) -> int:
    prof = profile(normalize_radicand(args.D)[0])
    c = prof.counters
    print(
        f"species={prof.species} f4={prof.f4_text()} t={c.t} u={c.u} v={c.v} "
        f"n={c.n} s2={c.s2} s4={c.s4} m={prof.multiplicity}",
        file=out,
    )
    return 0


def _cmd_multiplet(args, out) -> int:
    prof = profile(normalize_radicand(args.D)[0])
    print(" ".join(map(str, enumerate_multiplet(prof))), file=out)
    return 0


def _cmd_classify(args, out) -> int:
    D = normalize_radicand(args.D)[0]
    oracle = _open_oracle(args.oracle)
    try:
        trace = classify(D, oracle, shortcuts_enabled=not args.no_shortcuts)
    finally:
        close = getattr(oracle, "close", None)
        if close is not None:
            close()
    print(trace.summary(), file=out)
    if trace.oracle_queries:
        queries = " ".join(
            f"{k.value}={'YES' if a is True else 'NO' if a is False else a}" for k, a in trace.oracle_queries
        )
        print(f"queries: {queries}", file=out)
    return 0


def _cmd_validate(args, out) -> int:
    records = load_dataset(args.path, expected_count=None, apply_errata=not args.raw)
    report = validate(records)
    print(report, file=out)
    return 0 if report.ok else 1


def _cmd_stats(args, out) -> int:
    records = load_dataset(args.path, expected_count=None)
    if args.by_primes:
        out.write(prime_count_tsv(counts_by_prime_count(records)))
    else:
        out.write(statistics(records).to_tsv())
    return 0


def _cmd_prototypes(args, out) -> int:
    classes = group_into_classes(load_dataset(args.path, expected_count=None))
    if args.dpf_type:
        try:
            T = DpfType.parse(args.dpf_type)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        out.write(refinement_table(T, classes))
    else:
        out.write(prototype_table(classes))
    return 0


_COMMANDS = {
    "normalize": _cmd_normalize,
    "conductor": _cmd_conductor,
    "multiplet": _cmd_multiplet,
    "classify": _cmd_classify,
    "validate": _cmd_validate,
    "stats": _cmd_stats,
    "prototypes": _cmd_prototypes,
}


def run(argv, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except OracleUnavailable as exc:
        print(f"error: {exc}; rerun with --oracle table or extern:<cmd>", file=err)
        return 1
    except (InconsistentOracle, ParseError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    except QuinticError as exc:
        print(f"usage error: {exc}", file=err)
        return 2


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)
