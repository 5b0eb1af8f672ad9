"""Serve the line protocol from the shipped table on stdin/stdout.

    python3 -m purequintic.replay_server [dataset.tsv]

Useful as a stand-in for a real computer algebra backend.
"""

from __future__ import annotations

import sys

from .dataset import load_dataset
from .oracle import TableOracle


def serve(oracle: TableOracle, stdin=sys.stdin, stdout=sys.stdout) -> None:
    for line in stdin:
        stdout.write(oracle.answer_line(line.rstrip("\n")) + "\n")
        stdout.flush()


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    records = load_dataset(argv[0] if argv else None, expected_count=None)
    serve(TableOracle.from_records(records))
    return 0


if __name__ == "__main__":
    sys.exit(main())
