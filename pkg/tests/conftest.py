from __future__ import annotations

import csv
from pathlib import Path

import pytest

from purequintic.dataset import load_dataset
from purequintic.similarity import group_into_classes

DATA = Path(__file__).parent / "data"

# criterion number -> (title, passed); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def read_tsv(name: str) -> list[dict]:
    with open(DATA / name, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh, delimiter="\t"))


@pytest.fixture(scope="session")
def records():
    return load_dataset()


@pytest.fixture(scope="session")
def raw_records():
    return load_dataset(apply_errata=False)


@pytest.fixture(scope="session")
def by_D(records):
    return {r.D: r for r in records}


@pytest.fixture(scope="session")
def classes(records):
    return group_into_classes(records)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
