from __future__ import annotations

import io
import sys
import threading
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from purequintic.classify import classify
from purequintic.dpf import DpfType
from purequintic.errors import InconsistentOracle, OracleUnavailable, ProtocolError, UnknownRadicand
from purequintic.oracle import (
    ArithmeticOracle,
    ExternalOracle,
    NullOracle,
    QueryKind,
    TableOracle,
    external_oracle,
    format_request,
    parse_response,
    table_oracle,
)

FAKE = [sys.executable, str(Path(__file__).parent / "fake_cas.py")]


def test_protocol_conformance(records):
    oracle = table_oracle(records)
    assert isinstance(oracle, ArithmeticOracle)
    assert isinstance(NullOracle(), ArithmeticOracle)
    assert oracle.abs_dim(6) == 3
    assert oracle.zeta_is_unit_norm(35) is True
    assert oracle.rel_dim(31) == 2


def test_table_oracle_unknown_radicand():
    oracle = TableOracle({2: DpfType.EPSILON})
    assert 2 in oracle and 3 not in oracle
    with pytest.raises(UnknownRadicand) as exc:
        oracle.abs_dim(3)
    assert isinstance(exc.value, OracleUnavailable)


def test_answer_line(records):
    oracle = table_oracle(records)
    assert oracle.answer_line("ABS 66") == "OK 3"
    assert oracle.answer_line("ZNORM 7") == "OK YES"
    assert oracle.answer_line("ZNORM 2") == "OK NO"
    assert oracle.answer_line("ABS 0") == "ERR not normalized"
    assert oracle.answer_line("ABS 4").startswith("ERR unknown")
    assert oracle.answer_line("HELLO") == "ERR malformed request"


def test_format_and_parse():
    assert format_request(QueryKind.ABS, 66) == "ABS 66\n"
    assert parse_response(QueryKind.ABS, "OK 3\n") == 3
    assert parse_response(QueryKind.ZNORM, "OK YES\n") is True
    assert parse_response(QueryKind.ZNORM, "OK NO\n") is False
    with pytest.raises(ProtocolError):
        parse_response(QueryKind.ABS, "ERR not normalized\n")
    with pytest.raises(ProtocolError):
        parse_response(QueryKind.ABS, "OK 3")  # no newline
    with pytest.raises(ProtocolError):
        parse_response(QueryKind.ZNORM, "OK 1\n")


@given(st.sampled_from(list(QueryKind)), st.text(max_size=12))
def test_fuzzed_lines_never_decode_wrongly(kind, body):
    line = body + "\n"
    try:
        value = parse_response(kind, line)
    except ProtocolError:
        return
    # only the four exact grammatical forms decode
    if kind is QueryKind.ZNORM:
        assert body == ("OK YES" if value else "OK NO")
    else:
        assert body == f"OK {value}" and 0 <= value <= 3


@given(st.sampled_from(["OK", "OK 4", "OK -1", "ok 1", " OK 1", "OK 1 ", "OK\t1", "OK 01", "OK 1\r", "YES"]))
def test_fuzz_near_misses(body):
    with pytest.raises(ProtocolError):
        parse_response(QueryKind.ABS, body + "\n")


def _pipe_oracle(responses: str) -> ExternalOracle:
    return ExternalOracle(io.StringIO(responses), io.StringIO())


def test_external_over_buffers():
    oracle = _pipe_oracle("OK 3\n")
    assert oracle.abs_dim(66) == 3
    assert oracle._writer.getvalue() == "ABS 66\n"


def test_external_rejects_bounds_violations():
    with pytest.raises(InconsistentOracle):
        _pipe_oracle("OK 0\n").abs_dim(66)
    with pytest.raises(InconsistentOracle):
        _pipe_oracle("OK 2\n").abs_dim(7)
    with pytest.raises(InconsistentOracle):
        _pipe_oracle("OK YES\n").zeta_is_unit_norm(13)


def test_external_eof_is_unavailable():
    with pytest.raises(OracleUnavailable):
        _pipe_oracle("").abs_dim(66)


def test_malformed_response_never_yields_type():
    oracle = _pipe_oracle("OK three\n")
    with pytest.raises(ProtocolError):
        classify(11, oracle)


def test_fake_process_conformance():
    with external_oracle(FAKE) as oracle:
        assert oracle.abs_dim(66) == 3
        assert oracle.zeta_is_unit_norm(7) is True
        with pytest.raises(ProtocolError):
            oracle.query(QueryKind.ABS, 0)
        with pytest.raises(InconsistentOracle):
            oracle.abs_dim(12)
        trace = classify(11, oracle)
        assert trace.final_type is DpfType.ALPHA2


def test_fake_process_garbage_and_death():
    with external_oracle(FAKE + ["garbage"]) as oracle:
        with pytest.raises(ProtocolError):
            oracle.abs_dim(66)
    with external_oracle(FAKE + ["die"]) as oracle:
        with pytest.raises(OracleUnavailable):
            oracle.abs_dim(66)


def test_replay_server_process(records):
    cmd = [sys.executable, "-m", "purequintic.replay_server"]
    with ExternalOracle.spawn(cmd) as oracle:
        for rec in records[::37]:
            assert classify(rec.D, oracle, shortcuts_enabled=False).final_type is rec.dpf_type


def test_external_serializes_threads():
    with external_oracle(FAKE) as oracle:
        results = []

        def work():
            for _ in range(20):
                results.append(oracle.abs_dim(66))

        threads = [threading.Thread(target=work) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
    assert results == [3] * 80
