"""Arithmetic oracles answering the four expensive queries of the classifier.

``ABS``, ``INT`` and ``REL`` ask for the F_5-dimensions of the absolute,
intermediate and relative principal factor spaces; ``ZNORM`` asks whether the
fifth root of unity is the relative norm of a unit.

External processes speak a newline-delimited protocol::

    -> ABS 66
    <- OK 3
    -> ZNORM 7
    <- OK YES
    -> ABS 0
    <- ERR not normalized
"""

from __future__ import annotations

import re
import shlex
import subprocess
import threading
from enum import Enum
from typing import IO, Iterable, Protocol, runtime_checkable

from .conductor import profile
from .dpf import ZETA_NORM_TYPES, DpfType, dimension_bounds, signature_from_type
from .errors import InconsistentOracle, OracleUnavailable, ProtocolError, UnknownRadicand


class QueryKind(Enum):
    ABS = "ABS"
    INT = "INT"
    REL = "REL"
    ZNORM = "ZNORM"


@runtime_checkable
class ArithmeticOracle(Protocol):
    def abs_dim(self, D: int) -> int: ...

    def int_dim(self, D: int) -> int: ...

    def rel_dim(self, D: int) -> int: ...

    def zeta_is_unit_norm(self, D: int) -> bool: ...


def ask(oracle: ArithmeticOracle, kind: QueryKind, D: int) -> int | bool:
    if kind is QueryKind.ABS:
        return oracle.abs_dim(D)
    if kind is QueryKind.INT:
        return oracle.int_dim(D)
    if kind is QueryKind.REL:
        return oracle.rel_dim(D)
    return oracle.zeta_is_unit_norm(D)


def check_answer(kind: QueryKind, D: int, answer: int | bool) -> None:
    """Raise :class:`InconsistentOracle` if ``answer`` violates the dimension bounds of ``D``."""
    if kind is QueryKind.ZNORM:
        if profile(D).counters.v >= 1:
            raise InconsistentOracle(f"ZNORM is meaningless for D={D}: a restrictive prime divides f")
        return
    p = profile(D)
    Amax, Imax, Rmax = dimension_bounds(p.counters, p.species)
    lo, hi = {QueryKind.ABS: (1, Amax), QueryKind.INT: (0, Imax), QueryKind.REL: (0, Rmax)}[kind]
    if not lo <= answer <= hi:
        raise InconsistentOracle(
            f"{kind.value} {D} answered {answer}, outside bounds {lo}..{hi}"
        )


class NullOracle:
    """Oracle that can answer nothing; restricts classification to rational rules."""

    def _fail(self, kind: QueryKind, D: int):
        raise OracleUnavailable(kind.value, D, "no oracle configured")

    def abs_dim(self, D: int) -> int:
        self._fail(QueryKind.ABS, D)

    def int_dim(self, D: int) -> int:
        self._fail(QueryKind.INT, D)

    def rel_dim(self, D: int) -> int:
        self._fail(QueryKind.REL, D)

    def zeta_is_unit_norm(self, D: int) -> bool:
        self._fail(QueryKind.ZNORM, D)


class TableOracle:
    """Replays dimensions decoded from recorded DPF types.

    Types and signatures are in bijection, so ``(A, I, R)`` and the zeta-norm bit follow from
    the type alone. Immutable and safe to share between threads.
    """

    def __init__(self, types: dict[int, DpfType]):
        self._types = dict(types)

    @classmethod
    def from_records(cls, records: Iterable) -> TableOracle:
        return cls({r.D: r.dpf_type for r in records})

    def __contains__(self, D: int) -> bool:
        return D in self._types

    def _type(self, kind: QueryKind, D: int) -> DpfType:
        try:
            return self._types[D]
        except KeyError:
            raise UnknownRadicand(kind.value, D, "not in table") from None

    def abs_dim(self, D: int) -> int:
        return signature_from_type(self._type(QueryKind.ABS, D)).A

    def int_dim(self, D: int) -> int:
        return signature_from_type(self._type(QueryKind.INT, D)).I

    def rel_dim(self, D: int) -> int:
        return signature_from_type(self._type(QueryKind.REL, D)).R

    def zeta_is_unit_norm(self, D: int) -> bool:
        return self._type(QueryKind.ZNORM, D) in ZETA_NORM_TYPES

    def answer_line(self, request: str) -> str:
        """Serve one protocol request line; used by the replay server."""
        parts = request.split()
        if len(parts) != 2 or parts[0] not in QueryKind.__members__:
            return "ERR malformed request"
        if not re.fullmatch(r"\d+", parts[1]) or int(parts[1]) < 2:
            return "ERR not normalized"
        kind, D = QueryKind(parts[0]), int(parts[1])
        try:
            ans = ask(self, kind, D)
        except UnknownRadicand:
            return f"ERR unknown radicand {D}"
        if kind is QueryKind.ZNORM:
            return "OK YES" if ans else "OK NO"
        return f"OK {ans}"


_OK_DIM = re.compile(r"OK ([0-3])")
_OK_BOOL = re.compile(r"OK (YES|NO)")


def format_request(kind: QueryKind, D: int) -> str:
    return f"{kind.value} {D}\n"


def parse_response(kind: QueryKind, line: str) -> int | bool:
    """Decode one response line; anything off-grammar raises :class:`ProtocolError`."""
    if not line.endswith("\n"):
        raise ProtocolError(f"truncated response {line!r}")
    body = line[:-1]
    if body.startswith("ERR ") or body == "ERR":
        raise ProtocolError(f"{kind.value}: oracle reported error: {body[4:]}")
    if kind is QueryKind.ZNORM:
        m = _OK_BOOL.fullmatch(body)
        if not m:
            raise ProtocolError(f"bad ZNORM response {body!r}")
        return m.group(1) == "YES"
    m = _OK_DIM.fullmatch(body)
    if not m:
        raise ProtocolError(f"bad {kind.value} response {body!r}")
    return int(m.group(1))


class ExternalOracle:
    """Client for an external computer-algebra process speaking the line protocol.

    Requests are serialized over the single pipe; the instance may be shared
    between threads. Use as a context manager to reap the child process.
    """

    def __init__(self, reader: IO[str], writer: IO[str], process: subprocess.Popen | None = None):
        self._reader = reader
        self._writer = writer
        self._process = process
        self._lock = threading.Lock()

    @classmethod
    def spawn(cls, command: str | list[str]) -> ExternalOracle:
        argv = shlex.split(command) if isinstance(command, str) else list(command)
        proc = subprocess.Popen(
            argv,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            encoding="utf-8",
            bufsize=1,
        )
        return cls(proc.stdout, proc.stdin, proc)

    def query(self, kind: QueryKind, D: int) -> int | bool:
        with self._lock:
            try:
                self._writer.write(format_request(kind, D))
                self._writer.flush()
                line = self._reader.readline()
            except (BrokenPipeError, OSError, ValueError) as exc:
                raise OracleUnavailable(kind.value, D, f"pipe closed ({exc})") from exc
        if line == "":
            raise OracleUnavailable(kind.value, D, "process exited")
        answer = parse_response(kind, line)
        check_answer(kind, D, answer)
        return answer

    def abs_dim(self, D: int) -> int:
        return self.query(QueryKind.ABS, D)

    def int_dim(self, D: int) -> int:
        return self.query(QueryKind.INT, D)

    def rel_dim(self, D: int) -> int:
        return self.query(QueryKind.REL, D)

    def zeta_is_unit_norm(self, D: int) -> bool:
        return self.query(QueryKind.ZNORM, D)

    def close(self) -> None:
        if self._process is None:
            return
        for stream in (self._process.stdin, self._process.stdout):
            try:
                stream.close()
            except OSError:
                pass
        try:
            self._process.wait(timeout=5)
        except subprocess.TimeoutExpired:
            self._process.kill()
            self._process.wait()
        self._process = None

    def __enter__(self) -> ExternalOracle:
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def table_oracle(records) -> TableOracle:
    return TableOracle.from_records(records)


def external_oracle(command: str | list[str]) -> ExternalOracle:
    return ExternalOracle.spawn(command)
