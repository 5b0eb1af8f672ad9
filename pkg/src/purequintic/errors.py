"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class QuinticError(Exception):
    """Base class for every error raised by this package."""


# arith

class NotFifthPowerFree(QuinticError, ValueError):
    def __init__(self, prime: int, exponent: int):
        super().__init__(f"prime {prime} occurs with exponent {exponent} >= 5")
        self.prime = prime
        self.exponent = exponent


class DegenerateRadicand(QuinticError, ValueError):
    pass


class NotPrime(QuinticError, ValueError):
    pass


# conductor

class InvalidCounters(QuinticError, ValueError):
    pass


class TooManyPrimes(QuinticError, ValueError):
    pass


# dpf

class NoSuchSignature(QuinticError, KeyError):
    pass


# classify / oracle

class OracleUnavailable(QuinticError):
    def __init__(self, kind: str, radicand: int | None = None, reason: str = ""):
        msg = f"oracle cannot answer {kind}"
        if radicand is not None:
            msg += f" for D={radicand}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.kind = kind
        self.radicand = radicand


class UnknownRadicand(OracleUnavailable):
    pass


class InconsistentOracle(QuinticError):
    pass


class ProtocolError(QuinticError):
    pass


class LengthMismatch(QuinticError, ValueError):
    pass


# dataset

class ParseError(QuinticError, ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateRadicand(QuinticError, ValueError):
    pass


class CountMismatch(QuinticError, ValueError):
    pass
