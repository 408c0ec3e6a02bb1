"""
Error Types
Exception hierarchy shared by every core module
"""

from typing import Optional, Tuple


class PointlikeError(Exception):
    """Base class for all errors raised by the core package"""


class CayleyFormatError(PointlikeError, ValueError):
    """Malformed Cayley table text"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AssociativityError(CayleyFormatError):
    """A Cayley table that fails associativity"""

    def __init__(self, triple: Tuple[int, int, int]):
        self.triple = triple
        x, y, z = triple
        super().__init__(f"table is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")


class AmbientMismatchError(PointlikeError, ValueError):
    """Subsets or complexes over different semigroups were combined"""


class GuardExceededError(PointlikeError, RuntimeError):
    """A configured size guard tripped"""

    def __init__(self, guard: str, limit: int, observed: int):
        self.guard = guard
        self.limit = limit
        self.observed = observed
        super().__init__(f"{guard} exceeded: {observed} > {limit}")


class InvariantViolationError(PointlikeError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input"""
