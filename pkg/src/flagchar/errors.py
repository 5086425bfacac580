"""Exception types and the element budget."""

import os


class FlagcharError(Exception):
    """Base class for all errors raised by flagchar."""


# field
class NotPrime(FlagcharError, ValueError):
    pass


class ReducibleModulus(FlagcharError, ValueError):
    pass


class UnsupportedSize(FlagcharError, ValueError):
    pass


class DivisionByZero(FlagcharError, ZeroDivisionError):
    pass


class FieldMismatch(FlagcharError, ValueError):
    pass


class PrimeMismatch(FlagcharError, ValueError):
    pass


# combinat
class NotRowStandard(FlagcharError, ValueError):
    pass


class NotNested(FlagcharError, ValueError):
    pass


class NotNegativeRoot(FlagcharError, ValueError):
    pass


class NotMain(FlagcharError, ValueError):
    pass


class DoesNotFit(FlagcharError, ValueError):
    pass


class NotTwoPart(FlagcharError, ValueError):
    pass


# pattern / monomial
class NotClosed(FlagcharError, ValueError):
    pass


class DimensionMismatch(FlagcharError, ValueError):
    pass


class HypothesisViolated(FlagcharError, ValueError):
    pass


class PositionNotInK(FlagcharError, ValueError):
    pass


class ContextNotFull(FlagcharError, ValueError):
    pass


class ContextMismatch(FlagcharError, ValueError):
    pass


class VergeCountViolation(FlagcharError, AssertionError):
    pass


class NonIntegralSum(FlagcharError, ArithmeticError):
    pass


class NotVerge(FlagcharError, ValueError):
    pass


# flags
class Singular(FlagcharError, ValueError):
    pass


# analysis
class CheckFailed(FlagcharError, AssertionError):
    def __init__(self, check, detail=""):
        self.check = check
        super().__init__(f"{check}: {detail}" if detail else check)


class TooLarge(FlagcharError):
    """A cardinality exceeded its budget."""

    def __init__(self, what, size, limit):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what} has {size} elements, budget is {limit}")


DEFAULT_BUDGET = 2**20
# hard cap for raw enumeration of groups and label spaces
ENUMERATION_CAP = 2**22


def budget():
    """Element budget for analysis runs; FLAGCHAR_BUDGET overrides the default."""
    raw = os.environ.get("FLAGCHAR_BUDGET")
    if raw:
        return int(raw)
    return DEFAULT_BUDGET


def check_size(what, size, limit=None):
    if limit is None:
        limit = budget()
    if size > limit:
        raise TooLarge(what, size, limit)
    return size
