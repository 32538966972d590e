"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the front end can
translate exceptions without a lookup table.
"""

from __future__ import annotations


class WorkbenchError(Exception):
    exit_code = 1


class InputError(WorkbenchError):
    exit_code = 2


class ParseError(InputError):
    pass


class ValidationError(InputError):
    pass


class UnknownId(InputError):
    pass


class ResourceCapExceeded(WorkbenchError):
    exit_code = 3


class OrderCapExceeded(ResourceCapExceeded):
    pass


class ClosureCapExceeded(ResourceCapExceeded):
    pass


class BruteForceCapExceeded(ResourceCapExceeded):
    pass


class TupleCapExceeded(ResourceCapExceeded):
    pass


class ZeroInverse(WorkbenchError, ZeroDivisionError):
    pass


class ContextMismatch(WorkbenchError):
    pass


class NotInvertible(WorkbenchError):
    pass


class ShapeError(WorkbenchError):
    pass


class OrderNotInContext(WorkbenchError):
    pass


class NotAPGroup(WorkbenchError):
    pass


class NotASubset(WorkbenchError):
    pass


class NotNormal(WorkbenchError):
    pass


class NotUnimodular(WorkbenchError):
    pass


class ZeroPolynomial(WorkbenchError):
    pass
