"""
errors.py - Exception hierarchy for cavity computations and sweeps

Every error carries a stable ``code`` (the class name) so that sweep rows and
the command line can report failures in a machine-readable way. Input errors
are also ``ValueError``s, numerical failures are ``ArithmeticError``s and sink
failures are ``OSError``s, so callers can catch them by their usual family.
"""

from typing import Any, Dict, List, Sequence


class CavityError(Exception):
    """Base class of all errors raised by this project."""

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details: Dict[str, Any] = dict(details)

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable form used by the CLI error line."""
        payload: Dict[str, Any] = {'error': self.code, 'message': str(self)}
        if self.details:
            payload['details'] = {key: self.details[key] for key in sorted(self.details)}
        return payload


# Geometry and configuration

class AngleOutOfRange(CavityError, ValueError):
    pass


class NonPositiveDimension(CavityError, ValueError):
    pass


class DegenerateTriangle(CavityError, ValueError):
    pass


class PointOutsideWing(CavityError, ValueError):
    pass


class NonPositiveSeparation(CavityError, ValueError):
    pass


# Numerics

class NumericalDomain(CavityError, ArithmeticError):
    pass


class SingularSeparation(CavityError, ArithmeticError):
    pass


class QuadratureNonConvergence(CavityError, ArithmeticError):
    pass


class DivisionByZeroForce(CavityError, ArithmeticError):
    pass


class InvalidBracket(CavityError, ValueError):
    pass


class NotUnimodal(CavityError, ArithmeticError):
    """The objective shows several separated local maxima on the bracket."""

    def __init__(self, message: str, candidates: Sequence[float]):
        super().__init__(message, candidates=[float(c) for c in candidates])
        self.candidates: List[float] = [float(c) for c in candidates]


class InvalidSampleCount(CavityError, ValueError):
    pass


# Scenario documents

class MissingKey(CavityError, ValueError):
    pass


class UnknownKey(CavityError, ValueError):
    pass


class DuplicateKey(CavityError, ValueError):
    pass


class MalformedLine(CavityError, ValueError):
    pass


class MalformedNumber(CavityError, ValueError):
    pass


# Sweeps and output

class InvalidSweep(CavityError, ValueError):
    pass


class EmptySweep(CavityError, ValueError):
    pass


class AllRowsFailed(CavityError, ArithmeticError):
    pass


class SinkWriteFailure(CavityError, OSError):
    pass


class UnknownFigureTag(CavityError, KeyError):
    def __str__(self) -> str:
        # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ''
