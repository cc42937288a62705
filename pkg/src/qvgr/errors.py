"""Exceptions shared across the package."""


class QvgrError(Exception):
    """Base class for package-specific errors."""


class NotReduced(QvgrError):
    """A Weyl-group word failed a reducedness requirement."""


class NotASource(QvgrError):
    """Reflection was requested at a vertex that is not a source."""


class GuardExceeded(QvgrError):
    """A safety bound on problem size or iteration count was hit."""


class DivisionNotExact(QvgrError):
    """Noncommutative division left a nonzero remainder."""


class NoSolution(QvgrError):
    """No exponent pair makes a three-term identity exact."""


class MultipleSolutions(QvgrError):
    """More than one exponent pair makes a three-term identity exact."""


class KLNoSolution(QvgrError):
    """Bar-solving hit a non-skew obstruction or fractional degrees."""


class NonPolynomialResult(QvgrError):
    """An evaluation kept a nontrivial scalar denominator to the end."""
