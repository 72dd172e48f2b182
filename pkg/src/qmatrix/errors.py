"""Exception hierarchy shared by every module of the engine."""


class QMatrixError(Exception):
    """Base class for all engine errors."""


class DivisionByZero(QMatrixError, ZeroDivisionError):
    pass


class PoleAtSpecialization(QMatrixError, ZeroDivisionError):
    pass


class ZeroSpecialization(QMatrixError, ValueError):
    pass


class IndexOutOfRange(QMatrixError, IndexError):
    pass


class ShapeMismatch(QMatrixError, ValueError):
    pass


class SizeMismatch(QMatrixError, ValueError):
    pass


class NoUniformTwist(QMatrixError):
    """``u`` does not q-commute with some generator.

    This says nothing about normality in general; it only rules out the
    q-central certificate form.
    """

    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class NotInIdeal(QMatrixError):
    pass


class NotRankOne(QMatrixError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AmbientMismatch(QMatrixError, ValueError):
    pass


class ExpressionSyntaxError(QMatrixError, ValueError):
    """Parse failure at a 1-based character ``position``."""

    def __init__(self, position, expected, found=None):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        self.found = found
        what = "end of input" if found is None else repr(found)
        super().__init__(
            f"syntax error at position {position}: expected one of "
            f"{', '.join(self.expected)}; found {what}"
        )


class EvaluationError(QMatrixError, ValueError):
    pass
