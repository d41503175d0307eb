"""Exception hierarchy.

Every contract violation raised by the library derives from :class:`SemsimError`
so the CLI can map it to exit code 2; plain ``OSError`` means I/O trouble
(exit code 1).
"""


class SemsimError(ValueError):
    """Base class for input/contract violations."""


class MalformedRow(SemsimError):
    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        super().__init__(f"{self.path}:{line}: {message}")


class BadSampleSize(SemsimError):
    pass


class EmptyCorpus(SemsimError):
    pass


class BadHeader(SemsimError):
    pass


class DimensionMismatch(SemsimError):
    pass


class NonFiniteValue(SemsimError):
    pass


class MatrixTooSmall(SemsimError):
    pass


class MissingTermMatrix(SemsimError):
    pass


class LengthMismatch(SemsimError):
    pass


class IndexOutOfRange(SemsimError, IndexError):
    pass


class BadLexicon(SemsimError):
    pass
