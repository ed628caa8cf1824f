"""Exception types shared across the package."""


class ChromaError(Exception):
    """Base class for all library errors."""


class VertexOutOfRange(ChromaError):
    pass


class SelfLoop(ChromaError):
    pass


class DuplicateEdge(ChromaError):
    pass


class MissingEdge(ChromaError):
    pass


class SameVertex(ChromaError):
    pass


class IndexOutOfRange(ChromaError):
    pass


class InvalidParams(ChromaError):
    pass


class PreconditionViolated(ChromaError):
    pass


class NotConnected(ChromaError):
    pass


class InvalidForest(ChromaError):
    pass


class FixedOutOfRange(ChromaError):
    pass


class RangeTooSmall(ChromaError):
    pass


class InvalidFan(ChromaError):
    pass


class InvalidReport(ChromaError):
    pass


class AssemblyFailed(ChromaError):
    """An internally-guaranteed path assembly failed; indicates a bug."""


class TooSmall(ChromaError):
    pass


class DimacsSyntaxError(ChromaError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class CountMismatch(ChromaError):
    pass
