"""Exception types raised by lcadag."""


class LcaError(Exception):
    """Base class for all library errors."""


class InvalidLeafName(LcaError, ValueError):
    pass


class LeafSetMismatch(LcaError, ValueError):
    """Two operands were built over different leaf sets."""


class UnknownLeaf(LcaError, KeyError):
    pass


class UnknownVertex(LcaError, KeyError):
    pass


class InvalidDag(LcaError, ValueError):
    """The arcs do not describe a DAG on the declared leaf set."""


class CycleError(InvalidDag):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cycle: " + " -> ".join(map(str, self.cycle)))


class InvalidConstraint(LcaError, ValueError):
    pass


class NotRealizable(LcaError):
    """Raised by constructions that are only defined for realizable relations."""

    def __init__(self, verdict, message="relation is not realizable"):
        self.verdict = verdict
        super().__init__(message)


class X1Violated(NotRealizable):
    def __init__(self, verdict):
        super().__init__(verdict, "condition X1 fails: some ab is below a leaf pair xx")


class ParseError(LcaError, ValueError):
    def __init__(self, path, lineno, cause):
        self.path = path
        self.lineno = lineno
        self.cause = cause
        where = f"{path}:{lineno}" if lineno else str(path)
        super().__init__(f"{where}: {cause}")
