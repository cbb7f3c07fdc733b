"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Operands live in incompatible ambient spaces."""


class NotRepresentableError(ValueError):
    """The relation admits no 2x2 block splitting along the requested subspace."""


class NoSolutionError(RuntimeError):
    """The posed problem has no solution; a mathematical outcome, not a failure."""


class ConsistencyError(RuntimeError):
    """Two independent computation routes disagreed beyond tolerance."""


class ProblemFormatError(ValueError):
    """A problem file is malformed or internally inconsistent."""
