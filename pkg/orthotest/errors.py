"""Exception hierarchy shared by all orthotest modules."""


class OrthoTestError(Exception):
    """Base class for every error raised by orthotest."""


class GraphFormatError(OrthoTestError):
    """The input document could not be parsed."""


class GraphValidationError(OrthoTestError):
    """The parsed graph violates a structural requirement."""


class NotSeriesParallelError(OrthoTestError):
    """A block handed to the SPQ* builder is a cycle or not series-parallel."""


class ConstraintError(OrthoTestError):
    """A root constraint or gadget request does not fit the block."""


class ConstructionError(OrthoTestError):
    """Internal inconsistency while building a representation."""


class RepresentationError(OrthoTestError):
    """An orthogonal representation is malformed or lacks required data."""


class OracleSizeError(OrthoTestError):
    """The brute-force oracle was asked to process a graph above its bound."""


class GeneratorError(OrthoTestError):
    """Generator parameters cannot be satisfied."""
