"""Exception hierarchy shared by every framekit module."""


class FramekitError(Exception):
    """Base class for all framekit errors."""


class NotHermitian(FramekitError, ValueError):
    pass


class NotPSD(FramekitError, ValueError):
    pass


class EmptyMatrix(FramekitError, ValueError):
    pass


class DimensionMismatch(FramekitError, ValueError):
    pass


class LabelMismatch(FramekitError, ValueError):
    pass


class DuplicateLabel(FramekitError, ValueError):
    pass


class NotTight(FramekitError, ValueError):
    pass


class BadParameter(FramekitError, ValueError):
    pass


class TooLarge(FramekitError, ValueError):
    pass


class ShapeMismatch(FramekitError, ValueError):
    pass


class DepthExceeded(FramekitError, ValueError):
    pass


class InvalidWitness(FramekitError, ValueError):
    pass


class ParseError(FramekitError, ValueError):
    """Malformed input file; the message names the offending field."""
