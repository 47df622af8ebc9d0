class KSGraphError(Exception):
    """Base class for every error raised by ksgraph."""


class DimensionError(KSGraphError, ValueError):
    pass


class ZeroVectorError(KSGraphError, ValueError):
    pass


class NotDensityError(KSGraphError, ValueError):
    pass


class NotUnitaryError(KSGraphError, ValueError):
    pass


class FrameError(KSGraphError, ValueError):
    """Invalid frame: duplicate rays, unknown ids, or a bad declared basis."""


class PreconditionError(KSGraphError, ValueError):
    """An operation was called on input outside its domain."""


class ScenarioError(KSGraphError, ValueError):
    """A scenario file failed to parse or validate."""
