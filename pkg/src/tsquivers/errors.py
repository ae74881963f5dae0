"""Exception hierarchy.

Every error raised by the library derives from :class:`QuiverError`.  The
class name doubles as the machine-readable ``kind`` reported by the CLI.
"""


class QuiverError(Exception):
    """Base class for all library errors."""

    @property
    def kind(self) -> str:
        return type(self).__name__


# quiver construction
class EmptyQuiver(QuiverError):
    pass


class VertexGap(QuiverError):
    pass


class LengthMismatch(QuiverError):
    pass


class SelfLoop(QuiverError):
    pass


class NonPositiveArgument(QuiverError):
    pass


class IndexOutOfRange(QuiverError):
    pass


class Disconnected(QuiverError):
    pass


# weights and flows
class WeightNotBalanced(QuiverError):
    pass


class Infeasible(QuiverError):
    pass


class WeightNotInCone(QuiverError):
    pass


class NonConvergence(QuiverError):
    pass


class NotSpanningTree(QuiverError):
    pass


# chambers
class TooManyVertices(QuiverError):
    pass


class TooManyTrees(QuiverError):
    pass


class Indeterminate(QuiverError):
    pass


# geometry
class ZeroAmbientDim(QuiverError):
    pass


class OriginNotInterior(QuiverError):
    pass


class NotFullDimensional(QuiverError):
    pass


class TooLarge(QuiverError):
    pass


class NoUniqueInteriorPoint(QuiverError):
    pass


class DimensionTooHigh(QuiverError):
    pass


class UsageError(QuiverError):
    pass


ALL_ERRORS = tuple(
    cls for cls in list(globals().values())
    if isinstance(cls, type) and issubclass(cls, QuiverError) and cls is not QuiverError
)
