"""Exception hierarchy shared by all hutchlab modules."""


class HutchlabError(Exception):
    """Base class for all errors raised by hutchlab."""


class SpaceError(HutchlabError):
    """Invalid discretization request (bad kind, resolution, radius)."""


class ResourceCapError(SpaceError):
    """Requested cell count exceeds the configured HUTCHLAB_MAX_CELLS cap."""


class DescriptorError(HutchlabError):
    """Map descriptor is malformed or does not fit the target space."""


class RelationError(HutchlabError):
    """Relation-level misuse, e.g. composing relations over different spaces."""


class EmptySetError(HutchlabError):
    """An operation that requires a non-empty cell set received an empty one."""


class ExactnessRequiredError(HutchlabError):
    """Backward-orbit constructions require a system proved exact at resolution."""


class HorizonError(HutchlabError):
    """A search exceeded its horizon.  ``partial`` carries whatever was built."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DeadEndError(HutchlabError):
    """A pseudo-orbit walk reached a cell with no admissible continuation."""


class SpecFileError(HutchlabError):
    """A system-spec document failed to parse or validate."""
