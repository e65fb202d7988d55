"""Exception hierarchy shared across the engine."""


class FlatfibError(Exception):
    """Base class for all engine errors."""


class DimensionMismatchError(FlatfibError):
    """Operands live in Euclidean spaces of different dimensions."""


class NotInvariantError(FlatfibError):
    """A subspace is not invariant under the given linear map."""


class NotASpaceGroupError(FlatfibError):
    """Generator closure is not discrete/cocompact within the configured bounds."""


class NotMemberError(FlatfibError):
    """An isometry is not an element of the group it was tested against."""


class NotNormalError(FlatfibError):
    """The designated subgroup is not normal in its parent."""


class NotCompleteError(FlatfibError):
    """The designated normal subgroup is not complete."""


class ConsistencyError(FlatfibError):
    """Derived data contradicts itself; indicates a bug or invalid input."""


class CatalogError(FlatfibError):
    """The built-in catalog file is missing, malformed, or inconsistent."""


class ParseError(FlatfibError):
    """Textual input (isometry lines, group files) failed to parse."""
