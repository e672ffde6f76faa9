"""Exception hierarchy shared by the package."""


class SmoothFanoError(ValueError):
    """Base class for every error raised by :mod:`smoothfano`."""


class DimensionError(SmoothFanoError):
    """Shapes or dimensions of the inputs do not fit together."""


class DomainError(SmoothFanoError):
    """Input outside the domain of an operation (e.g. the zero vector)."""


class PreconditionError(SmoothFanoError):
    """A documented precondition of an operation does not hold."""


class NonVertexError(SmoothFanoError):
    """A listed point is not a vertex of the convex hull of the list."""


class OriginNotInteriorError(PreconditionError):
    """The origin is not strictly inside the polytope."""


class NotSmoothFanoError(PreconditionError):
    """An operation restricted to smooth Fano polytopes got something else."""


class InconsistencyError(SmoothFanoError):
    """Computed data contradicts a structural classification result.

    Seeing this means either a bug or corrupted input, never a normal answer.
    """


class CatalogParseError(SmoothFanoError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CatalogValidationError(SmoothFanoError):
    """A well-formed catalog record failed the smooth Fano check."""


class CatalogIncompleteError(SmoothFanoError):
    """A generated neighbour is missing from a catalog claimed complete."""
