"""Error taxonomy for the whole package.

Every failure mode callers are expected to catch is a subclass of
``QuarticError``; messages carry a short machine-readable reason first,
details after.  The CLI maps these onto its exit codes.
"""


class QuarticError(Exception):
    """Base class for all library errors."""


class MalformedWord(QuarticError):
    """Chord diagram text that is not a valid double-occurrence word."""


class DegenerateSeed(QuarticError):
    """Seed points that coincide, or imaginary members that are not conjugate."""


class InvalidCurve(QuarticError):
    """Coefficient data that does not define a real degree-4 parametrization."""


class NotSquarefree(QuarticError):
    """A form had a repeated factor where a squarefree one was required."""


class DivisionFailure(QuarticError):
    """Exact polynomial division left a remainder (non-reduced input)."""


class NotGeneric(QuarticError):
    """Curve is outside the generic three-node class this package handles."""


class ImaginaryNodePresent(QuarticError):
    """A node pair consists of non-conjugate imaginary parameters."""


class IrrationalNodes(QuarticError):
    """Node positions are not rational, so the exact normal form is unavailable."""


class DegenerateNodes(QuarticError):
    """Candidate node positions are collinear or otherwise unusable."""


class DifferentClass(QuarticError):
    """Endpoint curves of a path request lie in different rigid isotopy classes."""


class PathObstruction(QuarticError):
    """No certified deformation schedule could be produced."""


class ImplicitizationFailure(QuarticError):
    """No degree-4 implicit equation annihilates the parametrization."""


class StillSingular(QuarticError):
    """A perturbed quartic could not be certified nonsingular."""


class UnstableResolution(QuarticError):
    """Raster topology changed when the resolution was doubled."""
