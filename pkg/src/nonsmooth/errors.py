"""Shared exception taxonomy.

Every certified operation fails loudly and precisely; nothing in the library
falls back to approximate answers. The CLI maps these onto exit codes.
"""


class NonsmoothError(Exception):
    """Base class for all contract violations raised by this package."""


class OutOfDomain(NonsmoothError):
    """A point fed to a map lies outside the map's domain of definition."""


class DegenerateQuadratic(NonsmoothError):
    """All three quadratic coefficients vanish; the root set is not discrete."""


class NoRealFixedPoint(NonsmoothError):
    """The fixed quadratic of a Moebius map has no real root to bracket."""


class BadInterval(NonsmoothError):
    """Breakpoints or support endpoints violate strict monotonicity."""


class AccumulationPoint(NonsmoothError):
    """One-sided slope requested where breakpoints accumulate; use limit_slope."""


class NotModelGerm(NonsmoothError):
    """limit_slope input does not reduce to powers of one model translation."""


class Unsupported(NonsmoothError):
    """fixed_set has no exact closed form for this expression shape."""


class WordSyntaxError(NonsmoothError):
    """A group word string does not parse."""


class NotCommutatorClass(NonsmoothError):
    """The dominating word is not in the commutator subgroup (abelianization)."""


class DegenerateSequence(NonsmoothError):
    """The advancing word fixes the base point; the point sequence stalls."""


class BracketOutsideWindow(NonsmoothError):
    """A fixed-point bracket cannot be placed strictly inside the fundamental
    window, which signals a mis-selected lift."""


class NotFixed(NonsmoothError):
    """Slope character requested at a point some generator does not fix."""


class SearchExhausted(NonsmoothError):
    """No power within the cap satisfies the slope bound; raise the cap."""


class EmptyDisplacement(NonsmoothError):
    """Every generator fixes the window base point; there is nothing to rescale."""


class EmptyGridDomain(NonsmoothError):
    """The requested radius does not intersect the rescaled window."""


class Degenerate(NonsmoothError):
    """A generator acts as the identity on the whole window."""
