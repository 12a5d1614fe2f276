"""Exception hierarchy shared by all knotsum modules.

Every domain error derives from KnotError so the CLI can map them to a
single exit code. The class name is the stable, user-visible error name.
"""


class KnotError(Exception):
    """Base class for all domain errors raised by knotsum."""


# -- polynomial ring --------------------------------------------------------

class NonIntegralSignPower(KnotError):
    """Substitution with c = -1 hit a non-integral exponent."""


class NonIntegralExponent(KnotError):
    """Evaluation requires all exponents to be integers."""


# -- diagram parsing and surgery --------------------------------------------

class PDSyntaxError(KnotError):
    """Malformed diagram or tangle text."""


class DanglingEdge(KnotError):
    """An edge identifier does not appear exactly twice."""


class NonPlanarError(KnotError):
    """Face count violates the Euler formula for a plane graph."""


class InvalidSite(KnotError):
    """A Reidemeister move was requested at a site that does not admit it."""


class DisconnectedDiagram(KnotError):
    """Operation requires a connected universe."""


# -- Alexander matrix and states --------------------------------------------

class NonAdjacentStars(KnotError):
    """The two starred regions must share an edge."""


class NoState(KnotError):
    """No marker state exists (face/crossing matching is deficient)."""


class MoveNotAvailable(KnotError):
    """Clock move not available at the requested marker pair."""


# -- bracket and skein -------------------------------------------------------

class NotACurl(KnotError):
    """The site is not a Reidemeister-I curl."""


class SiteMismatch(KnotError):
    """Diagrams of a skein or switching triple differ away from the site."""


# -- tangles ------------------------------------------------------------------

class InvalidPattern(KnotError):
    """Surgery pattern must have exactly one hole with matching endpoints."""


class SingularOmega(KnotError):
    """Induced surgery matrix is not invertible over the Laurent ring."""


# -- complexes ----------------------------------------------------------------

class TooLarge(KnotError):
    """Crossing count exceeds the configured enumeration limit."""
