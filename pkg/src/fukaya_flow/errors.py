"""Exception types shared across the package.

Every error raised on bad user input derives from FukayaFlowError so the
CLI can map them uniformly to exit code 2.
"""


class FukayaFlowError(Exception):
    """Base class for all package errors."""


# --- link diagram parsing ---

class MalformedToken(FukayaFlowError):
    """A PD-code token is not X(a,b,c,d) or O(a) over positive integers."""


class ArcLabelNotPairedTwice(FukayaFlowError):
    """Some arc label does not occur exactly twice among the crossings."""


class InconsistentOrientation(FukayaFlowError):
    """No consistent strand orientation exists for the diagram."""


class SameComponent(FukayaFlowError):
    """Linking number of a component with itself was requested."""


# --- presentations ---

class DuplicateGeneratorName(FukayaFlowError):
    """Two generators of one presentation share a name."""


# --- Morse-Bott machinery ---

class NonTransverse(FukayaFlowError):
    """A required intersection is not transverse in the flat model.

    Caller must perturb the marked points.
    """


class DifferentialNotSquareZero(FukayaFlowError):
    """The differential of a claimed chain complex does not square to zero."""


class NonPlanarPD(FukayaFlowError):
    """Face extraction failed the Euler check V - E + F = 2."""


class UnsupportedModel(FukayaFlowError):
    """A critical component is not a point, circle, or torus flat model."""


class ActionOrderViolation(FukayaFlowError):
    """A correspondence does not strictly decrease the action level."""


# --- index calculus ---

class NotClosed(FukayaFlowError):
    """A loop of lines does not close up."""


class MismatchedPuncture(FukayaFlowError):
    """Glued punctures disagree (missing, reused, or different dimension)."""


# --- numeric geometry ---

class DomainViolation(FukayaFlowError):
    """A point fails its defining constraint beyond tolerance."""


class BranchCutProximity(FukayaFlowError):
    """The trivialization was evaluated too close to a square-root branch cut."""


class ZeroArgument(FukayaFlowError):
    """A map was evaluated at a forbidden zero argument."""


# --- quivers ---

class ShapeMismatch(FukayaFlowError):
    """A representation's matrix shapes do not match the quiver."""


class DimensionTooLarge(FukayaFlowError):
    """Exhaustive isomorphism search is capped at dimension 3 per vertex."""


class IOFailure(FukayaFlowError):
    """An output artifact could not be written."""
