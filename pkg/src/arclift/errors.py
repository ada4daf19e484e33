"""Exception taxonomy shared by all modules.

Two kinds of failures are kept apart deliberately:

* input/precondition problems (bad descriptors, mixed rings, not enough
  t-adic precision) -- the caller handed us something we cannot work on;
* negative mathematical verdicts (``NoDivide``, ``CongruenceFailed``,
  ``Indeterminate``) -- the computation finished and the answer is "no",
  together with a witness.

The CLI maps the first kind to exit code 1 and the second to exit code 2.
"""


class ArcliftError(Exception):
    """Base class for every error raised by this package."""


class InvalidDescriptor(ArcliftError):
    """Ring descriptor violates its invariants (non-prime p, e < 1, ...)."""


class MixedRings(ArcliftError):
    """Operands belong to different rings."""


class MixedFamilies(ArcliftError):
    """Colimit elements from different families or base fields."""


class NotAUnit(ArcliftError):
    """Inversion requested for a non-unit."""


class NonLocalRing(ArcliftError):
    """Residue/nilpotency theory requested for a ring that is not local."""


class InsufficientPrecision(ArcliftError):
    """The stated t-adic precision is below the operation's precondition."""


class PrecisionExhausted(ArcliftError):
    """A computation consumed more t-adic orders than were available."""


class ArityMismatch(ArcliftError):
    """Number of supplied values does not match the number of variables."""


class DegenerateJacobian(ArcliftError):
    """The Jacobian determinant is identically zero as a polynomial."""


class ResidualNonzero(ArcliftError):
    """Lifted arc fails to solve the equations at the certified precision.

    Over the supported coefficient rings (fields and local Artinian rings,
    which have no elements vanishing to infinite order) this signals an
    internal bug, not a legitimate verdict.
    """


class ParseError(ArcliftError):
    """Input text does not conform to the documented grammar."""


class Verdict(ArcliftError):
    """Base class for negative mathematical verdicts (CLI exit code 2)."""


class Indeterminate(Verdict):
    """Truncated data cannot certify the property either way.

    Raised e.g. for a series whose known coefficients are all nilpotent:
    it may or may not be non-degenerate, and conflating that with "no"
    would corrupt downstream preconditions.
    """


class NoDivide(Verdict):
    """q does not divide t^n; carries the nonzero remainder as witness."""

    def __init__(self, remainder):
        super().__init__(f"nonzero remainder: {remainder}")
        self.remainder = remainder


class CongruenceFailed(Verdict):
    """The adjugate defect is not divisible by t * det^2.

    The offending component index and its Laurent expansion are attached,
    so callers can report which coordinate obstructs membership.
    """

    def __init__(self, component, witness):
        super().__init__(f"component {component} has a pole: {witness}")
        self.component = component
        self.witness = witness
