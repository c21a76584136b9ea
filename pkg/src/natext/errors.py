"""Exception types shared across the package."""


class NatextError(Exception):
    """Base class for package errors."""


class FamilyMismatch(NatextError):
    """Group operation applied to elements of different families."""


class NotDeclaredCommutative(NatextError):
    """Grothendieck construction asked for a presentation that neither
    contains all pairwise commutation relations nor was declared commutative."""


class EqualityUnknown(NatextError):
    """Bounded word-problem search could not decide an equality that a
    caller needs as a hard yes/no (e.g. deduplication in ball building)."""


class EtaCollision(NatextError):
    """Two distinct cells of a forbidden-pattern domain map to the same
    group element with conflicting values."""


class MorphismInconsistent(NatextError):
    """A generator assignment does not respect the declared relations."""


class NoRelatorList(NatextError):
    """The receiving group does not expose a defining relator list."""


class MembershipUndecidable(NatextError):
    """No exact image-membership test is available for this family."""


class NotSingleGenerator(NatextError):
    """Matrix-based check requires a single-generator (one-letter) system."""


class NotAmenableFamily(NatextError):
    """No Folner window family exists (free semigroup on >= 2 letters)."""


class UnknownExample(NatextError):
    """Requested example name is not registered."""
