"""Exception hierarchy."""


class QrtError(Exception):
    """Base class for all errors raised by the package."""


class InputError(QrtError):
    """Malformed user input (bad file, unknown label, wrong shape)."""


class MalformedRelation(InputError):
    pass


class NotAdmissible(QrtError):
    pass


class RelationViolated(InputError):
    def __init__(self, relation, message=None):
        self.relation = relation
        super().__init__(message or f"relation {relation} does not vanish on the representation")


class AlgebraMismatch(QrtError):
    pass


class BimoduleMismatch(QrtError):
    pass


class NotBasic(QrtError):
    pass


class NotSplit(QrtError):
    """An endomorphism ring has a non-split semisimple quotient over the base field."""


class CapExceeded(QrtError):
    pass


class NotProjective(QrtError):
    pass


class GlobalDimensionTooLarge(QrtError):
    pass


class LiftingFailure(QrtError):
    pass


class NotPartialTilting(QrtError):
    pass


class UnknownCheck(InputError):
    pass


class ExactnessFailure(QrtError):
    pass


class InvariantViolation(QrtError):
    """An internal consistency check failed; always a bug."""
