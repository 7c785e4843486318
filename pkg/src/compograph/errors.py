"""Exception types shared across the package."""


class CompographError(Exception):
    """Base class for all package errors."""


# -- graph construction / validation ---------------------------------------

class VertexOutOfRange(CompographError):
    pass


class SelfLoop(CompographError):
    pass


class DuplicateEdge(CompographError):
    pass


class DisconnectedGraph(CompographError):
    pass


class OrderOutOfRange(CompographError):
    pass


class OrderTooLarge(CompographError):
    pass


class LengthMismatch(CompographError):
    pass


class InvalidSpec(CompographError):
    pass


class UnsupportedFamily(CompographError):
    """No closed-form count for this family."""


class FormatError(CompographError):
    """Malformed graph text."""


# -- oracle arithmetic ------------------------------------------------------

class NegativeCoordinate(CompographError):
    """Composition subtraction produced a negative entry."""


class OracleInconsistent(CompographError):
    """Answers contradict the declared carrier structure."""


class NoUniqueNonzero(OracleInconsistent):
    pass


class CollapseContradiction(OracleInconsistent):
    pass


# -- reconstruction preconditions -------------------------------------------

class StructureMismatch(CompographError):
    """Carrier does not have the shape the algorithm requires."""


class DegreeTooSmall(StructureMismatch):
    pass


class AlphabetTooLarge(CompographError):
    pass


class EvenTail(StructureMismatch):
    """Triangle-with-tail carriers with even tails are confusable; refused."""


class BudgetExceeded(CompographError):
    pass


# -- confusability / constructions -------------------------------------------

class CarrierMismatch(CompographError):
    pass


class EvenP2Length(CompographError):
    pass


class BitLengthMismatch(CompographError):
    pass
