"""Exception hierarchy.

Errors split in two families so the CLI can map them to exit codes:
``PreconditionError`` (bad input, exit 2) and ``NumericInvariantError``
(a computed invariant did not hold, exit 3).
"""


class HexspineError(Exception):
    pass


class PreconditionError(HexspineError, ValueError):
    pass


class NumericInvariantError(HexspineError, ArithmeticError):
    pass


# hplane
class NotIncident(PreconditionError):
    pass


class TangentDegenerate(PreconditionError):
    pass


class NotDisjoint(PreconditionError):
    pass


class Infeasible(PreconditionError):
    pass


class NoIntersection(NumericInvariantError):
    pass


# shared range checks
class OutOfRange(PreconditionError):
    pass


class OutOfDomain(PreconditionError):
    pass


class DomainError(NumericInvariantError):
    pass


class BadGrid(PreconditionError):
    pass


# tess
class MalformedMap(PreconditionError):
    pass


class AxiomViolation(PreconditionError):
    pass


class Disconnected(PreconditionError):
    pass


class InvalidHomomorphism(PreconditionError):
    pass


# holodev
class ClosureFailure(NumericInvariantError):
    pass


class OrientationReversing(PreconditionError):
    pass


# duality
class KTooSmall(PreconditionError):
    pass


class NotFilling(PreconditionError):
    pass


class NoWitness(NumericInvariantError):
    pass
