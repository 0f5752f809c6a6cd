"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
1 for invalid input, 2 for numerical degeneracy, 3 for a failed
internal verification.
"""


class CMVError(Exception):
    exit_code = 3


class ValidationError(CMVError, ValueError):
    exit_code = 1


class NumericalDegeneracy(CMVError, ArithmeticError):
    exit_code = 2


class VerificationError(CMVError):
    exit_code = 3


# input validation

class AlphaOutOfDisk(ValidationError):
    pass


class BetaNotUnimodular(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class DegreeMismatch(ValidationError):
    pass


class NonMonic(ValidationError):
    pass


class RootOffCircle(ValidationError):
    pass


class TauNotUnimodular(ValidationError):
    pass


class PoleProximity(ValidationError):
    pass


class InvalidMeasure(ValidationError):
    pass


class DuplicatePoints(ValidationError):
    pass


class SizeMismatch(ValidationError):
    pass


class CommonPoint(ValidationError):
    pass


class NotInterlacing(ValidationError):
    pass


class DegenerateP(ValidationError):
    pass


class ZetaOffArc(ValidationError):
    pass


class CommonPointPresent(ValidationError):
    pass


class MixedSigns(ValidationError):
    pass


class TOutOfRange(ValidationError):
    pass


class NotSingularPattern(ValidationError):
    pass


# numerical degeneracy

class PhaseMonotonicityViolated(NumericalDegeneracy):
    pass


class RootCountMismatch(NumericalDegeneracy):
    pass


class NonPositiveMass(NumericalDegeneracy):
    pass


class RootsLeakDisk(NumericalDegeneracy):
    pass


class PZeroInDisk(NumericalDegeneracy):
    pass


class SolveFailed(NumericalDegeneracy):
    pass


class IterationStalled(NumericalDegeneracy):
    pass


class BracketCountMismatch(NumericalDegeneracy):
    pass


# verification failures

class DichotomyViolation(VerificationError):
    pass


class SumNotZero(VerificationError):
    pass


class SpectraMismatch(VerificationError):
    pass


class ReconstructionMismatch(VerificationError):
    pass
