"""Exception hierarchy shared by every module of the package."""


class StarFreeError(Exception):
    """Base class for all errors raised by :mod:`starfree`."""


class AlphabetMismatch(StarFreeError):
    pass


class MonoidCapExceeded(StarFreeError):
    pass


class NotAperiodic(StarFreeError):
    pass


class InvalidSystem(StarFreeError):
    pass


class KindMismatch(StarFreeError):
    pass


class DigitOutOfRange(StarFreeError):
    pass


class CanonicalFormUnknown(StarFreeError):
    pass


class CanonicalFormInvalid(StarFreeError):
    pass


class ConvergenceFailure(StarFreeError):
    pass


class EmptyWord(StarFreeError):
    pass


class UnboundVariable(StarFreeError):
    pass


class NotASentence(StarFreeError):
    pass


class ShapeViolation(StarFreeError):
    pass


class FormulaSyntaxError(StarFreeError):
    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at offset {pos})"
        super().__init__(message)


class CanonicalNotAperiodic(StarFreeError):
    pass


class CertificationFailure(StarFreeError):
    """A construction that must yield an aperiodic automaton did not."""


class TranslationMismatch(StarFreeError):
    pass


class NotZeroClosed(StarFreeError):
    pass


class NotAPowerAlphabet(StarFreeError):
    pass


class PreservationViolated(StarFreeError):
    pass


class VerdictMismatch(StarFreeError):
    pass


class UnsupportedConversion(StarFreeError):
    """A set given in one numeration system cannot be moved to another."""
