"""Exception hierarchy.

Every library error derives from :class:`DLGroupError` and carries the
process exit code the CLI maps it to (1 domain error, 2 syntax error,
3 resource limit).
"""


class DLGroupError(Exception):
    exit_code = 1


# parameters
class ParamsError(DLGroupError):
    pass


class PrimeBound(ParamsError):
    pass


class NonUnitDifference(ParamsError):
    pass


class BadL1(ParamsError):
    pass


class ParamsMismatch(DLGroupError):
    pass


# ring
class BadIndex(DLGroupError):
    pass


class InternalInconsistency(DLGroupError):
    pass


class NotAUnit(DLGroupError):
    pass


# group
class BadGenerator(DLGroupError):
    pass


class SupportOutsideLampstand(DLGroupError):
    pass


class RelatorFailed(DLGroupError):
    pass


# graph
class ResourceLimit(DLGroupError):
    exit_code = 3


class InjectivityViolation(DLGroupError):
    pass


# automorphisms
class IncompatibleDerivation(DLGroupError):
    pass


class BetaNotInPhi(DLGroupError):
    pass


class NotPrincipal(DLGroupError):
    pass


class WrongDimension(DLGroupError):
    pass


class SearchSpaceTooLarge(DLGroupError):
    exit_code = 3


# twisted conjugacy
class NotUnimodular(DLGroupError):
    pass


class PreconditionFailed(DLGroupError):
    pass


# text input
class ExprSyntaxError(DLGroupError):
    exit_code = 2

    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariable(ExprSyntaxError):
    pass
