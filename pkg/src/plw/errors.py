class PlwError(Exception):
    """Base class for every error raised by this package."""


class InputError(PlwError):
    """Malformed or inconsistent input (CLI exit code 2)."""


# lattices
class NotAPoset(InputError):
    pass


class MissingBound(InputError):
    pass


class UnknownElement(InputError):
    pass


# operation preconditions
class NotTotal(PlwError):
    pass


class ArrowNotTotal(NotTotal):
    pass


class BoundaryUndefined(PlwError):
    pass


class NotAPartialTnorm(PlwError):
    pass


class NotAPartialTconorm(PlwError):
    pass


class NotAnLEA(PlwError):
    pass


class InputNotPFI(PlwError):
    pass


class InputNotNegation(PlwError):
    pass


class GridNotClosed(PlwError):
    pass


class NotZlPrl(PlwError):
    pass


# filters and quotients
class NotAFilter(PlwError):
    pass


class NotACongruence(PlwError):
    pass


class QuotientOrderNotLattice(PlwError):
    pass


# search
class NoConsistentOrder(PlwError):
    pass


class UnknownTheoremId(InputError):
    pass


class UnknownClass(InputError):
    pass


# registry
class UnknownBuiltin(InputError):
    pass


class BadParams(InputError):
    pass


# structure files
class StructureSyntaxError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class RaggedTable(StructureSyntaxError):
    pass


class DuplicateOpName(StructureSyntaxError):
    pass
