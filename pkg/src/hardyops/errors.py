"""Exception hierarchy shared across the package."""


class HardyOpsError(Exception):
    """Base class for all package errors."""


class ExprSyntaxError(HardyOpsError, SyntaxError):
    """Malformed symbol expression.

    ``offset`` is the zero-based character position where parsing failed.
    """

    def __init__(self, message, text="", offset=0):
        self.message = message
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")

    def __str__(self):
        return f"{self.message} at offset {self.offset}"


class DivisionByZeroStructure(HardyOpsError, ZeroDivisionError):
    """Denominator of an expression is identically zero."""


class PoleOnDomain(HardyOpsError, ArithmeticError):
    """A map was evaluated at (or expanded about) one of its poles."""


class AnchorNotInterior(HardyOpsError, ValueError):
    """A kernel anchor or fixed point was required to lie in the open disk."""


class NotFixedPoint(HardyOpsError, ValueError):
    """A point that a hypothesis needs fixed is not fixed by the map."""


class NotSelfMap(HardyOpsError, ValueError):
    """The map does not send the disk into itself."""


class UnsupportedRepresentation(HardyOpsError, TypeError):
    """The operation is not implemented for this kind of map."""


class NoConvergence(HardyOpsError, RuntimeError):
    """An iterative method failed to converge.

    ``best`` carries the last estimate when one exists.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class EllipticAutomorphism(NoConvergence):
    """Elliptic automorphisms have no attracting fixed point."""


class HypothesisUnmet(HardyOpsError):
    """A theorem's hypothesis failed; ``hypothesis`` names which one."""

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        self.detail = detail
        msg = hypothesis if not detail else f"{hypothesis}: {detail}"
        super().__init__(msg)
