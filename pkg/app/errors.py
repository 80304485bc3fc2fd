"""Engine errors.

Every contract violation raised by the algebra and localization layers derives
from QuotPairsError so the CLI can map them to a single exit code.
"""


class QuotPairsError(Exception):
    """Base class for engine contract violations."""

    pass


class ContractViolation(QuotPairsError, ValueError):
    """Precondition of a public operation does not hold."""

    pass


class ContextMismatchError(ContractViolation):
    """Operands built in different (g, maxdeg) ring contexts."""

    pass


class NotInvertibleError(ContractViolation):
    """Negative power of a class whose generator-free part is not a t-monomial."""

    def __init__(self, detail: str = "") -> None:
        msg = "not invertible in localized ring"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class NonNilpotentError(ContractViolation):
    """Exponential requested for a class with nonzero generator-free part."""

    def __init__(self, detail: str = "") -> None:
        msg = "exponential of non-nilpotent"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class NegativeDimensionError(ContractViolation):
    """Integration over a Quot factor whose expected dimension is negative."""

    def __init__(self, vdim1: int) -> None:
        super().__init__(f"component has negative expected dimension (vdim1={vdim1})")
        self.vdim1 = vdim1


class ZeroWeightError(ContractViolation):
    """Pushforward term whose total torus weight vanishes."""

    def __init__(self, term: str) -> None:
        super().__init__(
            f"fixed-direction bundle has no equivariant Euler class inverse ({term})"
        )


class TruncationError(ContractViolation):
    """Coefficient requested beyond the known order of a truncated series."""

    pass
