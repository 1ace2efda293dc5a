"""Exception hierarchy shared by every module."""


class ExtremalArithError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ExtremalArithError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(ExtremalArithError, IndexError):
    """A query exceeds what the current prime table can answer."""


class KernelDomainError(DomainError):
    """A kernel was evaluated at a prime below its declared ``p_min``."""


class PositivityError(KernelDomainError):
    """A kernel value needed to be positive (or above one) but was not."""


class MisuseError(ExtremalArithError, ValueError):
    """A kernel does not carry the metadata an assertion requires."""


class InapplicableError(ExtremalArithError):
    """The per-n hypothesis probe of a prime-power bound returned mixed signs."""


class RegistrationError(ExtremalArithError, ValueError):
    """Declared kernel metadata failed numerical validation.

    Attributes:
        witness: first prime at which the declaration is violated.
    """

    def __init__(self, message: str, witness: int | None = None):
        super().__init__(message)
        self.witness = witness


class OrderingError(ExtremalArithError, ValueError):
    """A forward-only tracker was asked to move backwards."""


class UnknownKernelError(ExtremalArithError, KeyError):
    """A kernel id is not present in the registry."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown kernel"


class ArithmeticOverflowError(ExtremalArithError, OverflowError):
    """An exact integer result does not fit the 64-bit range of the array kernels."""
