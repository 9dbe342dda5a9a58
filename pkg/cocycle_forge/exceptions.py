"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""


class ForgeError(Exception):
    """Base class for cocycle-forge exceptions."""

    # process exit status used by the command line
    exit_code = 2

    def __init__(self, message=None):
        super(ForgeError, self).__init__(message)
        self.message = message

    def __str__(self):
        return self.message or ""


class ArgumentError(ForgeError):
    """Invalid argument, dimension or index."""
    pass


class SchemaError(ForgeError):
    """Malformed cocycle or graph document."""
    pass


class ConfigError(ForgeError):
    """Configuration file error."""
    pass


class OrderError(ForgeError):
    """Majorization order or endpoint violation."""
    pass


class GraphIndexError(ForgeError):
    """Graph index mismatch."""
    pass


class PinningError(ForgeError):
    """A pinned graph coordinate would have to move."""
    pass


class DominationError(ForgeError):
    """A dominated splitting obstructs the requested move."""

    def __init__(self, message=None, report=None):
        super(DominationError, self).__init__(message)
        self.report = report


class InvarianceError(ForgeError):
    """Subspace family is not invariant under the cocycle."""
    pass


class PreconditionError(ForgeError):
    """Operation precondition does not hold."""
    pass


class NumericalError(ForgeError):
    """Linear algebra failure."""

    exit_code = 1

    def __init__(self, message=None, condition=None):
        super(NumericalError, self).__init__(message)
        self.condition = condition

    def __str__(self):
        if self.condition is None:
            return self.message or ""
        return f"{self.message} (condition {self.condition:.3e})"


class RangeError(ForgeError):
    """Requested change is larger than the budget allows."""
    pass


class ProductRangeError(RangeError):
    """Raw matrix product outside the representable range."""

    exit_code = 1


class CapabilityError(ForgeError):
    """Perturbation budget exhausted before the goal was reached."""

    exit_code = 1

    def __init__(self, message=None, partial=None, residual=None):
        super(CapabilityError, self).__init__(message)
        self.partial = partial
        self.residual = residual


class CheckError(ForgeError):
    """A verification check failed."""

    exit_code = 1

    def __init__(self, message=None, seed=None):
        super(CheckError, self).__init__(message)
        self.seed = seed
