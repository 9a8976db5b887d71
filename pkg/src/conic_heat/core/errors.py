"""Exception hierarchy shared by the library and the command-line driver.

Every error raised on purpose derives from :class:`ConicHeatError` and carries
the process exit code the CLI should use when it escapes a command.
"""

from __future__ import annotations


class ConicHeatError(Exception):
    exit_code = 2


class ConfigError(ConicHeatError, ValueError):
    exit_code = 1


class ProfileError(ConicHeatError, ValueError):
    exit_code = 1


class NumericalError(ConicHeatError):
    exit_code = 2


class CertificationError(NumericalError):
    """Eigenvalues could not be certified to the requested tolerance."""


class QuadratureError(NumericalError):
    pass


class RootFindingError(NumericalError):
    pass


class RegularizationError(NumericalError):
    pass


class FitError(NumericalError):
    pass


class BesselOverflowError(NumericalError, OverflowError):
    pass


class TailBoundError(NumericalError):
    def __init__(self, message: str, min_usable_t: float | None) -> None:
        super().__init__(message)
        self.min_usable_t = min_usable_t


class VerificationError(ConicHeatError):
    exit_code = 3


class CacheCorruptionError(ConicHeatError):
    pass
