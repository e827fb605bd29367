"""Exception types shared across the package."""


class TwistcalcError(Exception):
    """Base class for all library errors."""


class ConfigurationError(TwistcalcError):
    """Bad user input / configuration (CLI maps this to exit code 2)."""


class ReductionError(TwistcalcError):
    """Normal-form computation failed to terminate within its step budget."""
