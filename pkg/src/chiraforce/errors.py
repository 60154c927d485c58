"""Exception taxonomy shared by the library and the CLI.

The CLI maps these onto exit codes: SchemaError -> 2 (unreadable or invalid
input files), InputDomainError and subclasses -> 3 (physically invalid
input), verification failures -> 1.
"""


class ChiralForceError(Exception):
    """Base class for all package-specific errors."""


class SchemaError(ChiralForceError):
    """An input file could not be parsed or violates its schema."""


class InputDomainError(ChiralForceError, ValueError):
    """An operation was called outside its physical/mathematical domain."""


class NearResonanceError(InputDomainError):
    """The optical frequency sits inside the detuning floor of a transition."""

    def __init__(self, message, transition_index=None, transition_energy=None):
        super().__init__(message)
        self.transition_index = transition_index
        self.transition_energy = transition_energy
