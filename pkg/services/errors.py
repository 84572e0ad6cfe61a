"""
Exception hierarchy for pl-spectra.

Identity failures are reported as data; these exceptions cover bad input and
solver breakdown only.
"""


class PLError(Exception):
    """Base class for all library errors."""


class SpinValueError(PLError, ValueError):
    """Spin is not a positive half-integer or could not be parsed."""


class DimensionMismatchError(PLError, ValueError):
    """Matrix operands are not conformable."""


class EigensolverError(PLError, RuntimeError):
    """Shifted QR iteration exhausted its sweep budget."""


class ZeroStateError(PLError, ValueError):
    """A linear combination of states cancelled to the zero vector."""


class StateSpecError(PLError, ValueError):
    """State specification string does not match the grammar."""


class UnsupportedTangleError(PLError, ValueError):
    """n-tangle requested for an unsupported number of qubits."""
