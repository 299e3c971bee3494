"""Exception hierarchy.

Operations whose contract reads "value | Outcome" raise the matching
exception for the alternative outcome.
"""


class GPTError(Exception):
    """Base class for all gptlab errors."""


class DimensionMismatch(GPTError, ValueError):
    pass


class MalformedProgram(GPTError, ValueError):
    pass


class Infeasible(GPTError):
    """A linear program has no feasible point."""


class NotInHull(GPTError):
    pass


class Inconsistent(GPTError):
    """No affine map satisfies the requested point assignments."""


class NotAState(GPTError):
    """A point lies outside the state space."""


class NotDistinguishable(GPTError):
    pass


class NoneFound(GPTError):
    """No distinguishable family of pure states decomposes the state."""


class NotEquivalent(GPTError):
    pass


class UnsupportedSpace(GPTError):
    """The operation is not available for this kind of state space."""


class DocumentError(GPTError, ValueError):
    """A space or state description could not be parsed."""
