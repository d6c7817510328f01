"""Exception types shared across the package.

Raising conventions: anything that indicates a bad input or a violated
precondition is a subclass of CyclomodError.  Negative answers that are
legitimate outcomes (for example "these modules are not isomorphic") are
returned as values, never raised; see the oracle and yakovlev modules.
"""


class CyclomodError(Exception):
    """Base class for all package-specific errors."""


class PrecisionExhausted(CyclomodError):
    """A decision depended on a valuation inside the guard band.

    The working precision p^N resolves valuations only up to N - guard.
    When an elimination pivot, a divisibility test, or a solvability test
    hinges on an entry whose valuation lies in [N - guard, N), the result
    would be unreliable and this error is raised instead.
    """


class NotAUnit(CyclomodError):
    """Inversion was requested for a scalar divisible by p."""


class IllDefinedHom(CyclomodError):
    """A matrix does not map source relations into target relations."""


class NotACocycle(CyclomodError):
    """A two-variable table fails the cocycle identity."""


class NotSurjective(CyclomodError):
    """A map required to be onto is not."""


class InfiniteKernel(CyclomodError):
    """A kernel required to be finite has positive Zp-rank."""


class WitnessInvalid(CyclomodError):
    """Supplied witnesses do not certify the claimed submodule structure."""


class PreconditionViolated(CyclomodError):
    """An operation was invoked outside its stated domain."""


class AxiomViolation(CyclomodError):
    """Internal consistency check of a constructed diagram failed."""


class ParseError(CyclomodError):
    """An input file could not be parsed; message carries position info."""
