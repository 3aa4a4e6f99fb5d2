"""Shared error types for the mirror-identity toolkit."""


class UnsupportedByTheorem(ValueError):
    """The input falls outside the hypotheses of the mirror theorem
    (e.g. a chain variable of weight 1/2)."""


class ConcavityViolated(ValueError):
    """A correlator was requested through the concave formula but the
    line-bundle data is not concave."""


class WrongConfiguration(ValueError):
    """A special-case formula was applied to a polynomial it does not cover."""


class InconsistentInput(ValueError):
    """Supplied data contradicts what the computation derives."""


class UnderdeterminedSystem(ValueError):
    """A linear identity was asked to determine more unknowns than it
    constrains (e.g. an associativity step with two unknown correlators)."""
