"""Exception types shared across the package.

Everything derives from ValueError so callers that only care about
"bad input" can catch one class; the CLI maps ValueError to exit code 2
(validation) and OSError to exit code 1 (runtime).
"""


class SizeError(ValueError):
    """Qubit / variable count outside the supported range."""


class DimensionMismatchError(ValueError):
    """State vector and diagonal Hamiltonian lengths disagree."""


class ParseError(ValueError):
    """Malformed instance or protocol document; message carries position."""


class InfeasibleInstanceError(ValueError):
    """Requested clause count exceeds the number of distinct canonical clauses."""
