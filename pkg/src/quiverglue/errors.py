"""Shared exception types."""


class SpecError(ValueError):
    """Malformed or inconsistent input data."""


class QuiverError(ValueError):
    """Structurally invalid quiver or quiver operation."""


class FalsificationError(AssertionError):
    """A mathematical identity that the package treats as a theorem failed.

    Raised only when a cross-check that should hold for every valid input
    comes out false; it signals a bug or a genuine counterexample, never a
    user error.
    """
