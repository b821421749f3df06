"""Shared exception types."""


class BracketError(ArithmeticError):
    """A root bracket could not be established or validated."""


class ConsistencyError(ArithmeticError):
    """A computed result violates a structural property it is required to satisfy."""


class TipNotFoundError(RuntimeError):
    """No width collapse or strand intersection was found below the b ceiling."""
