class InvalidParameters(ValueError):
    """Raised for group parameters or indices that violate their constraints."""


class BudgetExceeded(RuntimeError):
    """Raised when a brute-force computation would exceed its size budget."""

    def __init__(self, what: str, required: int, budget: int):
        super().__init__(f"{what} requires {required}, budget is {budget}")
        self.what = what
        self.required = required
        self.budget = budget


class InternalInconsistency(ArithmeticError):
    """An identity that must hold by construction failed (an indexing bug)."""
