"""Exception types shared across the package."""


class InstanceError(ValueError):
    """An instance file or object violates the grammar or a model invariant."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """The exhaustive search space is larger than the allowed budget."""

    def __init__(self, dof, budget, q=2):
        self.dof = dof
        self.budget = budget
        super().__init__(
            f"search space {q}^{dof} exceeds budget {budget}")


class CapExceeded(RuntimeError):
    """An enumeration cap (subset count, oracle pool) was exceeded."""


class InfeasibleError(RuntimeError):
    """No code exists (a restricted receiver cannot hear any holder of its message)."""


class SupportError(ValueError):
    """A generator column uses messages its sender does not hold."""
