"""Exception hierarchy shared by every module."""


class GradesError(Exception):
    """Base class for all errors raised by this package."""


class ContractError(GradesError, ValueError):
    """An argument violates a documented precondition (shape, range, sparsity)."""


class BudgetExceededError(GradesError):
    """Exhaustive support enumeration would exceed the configured budget.

    Use :func:`grades.rip.sampled_rip_bounds` for matrices this large.
    """

    def __init__(self, n_supports, budget):
        self.n_supports = n_supports
        self.budget = budget
        super().__init__(
            f"exact enumeration needs {n_supports} supports, over the budget of "
            f"{budget}; use sampled_rip_bounds (or `grades rip --mode sampled`)"
        )


class ConditionError(GradesError, ValueError):
    """The bounds do not satisfy beta < 2 * alpha, so no iteration bound exists."""
