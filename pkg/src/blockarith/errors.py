"""Exception types shared across the toolkit."""


class BudgetError(RuntimeError):
    """A resource cap was exceeded: input too large, table over memory budget."""


class OutOfTableError(ValueError):
    """A table lookup was requested beyond the table's limit."""


class ValidationError(ValueError):
    """An argument violated a documented precondition."""
