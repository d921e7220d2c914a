class InvalidInput(ValueError):
    """Raised when an argument violates an operation's precondition."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search hit its node/attempt limit before deciding.

    This is a non-answer: callers must never read it as "no object exists".
    """

    def __init__(self, message, explored=None):
        super().__init__(message)
        self.explored = explored


class CapExceeded(BudgetExceeded):
    """Enumeration or materialization would exceed a configured cap."""
