"""Exception hierarchy shared by the library and the CLI."""


class MRPError(Exception):
    """Base class for all library errors."""


class InputError(MRPError, ValueError):
    """Malformed or out-of-contract input. The CLI maps it to exit status 2."""


class WidthMismatch(InputError):
    def __init__(self, left: int, right: int):
        super().__init__(f"cannot combine elements of width {left} and {right}")
        self.left = left
        self.right = right


class CapExceeded(InputError):
    def __init__(self, needed: int, cap: int):
        super().__init__(f"materialization needs {needed} elements, cap is {cap}")
        self.needed = needed
        self.cap = cap


class ConditionFailure(MRPError):
    """A decomposition condition does not hold at ``level`` for ``element``."""

    def __init__(self, message: str, level: int | None = None, element=None):
        super().__init__(message)
        self.level = level
        self.element = element


class DepthInsufficient(ConditionFailure):
    def __init__(self, needed: int, available: int, level=None, element=None):
        super().__init__(
            f"needs refinement depth {needed}, decomposition only reaches {available}",
            level,
            element,
        )
        self.needed = needed
        self.available = available
