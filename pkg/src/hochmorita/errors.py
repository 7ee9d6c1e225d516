"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class AlgebraError(ValueError):
    """Input data does not define a valid algebra, module, or action."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size cap.

    The message names the cap, the requested size, and the environment
    variable that raises the cap.
    """

    def __init__(self, what: str, requested: int, cap: int, env: str):
        self.what = what
        self.requested = requested
        self.cap = cap
        self.env = env
        super().__init__(f"{what}: requested size {requested} exceeds cap {cap} "
                         f"(raise with {env})")
