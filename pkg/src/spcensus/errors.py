"""Exception types shared across the library."""


class OracleDisagreement(ArithmeticError):
    """Two independent algorithms for the same quantity returned different values."""


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer (or odd, or nonnegative) is not."""


class InvariantViolation(RuntimeError):
    """A cross-identity between computed quantities failed.

    ``identity`` is a stable machine-readable name for the failed identity.
    """

    def __init__(self, identity: str, detail: str = ""):
        self.identity = identity
        self.detail = detail
        super().__init__(f"{identity}: {detail}" if detail else identity)


class VerificationFailure(RuntimeError):
    """A check of the identity suite failed for a specific prime."""

    def __init__(self, p: int, identity: str, detail: str = ""):
        self.p = p
        self.identity = identity
        self.detail = detail
        super().__init__(f"p={p} identity={identity}" + (f": {detail}" if detail else ""))
