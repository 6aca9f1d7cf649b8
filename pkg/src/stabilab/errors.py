"""Exception types shared across the package."""


class StabilabError(Exception):
    pass


class ResourceError(StabilabError):
    """A configured size cap would be exceeded."""


class ConsistencyError(StabilabError, ArithmeticError):
    """Two routes that must agree did not, or a multiplicity was not integral."""
