"""Exception types shared across the package."""


class SymcoverError(Exception):
    """Base class for all library errors."""


class PreconditionError(SymcoverError, ValueError):
    """An operation was called with arguments outside its stated domain."""


class CapExceeded(SymcoverError):
    """A resource cap (enumeration size, vertex count, ...) would be exceeded.

    ``resource`` names what overflowed, ``value`` is the exact requested size
    and ``cap`` the limit in force.
    """

    def __init__(self, resource, value, cap):
        self.resource = resource
        self.value = value
        self.cap = cap
        super().__init__(f"{resource} = {value} exceeds cap {cap}")
