"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class ContextuaError(Exception):
    """Base class for every error raised by contextua."""


class ParseError(ContextuaError, ValueError):
    """Malformed scalar text or file payload (CLI exit code 2)."""


class DomainError(ContextuaError, ValueError):
    """A mathematical precondition or type invariant was violated (CLI exit code 3)."""


class DimensionError(DomainError):
    """Ambient dimensions disagree, or exceed the configured soft cap."""


class ScalarZeroDivisionError(DomainError, ZeroDivisionError):
    pass


class UnknownNameError(DomainError, KeyError):
    """Lookup of an unregistered dataset, point label, or similar name."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""
