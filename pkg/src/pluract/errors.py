"""Exception hierarchy shared by every module."""


class PluractError(Exception):
    """Base class for all errors raised by this package."""


class UnknownVertex(PluractError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown vertex"


class IdCollision(PluractError):
    """Two structures that must be disjoint share vertex ids."""


class NonConformingBase(PluractError):
    """The base lacks the constituent a reduplicant template copies from."""


class InvalidStructure(PluractError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class UndefinedVerb(PluractError):
    """A verb or subevent name has no definition in the lexicon."""


class SizeError(PluractError, ValueError):
    """A requested size is outside the supported range."""


class InsufficientSamples(PluractError, ValueError):
    pass


class MissingProcess(PluractError):
    pass


class ParseError(PluractError):
    """Malformed document; ``offset`` is a byte offset into the input."""

    def __init__(self, message: str, offset: int | None = None, location: str = ""):
        super().__init__(message)
        self.offset = offset
        self.location = location

    def __str__(self) -> str:
        msg = self.args[0]
        if self.offset is not None:
            msg = f"{msg} (byte {self.offset})"
        if self.location:
            msg = f"{self.location}: {msg}"
        return msg


class UnresolvedReference(ParseError):
    """A name in a document points at nothing."""
