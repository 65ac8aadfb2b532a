"""Primitive-operation counter for the instrumented algorithms."""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields


@dataclass
class OpCounter:
    """Tally of primitive set operations.

    One membership check per element comparison in a scan, one insertion per
    element put into a set, one copy per element duplicated under a new
    name, one pair creation per ordered pair built.
    """

    membership_checks: int = 0
    insertions: int = 0
    copies: int = 0
    pair_creations: int = 0

    @property
    def total(self) -> int:
        return self.membership_checks + self.insertions + self.copies + self.pair_creations

    def check(self, n: int = 1) -> None:
        self.membership_checks += n

    def insert(self, n: int = 1) -> None:
        self.insertions += n

    def copy(self, n: int = 1) -> None:
        self.copies += n

    def pair(self, n: int = 1) -> None:
        self.pair_creations += n

    def __iadd__(self, other: OpCounter) -> OpCounter:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
        return self

    def as_tuple(self) -> tuple[int, int, int, int]:
        return astuple(self)
