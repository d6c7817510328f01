"""Shared result types for isomorphism questions.

Negative and inconclusive answers are ordinary return values, never
exceptions: a caller asking "are these isomorphic?" gets a verdict
object it can branch on, and only malformed inputs raise.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class NotIsomorphic:
    """Definitive negative answer, with the distinguishing evidence."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class NotStablyIsomorphic:
    """No amount of free padding can make the two modules isomorphic."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Undecided:
    """The search budget ran out before either a witness or a proof."""

    reason: str

    def __bool__(self) -> bool:
        return False
