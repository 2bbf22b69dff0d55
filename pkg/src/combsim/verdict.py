from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a yes/no check.

    ``reason`` names what failed (an axiom, a condition number, ...) and
    ``witness`` carries the offending indices. Both are ``None`` on success.
    Truthiness follows ``ok``.
    """

    ok: bool
    reason: Any = None
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def yes(cls, witness=None) -> "Verdict":
        return cls(True, None, witness)

    @classmethod
    def no(cls, reason, witness=None) -> "Verdict":
        return cls(False, reason, witness)
