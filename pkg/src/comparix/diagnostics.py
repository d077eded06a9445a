"""Warning categories shared across the package.

Degenerate inputs (all-zero comparability rows, empty dictionary
intersections, empty documents, tiny classes) are survivable by design:
batch matrix assembly must not abort on a single pathological cell.  Such
events are reported through :class:`DegenerateInputWarning` so callers can
silence or escalate them uniformly.
"""

from __future__ import annotations

import warnings


class ComparixWarning(UserWarning):
    """Base class for all warnings emitted by comparix."""


class DegenerateInputWarning(ComparixWarning):
    """A computation hit a degenerate input and applied a documented fallback."""


class FormatError(ValueError):
    """A data file violates its schema.

    Carries the offending path and 1-based line number so batch tooling can
    report actionable locations.
    """

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}:" if line is None else f"{path}:{line}:"
        super().__init__(f"{prefix} {message}" if prefix else message)


def warn_degenerate(message: str) -> None:
    warnings.warn(message, DegenerateInputWarning, stacklevel=3)
