"""Exception types shared across the toolkit."""

from __future__ import annotations


class AnuvadevalError(Exception):
    """Base class for every error raised by this package."""


# --- corpus loading ---------------------------------------------------------

class LineCountMismatch(AnuvadevalError):
    """Parallel corpus files disagree on line count."""


class EmptySource(AnuvadevalError):
    """A source line is blank after whitespace trimming."""


class EmptyReferenceSet(AnuvadevalError):
    """A segment has no non-blank reference translation."""


class ManifestGap(AnuvadevalError):
    """Document manifest does not partition the corpus lines."""


class DuplicateSystemId(AnuvadevalError):
    """A system id was re-attached with different hypothesis content."""


# --- resource files ---------------------------------------------------------

class ParseError(AnuvadevalError):
    """A resource file line could not be parsed."""

    def __init__(self, message: str, path: str | None = None,
                 line_no: int | None = None):
        self.path = path
        self.line_no = line_no
        where = ""
        if path is not None:
            where = f"{path}:"
        if line_no is not None:
            where += f"{line_no}: "
        super().__init__(f"{where}{message}")


# --- metric scoring ---------------------------------------------------------

class EmptyHypothesis(AnuvadevalError):
    """Hypothesis has zero tokens; callers map this to a 0 score."""


# --- human ratings ----------------------------------------------------------

class OutOfRangeRating(AnuvadevalError):
    """A criterion rating is outside 0..4."""


class MissingCriterion(AnuvadevalError):
    """A rating record does not cover all ten criteria."""


class UnknownSegment(AnuvadevalError):
    """A rating record references a segment or system not in the corpus."""


class NoRatings(AnuvadevalError):
    """No rating records exist for the requested key."""


# --- correlation ------------------------------------------------------------

class LengthMismatch(AnuvadevalError):
    """Paired score vectors differ in length or are too short."""


class InsufficientReferences(AnuvadevalError):
    """The corpus does not carry enough references for the request."""


class MissingRatings(AnuvadevalError):
    """Segments lack human ratings required for a correlation report."""

    def __init__(self, keys):
        self.keys = list(keys)
        shown = ", ".join(f"{s}/{d}/{g}" for s, d, g in self.keys[:5])
        more = "" if len(self.keys) <= 5 else f" (+{len(self.keys) - 5} more)"
        super().__init__(f"missing ratings for: {shown}{more}")
