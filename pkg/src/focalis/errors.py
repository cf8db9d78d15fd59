"""Exception hierarchy shared across the package.

Every error carries a machine readable ``kind`` so the CLI can serialize it.
"""
from __future__ import annotations


class FocalisError(Exception):
    kind = "error"

    def payload(self) -> dict:
        return {"kind": self.kind, "message": str(self)}


class CongruenceSyntaxError(FocalisError):
    """Malformed input text; knows where it happened."""

    kind = "syntax"

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col

    def payload(self) -> dict:
        return {"kind": self.kind, "message": str(self), "line": self.line, "col": self.col}


class DegenerateFrame(FocalisError):
    """Rows of the frame are generically dependent (no honest plane family)."""

    kind = "degenerate-frame"


class DegenerateCongruence(FocalisError):
    """The family of planes does not fill P^4: the focal form vanishes identically."""

    kind = "degenerate-congruence"


class SamplingExhausted(FocalisError):
    kind = "sampling-exhausted"


class AmbiguousVerdict(FocalisError):
    """Sampled evidence is contradictory or below the agreement threshold."""

    kind = "ambiguous-verdict"

    def __init__(self, message: str, evidence: dict | None = None):
        super().__init__(message)
        self.evidence = evidence or {}

    def payload(self) -> dict:
        return {"kind": self.kind, "message": str(self), "evidence": self.evidence}


class InconsistentBranch(FocalisError):
    """Line-branch tracking failed to match a branch across a perturbation."""

    kind = "inconsistent-branch"


class SegreMismatch(FocalisError):
    """All focal components are filled with second-order points but no known
    surface pattern matches."""

    kind = "segre-mismatch"


class NotSquare(FocalisError):
    kind = "not-square"


class IdenticallyZero(FocalisError):
    """Root extraction was asked for the identically zero binary form."""

    kind = "identically-zero"


class ZeroForm(FocalisError):
    """A conic operation received the zero quadratic form."""

    kind = "zero-form"


class RankDrop(FocalisError):
    """A matrix had lower rank than the operation requires."""

    kind = "rank-drop"


class NotNondegenerate(FocalisError):
    """Operation requires a rank-3 focal conic."""

    kind = "not-nondegenerate"


class ExactDivisionError(FocalisError):
    kind = "exact-division"


class UnknownGalleryItem(FocalisError):
    kind = "unknown-gallery-item"


class UnsupportedField(FocalisError):
    """An operation would need a field tower this package does not build
    (for example the square root of an already-extended scalar)."""

    kind = "unsupported-field"
