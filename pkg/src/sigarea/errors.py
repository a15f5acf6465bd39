"""Exception vocabulary shared across the package.

Every data-dependent failure raises one of these, all rooted at
:class:`SigAreaError` so callers (and the CLI) can catch the family at once.
Programming errors (bad argument types, impossible parameter combinations)
raise plain ValueError/TypeError instead.
"""

from __future__ import annotations


class SigAreaError(Exception):
    """Base class for all data-dependent errors raised by sigarea."""


class ConstantSeries(SigAreaError):
    """Series has zero range; unit-range scaling is undefined."""


class TooShort(SigAreaError):
    """Series is too short for the requested operation."""


class NonMonotonicTime(SigAreaError):
    """Time stamps are not strictly increasing."""


class EmptyRange(SigAreaError):
    """Resampling grid holds fewer than two points."""


class ShiftTooLarge(SigAreaError):
    """|tau| leaves no overlap between the shifted pair."""


class DegeneratePath(SigAreaError):
    """Path has fewer than two points."""


class WindowTooLong(SigAreaError):
    """Window length exceeds the series length."""


class InsufficientData(SigAreaError):
    """Not enough samples to estimate the requested statistic."""


class LengthMismatch(SigAreaError):
    """Sequences that must align have different lengths."""


class ZeroVariance(SigAreaError):
    """A variance in a ratio denominator is zero."""


class SingularDesign(SigAreaError):
    """Regression design matrix is rank-deficient."""


class DegenerateEmbedding(SigAreaError):
    """All delay-embedding points coincide."""


class ParseError(SigAreaError):
    """CSV structure is invalid; message carries the location."""


class RaggedRows(ParseError):
    """CSV rows have inconsistent field counts."""


class NonNumericCell(ParseError):
    """A CSV body cell failed to parse as a number."""


class IoError(SigAreaError):
    # Named per the package's error vocabulary; distinct from the builtin
    # IOError alias of OSError.
    """File could not be read or written."""


class Divergence(SigAreaError):
    """A generated system state left the unit interval."""
