"""Exception hierarchy shared across the package."""


class StreamAdaptError(Exception):
    """Base class for all errors raised by this package."""


class ZeroVectorError(StreamAdaptError):
    """A vector with (near-)zero norm was passed where direction matters."""


class DimensionMismatchError(StreamAdaptError):
    """Arrays disagree on the embedding dimension or view count."""


class RankDeficientError(StreamAdaptError):
    """The text-embedding matrix does not span at least two directions."""


class DegenerateProjectionError(StreamAdaptError):
    """A vector is (numerically) orthogonal to the kept subspace."""

    def __init__(self, message, class_index=None):
        super().__init__(message)
        self.class_index = class_index


class InvalidAlphaError(StreamAdaptError):
    """The entropy order is outside the open interval (0, 1)."""


class AllZeroWeightsError(StreamAdaptError):
    """Every aggregation weight vanished; no prediction can be formed."""


class AllViewsDegenerateError(StreamAdaptError):
    """No view of an example survives the subspace projection."""


class InfeasibleSeparationError(StreamAdaptError):
    """Requested class means cannot be placed with the required separation."""


class TooFewExamplesError(StreamAdaptError):
    """Not enough examples for the requested neighbor count."""


class StreamError(StreamAdaptError):
    """A record in the stream failed; carries the offending example id."""

    def __init__(self, message, example_id):
        super().__init__(message)
        self.example_id = example_id


class DatasetError(StreamAdaptError):
    """Base class for on-disk dataset problems."""


class BadMagicError(DatasetError):
    """The file does not start with the expected magic bytes."""


class VersionUnsupportedError(DatasetError):
    """The file declares a format version this reader does not speak."""


class TruncatedError(DatasetError):
    """The file ends before the header arithmetic says it should."""

    def __init__(self, message, offset):
        super().__init__(message)
        self.offset = offset


class NonFiniteError(DatasetError):
    """A stored float is NaN or infinite."""

    def __init__(self, message, record_index=None):
        super().__init__(message)
        self.record_index = record_index


class IoFailureError(DatasetError):
    """An underlying OS-level read/write failed."""
