"""Exception types shared across the package."""


class SengraphError(Exception):
    """Base class for all package errors."""


class InputError(SengraphError):
    """A file or directory could not be read or parsed."""


class EmptyCorpusError(InputError):
    """Ingestion produced zero documents."""


class EmptyVocabError(SengraphError):
    """Every word was removed by the frequency filter."""


class GraphParseError(InputError):
    """Malformed edge-list file; message carries the line number."""


class UndefinedSimilarityError(SengraphError):
    """Similarity is undefined, e.g. a zero-norm vector."""


class UndefinedMetricError(SengraphError):
    """A metric has no defined value for the given inputs."""
