"""Exception types shared across the package."""


class KpIndexError(Exception):
    """Base class for all package errors."""


class ConfigError(KpIndexError):
    """Invalid configuration file, value, or override."""


class DataError(KpIndexError):
    """Input data violates the expected schema or invariants."""


class CorpusError(DataError):
    """Corpus file is malformed or inconsistent."""


class IndexFileError(DataError):
    """Index file is missing, corrupt, or has an unsupported format."""


class EvaluationError(DataError):
    """Evaluation cannot proceed, e.g. no gold-annotated documents."""
