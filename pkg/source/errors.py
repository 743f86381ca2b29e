class DocRelError(Exception):
    """Base class for every failure raised by docrel."""


class DimensionError(DocRelError):
    pass


class ValidationError(DocRelError):
    pass


class ContractError(DocRelError):
    pass


class DeterminismError(DocRelError):
    pass


class IngestionError(DocRelError):
    def __init__(self, title, index, reason):
        self.title = title
        self.index = index
        self.reason = reason
        super().__init__(f"Document {index} ({title!r}): {reason}")


class PoolingError(DocRelError):
    pass


class ConfigurationError(DocRelError):
    pass


class DivergenceError(DocRelError):
    pass


class BundleLoadError(DocRelError):
    pass


class ScoringError(DocRelError):
    pass


class PredictionFileError(DocRelError):
    def __init__(self, path, index, reason):
        self.path = path
        self.index = index
        self.reason = reason
        super().__init__(f"{path}: record {index}: {reason}")
