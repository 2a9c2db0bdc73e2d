"""Package exception types."""


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration (usage error, exit code 2)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedConfigError(ValueError):
    """Configuration is syntactically valid but not supported by the model."""


class IntegrationDivergedError(RuntimeError):
    """A trajectory produced NaN/Inf entries; carries the offending time."""

    def __init__(self, t: float):
        self.t = t
        super().__init__(f"integration diverged (NaN/Inf in state) at t = {t:g}")
