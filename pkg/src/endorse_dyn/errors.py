"""Error taxonomy shared by all modules.

Three families, matching the CLI exit-code contract:

* ``DomainError`` / ``FormatError`` / ``ConfigError``: bad inputs or
  malformed files; the CLI maps these to exit code 2.
* ``NumericError``: a solver or iteration failed to converge; exit code 1.
"""


class DomainError(ValueError):
    """An argument violates a documented precondition."""


class FormatError(ValueError):
    """A file does not conform to the interchange format."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConfigError(ValueError):
    """A run configuration is incomplete or inconsistent."""


class NumericError(RuntimeError):
    """A numerical routine failed; carries diagnostics when available."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
