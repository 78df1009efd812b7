"""Exception hierarchy.

Every configuration problem carries a ``kind`` (parse, schema, invariant, io)
and the dotted field path it was found at.
"""

from __future__ import annotations


class FuzzError(Exception):
    kind = "error"

    def __init__(self, message: str, path: str = "") -> None:
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class ConfigError(FuzzError, ValueError):
    """Invalid configuration detected before any scene runs."""

    kind = "config"


class ParseError(ConfigError):
    kind = "parse"


class SchemaError(ConfigError):
    kind = "schema"


class InvariantError(ConfigError):
    kind = "invariant"


class ReportIOError(FuzzError, OSError):
    kind = "io"
