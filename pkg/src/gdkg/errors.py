"""Error types shared across the pipeline.

The split matters for exit codes (CLI) and status codes (HTTP):
validation problems map to 1 / 400, missing things map to 2 / 404,
and plain OSError stays 3 / I/O.
"""


class ValidationError(Exception):
    """Malformed input: bad file contents, bad parameters, contract violations."""


class NotFoundError(Exception):
    """A lookup target (node, article, disease, ...) that does not exist."""
