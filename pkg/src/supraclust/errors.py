"""Exception types raised by supraclust."""


class SupraclustError(Exception):
    """Base class for all package errors."""


class DegenerateInputError(SupraclustError, ValueError):
    """The input admits no meaningful result (all-zero network, too few entities, ...)."""


class FormatError(SupraclustError, ValueError):
    """An input file does not follow the canonical edge-list format."""


class DuplicateEdgeError(SupraclustError, ValueError):
    """Duplicate arcs were found while building with ``merge="error"``."""

    def __init__(self, keys):
        self.keys = list(keys)
        shown = ", ".join(" -> ".join(map(str, k)) for k in self.keys[:10])
        more = f" (+{len(self.keys) - 10} more)" if len(self.keys) > 10 else ""
        super().__init__(f"duplicate arcs: {shown}{more}")


class OversizeError(SupraclustError, ValueError):
    """The brute-force oracle was asked to enumerate a network that is too large."""
