"""Exception hierarchy shared across the package."""


class QdpError(Exception):
    """Base class for all package errors."""


class DimensionError(QdpError, ValueError):
    """Operands have incompatible or invalid dimensions."""


class InvariantError(QdpError, ValueError):
    """A numerical invariant (trace, positivity, unitarity, ...) is violated."""


class UnsupportedSpecError(QdpError, ValueError):
    """A recursion spec cannot be executed by the requested strategy."""


class InfeasibleConfigError(QdpError, ValueError):
    """Parameters are self-consistent but the protocol cannot meet them."""


class ConfigError(QdpError, ValueError):
    """Malformed experiment configuration."""
