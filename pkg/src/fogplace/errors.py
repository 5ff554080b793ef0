"""Exception types shared across the package."""


class FogplaceError(Exception):
    """Base class for all package errors."""


class InvalidConfigError(FogplaceError, ValueError):
    """Raised for malformed build parameters or scenario configs."""


class NodeNotFoundError(FogplaceError, KeyError):
    """Raised when a node id is not part of a topology."""


class PowerDomainError(FogplaceError, ValueError):
    """Raised when a device load exceeds its rated capacity."""


class ContractError(FogplaceError, ValueError):
    """Raised when inputs to an evaluation are mutually inconsistent."""


class OracleScopeError(FogplaceError, ValueError):
    """Raised when an instance is too large for exhaustive enumeration."""
