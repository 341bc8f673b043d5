"""Second Hankel determinant bounds for a Chebyshev-subordinated bi-univalent class."""
from .bounds import (
    BoundResult,
    ClassParams,
    DomainError,
    EndpointError,
    SignCase,
    bound_bsigma_closed,
    bound_corollary1,
    bound_corollary2,
    bound_starlike_closed,
    hankel_bound,
)
from .series import TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "ClassParams",
    "DomainError",
    "EndpointError",
    "SignCase",
    "TruncatedSeries",
    "bound_bsigma_closed",
    "bound_corollary1",
    "bound_corollary2",
    "bound_starlike_closed",
    "hankel_bound",
]
