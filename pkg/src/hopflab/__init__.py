"""Exact finite-type analysis of Hopf hypersurfaces in complex space forms."""

from .exact_scalar import parse_scalar
from .model_catalog import DomainError, ModelSpec
from .projector_embedding import SpaceForm

__all__ = ["DomainError", "ModelSpec", "SpaceForm", "parse_scalar"]
__version__ = "0.1.0"
