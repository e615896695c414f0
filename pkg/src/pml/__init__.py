"""Polymatroid algebra and excluded-minor certification for the binary class."""

from pml.core import (
    Polymatroid,
    TypeTriple,
    TypeUndefinedError,
    canonical_form,
    canonical_key,
    is_isomorphic,
    is_valid,
    singleton,
    type_of,
    validate,
)

__all__ = [
    "Polymatroid",
    "TypeTriple",
    "TypeUndefinedError",
    "canonical_form",
    "canonical_key",
    "is_isomorphic",
    "is_valid",
    "singleton",
    "type_of",
    "validate",
]
