"""Exact computations with abstract open books of 3-manifolds."""

from .mapclass import MappingClass, compose, from_twist_word, invert, is_trivial, twist
from .openbook import OpenBook, boundary_connected_sum, hopf_plumb, invariants, is_full_connected_sum
from .surface import Surface, new_surface

__version__ = "0.1.0"

__all__ = [
    "MappingClass",
    "OpenBook",
    "Surface",
    "boundary_connected_sum",
    "compose",
    "from_twist_word",
    "hopf_plumb",
    "invariants",
    "invert",
    "is_full_connected_sum",
    "is_trivial",
    "new_surface",
    "twist",
]
