"""k-palindromic prefixes of a text as unions of affine prefix sets."""

from .affine import AffineRepr, Component, make_irreducible, make_strong_partition
from .driver import LevelCollection, compute_levels, is_k_palindromic, palindromic_length, verify_prefix_suffix
from .extend import append_palindrome
from .matcher import prefix_pal_affine_sets
from .text_model import BaseText, StringRef, TextHandle, as_handle

__all__ = [
    "AffineRepr",
    "BaseText",
    "Component",
    "LevelCollection",
    "StringRef",
    "TextHandle",
    "append_palindrome",
    "as_handle",
    "compute_levels",
    "is_k_palindromic",
    "make_irreducible",
    "make_strong_partition",
    "palindromic_length",
    "prefix_pal_affine_sets",
    "verify_prefix_suffix",
]
