"""Ready-made groups and the JSON group file format."""

from .constructors import (cyclic, dihedral, make_dihedral_artin_even, make_dihedral_infinite,
                           make_finite_from_perms, make_free, make_free_abelian, make_swap_product,
                           make_wreath, quaternion, symmetric)
from .files import GroupFileError, dumps, from_doc, load_group, loads, save_group, to_doc

__all__ = [
    "GroupFileError", "cyclic", "dihedral", "dumps", "from_doc", "load_group", "loads",
    "make_dihedral_artin_even", "make_dihedral_infinite", "make_finite_from_perms", "make_free",
    "make_free_abelian", "make_swap_product", "make_wreath", "quaternion", "save_group",
    "symmetric", "to_doc",
]
