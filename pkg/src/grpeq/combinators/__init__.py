"""Structured groups and the reductions that solve systems over them."""

from .solve import WitnessError, resolve_twists, solve, solve_direct_product, solve_extension
from .structures import (DirectProduct, ExtBox, Extension, ExtensionAuto, Finite, FiniteAuto,
                         FiniteBox, Free, FreeAbelian, FreeAuto, FreeBox, FuncAuto, GroupStructure,
                         MatrixAuto, ProductAuto, ProductBox, RecSet, StructureError, gid, ginv,
                         gmul, recset_member)
from .wreath import (PullbackError, WreathEmbedding, build_wreath, embed_all, factor_orbits,
                     gross_kovacs_embed, product_view, solve_virtually_direct_product)

__all__ = [
    "DirectProduct", "ExtBox", "Extension", "ExtensionAuto", "Finite", "FiniteAuto", "FiniteBox",
    "Free", "FreeAbelian", "FreeAuto", "FreeBox", "FuncAuto", "GroupStructure", "MatrixAuto",
    "ProductAuto", "ProductBox", "PullbackError", "RecSet", "StructureError", "WitnessError",
    "WreathEmbedding", "build_wreath", "embed_all", "factor_orbits", "gid", "ginv", "gmul",
    "gross_kovacs_embed", "product_view", "recset_member", "resolve_twists", "solve",
    "solve_direct_product", "solve_extension", "solve_virtually_direct_product",
]
