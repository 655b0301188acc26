"""Computational workbench for strict polynomial functors over prime fields:
p-core blocks, Schur algebra modules, Ext tables and wreath corner algebras."""

from .partitions import Partition, basic_diagrams, blocks, is_basic, p_core, parse_partition
from .primefield import PFMatrix
from .symchar import GradedDim, dim_schur, graded_dim_Ai, lr_coeff
from .schur import schur_algebra, simple_module, weyl_module
from .homalg import ExtTable, ext_dims, minimal_resolution
from .wreath import algebra_Ai, corner_algebra, corner_graded_dim, wreath_product
from .verify import Report

__all__ = [
    "Partition", "basic_diagrams", "blocks", "is_basic", "p_core", "parse_partition",
    "PFMatrix", "GradedDim", "dim_schur", "graded_dim_Ai", "lr_coeff",
    "schur_algebra", "simple_module", "weyl_module",
    "ExtTable", "ext_dims", "minimal_resolution",
    "algebra_Ai", "corner_algebra", "corner_graded_dim", "wreath_product", "Report",
]
__version__ = "0.1.0"
