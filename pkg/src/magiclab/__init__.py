"""Exact enumeration and structure of magic labellings of graphs."""

from magiclab.cone import dimension, extreme_rays, graph_feasible_orders, order_feasible
from magiclab.enumeration import (count_distinct, count_magic, count_series, enumerate_distinct,
                                  enumerate_magic, multivariate_truncation)
from magiclab.graph import Graph, catalog_graph, is_magic, load_graph, resolve_graph
from magiclab.kernel import BACKEND
from magiclab.monoid import (Decomposition, MonoidPiece, builtin_decomposition, decomp_represent,
                             verify_decomposition)
from magiclab.omega import crude_form, diag_eq, diag_gt, expand_bounded, omega_eq, omega_geq
from magiclab.series import MultiSeries, RationalGF, fit_stanley, reconstruct_numerator
from magiclab.symmetry import PermGroup, automorphisms, d6_group_g4, orbit_count

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Decomposition", "Graph", "MonoidPiece", "MultiSeries", "PermGroup", "RationalGF",
    "automorphisms", "builtin_decomposition", "catalog_graph", "count_distinct", "count_magic",
    "count_series", "crude_form", "d6_group_g4", "decomp_represent", "diag_eq", "diag_gt",
    "dimension", "enumerate_distinct", "enumerate_magic", "expand_bounded", "extreme_rays",
    "fit_stanley", "graph_feasible_orders", "is_magic", "load_graph", "multivariate_truncation",
    "omega_eq", "omega_geq", "orbit_count", "order_feasible", "reconstruct_numerator",
    "resolve_graph", "verify_decomposition",
]
