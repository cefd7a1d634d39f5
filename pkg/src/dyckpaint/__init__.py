"""Generalized Dyck path counts and the list-colouring / painting games on graph joins."""

from .pathcount import XVector, LatticePath, psi, reduce, x_of_f, catalan
from .graphcore import SimpleGraph, build_graph, join_instance, union_instance
from .paintgame import is_paintable, m_p, prune
from .choose import ListAssignment, is_colorable, m_c_small

__version__ = "0.1.0"
