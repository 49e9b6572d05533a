"""Codimension-one Ricci soliton subgroups of nilpotent Iwasawa groups.

Modules: rootsys (root systems), algebra (metric Lie algebras), geometry
(left-invariant curvature), realization (matrix and Chevalley models),
iwasawa (N and AN), hypersurface (s = n - R xi and the soliton decision),
lemmas (identity suites), classify (catalog and corollaries), cli.
"""
from .algebra import MetricLieAlgebra, heisenberg, with_gram  # noqa: F401
from .classify import decide_case, golden_table, run_catalog  # noqa: F401
from .geometry import decide_from_ricci, ricci_operator, soliton_decide  # noqa: F401
from .hypersurface import decide_both, make_hypersurface, parse_spec  # noqa: F401
from .iwasawa import build_iwasawa  # noqa: F401
from .realization import build_space, catalog_ids  # noqa: F401
from .rootsys import build_root_system, simple_system  # noqa: F401

__version__ = "0.1.0"

__all__ = ["MetricLieAlgebra", "heisenberg", "with_gram", "decide_case", "golden_table", "run_catalog",
           "decide_from_ricci", "ricci_operator", "soliton_decide", "decide_both", "make_hypersurface",
           "parse_spec", "build_iwasawa", "build_space", "catalog_ids", "build_root_system", "simple_system"]
