"""Björling-type construction and verification of Born-Infeld soliton
surfaces in Lorentz-Minkowski 3-space."""

__version__ = "0.1.0"

from .bc_rep import BCData, LightlikePair, bc_lightlike_decomposition, bc_normal, bc_point, bc_surface
from .bjorling import Domain, HolomorphicData, SurfaceSample, build_holomorphic_data, restrict_to_diamond, solve
from .errors import BjbiError
from .geometry_verify import (FundamentalForms, HeightField, born_infeld_residual,
                              causal_classify, find_graph_plane, fundamental_forms,
                              gauss_curvature_graph, height_over_plane,
                              local_graph_axes)
from .graphicality import (GraphVerdict, JacobianField, Mat2, classify,
                           is_p_matrix, is_positive_quasidefinite, jacobian_field,
                           search_pqd_strips)
from .lorentz import TimelikePlane, Vec3L, causal_character, lorentz_cross, minkowski_inner, unit_normalize
from .split_scalar import ComplexScalar, RealPoly, SplitComplex, TaylorSeries, eval_extension, split_mul
from .strips import CurveL3, Strip, geodesic_strip, load_strip, save_strip, validate_strip
