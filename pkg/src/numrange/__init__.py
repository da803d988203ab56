"""Numerical ranges and radii of matrices acting on finite-dimensional l_p spaces.

The range ``V(T) = {[Tx, x] : ||x||_p = 1}`` is built from the
semi-inner-product ``[x, y] = sum x_k conj(y_k) |y_k|^(p-2) / ||y||_p^(p-2)``.
"""

import sys

from .closed_forms import (CircleFamily, Disc, Ellipse, circle_at, critical_constant,
                           disc_form, envelope_arrays, envelope_point, nonconvex_ellipse_at,
                           radial_profile_g, radius_upper_bound, real_ellipse_at)
from .dualities import (CheckReport, adjoint_dual_check, affine_covariance_check,
                        nonconvexity_witness, transpose_dual_check, transpose_mirror_check)
from .errors import (ConfigurationError, DegenerateParameterError, DimensionError, DomainError,
                     GridMismatchError, HypothesisError, MatrixParseError, NumRangeError)
from .geometry import (ConvexityVerdict, Polygon, convex_hull, convexity_verdict, hausdorff,
                       minkowski_containment, polygon_hausdorff)
from .regions import region_for, region_membership
from .sampler import PointCloud, RadiusResult, numerical_radius, operator_norm_estimate, sample_range
from .sip import PNorm, norm_lp, sip_axiom_report, sip_lp, sphere_grid

__version__ = "0.1.0"

__all__ = [name for name, obj in dict(globals()).items()
           if not name.startswith("_") and not isinstance(obj, type(sys))]
