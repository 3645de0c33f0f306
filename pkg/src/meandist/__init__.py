"""Mean distance of random points in convex bodies.

Estimators and exact oracles for Delta(K) = E|X1 - X2|, the first intrinsic
volume V1(K), the cross-section functional I(h), and numerical verification of
the sharp two-sided bound on Delta(K) / V1(K) together with its degenerate
extremal families.
"""

__version__ = "0.1.0"

from .bodies import (
    Ball,
    Box,
    ConvexBody,
    Ellipsoid,
    RegularPolygon,
    Simplex,
    VPolytope,
    chord_length,
    contains,
    diameter,
    support,
    volume,
    width,
)
from .sampling import (
    RngStream,
    ThinBodyError,
    sample_direction,
    sample_directions,
    sample_point,
    sample_points,
)
from .distance import (
    Estimate,
    chord_mean_distance,
    exact_for_body,
    exact_mean_distance,
    mc_mean_distance,
    sylvester_p4,
)
from .intrinsic import SphereQuadrature, mean_width, ratio, v1, v1_with_error
from .profiles import (
    AffineProfileParams,
    Profile,
    ValidationReport,
    affine_I,
    affine_profile,
    functional_I,
    functional_I_via_H,
    h0,
    maximize_I,
    minimize_I,
    normalize,
    profile_from_body,
    profile_l1_distance,
    random_profile,
    rearrange,
    uniform_profile,
    validate_profile,
)
from .extremal import (
    BoundConstants,
    LimitReport,
    bound_constants,
    k_delta,
    k_prime_delta,
    lower_bound,
    verify_limits,
)

__all__ = [name for name in dir() if not name.startswith("_")]
