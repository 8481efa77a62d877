"""Curvature measures of metric spaces and the persistence of their Cech and
Vietoris-Rips complexes."""

from .complexes import (
    FilteredComplex,
    InclusionReport,
    SliceComplex,
    cech_filtration,
    cech_slice,
    check_inclusions,
    vr_filtration,
    vr_filtration_of,
    vr_slice,
)
from .errors import CurvtopoError
from .extremal import (
    RadiusFunction,
    distance_radius_function,
    extremal_minorant,
    is_admissible,
    is_extremal,
)
from .persistence import (
    Barcode,
    PersistencePair,
    betti_bruteforce,
    compute_persistence,
    homology_trivial_above_dim0,
)
from .profile import (
    Profile,
    ProfileRecord,
    curvature_profile,
    emit_profile_csv,
    emit_profile_svg,
    read_profile_csv,
)
from .rho import (
    EUCLIDEAN_MAX,
    ExpansionEstimate,
    RhoResult,
    expansion_constant_estimate,
    rho_circle_closed_form,
    rho_equilateral_from_perimeter,
    rho_triple,
    rho_tuple,
    weighted_circumcenter_euclidean,
)
from .spaces import (
    Kind,
    SpaceHandle,
    WitnessMode,
    balls_intersect,
    distance,
    load_space,
    minimax_scaled_distance,
    space_from_json,
    validate_metric,
)
from .triples import (
    GromovRadii,
    LambdaMeasure,
    TriangleSides,
    classify_triple,
    gromov_products,
    lambda_measure,
)

__version__ = "0.1.0"
