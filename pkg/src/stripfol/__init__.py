"""Striped surfaces: strip decompositions of surface foliations.

Encode a foliated surface as model strips glued along boundary intervals,
compute its (possibly non-Hausdorff) leaf space, cut it canonically along
special leaves, decide foliated-homeomorphism equivalence by canonical
codes, and realize the closure of a half strip by explicit level-preserving
maps.
"""

from .core import (
    BadEndpointsError,
    DisconnectedSurfaceError,
    DoubleGluingError,
    DuplicateIdError,
    GluingSpec,
    Interval,
    ModelStripSpec,
    Orientation,
    SameSideGluingError,
    SelfGluingError,
    Side,
    StripedSurface,
    SurfaceError,
    UnknownIntervalRefError,
    build_surface,
    components,
    glue,
    is_connected,
    strip,
    validate_class_f,
)
from .leafspace import (
    ArcComponent,
    ArcType,
    LeafPoint,
    LeafSpace,
    PointKind,
    arc_component_types,
    build_leaf_space,
    hausdorff_closure,
    is_special,
    special_points,
)
from .decomposition import (
    CanonicalCode,
    ClosureStrip,
    Component,
    Mode,
    NotAChainError,
    Shape,
    StripClass,
    canonical_code,
    canonicalize,
    check_cycle_components,
    classify_component,
    component_closures,
    decompose,
    h_flip,
    is_isomorphic,
    mirror,
    relabel_strips,
    v_flip,
)
from .homeo import (
    GraphsIntersectError,
    HalfStripChart,
    LevelMap,
    NonIncreasingInputError,
    PLFunction,
    Trapezoid,
    rectify_finite,
    rectify_stages,
    realize_half_strip,
    roof_homeo,
    shrink_leaf,
    trapezoid_under_clearance,
    uk_eval,
    uk_inverse,
)
from .oracle import (
    AxiomReport,
    FiniteBasisSpace,
    bnd_bruteforce,
    check_axioms,
    closure_of,
    discretize,
)
from .io import ParseError, leafspace_json, parse, render, render_dot, render_svg, serialize

__version__ = "0.1.0"
