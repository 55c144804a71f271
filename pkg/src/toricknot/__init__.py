"""Symplectic embedding certificates and knottedness obstructions for
four-dimensional toric domains."""

from .domains import (
    DomainError,
    QuadClass,
    RegionKind,
    SpecParseError,
    ToricRegion,
    WrongKindError,
    classify_quadrilateral,
    concave_polygon,
    convex_polygon,
    cosupport,
    ellipsoid_region,
    lp_ball,
    parse_domain_spec,
    point_in_region,
    polydisk,
    quadrilateral_region,
    rectangle,
    region_contains,
    scale_region,
    support_norm,
    triangle,
)
from .weights import WeightExpansion, WeightSeq, concave_weights, convex_expansion, ellipsoid_weights
from .cremona import (
    MoveStep,
    PackingResult,
    PackingVector,
    cremona_move,
    min_packing_capacity,
    packs,
)
from .certificates import (
    DeltaBound,
    EmbeddingCertificate,
    check_ccvaxy,
    check_cvxaxy,
    check_longembed,
    check_step2,
    delta_ell_upper,
)
from .obstructions import (
    PolydiskPair,
    Verdict,
    VerdictStatus,
    allpoly_params,
    delta_u_lower,
    knotted_verdict,
    lp_threshold_check,
    polydisk_knot_check,
    product_threshold,
    product_verdict,
)
from .filtered import (
    DerivedComplex,
    FilteredComplex,
    Generator,
    derived_complex,
    homology_rank,
    inclusion_image_rank,
    random_filtered_complex,
)
from .barcodes import (
    BarcodeModel,
    NoWindowError,
    barcode_concave,
    barcode_convex,
    barcode_product,
    ellipsoid_orbit_actions,
    ellipsoid_orbit_count,
)
from . import torusmap

__version__ = "0.1.0"
