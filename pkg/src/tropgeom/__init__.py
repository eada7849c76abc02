"""Exact tropical plane curves, metric graphs, and floor-diagram counts."""

from .curves import (
    BalancingViolation,
    Line,
    PlaneTropicalCurve,
    Ray,
    Segment,
    corner_locus,
    lattice_length,
    region_monomials,
)
from .errors import (
    CapacityError,
    FormatError,
    MarkingError,
    PolynomialParseError,
    StretchError,
)
from .floor_diagrams import (
    FloorDiagram,
    MarkedFloorDiagram,
    count_markings,
    enumerate_diagrams,
    enumerate_marked,
    enumerate_markings,
    gw_count,
    kontsevich_oracle,
    multiplicity,
    real_multiplicity,
    welschinger_count,
)
from .metric_graphs import (
    EdgePoint,
    MetricGraph,
    circle,
    enumerate_trivalent,
    is_isometric,
    minimal_model,
    modify,
    segment,
    smoothed,
    theta_graph,
)
from .polynomials import NewtonSubdivision, TropicalPolynomial, dual_subdivision
from .reconstruction import (
    PointConfiguration,
    incidence_check,
    point_on_curve,
    reconstruct,
    stretched_config,
)
from .semiring import (
    NEG_INF,
    EnergySpectrum,
    TropicalProjectivePoint,
    TropicalValue,
    free_energy,
    log_t,
    min_model,
    projective_equal,
    subtropical_add,
    trop_add,
    trop_mul,
)

__version__ = "0.1.0"
