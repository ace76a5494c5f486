"""Exact colored Jones degrees for cables and 2-fusion knots."""

from .cabling import (
    GOLDEN_KNOTS,
    CableQuasiPoly,
    MaxCertificate,
    NotAdmissible,
    StabilizationFailure,
    admissible,
    boundary_slopes_cable,
    cable_degree_per_n,
    cable_exact,
    cable_provider,
    cable_quasipoly,
    golden_knot,
    load_closed_form,
    torus_knot,
    unknot,
)
from .conjectures import GridSpec, SlopeReport, verify_grid
from .exactpoly import QuarterLaurent, degree_hi, degree_lo, quantum_integer
from .fusion import (
    FusionParams,
    degree_closed,
    delta_bruteforce,
    delta_closed,
    fusion_degree,
    fusion_knot,
    region,
)
from .qpoly import PeriodicSeq, QuasiPoly, fit_quasipoly, m_constants

__version__ = "0.1.0"
