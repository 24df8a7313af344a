"""Ampleness of general line bundles in Brill-Noether splitting loci of general k-gonal curves."""

from .classify import (
    BadAmpleDegree,
    Case,
    Decision,
    RankTooSmall,
    basepoint_free,
    birat_pva_sufficient,
    birationally_rel_pva,
    birationally_va,
    classical_rho,
    classical_va,
    conjectured_pva,
    pva_sufficient,
    rel_pva,
    very_ample,
)
from .core import (
    BNDatum,
    EmptyLocus,
    HBNError,
    InconsistentProfile,
    InvalidDatum,
    InvalidSplittingType,
    SplittingType,
    degree,
    from_h0_profile,
    h0,
    h0_profile,
    is_balanced,
    line_bundle_degree,
    neg_parts,
    nonneg_parts,
    nonpos_parts,
    r,
    rho_prime,
    twist,
    u,
)
from .count import (
    CountReport,
    EdgeCase,
    OracleMismatch,
    PreconditionNonnegParts,
    deg_h,
    deg_pi,
    deg_Z,
    dependent_divisor_count,
    directrix_intersection,
    edge_case_classify,
)
from .enumeration import (
    SweepDomain,
    TableRow,
    ViolationReport,
    classification_table,
    enumerate_splitting_types,
    verify_sweep,
)

__version__ = "0.1.0"
