"""Exact character-degree computations for matrix groups over finite quotient rings."""

from .characters import (
    CharacterTableModP,
    DegreeMultiset,
    abelian_degrees,
    character_degrees,
    character_table_modp,
)
from .clifford import (
    CliffordReport,
    DualGroup,
    clifford_dimirr,
    default_normal_subgroup,
    dual_group,
    irr_above,
    orbits_and_stabilizers,
)
from .groups import (
    ConjugacyClassData,
    FiniteMatrixGroup,
    GroupScheme,
    SubgroupView,
    build_group,
    center,
    congruence_kernel,
    conjugacy_classes,
    predicted_order,
    quotient_group,
    scheme_order_poly,
)
from .harness import (
    CompareReport,
    ExperimentConfig,
    FitReport,
    compare_rings,
    compute_clifford_report,
    compute_degrees,
    fit_polynomials,
    run_dimirr,
)
from .lietype import (
    CandidateSet,
    RootDatum,
    TwistedWeylGroup,
    candidate_set,
    center_order_poly,
    dl_degree,
    order_polynomial,
    root_datum,
    torus_order,
    verify_containment,
    weyl_group,
)
from .localring import QuotientRing, RingSpec, iso_check_truncated, make_ring
from .polynomials import RationalPoly, SamplePointSet, eval_poly, interpolate
from .porc import PorcFunction, porc_consolidate, porc_quotient

__all__ = [name for name in dir() if not name.startswith("_")]
