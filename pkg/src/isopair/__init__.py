"""Exact construction and certification of an isospectral, non-isometric
four-parameter family of rank-4 lattice pairs.

The two lattices of the pair share every representation number at every
positive parameter point, yet a degree-2 invariant separates them whenever
the four parameters are pairwise different.  All arithmetic is exact:
rational scalars, integer lattices, and q-series with polynomial
coefficients that are only evaluated at a parameter point on demand.
"""

from .codes import (
    K4,
    K4Element,
    TernaryCode,
    intersection_graph,
    matching_element,
    orbit_partition,
    selfdual_codes,
    two_dim_subspaces,
)
from .discrepancy import (
    Certificate,
    ClassPair,
    Route,
    Verdict,
    certify,
    check_relations,
    class_pair_series,
    delta_class,
    delta_series,
    minimal_pair_table,
    minimal_rows,
    minimal_vectors,
)
from .lattices import (
    ALL_LABELS,
    COSET_REPS,
    CosetLabel,
    GramParams,
    Lattice,
    LatticeFamily,
    abcd_from_gram,
    build_family,
    coset_label,
    gram_from_abcd,
    inner,
    inner_poly,
    norm2,
    norm_poly,
    phi,
    project_mod3,
    psi,
    psi_inv,
)
from .qarith import (
    Cmp,
    FormalQSeries,
    ParamPoint,
    ParamPolynomial,
    exp_cmp,
    sigma,
    sigma_order_consistent,
)
from .theta import Kernel, defining_kernel, evaluate_at, pairwise_kernel, rep_series, theta11
from .verification import AnchorResult, run_verification

__version__ = "0.1.0"

__all__ = [
    "ALL_LABELS",
    "AnchorResult",
    "COSET_REPS",
    "Certificate",
    "ClassPair",
    "Cmp",
    "CosetLabel",
    "FormalQSeries",
    "GramParams",
    "K4",
    "K4Element",
    "Kernel",
    "Lattice",
    "LatticeFamily",
    "ParamPoint",
    "ParamPolynomial",
    "Route",
    "TernaryCode",
    "Verdict",
    "abcd_from_gram",
    "build_family",
    "certify",
    "check_relations",
    "class_pair_series",
    "coset_label",
    "defining_kernel",
    "delta_class",
    "delta_series",
    "evaluate_at",
    "exp_cmp",
    "gram_from_abcd",
    "inner",
    "inner_poly",
    "intersection_graph",
    "matching_element",
    "minimal_pair_table",
    "minimal_rows",
    "minimal_vectors",
    "norm2",
    "norm_poly",
    "orbit_partition",
    "pairwise_kernel",
    "phi",
    "project_mod3",
    "psi",
    "psi_inv",
    "rep_series",
    "run_verification",
    "selfdual_codes",
    "sigma",
    "sigma_order_consistent",
    "theta11",
    "two_dim_subspaces",
]
