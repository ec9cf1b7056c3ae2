"""Exact fractional difference operators and their matrix-domain sequence spaces."""

from .fraccoef import (
    CoeffTable,
    FracOrder,
    as_order,
    coeff_table,
    convolve_tables,
    frac_coeff,
    is_proper_fraction,
    prefix_sums,
)
from .seqcore import FLOAT, RATIONAL, Seq, WeightSeq, make_family, seq_arith
from .fracops import backward_antidiff, backward_diff, compose_backward, forward_diff
from .probes import ClassVerdict, ConditionReport, MembershipProbe, Verdict
from .gammadomain import (
    TriangleMatrix,
    bk_norm,
    gamma_delta_matrix,
    inverse_matrix,
    inverse_transform,
    limit_basis_element,
    membership,
    schauder_basis,
    transform,
)
from .dualclass import (
    InfMatrix,
    a_tilde_matrix,
    b_matrix,
    beta_dual_test,
    c_n_matrix,
    classify_from_domain,
    classify_into_domain,
    cond_predicate,
    oracle_crosscheck,
    theorem3_T_matrix,
    theorem3_t_seq,
)

__version__ = "0.1.0"
