//! Exact arithmetic for the Y_{p,q,r} root systems attached to the 14
//! exceptional unimodal singularities: cores, E-set types, the admissible
//! inner products between E-set vectors, and the cusp cycle tables.

mod alpha;
mod cycles;
mod tables;
mod ypqr;

pub use alpha::{
    alpha_case, alpha_range_cross_type, alpha_range_same_type, alpha_window_same,
    cyclic_orientation, is_hyperbolic, third_type_check, verify_alpha_one, AlphaCase, AlphaReport,
    CrossPair, SamePair, ThirdType,
};
pub use cycles::{adjust_cycle, dual_cycle, AdjustDirection, CycleSeq};
pub use tables::{
    check_weights, cusp_row, hyperbolic_triples, parse_table1, table1, table1_entry, table2,
    triples_with_three_free_ends, CuspFamily, CuspRow, DolgachevEntry, WeightCheck, TABLE1_JSON,
    TABLE2_JSON,
};
pub use ypqr::{
    core_nodes, eset_types, n_plus_2, weyl_signature, y_projection, ypqr_roots, Arm, Core,
    CoreType, ETypePair, YProjection, Ypqr,
};
