//! Product-state structure of subspaces: detection of product states,
//! completely entangled subspaces and their complements, the trace-out
//! dichotomy, the two-qubit bad-partner census, and the finite
//! first-factor projection sets with their m! bound.

mod binform;
mod ops;
mod prodcount;
mod search;

pub use binform::{BinForm, ProjectivePoint};
pub use ops::{
    ces_complement_check, contains_product, contains_product_bipartite, permute_qubits,
    prop_c2_census, suppsprod_dichotomy, ClaimOutcome, PartnerCensus,
};
pub use prodcount::{
    bloch_grid_check, lift_point, point_membership_residual, prodcount_points, GridCheck,
    ProdcountOutcome,
};
pub use search::{
    product_residual, product_search, schmidt_peel, ProductSearchResult, SearchSettings, Verdict,
};
