//! Instance generators and structural verifiers.

pub mod fosd;
pub mod lower_bound;
pub mod pricing;
pub mod random;

pub use fosd::{verify_fosd, FosdReport};
pub use lower_bound::{
    gen_linear_lower_bound_family, gen_lower_bound_family, verify_regions, FamilyKind, LowerBoundFamily,
    PerturbedInstance, RegionReport,
};
pub use pricing::{gen_dynamic_pricing, uniform_cost_pricing};
pub use random::{gen_fosd_instance, gen_random_instance};
