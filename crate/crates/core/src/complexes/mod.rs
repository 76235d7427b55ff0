//! Multigraded free complexes and the constructions that produce them.

mod chain;
mod cone;
mod minimize;
mod serialize;
mod stable;
mod taylor;

pub use chain::{
    check_exactness_on_box, syzygy_generators, BasisLabel, ExactnessFailure, ExactnessReport, FreeComplex,
};
pub use cone::{mapping_cone, taylor_cone_data, ChainMap};
pub use minimize::minimize;
pub use serialize::{ComplexJson, TermJson};
pub use stable::{
    eliahou_kervaire, is_stable, linear_quotients, stable_closure, stable_order, stable_violation, IteratedCone,
    LinearQuotients,
};
pub use taylor::{koszul_complex, taylor_complex, taylor_order_subsets, KoszulComplex};
pub(crate) use stable::lift_linear;
