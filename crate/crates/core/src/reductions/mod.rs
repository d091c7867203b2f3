pub mod families;
pub mod gadget;
pub mod longshort;

pub use families::{gen_family, make_p_kl, oriented_path, FamilyError};
pub use gadget::{build_b, reduce_ustcon, select_x_case1, select_x_case2, stretched_witness, GadgetSpec, ReductionError};
pub use longshort::reduce_longshort;
