//! Kodaira fibers and Néron–Severi lattices of elliptic K3 surfaces built
//! from fiber and section data.

mod kodaira;
mod ns;

pub use kodaira::{ade_block, KodairaKind};
pub use ns::{
    build_ns_gram, section_coefficients, shioda_tate_discriminant, shioda_tate_rank, verify_torsion_relation,
    FiberSpec, FibrationSpec, NsGram, SectionIncidence, TorsionRelation, TorsionSpec,
};
