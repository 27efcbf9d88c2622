//! Weierstrass models over `Q(t)`: discriminants, singular fibers and
//! sections.

mod field;
mod model;
mod poly;
mod roots;

pub use field::{Coeff, Field, QuadElem};
pub use model::{
    analyze_fibration, c_invariants, classify_place, kodaira_from_valuations, listed_euler, listed_kinds, listed_signature, parse_fiber_list, quad_poly_from_json,
    ratfn_from_json, scaling_between, vars, CInvariants, FiberEntry, FiberReport, ListedFiber, ParametricModel, Place,
    WeierstrassModel,
};
pub use poly::{Poly, QPoly, RatFn};
pub use roots::{order_along, places_of, rational_roots, root_multiplicity, split_by_order, FinitePlace};
