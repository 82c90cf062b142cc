//! Language bias, hypothesis enumeration, generality orders and the
//! hypothesis-space bound.

pub mod bias;
pub mod bound;
pub mod enumerate;
pub mod subsume;

pub use bias::{BiasError, LanguageBias};
pub use bound::{hs_upper_bound, upper_bound};
pub use enumerate::{enumerate, CatalogCache, ClauseCatalog, Enumerator};
pub use subsume::{is_generalisation, is_separable, is_specialisation, theta_subsumes};
