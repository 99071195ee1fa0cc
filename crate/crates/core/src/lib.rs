//! Total domination on forests: the number `γ_t` and the number of minimum
//! total dominating sets, computed exactly by a rooted dynamic program and
//! cross-checked against brute force, plus the machinery to verify known
//! and conjectured upper bounds over every tree of small order.

pub mod bounds;
pub mod decimal;
pub mod extremal;
pub mod forest;
pub mod oracle;
pub mod sweep;
pub mod tdp;
pub mod treegen;

pub use bounds::{BoundReport, Verdict};
pub use forest::Forest;
pub use oracle::SetFamily;
pub use tdp::{dp_gamma_t, list_gamma_t_sets, GammaCount, MinCount};
pub use treegen::{canonical_form, gen_trees, CanonicalTree};
