//! Exact computation of Milnor and Tjurina numbers of isolated hypersurface
//! singularities through standard bases in the local ring, together with
//! numerical semigroups of plane branches and a catalog of μ/τ bounds.

pub mod bounds;
pub mod invariants;
pub mod localalg;
pub mod poly;
pub mod semigroup;
