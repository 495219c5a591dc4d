//! Exact computer algebra for the invariant geometry of the S6-symmetric
//! quartic threefolds: cyclotomic arithmetic, the 2.S6 spin representation,
//! line configurations in P^3, and recovery of the special parameters of the
//! quartic family.

pub mod cyclo;
pub mod forms;
pub mod mat;
pub mod perm;
pub mod proj;
pub mod reps;
pub mod census;
pub mod cubics;
pub mod cover;
pub mod spin;
