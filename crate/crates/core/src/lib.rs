//! Exact computer algebra for Coble cubics, Heisenberg-invariant abelian
//! surfaces in P^8, quintic elliptic normal curves in P^4, and the
//! degree-120 Coble-Shioda variety, together with the finite reflection
//! groups that act on them.
//!
//! Everything is exact: rationals, cyclotomic fields Q(zeta_n) for
//! n in {3, 4, 5, 12, 15}, and prime fields F_p. No floating point.

pub mod abelian;
pub mod families;
pub mod groups;
pub mod heis;
pub mod ideal;
pub mod mat;
pub mod modp;
pub mod poly;
pub mod quintic;
pub mod scalar;
