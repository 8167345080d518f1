//! Exact-arithmetic kernel for quantized coadjoint orbits of the real and
//! complex affine groups.
//!
//! Everything symbolic is computed over the Gaussian rationals ([`ScalarQ`]),
//! so identities either hold exactly or fail with a nonzero residual that can
//! be inspected. The crate is `no_std` (with `alloc`); IO, JSON formats and
//! the FFT verification harness live in the companion `orbitkit` crate.
//!
//! Module map:
//!
//! - [`liealg`]: finite-dimensional Lie algebras by structure constants,
//!   `ad`, `exp(-ad)` in closed form and as a truncated series.
//! - [`coadjoint`]: coadjoint action and orbit classification for the real
//!   affine algebra, orbit-chart Hamiltonians, Poisson brackets.
//! - [`starprod`]: terminating Moyal/Weyl star product on a closed symbol
//!   class, with the bidifferential operators `P^r`.
//! - [`quantize`]: star-multiplication operators and their partial-Fourier
//!   conjugates as exact differential-multiplication operators.
//! - [`reps`]: the irreducible unitary representations of the affine groups,
//!   with group-law, unitarity and infinitesimal-generator checks.
//! - [`index`]: multiplicative genus series, Riemann-Roch on the projective
//!   line, and the discrete Hodge index on simplicial complexes.
//! - [`xcomplex`]: noncommutative forms, the Fedosov product, the two-term
//!   X-complex of adic truncations, idempotent lifting and Chern maps.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod coadjoint;
pub mod expnum;
pub mod index;
pub mod liealg;
pub mod linalg;
pub mod quantize;
pub mod reps;
pub mod scalar;
pub mod starprod;
pub mod xcomplex;

pub use expnum::ExpSum;
pub use scalar::{Rat, ScalarQ};
