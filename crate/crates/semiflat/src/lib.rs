//! Exact exterior calculus on low-dimensional real Lie algebras.
//!
//! The crate builds six-dimensional semi-flat SU(3)-structures from
//! three-dimensional affine Lie data, checks the symplectic-half-flat and
//! complex-side structure equations, computes Tseng-Yau and Bott-Chern
//! cohomology dimensions at the Lie-algebra (invariant-forms) level, and
//! realizes the degree-reversing correspondence between the two sides by a
//! formal fiberwise Fourier-Mukai transform.
//!
//! All arithmetic is exact: coefficients live in Q, in one real quadratic
//! extension Q(sqrt(D)), or in the complexification of either
//! ([`scalar`]). No floating point is used anywhere.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * Coframes are 1-indexed; on six-dimensional algebras indices 1-3 are the
//!   fiber directions and 4-6 the base directions unless a split says
//!   otherwise.
//! * Structure constants enter through the coframe: `de^k = -c^k_{ij} e^i ^ e^j`
//!   summed over i < j, so the shorthand `(0,0,0,0,12,13)` means
//!   `de^5 = e^1 ^ e^2`, `de^6 = e^1 ^ e^3`.
//! * A positive compatible pair `(omega, Omega)` is *normalized* when
//!   `Omega ^ conj(Omega) = s * (2i)^3 * omega^3/3!` for a positive rational
//!   scale `s`; reports carry the exact ratio and `s` rather than rescaling.

pub mod catalog;
pub mod cohomology;
pub mod exterior;
pub mod fm;
pub mod lie;
pub mod matrix;
pub mod mirror;
pub mod scalar;
pub mod su3;
