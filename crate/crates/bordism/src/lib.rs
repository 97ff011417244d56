//! Computation of the image of the spin and spin^c cobordism rings inside the
//! unoriented bordism ring, through a chosen degree.
//!
//! The pipeline: partitions index Thom's basis of the unoriented bordism ring
//! ([`partitions`]); symmetric-function transition matrices produce the dual
//! polynomials P_lambda ([`symm`]); the Steenrod action on Stiefel-Whitney
//! polynomials and Thom classes ([`steenrod`]) combines with degreewise
//! presentations of the relevant Thom spectra ([`spectra`]) to run the
//! primitive search ([`primitives`]); manifold representatives are checked by
//! Stiefel-Whitney numbers ([`manifolds`]). All coefficients are GF(2)
//! ([`linf2`], [`f2poly`]).

pub mod f2poly;
pub mod linf2;
pub mod manifolds;
pub mod partitions;
pub mod primitives;
pub mod spectra;
pub mod steenrod;
pub mod symm;
pub mod tables;
