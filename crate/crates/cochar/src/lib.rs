//! Exact-arithmetic toolkit for cocharacter sequences of PI-algebras whose
//! T-ideal of identities is a product of commutator ideals.
//!
//! The crate computes, entirely over exact rationals:
//!
//! * partition / Young-diagram combinatorics ([`partitions`]);
//! * Schur polynomials, Schur-basis expansions, Littlewood–Richardson
//!   coefficients and symmetric-group character decompositions ([`symfunc`]);
//! * truncated multigraded Hilbert series and the product formulas relating
//!   them ([`series`]);
//! * brute-force graded linear algebra in the free associative algebra:
//!   T-ideal components, relatively free algebra dimensions, proper
//!   subalgebras, codimensions and cocharacters ([`freealg`]);
//! * executable cross-checks of the shape bounds and series identities on the
//!   computed data ([`verify`]).

pub mod freealg;
pub mod partitions;
pub mod series;
pub mod symfunc;
pub mod verify;
