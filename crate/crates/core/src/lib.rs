//! Exact computational toolkit for the representation theory of the wreath
//! products `W_n = (Z/d) wr S_n` (the full monomial groups `G(d,1,n)`).
//!
//! Everything is computed over the cyclotomic field `Q(zeta_d)` with
//! arbitrary-precision rational arithmetic; there is no floating point
//! anywhere in this crate. The main pieces:
//!
//! * [`exactnum`] — rationals and canonical cyclotomic arithmetic,
//! * [`combinat`] — partitions, multipartitions, labeled cycle types, and
//!   brute-force wreath-group elements,
//! * [`wreathchar`] — irreducible characters, inner products, induction,
//!   decomposition,
//! * [`charpoly`] — character polynomials in the cycle-counting variables
//!   `X_i^c`, polynomial fitting, stable inner products,
//! * [`orlik_solomon`] — NBC bases and equivariant characters of the
//!   cohomology of monomial arrangement complements,
//! * [`coinvariants`] — graded pieces of diagonal coinvariant algebras,
//! * [`applications`] — the headline computations (H^1/H^2 verification,
//!   stability reports, the Gauss-sum series, Fouxe-Rabinovitch modules).
//!
//! With the default `parallel` feature the per-class and per-label inner
//! loops run on rayon; disabling it yields a dependency-free sequential
//! build with identical results.

pub mod applications;
pub mod charpoly;
pub mod coinvariants;
pub mod combinat;
pub mod exactnum;
pub mod exec;
pub mod linalg;
pub mod orlik_solomon;
pub mod wreathchar;

pub use exactnum::{Cyclotomic, Rational};
