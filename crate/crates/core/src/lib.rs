//! Exact symbolic computation with jet algebras of finitely presented
//! commutative rings.
//!
//! Given a presentation B = A[x_1,...,x_n]/(f_1,...,f_r) and a jet order m,
//! this crate constructs the jet algebra on the variables d_k x_i with the
//! prolonged relations d_k f_j, together with its weighted grading and
//! structural maps (truncations, zero sections, dilations, induced maps).
//! Claims about these objects are verified two independent ways: exact
//! symbolic identities certified by Groebner bases, and brute-force
//! enumeration of points and truncated arcs over prime fields.

pub mod coeff;
pub mod derivation;
pub mod finite;
pub mod groebner;
pub mod input;
pub mod maps;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod presentation;
pub mod prolong;
pub mod sample;
pub mod series;

pub use coeff::{Coeff, CoeffError, CoefficientRing};
pub use monomial::{JetVariable, Monomial};
pub use parse::{parse_poly, ParseError, VariableScope};
pub use poly::{Homogeneity, PolyError, Polynomial};
pub use presentation::{JetError, Presentation, Tower};
pub use series::{Carrier, SeriesError, TruncatedSeries};
