//! Exact lattice, polynomial and matrix arithmetic.

mod lattice;
mod matrix;
mod perm;
mod poly;
mod ring;

pub use lattice::{Basis, LatticeVector};
pub use matrix::{render_rows, Matrix, PolyMatrix, RatMatrix};
pub use perm::{first_topological_order, permutations, topological_orders};
pub use poly::{Monomial, TruncatedPoly};
pub use ring::{format_rational, parse_rational, ratio, rational, to_i64, Rational, Ring};
