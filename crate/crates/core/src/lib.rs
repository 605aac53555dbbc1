//! Exact computation with singular holomorphic k-webs on the plane.
//!
//! A web is represented in an affine chart by a symmetric form
//! `sum a_i dx^i dy^(k-i)` with polynomial coefficients over the rationals.
//! The crate computes discriminants, pullbacks under rational maps, web
//! degrees on the projective plane, invariant curves and a numerical
//! monodromy of the web directions, and ships a catalog of explicit
//! examples checked symbolically.

pub mod catalog;
pub mod error;
pub mod exactalg;
pub mod monodromy;
pub mod parse;
pub mod planemaps;
pub mod symforms;
pub mod ueda;
pub mod webgeom;

pub use error::{Result, WebError};
pub use exactalg::{Poly2, RatFunc2, Rational, UPoly};
pub use symforms::{BinaryForm, ChartChange, Divisor, LineParam, SymForm};
pub use monodromy::{MonodromyResult, Perm, SheetSystem};
pub use planemaps::{FormPencil, PencilAction, PlaneMap, PullbackResult};
pub use webgeom::WebOnP2;
