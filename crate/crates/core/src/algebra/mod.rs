//! Characteristic polynomials of the single recurrence, Eisenstein witnesses,
//! and the bounded check for positive-linear-recurrence shape.

mod eisenstein;
mod induction;
pub mod lp;
mod plr;
mod poly;

pub use eisenstein::{eisenstein_witness, satisfies_eisenstein, EisensteinOutcome};
pub use induction::{appendix_induction_check, InductionOutcome, InductionStep};
pub use plr::{
    multiply_rational, plr_at_degree, plr_shape_feasible, DegreeVerdict, PlrReport, PlrVerdict,
    DEFAULT_DEGREE_BOUND,
};
pub use poly::{char_poly, IntPolynomial};
