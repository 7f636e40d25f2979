//! Rigorous sign certification of the closed-form inequalities.
//!
//! [`certify_sign`] covers a box domain by deterministic bisection, keeping a
//! leaf once its outward-rounded enclosure has the target sign. The leaves,
//! stored in depth-first order, form a [`SignCertificate`]; [`replay`]
//! rebuilds the split tree from them, so a replayed certificate proves both
//! the sign on every leaf and that the leaves cover the domain.

mod bisect;
mod closed_form;
mod dual;
mod functions;
mod hexfloat;
mod interval;

pub use bisect::{
    certify_sign, interval_eval, replay, standard_problem, BoxRecord, CertStats, Problem, Region, RegionRecord,
    ReplayReport, Sign, SignCertificate, Status, COLLAR_WIDTH, DEFAULT_BUDGET,
};
pub use closed_form::{closed_form_checks, ClosedFormCheck, ClosedFormReport};
pub use dual::Dual;
pub use functions::{cut_margin, ell, ell_direct, g, h, k, m, m_direct, quad_min, FunctionId};
pub use hexfloat::{from_hex, to_hex};
pub use interval::{exact, round_down, round_up, Endpoint, Interval};
