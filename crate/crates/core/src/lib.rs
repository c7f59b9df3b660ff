//! Quantitative Bohr phenomena for bases of entire functions.
//!
//! The crate computes, estimates, and certifies the constants that appear in
//! majorant inequalities of the form
//! `sum_n |f_n| sup_K |phi_n| <= C sup_{K1} |f|`, where `f = sum_n f_n phi_n`
//! runs over entire functions expanded in a fixed basis and `K`, `K1` are
//! compacts from a one-parameter family (balls, polydiscs, segments with
//! their Bernstein ellipses).
//!
//! Main entry points:
//! - [`bohr::individual_bohr_radius`] and [`bohr::kappa_upper_search`] for
//!   Bohr radii of single functions and of whole dimension families;
//! - [`bohr::faber_bohr_r0`] for the smallest admissible ellipse of the
//!   Faber system over a corpus;
//! - [`certify::certify`] / [`certify::verify_certificate`] for
//!   corpus-verified majorant certificates with closed-form constants;
//! - [`gamma::gamma_curve`], [`gamma::liouville_verdict`], and
//!   [`gamma::borel_caratheodory_general`] for the extremal level function
//!   on exhaustions and its consequences;
//! - [`lp::solve_checked`], the dense simplex solver behind the level
//!   function.
//!
//! Everything that samples is driven by a [`sampling::SamplingPlan`] and a
//! seed, so runs are reproducible byte for byte.

pub mod basis;
pub mod bohr;
pub mod certify;
pub mod error;
pub mod gamma;
pub mod geometry;
pub mod lp;
pub mod sampling;
pub mod series;

pub use basis::{
    basis_eval, eval_combination, extract_coefficients, member_sup, shift_basis, BasisFamily,
    ExpansionResult, ExtractionBudget,
};
pub use bohr::{
    faber_bohr_r0, individual_bohr_radius, kappa_upper_search, majorant, majorant_curve,
    mobius_coefficients, BohrRadiusOutcome, DomainFamily, MajorantCurve, RadiusEstimate,
};
pub use certify::{
    absolute_basis_constant, borel_caratheodory_check, build_corpus, certify, find_r_tilde,
    ratio_sum, schwarz_step, transfer_bound, verify_certificate, ConstantReport, CorpusSpec,
    DominationReport, GbpCertificate, TransferOutcome, VerifyReport,
};
pub use error::{Error, Result};
pub use gamma::{
    borel_caratheodory_general, gamma_closed_form, gamma_curve, gamma_lp, liouville_verdict,
    schwarz_domain_index, BcGeneralReport, ExhaustionLabel, ExhaustionSpec, GammaCurve,
    GammaMethod, GammaValue, MethodPolicy, SchwarzOutcome, Verdict, VerdictKind,
};
pub use geometry::CompactSet;
pub use lp::{LpProblem, LpSolution};
pub use sampling::{sup_norm, sup_re, SamplingPlan, SupEstimate};
pub use series::{random_series, MultiIndex, TruncatedSeries};
