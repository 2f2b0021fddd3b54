//! Exact computation of monodromy zeta functions, characteristic polynomials
//! of tame monodromy and Néron component-group orders from the dual graph of
//! an sncd special fiber, together with a check of the trace formula
//! `χ(A_s) = Trace(φ | H(A ×_K K^t, Q_ℓ))` for the Jacobian.
//!
//! All arithmetic is exact. Characteristic polynomials are carried as
//! formal products of cyclotomic polynomials ([`CycloProduct`]) and expanded
//! to [`IntPoly`] on demand.
//!
//! ```
//! use neron_trace::{corpus, verify_trace};
//!
//! let f = corpus::i_n_star(0).with_p(3).unwrap();
//! let r = verify_trace(&f).unwrap();
//! assert_eq!(r.p_phi.to_string(), "Phi_2^2");
//! assert_eq!(r.trace_value, 4.into());
//! assert!(r.trace_formula_holds);
//! ```

pub mod arith;
pub mod campaign;
pub mod component_group;
pub mod corpus;
pub mod cyclo;
pub mod error;
pub mod fiber;
pub mod generate;
pub mod linalg;
pub mod monodromy;
pub mod poly;
pub mod report;

pub use arith::prime_to_p_part;
pub use component_group::{
    euler_char_neron, phi_additive, phi_prime_additive, q_primary_decomposition, serre_class,
    verify_trace, SerreClass, TraceReport,
};
pub use cyclo::{
    binomial_product, cyclotomic, substitute_power, AtOne, BinomialProduct, CycloProduct,
};
pub use error::{Error, Result, ValidationError};
pub use fiber::{
    is_purely_additive, parse_fiber, realizability_check, stats, tame_compatibility, Component,
    FiberDocument, FiberStats, SpecialFiber, Violation,
};
pub use generate::{random_fiber, Profile};
pub use linalg::{
    check_q_part_identity, coker_order, companion, determinant, smith_normal_form, CokerOrder,
    IntMatrix, QPartReport,
};
pub use monodromy::{
    p_phi_lorenzini, p_phi_via_zeta, trace_value, zeta, zeta_binomial, zeta_tame, MonodromyResult,
};
pub use poly::IntPoly;
pub use report::JsonReport;
