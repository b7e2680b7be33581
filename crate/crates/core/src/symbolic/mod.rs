//! Laurent monomials in the matrix variables `x_ij`, polynomials in
//! `q^{1/2}`, and certificates built from covering chains.

mod certificate;
mod laurent;
mod poly;

pub use certificate::{
    edge_factorization, sfl_certificate, verify_certificate, CombinedForm, EdgeFactorization, SflCertificate,
    SflStep, VerificationReport,
};
pub use laurent::{asm_monomial, q_monomial, LaurentMonomial, MinorRef, QMonomial};
pub use poly::{Coeff, HalfExpPoly};
