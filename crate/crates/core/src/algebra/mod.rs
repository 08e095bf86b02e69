//! Exact integer Laurent polynomials, matrices over them and real-root
//! isolation.

pub mod laurent;
pub mod matrix;
pub mod roots;

pub use laurent::{Exponent, LaurentPoly, LaurentPoly1, LaurentPoly2};
pub use matrix::{LaurentMatrix, Matrix, Ring};
pub use roots::{
    certify_sign_change, descartes_certificate, isolate_all_real_roots, isolate_real_roots, refine_root,
    DensePoly, RefinedRoot, RootInterval, SturmSequence,
};
