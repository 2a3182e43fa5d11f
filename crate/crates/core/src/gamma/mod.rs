//! Numeric side of the shift backend: `Γ` and its relatives as torsion points, eigenfunctions
//! and images of the operators `L_x = Σ x^n τ^n/n!`, where `τ f(s) = f(s+1)`.

mod eval;
mod suites;
mod taylor;

pub use eval::{digamma, gamma, gamma_derivatives, hurwitz_zeta, polygamma, ComplexVal, POLE_MARGIN};
pub use suites::{
    akhiezer_gamma_expansion, classical_functional_relations, gamma_evaluators, gamma_torsion_check,
    hurwitz_identities, kernel_basis_checks, l_x_apply, lx_operator_checks, mellin_shift_check, srivastava_identity,
    GammaConfig,
};
pub use taylor::TruncatedTaylor;
