//! Modular forms and hypergeometric functions attached to the three curve
//! families: Dedekind eta, the parameter functions `s_j`, the Hauptmoduln
//! `j_N^*`, `𝔤_3`, Gauss and Clausen hypergeometric values, the elliptic
//! nome, and the Picard–Fuchs operators.

pub mod eta;
pub mod hauptmodul;
pub mod hyper;
pub mod picard_fuchs;

pub use eta::{delta, eta, eta_series, QExpansion};
pub use hauptmodul::{j_classical, j_from_g3, jstar, reduce_sl2z, s_param, weber_g3};
pub use hyper::{
    elliptic_nome, f2_transformation_pair, ft_real, hyp2f1, hyp2f1_ft, hyp3f2, tau_from_nome, CutPolicy,
};
pub use picard_fuchs::{
    clausen_holomorphic, clausen_nonholomorphic, fd_derivatives, fornberg_weights, hesse_holomorphic, pf_residual,
    v0_hesse, w0_quartic, PfOperator,
};
