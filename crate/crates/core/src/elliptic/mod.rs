//! Elliptic functions on `E ≅ ℂ/(ℤ+ℤτ)`: the q-averaged dilogarithm and
//! trilogarithms, Zagier's `D_{a,b}(q;x)`, and the Eisenstein–Kronecker
//! lattice sums they equal.

pub mod lattice;
pub mod qseries;
pub mod torsion;

pub use lattice::{ek_lattice, ek_lattice_at, kernel_sums, kernel_sums_at, shell_sum, KernelSums, LatticeSum, DEFAULT_CUTOFF};
pub use qseries::{
    dab_q, dab_q_at, divisor_eval, ell_J, ell_L31, ell_L32, ell_L32_with, ell_dilog, ell_dilog_at, ell_j_at, ell_l31_at,
    ell_l32_at, OriginPolicy, PointFn,
};
pub use torsion::{Divisor, Tau, TorsionCoord};
