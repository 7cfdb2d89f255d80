//! Special values of Dirichlet and modular L-functions: the constants
//! `d_k = L'(χ_{-k}, -1)` and `M_N = L'(g_N, 0)` for weight-3 CM newforms.

pub mod dirichlet;
pub mod mvalue;
pub mod newform;

pub use dirichlet::{d_value, d_value_derivative_oracle, dirichlet_L2, dirichlet_L2_clausen, dirichlet_l, DirichletChar};
pub use mvalue::{
    eval_imaginary, fricke_ratio, l_value_3, required_length, sym2_det_check, M_value, M_value_quadrature, Sym2Det,
};
pub use newform::{
    builtin_eta_quotient, cm_candidates, cm_theta_pair, eta_quotient_coeffs, kronecker, load_level,
    load_newform_file, newform_coeffs, twist, NewformSource, NewformSpec, BUILTIN_LEVELS,
};

use crate::error::Result;
use crate::PrecisionCtx;
use std::path::Path;

/// CM candidates whose Fricke ratio at the claimed level is `+1` to within
/// `10⁻¹⁵`, i.e. forms for which the claimed level and the sign used by
/// [`M_value`] are both confirmed numerically.
pub fn confirmed_cm_forms(len: usize) -> Result<Vec<NewformSpec>> {
    let ctx = PrecisionCtx::new(20)?;
    let mut out = Vec::new();
    for f in cm_candidates(len)? {
        let r = fricke_ratio(&f, &ctx)?;
        if (r.to_f64() - 1.0).abs() < 1e-15 {
            out.push(f);
        }
    }
    Ok(out)
}

/// Write every confirmed CM form to `dir/<label>.txt` in the coefficient
/// file format. Returns the labels written.
pub fn write_newform_dir(dir: &Path, len: usize) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut labels = Vec::new();
    for f in confirmed_cm_forms(len)? {
        std::fs::write(dir.join(format!("{}.txt", f.label)), f.to_file_string())?;
        labels.push(f.label);
    }
    Ok(labels)
}

/// Length of the shipped coefficient files (`a_1, …, a_{10⁴}`).
pub const SHIPPED_LENGTH: usize = 10_001;

/// Directory of the coefficient files shipped with the crate.
pub fn default_newform_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/newforms")
}

/// The newforms of one level: the builtin eta quotient when there is one,
/// else every file in `dir` (the shipped directory when `None`) whose
/// header names the level. Files failing validation are an error.
pub fn newforms_of_level(level: u32, dir: Option<&Path>, len: usize) -> Result<Vec<NewformSpec>> {
    if BUILTIN_LEVELS.contains(&level) {
        return Ok(vec![newform_coeffs(level, len)?]);
    }
    let d = dir.map(Path::to_path_buf).unwrap_or_else(default_newform_dir);
    let forms = load_level(&d, level)?.into_iter().collect::<Result<Vec<_>>>()?;
    if forms.is_empty() {
        return Err(crate::Error::RejectedSource {
            level,
            reason: format!("no coefficient file in {}", d.display()),
        });
    }
    Ok(forms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_files_match_generator() {
        let dir = default_newform_dir();
        for f in confirmed_cm_forms(SHIPPED_LENGTH).unwrap() {
            let text = std::fs::read_to_string(dir.join(format!("{}.txt", f.label))).unwrap();
            assert_eq!(text, f.to_file_string(), "{}", f.label);
        }
        for lvl in [24u32, 32, 40, 48, 64, 112] {
            let forms = newforms_of_level(lvl, None, SHIPPED_LENGTH).unwrap();
            assert!(forms.iter().all(|f| f.level == lvl && f.len() == SHIPPED_LENGTH));
        }
        assert_eq!(newforms_of_level(24, None, 10).unwrap().len(), 2);
    }
}
