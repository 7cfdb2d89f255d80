//! Integer-relation detection and the verification registry that binds
//! each identity of the library (torsion formulas for `n_j`, linear
//! relations among trilogarithms, L-value evaluations and tables) to a
//! reproducible two-sided check.

mod formulas;
pub mod pslq;
mod report;

pub use formulas::{Erratum, LinComb, NamedDivisor, ERRATA, PropCurve, PropFormula, Sym, TableCell, PROP4, TABLE1, TABLE2, TABLE3};
pub use pslq::{digits_needed, find_relation, IntegerRelation};
pub use report::{Status, VerifyReport};

use crate::curves::{curve_tau, named_points, periods_agm, CurveParam, DomainCase, Family};
use crate::elliptic::lattice::tail_bound;
use crate::elliptic::{divisor_eval, shell_sum, Divisor, OriginPolicy, PointFn, Tau, TorsionCoord};
use crate::error::{Error, Result};
use crate::lfunctions::{d_value, default_newform_dir, load_level, newform_coeffs, required_length, sym2_det_check, M_value, BUILTIN_LEVELS};
use crate::mahler::{n2_quadrature, n_mahler, MahlerRoute};
use crate::numeric::{parse_real, PrecisionCtx};
use num_complex::Complex64;
use rayon::prelude::*;
use rug::{Complex, Float};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

/// Every registered identity id.
pub const REGISTRY: &[&str] = &[
    "claim1",
    "claim2",
    "conj.n2.1",
    "conj.n2.16",
    "det.ms.s-8",
    "linrel.2tors",
    "linrel.3tors",
    "linrel.4tors",
    "prop.0to64",
    "prop4.i",
    "prop4.ii",
    "prop4.iii",
    "table1",
    "table2",
    "table3",
    "thm1.E",
    "thm1.F",
    "thm1.G.neg",
    "thm1.G.pos",
];

/// Named groups of registry ids.
pub const SUITES: &[&str] = &["all", "core", "linear", "tables", "theorem1"];

/// Registry ids belonging to a suite, or `None` for an unknown name.
pub fn suite_members(name: &str) -> Option<Vec<&'static str>> {
    let pick = |f: &dyn Fn(&str) -> bool| REGISTRY.iter().copied().filter(|id| f(id)).collect::<Vec<_>>();
    match name {
        "all" => Some(REGISTRY.to_vec()),
        "core" => Some(pick(&|id| id.starts_with("linrel.") || id.starts_with("claim") || id == "prop.0to64")),
        "linear" => Some(pick(&|id| id.starts_with("linrel."))),
        "tables" => Some(pick(&|id| id.starts_with("table") || id.starts_with("prop4.") || id.starts_with("det."))),
        "theorem1" => Some(pick(&|id| id.starts_with("thm1."))),
        _ => None,
    }
}

/// Parameters of one check. Reals are kept as strings so that the report
/// label is exactly what was requested; they are parsed at the working
/// precision of the check.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyParams {
    /// Family parameter `s`; accepts `a+bsqrtc` and `a-bsqrtc`.
    pub s: Option<String>,
    /// Imaginary part of `τ` for checks on a line `Re τ = const`.
    pub y: Option<String>,
    /// `(Re τ, Im τ)`.
    pub tau: Option<(String, String)>,
    /// Roots `e₁, e₂, e₃` of `4(x-e₁)(x-e₂)(x-e₃)`.
    pub roots: Option<[String; 3]>,
    /// Which of `ℒ_{3,1}`, `ℒ_{3,2}`.
    pub j: Option<u32>,
    /// Table row, e.g. `L_1(P+2Q)`.
    pub entry: Option<String>,
    /// Route of the Mahler-measure side of the torsion formulas.
    pub route: MahlerRoute,
    /// Shell cutoff for lattice sums.
    pub cutoff: u32,
    /// Directory of newform coefficient files; the shipped one when `None`.
    pub newform_dir: Option<PathBuf>,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self {
            s: None,
            y: None,
            tau: None,
            roots: None,
            j: None,
            entry: None,
            route: MahlerRoute::Lattice,
            cutoff: 400,
            newform_dir: None,
        }
    }
}

/// A registry id with concrete parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Case {
    /// Registry id.
    pub id: String,
    /// Parameters.
    pub params: VerifyParams,
}

impl Case {
    /// `id[k=v,…]` with the identity parameters.
    pub fn label(&self) -> String {
        let p = &self.params;
        let mut parts = Vec::new();
        if let Some(s) = &p.s {
            parts.push(format!("s={s}"));
        }
        if let Some(y) = &p.y {
            parts.push(format!("y={y}"));
        }
        if let Some((a, b)) = &p.tau {
            parts.push(format!("tau={a}+{b}i"));
        }
        if let Some(r) = &p.roots {
            parts.push(format!("e=({},{},{})", r[0], r[1], r[2]));
        }
        if let Some(j) = p.j {
            parts.push(format!("j={j}"));
        }
        if let Some(e) = &p.entry {
            parts.push(e.clone());
        }
        if parts.is_empty() {
            self.id.clone()
        } else {
            format!("{}[{}]", self.id, parts.join(","))
        }
    }
}

fn with(f: impl FnOnce(&mut VerifyParams)) -> VerifyParams {
    let mut p = VerifyParams::default();
    f(&mut p);
    p
}

/// The documented parameter set of a registry id.
pub fn default_params(id: &str) -> Result<Vec<VerifyParams>> {
    let s_list = |v: &[&str]| v.iter().map(|s| with(|p| p.s = Some(s.to_string()))).collect::<Vec<_>>();
    let table = |t: &[TableCell]| {
        t.iter()
            .map(|c| {
                with(|p| {
                    p.s = Some(c.s.to_string());
                    p.entry = Some(c.entry.to_string());
                })
            })
            .collect::<Vec<_>>()
    };
    Ok(match id {
        "thm1.E" => s_list(&["128", "-512"]),
        "thm1.F" => s_list(&["108", "216", "1458"]),
        "thm1.G.pos" => s_list(&["256", "648"]),
        "thm1.G.neg" => s_list(&["-1024"]),
        "linrel.2tors" => [["3", "1", "-2"], ["1", "0", "-1"], ["5", "2", "-4"], ["0.7", "0.2", "-0.9"], ["10", "3", "1"]]
            .iter()
            .map(|r| with(|p| p.roots = Some(r.map(String::from))))
            .collect(),
        "linrel.3tors" => [("0", "0.7"), ("0", "0.9"), ("0", "1.1"), ("0", "1.3"), ("0", "1.7")]
            .iter()
            .map(|(a, b)| with(|p| p.tau = Some((a.to_string(), b.to_string()))))
            .collect(),
        "linrel.4tors" => ["0.8", "1", "1.25", "1.7", "2.5"].iter().map(|y| with(|p| p.y = Some(y.to_string()))).collect(),
        "prop.0to64" => (1..=2)
            .map(|j| {
                with(|p| {
                    p.s = Some("32".into());
                    p.j = Some(j);
                })
            })
            .collect(),
        "claim1" | "claim2" => ["0.7", "1.3"].iter().map(|y| with(|p| p.y = Some(y.to_string()))).collect(),
        "conj.n2.1" | "conj.n2.16" | "det.ms.s-8" => vec![VerifyParams::default()],
        "prop4.i" | "prop4.ii" | "prop4.iii" => {
            PROP4.iter().filter(|f| f.id == id).map(|f| with(|p| p.s = Some(f.s.to_string()))).collect()
        }
        "table1" => table(TABLE1),
        "table2" => table(TABLE2),
        "table3" => table(TABLE3),
        _ => return Err(Error::UnknownIdentity(id.to_string())),
    })
}

/// Expand a registry id or suite name into its cases.
pub fn cases(name: &str) -> Result<Vec<Case>> {
    let ids = match suite_members(name) {
        Some(ids) => ids,
        None if REGISTRY.contains(&name) => vec![REGISTRY[REGISTRY.iter().position(|x| *x == name).unwrap_or(0)]],
        None => return Err(Error::UnknownIdentity(name.to_string())),
    };
    let mut out = Vec::new();
    for id in ids {
        for params in default_params(id)? {
            out.push(Case { id: id.to_string(), params });
        }
    }
    Ok(out)
}

/// Parse a family parameter: a decimal or rational, or `a±bsqrtc`.
pub fn parse_s(s: &str, ctx: &PrecisionCtx) -> Result<Float> {
    let t = s.trim();
    if let Some((head, c)) = t.split_once("sqrt") {
        let split = head.rfind(['+', '-']).filter(|&i| i > 0).ok_or_else(|| Error::Parse(format!("malformed s {s:?}")))?;
        let a = parse_real(&head[..split], ctx)?;
        let sign = if &head[split..split + 1] == "-" { -1 } else { 1 };
        let b = parse_real(&head[split + 1..], ctx)?;
        let r = parse_real(c, ctx)?.sqrt();
        return Ok(a + b * r * sign);
    }
    parse_real(t, ctx)
}

/// `M_N` and `d_k` values shared between checks run at one precision.
pub struct LBasis {
    dir: PathBuf,
    ctx: PrecisionCtx,
    m: Mutex<BTreeMap<u32, Arc<Option<Vec<(String, Float)>>>>>,
    d: Mutex<BTreeMap<u32, Float>>,
}

impl LBasis {
    /// Values computed at `ctx`, newform files read from `dir` (the shipped
    /// directory when `None`).
    pub fn new(dir: Option<&Path>, ctx: &PrecisionCtx) -> Self {
        Self {
            dir: dir.map(Path::to_path_buf).unwrap_or_else(default_newform_dir),
            ctx: ctx.clone(),
            m: Mutex::new(BTreeMap::new()),
            d: Mutex::new(BTreeMap::new()),
        }
    }

    /// `(label, M_N)` for every newform of the level; `None` when no
    /// coefficient file for the level is present.
    pub fn m_values(&self, level: u32) -> Result<Arc<Option<Vec<(String, Float)>>>> {
        if let Some(v) = self.m.lock().expect("cache lock").get(&level) {
            return Ok(v.clone());
        }
        let forms = if BUILTIN_LEVELS.contains(&level) {
            Some(vec![newform_coeffs(level, required_length(level, &self.ctx))?])
        } else if !self.dir.is_dir() {
            None
        } else {
            let fs = load_level(&self.dir, level)?.into_iter().collect::<Result<Vec<_>>>()?;
            (!fs.is_empty()).then_some(fs)
        };
        let vals = match forms {
            None => None,
            Some(fs) => Some(fs.iter().map(|f| Ok((f.label.clone(), M_value(f, &self.ctx)?))).collect::<Result<Vec<_>>>()?),
        };
        let v = Arc::new(vals);
        self.m.lock().expect("cache lock").insert(level, v.clone());
        Ok(v)
    }

    /// `d_k`.
    pub fn d(&self, k: u32) -> Result<Float> {
        if let Some(v) = self.d.lock().expect("cache lock").get(&k) {
            return Ok(v.clone());
        }
        let v = d_value(k, &self.ctx)?;
        self.d.lock().expect("cache lock").insert(k, v.clone());
        Ok(v)
    }

    /// Evaluate a closed form, trying every assignment of newforms to the
    /// `M_N` symbols and keeping the one closest to `target`. Returns the
    /// value and the labels used, or `Ok(None)` with the missing level.
    pub fn eval_closest(&self, form: &LinComb, target: &Float) -> Result<std::result::Result<(Float, Vec<(Sym, String)>), u32>> {
        let prec = self.ctx.prec();
        let syms = form.m_symbols();
        let mut options = Vec::new();
        for s in &syms {
            let Sym::M(level, _) = s else { unreachable!("m_symbols returns M only") };
            let vals = self.m_values(*level)?;
            match vals.as_ref() {
                None => return Ok(Err(*level)),
                Some(v) => options.push(v.clone()),
            }
        }
        let mut best: Option<(Float, Float, Vec<(Sym, String)>)> = None;
        let total: usize = options.iter().map(Vec::len).product();
        for mut code in 0..total {
            let mut pick = Vec::new();
            for o in &options {
                pick.push(code % o.len());
                code /= o.len();
            }
            let mut acc = Float::with_val(prec, 0);
            for (c, s) in &form.terms {
                let v = match s {
                    Sym::D(k) => self.d(*k)?,
                    Sym::M(..) => {
                        let i = syms.iter().position(|x| x == s).expect("symbol listed");
                        options[i][pick[i]].1.clone()
                    }
                };
                acc += Float::with_val(prec, v * c);
            }
            let gap = Float::with_val(prec, &acc - target).abs();
            if best.as_ref().is_none_or(|(g, _, _)| gap < *g) {
                let labels = syms.iter().enumerate().map(|(i, s)| (s.clone(), options[i][pick[i]].0.clone())).collect();
                best = Some((gap, acc, labels));
            }
        }
        let (_, v, labels) = best.expect("at least one assignment");
        Ok(Ok((v, labels)))
    }
}

/// Points `O ↦ 0`, `P ↦ τ/2`, `Q ↦ 3/4` and their sums, as used by the
/// `L_j` tables and the determinant example on `E_s`.
pub fn table_points() -> BTreeMap<String, TorsionCoord> {
    let p = TorsionCoord::from_fracs(1, 2, 0, 1);
    let q = TorsionCoord::from_fracs(0, 1, 3, 4);
    let q2 = q.mul(2);
    let mut m = BTreeMap::new();
    m.insert("O".to_string(), TorsionCoord::origin());
    m.insert("P+Q".into(), p.add(&q));
    m.insert("P+2Q".into(), p.add(&q2));
    m.insert("2Q".into(), q2);
    m.insert("P".into(), p);
    m.insert("Q".into(), q);
    m
}

fn build_divisor(terms: NamedDivisor, pts: &BTreeMap<String, TorsionCoord>) -> Result<Divisor> {
    let mut d = Divisor::new();
    for &(c, name) in terms {
        let p = pts.get(name).ok_or_else(|| Error::Domain(format!("point {name} is not defined on this curve")))?;
        d.add_term(c, p.clone());
    }
    Ok(d)
}

fn require<'a, T>(v: &'a Option<T>, what: &str, id: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::Domain(format!("{id} needs parameter {what}")))
}

fn l32_limit() -> PointFn {
    PointFn::L32(OriginPolicy::Limit)
}

fn meta(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn effective_digits(requested: u32, accuracy: f64) -> u32 {
    if accuracy <= 0.0 || !accuracy.is_finite() {
        return requested;
    }
    requested.min((-accuracy.log10()).floor().max(0.0) as u32)
}

/// Check one identity at one parameter choice to `digits` decimal places.
pub fn verify(id: &str, params: &VerifyParams, digits: u32, ctx: &PrecisionCtx) -> Result<VerifyReport> {
    let w = ctx.with_digits(digits.max(15));
    let basis = LBasis::new(params.newform_dir.as_deref(), &w);
    verify_with(&Case { id: id.to_string(), params: params.clone() }, digits, &w, &basis)
}

/// Run many cases in parallel with shared L-values. The result is sorted by
/// case label regardless of completion order.
pub fn verify_cases(cases: &[Case], digits: u32, ctx: &PrecisionCtx, newform_dir: Option<&Path>) -> Vec<(String, Result<VerifyReport>)> {
    let w = ctx.with_digits(digits.max(15));
    let basis = LBasis::new(newform_dir, &w);
    let mut out: Vec<(String, Result<VerifyReport>)> =
        cases.par_iter().map(|c| (c.label(), verify_with(c, digits, &w, &basis))).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn verify_with(case: &Case, digits: u32, w: &PrecisionCtx, basis: &LBasis) -> Result<VerifyReport> {
    let id = case.id.as_str();
    let p = &case.params;
    let label = case.label();
    match id {
        "thm1.E" => thm1(label, Family::E, &[DomainCase::EAbove64, DomainCase::ENegative], p, digits, w),
        "thm1.F" => thm1(label, Family::F, &[DomainCase::FHesse], p, digits, w),
        "thm1.G.pos" => thm1(label, Family::G, &[DomainCase::GAbove256], p, digits, w),
        "thm1.G.neg" => thm1(label, Family::G, &[DomainCase::GNegative], p, digits, w),
        "linrel.2tors" | "linrel.3tors" | "linrel.4tors" => {
            let (vals, coeffs, tau) = linear_relation_values(id, p, w)?;
            let mut acc = Float::with_val(w.prec(), 0);
            for (v, c) in vals.iter().zip(coeffs) {
                acc += Float::with_val(w.prec(), v * *c);
            }
            let m = meta(&[("tau", tau.value.to_string_radix(10, Some(20))), ("coefficients", format!("{coeffs:?}"))]);
            Ok(VerifyReport::compare(label, acc, Float::with_val(w.prec(), 0), digits, m))
        }
        "prop.0to64" => {
            let s = parse_s(require(&p.s, "s", id)?, w)?;
            let c = CurveParam::new(Family::E, &s, w)?;
            if c.domain_case != DomainCase::EOneRealRoot {
                return Err(Error::Domain("prop.0to64 needs 0 < s < 64".into()));
            }
            let tau = curve_tau(&c, w)?.tau_curve;
            let pts = named_points(&c);
            let f = match p.j.unwrap_or(1) {
                1 => PointFn::L31,
                2 => PointFn::L32(OriginPolicy::Reject),
                j => return Err(Error::Domain(format!("j must be 1 or 2, got {j}"))),
            };
            let lhs = f.eval(&tau, &pts["P"], w)?;
            let rhs = f.eval(&tau, &pts["Q"], w)?;
            Ok(VerifyReport::compare(label, lhs, rhs, digits, meta(&[("tau_im", tau.im().to_string_radix(10, Some(20)))])))
        }
        "claim1" | "claim2" => {
            let y = parse_real(require(&p.y, "y", id)?, w)?.to_f64();
            if y <= 0.0 {
                return Err(Error::Domain("y must be positive".into()));
            }
            let (sum, tail) = odd_lattice_claim(id == "claim2", y, p.cutoff)?;
            let eff = effective_digits(digits, tail);
            let m = meta(&[
                ("cutoff", p.cutoff.to_string()),
                ("tail_estimate", format!("{tail:.3e}")),
                ("effective_digits", eff.to_string()),
            ]);
            Ok(VerifyReport::compare(label, Float::with_val(w.prec(), sum), Float::with_val(w.prec(), 0), eff, m))
        }
        "conj.n2.1" | "conj.n2.16" => {
            let (s, k, sign) = if id == "conj.n2.1" { (1, 7, -1) } else { (16, 1, 1) };
            let sf = w.real(s);
            let c = CurveParam::new(Family::E, &sf, w)?;
            let tau = curve_tau(&c, w)?.tau_curve;
            let pts = named_points(&c);
            let d = Divisor::from_terms([(4, pts["R"].clone()), (sign, pts["O"].clone())]);
            let l = divisor_eval(PointFn::L31, &tau, &d, w)?;
            let pi2 = Float::with_val(w.prec(), w.pi().square_ref());
            let rhs = Float::with_val(w.prec(), l * -12i32) / (pi2 * k);
            let lhs = n2_quadrature(&sf, w)?;
            Ok(VerifyReport::compare(label, lhs, rhs, digits, meta(&[("lhs_route", "torus quadrature".into())])))
        }
        "prop4.i" | "prop4.ii" | "prop4.iii" => {
            let s = require(&p.s, "s", id)?;
            let f = PROP4
                .iter()
                .find(|f| f.id == id && f.s == s)
                .ok_or_else(|| Error::Domain(format!("{id} has no displayed formula at s = {s}")))?;
            prop4(label, f, digits, w, basis)
        }
        "table1" | "table2" | "table3" => {
            let t = match id {
                "table1" => TABLE1,
                "table2" => TABLE2,
                _ => TABLE3,
            };
            let s = require(&p.s, "s", id)?;
            let entry = require(&p.entry, "entry", id)?;
            let c = t
                .iter()
                .find(|c| c.s.to_string() == *s && c.entry == entry)
                .ok_or_else(|| Error::Domain(format!("{id} has no cell {entry} at s = {s}")))?;
            table_cell(label, id, c, digits, w, basis)
        }
        "det.ms.s-8" => det_s_minus_8(label, p, digits, w, basis),
        _ => Err(Error::UnknownIdentity(id.to_string())),
    }
}

fn thm1(label: String, family: Family, cases: &[DomainCase], p: &VerifyParams, digits: u32, w: &PrecisionCtx) -> Result<VerifyReport> {
    let s = parse_s(require(&p.s, "s", &label)?, w)?;
    let c = CurveParam::new(family, &s, w)?;
    if !cases.contains(&c.domain_case) {
        return Err(Error::Domain(format!("{label}: s lies outside the range of this formula")));
    }
    if p.route == MahlerRoute::Trilog {
        return Err(Error::Domain("the trilogarithm route is the right-hand side; choose lattice or integral".into()));
    }
    let j = family.j_index();
    let rhs = n_mahler(j, &s, MahlerRoute::Trilog, 0, w)?.value;
    let lhs = n_mahler(j, &s, p.route, p.cutoff, w)?;
    let acc = lhs.accuracy_estimate.to_f64();
    let eff = effective_digits(digits, acc);
    let mut m = meta(&[
        ("route", p.route.to_string()),
        ("accuracy_estimate", format!("{acc:.3e}")),
        ("effective_digits", eff.to_string()),
    ]);
    if p.route == MahlerRoute::Lattice {
        m.insert("cutoff".into(), p.cutoff.to_string());
    }
    Ok(VerifyReport::compare(label, lhs.value, rhs, eff, m))
}

/// Values and expected coefficients of the linear relations among
/// `ℒ_{3,1}` at torsion points, with the period ratio used:
///
/// * `linrel.2tors`: `4(P₁)+4(P₂)+4(P₃)+3(O)` at the half periods of
///   `y² = 4(x-e₁)(x-e₂)(x-e₃)`;
/// * `linrel.3tors`: `9(P)+9(Q)+18(P+Q)+4(O)` with `P ↦ τ/3`, `Q ↦ 1/3`.
///   This needs `ℒ_{3,1}(P+Q) = ℒ_{3,1}(P-Q)`, which holds for purely
///   imaginary `τ`; for other `τ` only the symmetric divisor
///   `9(P)+9(Q)+9(P+Q)+9(P-Q)+4(O)` vanishes (see [`symmetric_3tors_values`]);
/// * `linrel.4tors`: `8(S)+8(R+S)-(2S)` at `τ = yi`, `R ↦ τ/2`, `S ↦ 3/4`.
pub fn linear_relation_values(id: &str, p: &VerifyParams, w: &PrecisionCtx) -> Result<(Vec<Float>, &'static [i64], Tau)> {
    let prec = w.prec();
    let (tau, pts, coeffs): (Tau, Vec<TorsionCoord>, &'static [i64]) = match id {
        "linrel.2tors" => {
            let r = require(&p.roots, "roots", id)?;
            let e: Vec<Float> = r.iter().map(|x| parse_real(x, w)).collect::<Result<_>>()?;
            let (w1, w2) = periods_agm(&e[0], &e[1], &e[2], w)?;
            let tau = Tau::new(Complex::with_val(prec, w2 / w1), w)?;
            let pts = vec![
                TorsionCoord::from_fracs(1, 2, 0, 1),
                TorsionCoord::from_fracs(0, 1, 1, 2),
                TorsionCoord::from_fracs(1, 2, 1, 2),
                TorsionCoord::origin(),
            ];
            (tau, pts, &[4, 4, 4, 3])
        }
        "linrel.3tors" => {
            let (a, b) = require(&p.tau, "tau", id)?;
            let tau = Tau::from_parts(&parse_real(a, w)?, &parse_real(b, w)?, w)?;
            let pp = TorsionCoord::from_fracs(1, 3, 0, 1);
            let q = TorsionCoord::from_fracs(0, 1, 1, 3);
            let pts = vec![pp.clone(), q.clone(), pp.add(&q), TorsionCoord::origin()];
            (tau, pts, &[9, 9, 18, 4])
        }
        "linrel.4tors" => {
            let y = parse_real(require(&p.y, "y", id)?, w)?;
            let tau = Tau::from_parts(&w.real(0), &y, w)?;
            let r = TorsionCoord::from_fracs(1, 2, 0, 1);
            let s = TorsionCoord::from_fracs(0, 1, 3, 4);
            let pts = vec![s.clone(), r.add(&s), s.mul(2)];
            (tau, pts, &[8, 8, -1])
        }
        _ => return Err(Error::UnknownIdentity(id.to_string())),
    };
    let vals = pts.iter().map(|q| PointFn::L31.eval(&tau, q, w)).collect::<Result<Vec<_>>>()?;
    Ok((vals, coeffs, tau))
}

/// `ℒ_{3,1}` at `P, Q, P+Q, P-Q, O` (`P ↦ τ/3`, `Q ↦ 1/3`) for any `τ`;
/// the divisor `9(P)+9(Q)+9(P+Q)+9(P-Q)+4(O)` vanishes identically.
pub fn symmetric_3tors_values(tau: &Tau, w: &PrecisionCtx) -> Result<Vec<Float>> {
    let p = TorsionCoord::from_fracs(1, 3, 0, 1);
    let q = TorsionCoord::from_fracs(0, 1, 1, 3);
    [p.clone(), q.clone(), p.add(&q), p.add(&q.neg()), TorsionCoord::origin()]
        .iter()
        .map(|x| PointFn::L31.eval(tau, x, w))
        .collect()
}

/// `Σ_{m odd, n} (-1)ⁿ w(m,n)/|mτ+n|⁶` at `τ = 1/2 + yi`, truncated at
/// `max(|m|,|n|) ≤ cutoff`, with `w = m²` (first claim) or `(m/2+n)²`
/// (second claim). Returns the sum and a bound on the omitted terms:
/// `w ≤ |mτ+n|²/y²`, resp. `w ≤ |mτ+n|²`, so the tail is at most the
/// `|mτ+n|⁻⁴` tail times `1/y²`, resp. `1`.
pub fn odd_lattice_claim(second: bool, y: f64, cutoff: u32) -> Result<(f64, f64)> {
    if cutoff < 10 {
        return Err(Error::Domain("lattice cutoff must be at least 10".into()));
    }
    let sum = shell_sum(cutoff, |m, n| {
        if m % 2 == 0 {
            return 0.0;
        }
        let re = m as f64 / 2.0 + n as f64;
        let im = m as f64 * y;
        let r2 = re * re + im * im;
        let wgt = if second { re * re } else { (m * m) as f64 };
        let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
        sgn * wgt / (r2 * r2 * r2)
    });
    let t = Complex64::new(0.5, y);
    let tail = tail_bound(t, 4, cutoff) * if second { 1.0 } else { 1.0 / (y * y) };
    Ok((sum, tail))
}

fn curve_points(curve: PropCurve, s: &Float, w: &PrecisionCtx) -> Result<(Tau, BTreeMap<String, TorsionCoord>)> {
    let family = match curve {
        PropCurve::E => Family::E,
        PropCurve::F => Family::F,
        PropCurve::G => Family::G,
    };
    let c = CurveParam::new(family, s, w)?;
    let tau = curve_tau(&c, w)?.tau_curve;
    Ok((tau, named_points(&c)))
}

fn labels_meta(m: &mut BTreeMap<String, String>, labels: &[(Sym, String)]) {
    for (s, l) in labels {
        m.insert(format!("newform {s}"), l.clone());
    }
}

/// Attach the matching alternative closed form, if one is on record, as
/// `erratum` metadata. `value = scale·(closed form)` is compared with `lhs`.
fn erratum_meta(
    m: &mut BTreeMap<String, String>,
    key: (&str, &str, &str),
    lhs: &Float,
    pi2: &Float,
    basis: &LBasis,
) -> Result<()> {
    let Some(e) = ERRATA.iter().find(|e| (e.id, e.s, e.entry) == key) else { return Ok(()) };
    let prec = lhs.prec();
    let scale = if e.entry.is_empty() {
        Float::with_val(prec, pi2 * e.scale.0) / e.scale.1
    } else {
        Float::with_val(prec, 1)
    };
    let target = Float::with_val(prec, lhs / &scale);
    if let Ok((v, labels)) = basis.eval_closest(&LinComb::parse(e.rhs)?, &target)? {
        let diff = Float::with_val(prec, v * &scale - lhs).abs();
        let cap = (prec as f64 * std::f64::consts::LOG10_2) as u32;
        m.insert("erratum".into(), e.note.to_string());
        m.insert("erratum_form".into(), format!("{}/{}·({})", e.scale.0, e.scale.1, e.rhs));
        m.insert("erratum_digits_matched".into(), crate::numeric::digits_matched(&diff, cap).to_string());
        for (s, l) in labels {
            m.insert(format!("erratum newform {s}"), l);
        }
    }
    Ok(())
}

fn prop4(label: String, f: &PropFormula, digits: u32, w: &PrecisionCtx, basis: &LBasis) -> Result<VerifyReport> {
    let prec = w.prec();
    let s = parse_s(f.s, w)?;
    let (tau, pts) = curve_points(f.curve, &s, w)?;
    let l31 = divisor_eval(PointFn::L31, &tau, &build_divisor(f.d31, &pts)?, w)?;
    let l32 = divisor_eval(l32_limit(), &tau, &build_divisor(f.d32, &pts)?, w)?;
    let lhs = Float::with_val(prec, l31 * f.k31) + l32;
    let pi2 = Float::with_val(prec, w.pi().square_ref());
    let scale = Float::with_val(prec, pi2 * f.scale.0) / f.scale.1;
    let target = Float::with_val(prec, &lhs / &scale);
    let form = LinComb::parse(f.rhs)?;
    match basis.eval_closest(&form, &target)? {
        Err(level) => Ok(VerifyReport::skipped(label, digits, format!("no coefficient file for level {level}"))),
        Ok((v, labels)) => {
            let mut m = meta(&[("formula", format!("{} = {}/{}·π²·({})", f.name, f.scale.0, f.scale.1, f.rhs))]);
            labels_meta(&mut m, &labels);
            let pi2 = Float::with_val(prec, w.pi().square_ref());
            erratum_meta(&mut m, (f.id, f.s, ""), &lhs, &pi2, basis)?;
            Ok(VerifyReport::compare(label, lhs, v * scale, digits, m))
        }
    }
}

fn table_cell(label: String, id: &str, c: &TableCell, digits: u32, w: &PrecisionCtx, basis: &LBasis) -> Result<VerifyReport> {
    let prec = w.prec();
    let s = w.real(c.s);
    let curve = CurveParam::new(Family::E, &s, w)?;
    let tau = curve_tau(&curve, w)?.tau_curve;
    let f = if c.j == 1 { PointFn::L31 } else { l32_limit() };
    let raw = divisor_eval(f, &tau, &build_divisor(c.divisor, &table_points())?, w)?;
    let pi2 = Float::with_val(prec, w.pi().square_ref());
    let lhs = raw / &pi2;
    let form = LinComb::parse(c.rhs)?;
    match basis.eval_closest(&form, &lhs)? {
        Err(level) => Ok(VerifyReport::skipped(label, digits, format!("no coefficient file for level {level}"))),
        Ok((v, labels)) => {
            let mut m = meta(&[("formula", format!("{} = {}", c.entry, c.rhs))]);
            labels_meta(&mut m, &labels);
            let s = c.s.to_string();
            erratum_meta(&mut m, (id, s.as_str(), c.entry), &lhs, &pi2, basis)?;
            Ok(VerifyReport::compare(label, lhs, v, digits, m))
        }
    }
}

fn det_s_minus_8(label: String, p: &VerifyParams, digits: u32, w: &PrecisionCtx, basis: &LBasis) -> Result<VerifyReport> {
    let prec = w.prec();
    let c = CurveParam::new(Family::E, &w.real(-8), w)?;
    let tau = curve_tau(&c, w)?.tau_curve;
    let pts = table_points();
    let xi1 = build_divisor(&[(1, "Q"), (1, "P+Q"), (-2, "O")], &pts)?;
    let xi2 = build_divisor(&[(1, "2Q"), (-1, "P")], &pts)?;
    let det = sym2_det_check(&tau, &xi1, &xi2, p.cutoff, w)?;
    let m16 = basis.m_values(16)?;
    let m16 = m16.as_ref().as_ref().and_then(|v| v.first()).map(|x| x.1.clone()).ok_or_else(|| Error::Domain("M_16 unavailable".into()))?;
    let pi = w.pi();
    let pi4 = Float::with_val(prec, pi.square_ref()).square();
    let rhs = -(pi4 * 43u32) / 64u32 * basis.d(4)? * m16;
    let lat_gap = (det.lattice_det - det.trilog_det.to_f64()).abs();
    let m = meta(&[
        ("tau", tau.value.to_string_radix(10, Some(12))),
        ("lattice_det", format!("{:.12e}", det.lattice_det)),
        ("lattice_tail", format!("{:.3e}", det.lattice_tail)),
        ("lattice_within_tail", (lat_gap <= det.lattice_tail).to_string()),
        ("cutoff", p.cutoff.to_string()),
    ]);
    Ok(VerifyReport::compare(label, det.trilog_det, rhs, digits, m))
}
