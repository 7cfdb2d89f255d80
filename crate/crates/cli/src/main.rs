//! `elltrilog`: evaluate special values, verify identities and search for
//! integer relations from the command line.
//!
//! Exit codes: 0 success (skipped checks allowed), 1 a check failed or
//! errored, 2 usage error, 3 configuration error.

use clap::{Args, Parser, Subcommand};
use elltrilog::curves::{curve_tau, generic_points, j_invariant, named_points, CurveParam, Family};
use elltrilog::elliptic::{ek_lattice, ell_J, ell_L31, ell_L32, ell_dilog, Tau, TorsionCoord};
use elltrilog::lfunctions::{
    d_value, default_newform_dir, load_level, newform_coeffs, required_length, M_value, NewformSpec, BUILTIN_LEVELS,
};
use elltrilog::mahler::{n2_quadrature, n_mahler, MahlerRoute};
use elltrilog::modular::{eta, jstar, s_param};
use elltrilog::numeric::{parse_real, to_decimal, zeta_int};
use elltrilog::polylog::{bloch_wigner, li, ramakrishnan_D, zagier_L};
use elltrilog::relations::{cases, find_relation, parse_s, verify_cases, Case, LBasis, Status, REGISTRY, SUITES};
use elltrilog::{Error, PrecisionCtx};
use rug::{Complex, Float};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "elltrilog", version, about = "Elliptic trilogarithms, lattice sums and Mahler measures in arbitrary precision")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Flags {
    /// Decimal digits of working precision and of printed values.
    #[arg(long, global = true, default_value_t = 30, value_parser = clap::value_parser!(u32).range(15..))]
    digits: u32,
    /// Route for Mahler measures: lattice, trilog or integral
    /// (default: trilog for `eval`, lattice for `verify`).
    #[arg(long, global = true, value_parser = parse_route)]
    route: Option<MahlerRoute>,
    /// Shell cutoff for lattice sums.
    #[arg(long, global = true)]
    cutoff: Option<u32>,
    /// Directory of newform coefficient files.
    #[arg(long, global = true, env = "ELLTRILOG_NEWFORM_DIR")]
    newform_dir: Option<PathBuf>,
    /// Emit JSON lines with decimal strings instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Family parameter `s` (decimal, rational or `a±bsqrtc`).
    #[arg(long, global = true, allow_hyphen_values = true)]
    s: Option<String>,
    /// Curve family used with `--s` to fix `τ` and point names: E, F or G.
    #[arg(long, global = true, default_value = "E")]
    family: String,
    /// Period ratio as `re,im`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Imaginary part of `τ` for checks on a fixed line.
    #[arg(long, global = true)]
    y: Option<String>,
    /// Table row, e.g. `L_1(P+2Q)`.
    #[arg(long, global = true)]
    entry: Option<String>,
    /// Selects `ℒ_{3,1}` or `ℒ_{3,2}` where a check covers both.
    #[arg(long, global = true)]
    j: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one function and print its value.
    Eval {
        /// Function name; `elltrilog eval list` prints them.
        function: String,
        /// Positional arguments of the function.
        #[arg(allow_negative_numbers = true)]
        args: Vec<String>,
    },
    /// Check an identity or a suite of identities.
    Verify {
        /// Registry id or suite name; `elltrilog verify list` prints them.
        target: String,
    },
    /// Search for an integer relation among named constants.
    Search {
        /// Constants: numbers, `pi`, `e`, `log2`, `zetaK`, `sqrtK`, `phi`,
        /// `dK`, `MN` or `MN<label>`, and `L31@pt`, `L32@pt`, `D@pt`, `J@pt`
        /// with `pt` a point name combination (`P+Q`, `2S`) or `xi,eta`.
        #[arg(required = true, allow_negative_numbers = true)]
        constants: Vec<String>,
        /// Largest coefficient magnitude searched.
        #[arg(long, default_value_t = 1000)]
        norm_bound: i64,
    },
}

fn parse_route(s: &str) -> Result<MahlerRoute, String> {
    MahlerRoute::parse(s).map_err(|e| e.to_string())
}

/// Failure classes mapped to exit codes.
enum CliError {
    Usage(String),
    Config(String),
    Failed,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Precision(_) | Error::RejectedSource { .. } | Error::Io(_) => CliError::Config(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

const EVAL_FUNCTIONS: &[(&str, &str)] = &[
    ("bloch_wigner", "z"),
    ("curve_tau", "(uses --family --s)"),
    ("d_value", "k"),
    ("ek_lattice", "a b pt (uses --tau or --s, --cutoff)"),
    ("ell_J", "pt (uses --tau or --s)"),
    ("ell_L31", "pt (uses --tau or --s)"),
    ("ell_L32", "pt (uses --tau or --s)"),
    ("ell_dilog", "pt (uses --tau or --s)"),
    ("eta", "(uses --tau)"),
    ("j_invariant", "(uses --family --s)"),
    ("jstar", "n (uses --tau)"),
    ("li", "m z"),
    ("M_value", "N [label]"),
    ("n2_quadrature", "s"),
    ("n_mahler", "j s (uses --route, --cutoff)"),
    ("ramakrishnan_D", "m z"),
    ("s_param", "j (uses --tau)"),
    ("zagier_L", "m z"),
    ("zeta", "k"),
];

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Eval { function, args } => cmd_eval(function, args, &cli.flags),
        Cmd::Verify { target } => cmd_verify(target, &cli.flags),
        Cmd::Search { constants, norm_bound } => cmd_search(constants, *norm_bound, &cli.flags),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Config(m)) => {
            eprintln!("configuration error: {m}");
            ExitCode::from(3)
        }
    }
}

fn context(flags: &Flags) -> CliResult<PrecisionCtx> {
    Ok(PrecisionCtx::new(flags.digits)?)
}

/// The explicit newform directory, which must exist when given.
fn newform_dir(flags: &Flags) -> CliResult<Option<PathBuf>> {
    match &flags.newform_dir {
        Some(d) if !d.is_dir() => Err(CliError::Config(format!("newform directory {} does not exist", d.display()))),
        d => Ok(d.clone()),
    }
}

/// A printed value, real or complex.
enum Val {
    Real(Float),
    Cplx(Complex),
}

struct Output {
    label: Option<String>,
    value: Val,
    meta: BTreeMap<String, String>,
}

impl Output {
    fn real(v: Float) -> Self {
        Self { label: None, value: Val::Real(v), meta: BTreeMap::new() }
    }
    fn cplx(v: Complex) -> Self {
        Self { label: None, value: Val::Cplx(v), meta: BTreeMap::new() }
    }
}

fn arg<'a>(args: &'a [String], i: usize, name: &str, func: &str) -> CliResult<&'a str> {
    args.get(i).map(String::as_str).ok_or_else(|| CliError::Usage(format!("{func}: missing argument <{name}>")))
}

fn int_arg(args: &[String], i: usize, name: &str, func: &str) -> CliResult<u32> {
    let a = arg(args, i, name, func)?;
    a.parse().map_err(|_| CliError::Usage(format!("{func}: <{name}> must be a non-negative integer, got {a:?}")))
}

/// A complex number written `re` or `re,im`.
fn complex_arg(s: &str, ctx: &PrecisionCtx) -> CliResult<Complex> {
    let (re, im) = match s.split_once(',') {
        Some((a, b)) => (parse_real(a, ctx)?, parse_real(b, ctx)?),
        None => (parse_real(s, ctx)?, ctx.real(0)),
    };
    Ok(Complex::with_val(ctx.prec(), (re, im)))
}

/// `τ` and the point names valid for it: from `--tau` with the generic
/// names, or from `--family --s` with the curve's named points.
fn tau_and_points(flags: &Flags, ctx: &PrecisionCtx) -> CliResult<(Tau, BTreeMap<String, TorsionCoord>)> {
    if let Some(t) = &flags.tau {
        let z = complex_arg(t, ctx)?;
        return Ok((Tau::new(z, ctx)?, generic_points()));
    }
    if let Some(s) = &flags.s {
        let c = curve(flags, s, ctx)?;
        let tau = curve_tau(&c, ctx)?.tau_curve;
        return Ok((tau, named_points(&c)));
    }
    Err(CliError::Usage("this function needs --tau or --s".into()))
}

fn curve(flags: &Flags, s: &str, ctx: &PrecisionCtx) -> CliResult<CurveParam> {
    let family = Family::parse(&flags.family)?;
    Ok(CurveParam::new(family, &parse_s(s, ctx)?, ctx)?)
}

/// A point given as `xi,eta` or as an integer combination of names such as
/// `P+2Q` or `P-Q`.
fn parse_point(s: &str, names: &BTreeMap<String, TorsionCoord>) -> CliResult<TorsionCoord> {
    if s.contains(',') {
        return Ok(TorsionCoord::parse(s)?);
    }
    if let Some(p) = names.get(s) {
        return Ok(p.clone());
    }
    let mut acc = TorsionCoord::origin();
    let bytes = s.as_bytes();
    let mut i = 0;
    if s.is_empty() {
        return Err(CliError::Usage("empty point".into()));
    }
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let k: i64 = if start == i { 1 } else { s[start..i].parse().map_err(|_| CliError::Usage(format!("bad point {s:?}")))? };
        let nstart = i;
        while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
            i += 1;
        }
        let name = &s[nstart..i];
        let p = names
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("unknown point {name:?} in {s:?}; known: {:?}", names.keys().collect::<Vec<_>>())))?;
        acc = acc.add(&p.mul(sign * k));
    }
    Ok(acc)
}

fn m_values(level: u32, flags: &Flags, ctx: &PrecisionCtx) -> CliResult<Vec<(String, Float)>> {
    let forms: Vec<NewformSpec> = if BUILTIN_LEVELS.contains(&level) {
        vec![newform_coeffs(level, required_length(level, ctx))?]
    } else {
        let dir = newform_dir(flags)?.unwrap_or_else(default_newform_dir);
        let loaded = load_level(&dir, level)?;
        if loaded.is_empty() {
            return Err(CliError::Config(format!("no coefficient files for level {level} in {}", dir.display())));
        }
        loaded.into_iter().collect::<Result<_, _>>()?
    };
    forms.iter().map(|f| Ok((f.label.clone(), M_value(f, ctx)?))).collect()
}

fn cmd_eval(function: &str, args: &[String], flags: &Flags) -> CliResult<()> {
    if function == "list" {
        for (name, sig) in EVAL_FUNCTIONS {
            println!("{name} {sig}");
        }
        return Ok(());
    }
    let ctx = context(flags)?;
    let f = function;
    let outputs: Vec<Output> = match f {
        "zagier_L" | "ramakrishnan_D" | "li" => {
            let m = int_arg(args, 0, "m", f)?;
            let z = complex_arg(arg(args, 1, "z", f)?, &ctx)?;
            match f {
                "zagier_L" => vec![Output::real(zagier_L(m, &z, &ctx)?)],
                "ramakrishnan_D" => vec![Output::real(ramakrishnan_D(m, &z, &ctx)?)],
                _ => vec![Output::cplx(li(m, &z, &ctx)?)],
            }
        }
        "bloch_wigner" => vec![Output::real(bloch_wigner(&complex_arg(arg(args, 0, "z", f)?, &ctx)?, &ctx)?)],
        "zeta" => {
            let k = int_arg(args, 0, "k", f)?;
            if k < 2 {
                return Err(CliError::Usage("zeta: k must be at least 2".into()));
            }
            vec![Output::real(zeta_int(k as i32, ctx.prec()))]
        }
        "d_value" => vec![Output::real(d_value(int_arg(args, 0, "k", f)?, &ctx)?)],
        "M_value" => {
            let level = int_arg(args, 0, "N", f)?;
            let want = args.get(1);
            let vals = m_values(level, flags, &ctx)?;
            let picked: Vec<Output> = vals
                .into_iter()
                .filter(|(l, _)| want.is_none_or(|w| w == l))
                .map(|(l, v)| Output { label: Some(l), value: Val::Real(v), meta: BTreeMap::new() })
                .collect();
            if picked.is_empty() {
                return Err(CliError::Usage(format!("M_value: no newform labelled {:?} at level {level}", want)));
            }
            picked
        }
        "ell_L31" | "ell_L32" | "ell_dilog" | "ell_J" => {
            let (tau, names) = tau_and_points(flags, &ctx)?;
            let p = parse_point(arg(args, 0, "pt", f)?, &names)?;
            let v = match f {
                "ell_L31" => ell_L31(&tau, &p, &ctx)?,
                "ell_L32" => ell_L32(&tau, &p, &ctx)?,
                "ell_dilog" => ell_dilog(&tau, &p, &ctx)?,
                _ => ell_J(&tau, &p, &ctx)?,
            };
            let mut o = Output::real(v);
            o.meta.insert("point".into(), p.to_string());
            o.meta.insert("tau".into(), to_decimal_c(&tau.value, 20));
            vec![o]
        }
        "ek_lattice" => {
            let a = int_arg(args, 0, "a", f)?;
            let b = int_arg(args, 1, "b", f)?;
            let (tau, names) = tau_and_points(flags, &ctx)?;
            let p = parse_point(arg(args, 2, "pt", f)?, &names)?;
            let cutoff = flags.cutoff.unwrap_or(elltrilog::elliptic::DEFAULT_CUTOFF);
            let r = ek_lattice(a, b, &tau, &p, cutoff, &ctx)?;
            let mut o = Output::cplx(r.value);
            o.meta.insert("cutoff".into(), r.cutoff.to_string());
            o.meta.insert("tail_estimate".into(), format!("{:.3e}", r.tail_estimate));
            vec![o]
        }
        "s_param" | "jstar" => {
            let n = int_arg(args, 0, if f == "s_param" { "j" } else { "n" }, f)?;
            let (tau, _) = tau_and_points(flags, &ctx)?;
            let v = if f == "s_param" { s_param(n, &tau.value, &ctx)? } else { jstar(n, &tau.value, &ctx)? };
            vec![Output::cplx(v)]
        }
        "eta" => {
            let (tau, _) = tau_and_points(flags, &ctx)?;
            vec![Output::cplx(eta(&tau.value, &ctx)?)]
        }
        "j_invariant" | "curve_tau" => {
            let s = flags.s.as_deref().ok_or_else(|| CliError::Usage(format!("{f} needs --s")))?;
            let c = curve(flags, s, &ctx)?;
            if f == "j_invariant" {
                vec![Output::cplx(j_invariant(&c, &ctx)?)]
            } else {
                let pd = curve_tau(&c, &ctx)?;
                let mut o = Output::cplx(pd.tau_curve.value.clone());
                if let Some(t) = &pd.tau_mahler {
                    o.meta.insert("tau_mahler".into(), to_decimal_c(&t.value, ctx.digits + 5));
                }
                vec![o]
            }
        }
        "n_mahler" => {
            let j = int_arg(args, 0, "j", f)?;
            let s = match args.get(1).or(flags.s.as_ref()) {
                Some(s) => parse_s(s, &ctx)?,
                None => return Err(CliError::Usage("n_mahler: missing argument <s>".into())),
            };
            let route = flags.route.unwrap_or(MahlerRoute::Trilog);
            let cutoff = flags.cutoff.unwrap_or(400);
            let r = n_mahler(j, &s, route, cutoff, &ctx)?;
            let mut o = Output::real(r.value);
            o.meta.insert("route".into(), r.route.to_string());
            o.meta.insert("accuracy_estimate".into(), to_decimal(&r.accuracy_estimate, 3));
            if route == MahlerRoute::Lattice {
                o.meta.insert("cutoff".into(), cutoff.to_string());
            }
            vec![o]
        }
        "n2_quadrature" => {
            let s = parse_s(arg(args, 0, "s", f)?, &ctx)?;
            vec![Output::real(n2_quadrature(&s, &ctx)?)]
        }
        _ => {
            let known: Vec<&str> = EVAL_FUNCTIONS.iter().map(|(n, _)| *n).collect();
            return Err(CliError::Usage(format!("unknown function {f:?}; known: {}", known.join(", "))));
        }
    };
    for o in outputs {
        print_output(f, args, &o, ctx.digits, flags.json);
    }
    Ok(())
}

fn to_decimal_c(z: &Complex, digits: u32) -> String {
    let im = z.imag();
    let sign = if im.is_sign_negative() { "-" } else { "+" };
    format!("{} {sign} {}i", to_decimal(z.real(), digits), to_decimal(&Float::with_val(im.prec(), im.abs_ref()), digits))
}

fn print_output(function: &str, args: &[String], o: &Output, digits: u32, json: bool) {
    if json {
        let mut m = Map::new();
        m.insert("function".into(), json!(function));
        m.insert("args".into(), json!(args));
        if let Some(l) = &o.label {
            m.insert("label".into(), json!(l));
        }
        match &o.value {
            Val::Real(v) => {
                m.insert("value".into(), json!(to_decimal(v, digits)));
            }
            Val::Cplx(z) => {
                m.insert("value".into(), json!(to_decimal(z.real(), digits)));
                m.insert("value_imag".into(), json!(to_decimal(z.imag(), digits)));
            }
        }
        m.insert("digits".into(), json!(digits));
        m.insert("route_metadata".into(), json!(o.meta));
        println!("{}", Value::Object(m));
    } else {
        let v = match &o.value {
            Val::Real(v) => to_decimal(v, digits),
            Val::Cplx(z) => to_decimal_c(z, digits),
        };
        match &o.label {
            Some(l) => println!("{l} {v}"),
            None => println!("{v}"),
        }
        for (k, val) in &o.meta {
            eprintln!("  {k} = {val}");
        }
    }
}

/// Cases of `target` with the command-line parameters applied. For table
/// and proposition cells `--s` and `--entry` select cells; elsewhere the
/// given parameters replace the documented ones.
fn verify_plan(target: &str, flags: &Flags) -> CliResult<Vec<Case>> {
    let all = cases(target).map_err(|_| {
        CliError::Usage(format!("unknown identity or suite {target:?}; suites: {}; ids: {}", SUITES.join(", "), REGISTRY.join(", ")))
    })?;
    let mut out: Vec<Case> = Vec::new();
    for mut c in all {
        let cell = c.params.entry.is_some() || c.id.starts_with("prop4.");
        if cell {
            if flags.s.as_ref().is_some_and(|s| c.params.s.as_ref() != Some(s)) {
                continue;
            }
            if flags.entry.as_ref().is_some_and(|e| c.params.entry.as_ref() != Some(e)) {
                continue;
            }
        } else {
            if let (Some(s), Some(_)) = (&flags.s, &c.params.s) {
                c.params.s = Some(s.clone());
            }
            if let (Some(y), Some(_)) = (&flags.y, &c.params.y) {
                c.params.y = Some(y.clone());
            }
            if let (Some(t), Some(_)) = (&flags.tau, &c.params.tau) {
                let (a, b) = t.split_once(',').ok_or_else(|| CliError::Usage(format!("--tau must be re,im, got {t:?}")))?;
                c.params.tau = Some((a.to_string(), b.to_string()));
            }
            if let (Some(j), Some(_)) = (flags.j, c.params.j) {
                c.params.j = Some(j);
            }
        }
        if let Some(r) = flags.route {
            c.params.route = r;
        }
        if let Some(k) = flags.cutoff {
            c.params.cutoff = k;
        }
        if !out.iter().any(|o| o.label() == c.label()) {
            out.push(c);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("no case of {target:?} matches the given --s/--entry")));
    }
    Ok(out)
}

fn cmd_verify(target: &str, flags: &Flags) -> CliResult<()> {
    if target == "list" {
        for s in SUITES {
            println!("suite {s}");
        }
        for id in REGISTRY {
            println!("id {id}");
        }
        return Ok(());
    }
    let plan = verify_plan(target, flags)?;
    let dir = newform_dir(flags)?;
    let ctx = context(flags)?;
    let results = verify_cases(&plan, flags.digits, &ctx, dir.as_deref());
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for (label, r) in &results {
        match r {
            Ok(rep) => {
                match rep.status {
                    Status::Passed => pass += 1,
                    Status::Failed => fail += 1,
                    Status::Skipped => skip += 1,
                }
                println!("{}", if flags.json { rep.to_json_line() } else { rep.to_text_line() });
            }
            Err(e) => {
                fail += 1;
                if flags.json {
                    println!("{}", json!({ "identity_id": label, "status": "ERROR", "error": e.to_string() }));
                } else {
                    println!("{:<7} {label}  {e}", "ERROR");
                }
            }
        }
    }
    eprintln!("{pass} passed, {fail} failed, {skip} skipped");
    if fail > 0 {
        Err(CliError::Failed)
    } else {
        Ok(())
    }
}

fn constant(name: &str, flags: &Flags, basis: &LBasis, ctx: &PrecisionCtx) -> CliResult<Float> {
    let prec = ctx.prec();
    if let Ok(v) = parse_real(name, ctx) {
        return Ok(v);
    }
    if let Some((fun, pt)) = name.split_once('@') {
        let (tau, names) = tau_and_points(flags, ctx)?;
        let p = parse_point(pt, &names)?;
        return Ok(match fun {
            "L31" => ell_L31(&tau, &p, ctx)?,
            "L32" => ell_L32(&tau, &p, ctx)?,
            "D" => ell_dilog(&tau, &p, ctx)?,
            "J" => ell_J(&tau, &p, ctx)?,
            _ => return Err(CliError::Usage(format!("unknown point function {fun:?} (L31, L32, D, J)"))),
        });
    }
    let num = |rest: &str| rest.parse::<u32>().ok();
    match name {
        "pi" => return Ok(ctx.pi()),
        "e" => return Ok(Float::with_val(prec, 1).exp()),
        "log2" => return Ok(Float::with_val(prec, 2).ln()),
        "phi" => return Ok((Float::with_val(prec, 5).sqrt() + 1u32) / 2u32),
        _ => {}
    }
    if let Some(k) = name.strip_prefix("zeta").and_then(num).filter(|&k| k >= 2) {
        return Ok(zeta_int(k as i32, prec));
    }
    if let Some(k) = name.strip_prefix("sqrt").and_then(num) {
        return Ok(Float::with_val(prec, k).sqrt());
    }
    if let Some(k) = name.strip_prefix('d').and_then(num) {
        return Ok(basis.d(k)?);
    }
    if let Some(rest) = name.strip_prefix('M') {
        let split = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if let Ok(level) = rest[..split].parse::<u32>() {
            let label = &rest[split..];
            let vals = basis.m_values(level)?;
            let vals = vals
                .as_ref()
                .as_ref()
                .ok_or_else(|| CliError::Config(format!("no coefficient files for level {level}")))?;
            let found = if label.is_empty() {
                (vals.len() == 1).then(|| &vals[0])
            } else {
                vals.iter().find(|(l, _)| l.ends_with(label))
            };
            return found.map(|(_, v)| v.clone()).ok_or_else(|| {
                let labels: Vec<&str> = vals.iter().map(|(l, _)| l.as_str()).collect();
                CliError::Usage(format!("{name}: choose one of {labels:?}"))
            });
        }
    }
    Err(CliError::Usage(format!("unknown constant {name:?}")))
}

fn cmd_search(names: &[String], norm_bound: i64, flags: &Flags) -> CliResult<()> {
    let ctx = context(flags)?;
    let dir = newform_dir(flags)?;
    let basis = LBasis::new(dir.as_deref(), &ctx);
    let values: Vec<Float> = names.iter().map(|n| constant(n, flags, &basis, &ctx)).collect::<CliResult<_>>()?;
    let rel = find_relation(&values, norm_bound, &ctx)?;
    if flags.json {
        let vals: Vec<String> = values.iter().map(|v| to_decimal(v, ctx.digits)).collect();
        println!("{}", json!({ "constants": names, "values": vals, "digits": ctx.digits, "relation": rel }));
    } else {
        match &rel {
            Some(r) => {
                let mut text = String::new();
                for (c, n) in r.coefficients.iter().zip(names).filter(|(c, _)| **c != 0) {
                    let sign = if *c < 0 { "-" } else { "+" };
                    if text.is_empty() {
                        text = if *c < 0 { format!("-{}*{n}", c.abs()) } else { format!("{c}*{n}") };
                    } else {
                        text.push_str(&format!(" {sign} {}*{n}", c.abs()));
                    }
                }
                println!("{text} = 0  (residual {})", r.residual);
            }
            None => println!("no relation with coefficients up to {norm_bound}"),
        }
    }
    Ok(())
}
