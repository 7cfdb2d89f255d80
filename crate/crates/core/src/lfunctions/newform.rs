//! Weight-3 newforms with rational coefficients: eta-quotient and CM theta
//! sources, a plain-text coefficient file format, and the invariant suite
//! every source must pass before use.

use crate::error::{Error, Result};
use crate::modular::QExpansion;
use rug::{Integer, Rational};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Where the coefficients of a [`NewformSpec`] came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NewformSource {
    /// Product of Dedekind eta functions.
    BuiltinEta,
    /// Theta series of a Hecke character of an imaginary quadratic field,
    /// possibly twisted by a quadratic character.
    CmTheta,
    /// Coefficient file.
    File(PathBuf),
}

/// A weight-3 newform `g = Σ a_n q^n` with nebentypus given by the
/// Kronecker symbol `(D/·)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NewformSpec {
    /// Level `N`.
    pub level: u32,
    /// Weight (always 3 here).
    pub weight: u32,
    /// Discriminant `D` of the nebentypus `(D/·)`.
    pub character: i64,
    /// Distinguishes several forms of one level, e.g. `"24a"`.
    pub label: String,
    /// `q`-expansion with `coeffs[n] = a_n` (`a_0 = 0`).
    pub coeffs: QExpansion,
    /// Provenance of the coefficients.
    pub source: NewformSource,
    a: Vec<i64>,
}

/// Kronecker symbol `(d/n)` for `n ≥ 0`.
pub fn kronecker(d: i64, n: u64) -> i32 {
    Integer::from(d).kronecker(&Integer::from(n))
}

fn smallest_prime_factors(n: usize) -> Vec<usize> {
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    spf
}

impl NewformSpec {
    /// Build from `a_1, a_2, …` given as `a[n]` with `a[0] = 0`.
    pub fn from_coeffs(level: u32, character: i64, label: &str, a: Vec<i64>, source: NewformSource) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::RejectedSource { level, reason: "no coefficients".into() });
        }
        // Coefficients satisfy |a_n| ≤ d(n) n ≤ n², so the tail at |q| ≤ r
        // is at most Σ_{n≥L} n² r^n; r is the nome at y = 1/√N.
        let r = (-2.0 * std::f64::consts::PI / (level as f64).sqrt()).exp();
        let len = a.len();
        let tail: f64 = (len..len + 4000).map(|n| (n as f64).powi(2) * r.powi(n as i32)).sum();
        let coeffs = QExpansion {
            prefactor_exponent: Rational::new(),
            coeffs: a.iter().map(|&v| Integer::from(v)).collect(),
            length: len,
            q_radius: r,
            tail_bound: tail,
        };
        Ok(Self { level, weight: 3, character, label: label.to_string(), coeffs, source, a })
    }

    /// `a_n` (zero beyond the stored range is never returned; see [`Self::len`]).
    pub fn a(&self, n: usize) -> i64 {
        self.a[n]
    }

    /// All stored coefficients, `a[0] = 0`.
    pub fn coefficients(&self) -> &[i64] {
        &self.a
    }

    /// Largest stored index plus one.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    /// True when no coefficient beyond `a_0` is stored.
    pub fn is_empty(&self) -> bool {
        self.a.len() <= 1
    }

    /// Nebentypus value: `(D/n)` as a character mod `N`, so zero when
    /// `gcd(n, N) > 1`.
    pub fn chi(&self, n: u64) -> i32 {
        if Integer::from(n).gcd(&Integer::from(self.level)) != 1 {
            return 0;
        }
        kronecker(self.character, n)
    }

    /// Check `a_1 = 1`, multiplicativity on coprime arguments, the Hecke
    /// recursion `a_{p^{e+1}} = a_p a_{p^e} - χ(p) p² a_{p^{e-1}}`, CM
    /// vanishing `a_p = 0` when `χ(p) = -1`, and the Deligne bound
    /// `|a_p| ≤ 2p`, over every stored index.
    pub fn validate(&self) -> Result<()> {
        let rej = |reason: String| Error::RejectedSource { level: self.level, reason };
        let a = &self.a;
        if a[1] != 1 {
            return Err(rej(format!("a_1 = {} ≠ 1", a[1])));
        }
        let n_max = a.len() - 1;
        let spf = smallest_prime_factors(n_max);
        for n in 2..=n_max {
            let p = spf[n];
            let mut pe = 1usize;
            let mut m = n;
            while m % p == 0 {
                m /= p;
                pe *= p;
            }
            if m > 1 {
                if a[n] as i128 != a[pe] as i128 * a[m] as i128 {
                    return Err(rej(format!("multiplicativity fails at n = {n} = {pe}·{m} (prime {p})")));
                }
                continue;
            }
            // n = p^e
            let chi = self.chi(p as u64) as i128;
            if pe == p {
                if a[p].unsigned_abs() > 2 * p as u64 {
                    return Err(rej(format!("Deligne bound fails at prime {p}: a_p = {}", a[p])));
                }
                if chi == -1 && a[p] != 0 {
                    return Err(rej(format!("CM vanishing fails at prime {p}: a_p = {}", a[p])));
                }
            } else {
                let prev = pe / p;
                let prev2 = prev / p;
                let want = a[p] as i128 * a[prev] as i128 - chi * (p as i128).pow(2) * a[prev2] as i128;
                if a[pe] as i128 != want {
                    return Err(rej(format!("Hecke recursion fails at {pe} (prime {p})")));
                }
            }
        }
        Ok(())
    }

    /// Text in the coefficient file format: a `# level weight character`
    /// header and one `a_n` per line starting at `n = 1`.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("# {} {} {}\n", self.level, self.weight, self.character);
        for v in &self.a[1..] {
            let _ = writeln!(s, "{v}");
        }
        s
    }
}

/// Coefficients `a_1, …, a_{len-1}` of `Π η(mτ)^{e_m}` (positive exponents)
/// whose `q`-order `Σ m e_m/24` must be a positive integer.
pub fn eta_quotient_coeffs(factors: &[(u32, u32)], len: usize) -> Result<Vec<i64>> {
    let order24: u32 = factors.iter().map(|&(m, e)| m * e).sum();
    if order24 % 24 != 0 || order24 == 0 {
        return Err(Error::Domain("eta product must have a positive integral q-order".into()));
    }
    let shift = (order24 / 24) as usize;
    let body = len.saturating_sub(shift);
    let mut c = vec![0i128; body.max(1)];
    c[0] = 1;
    for &(m, e) in factors {
        // Sparse pentagonal factor Π_n (1 - q^{mn}).
        let mut pent: Vec<(usize, i128)> = vec![(0, 1)];
        let mut k = 1usize;
        loop {
            let e1 = m as usize * k * (3 * k - 1) / 2;
            if e1 >= body {
                break;
            }
            let s = if k % 2 == 1 { -1 } else { 1 };
            pent.push((e1, s));
            let e2 = m as usize * k * (3 * k + 1) / 2;
            if e2 < body {
                pent.push((e2, s));
            }
            k += 1;
        }
        for _ in 0..e {
            let mut next = vec![0i128; c.len()];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = 0i128;
                for &(d, s) in &pent {
                    if d > i {
                        break;
                    }
                    acc += s * c[i - d];
                }
                *slot = acc;
            }
            c = next;
        }
    }
    let mut a = vec![0i64; len];
    for (i, v) in c.iter().enumerate() {
        if i + shift < len {
            a[i + shift] = i64::try_from(*v).map_err(|_| Error::Accuracy("eta coefficient overflow".into()))?;
        }
    }
    Ok(a)
}

/// Levels with a builtin eta-quotient source.
pub const BUILTIN_LEVELS: [u32; 4] = [7, 8, 12, 16];

/// Eta quotient and nebentypus discriminant for a builtin level:
/// `η(τ)³η(7τ)³`, `η(τ)²η(2τ)η(4τ)η(8τ)²`, `η(2τ)³η(6τ)³`, `η(4τ)⁶`.
pub fn builtin_eta_quotient(level: u32) -> Option<(&'static [(u32, u32)], i64)> {
    match level {
        7 => Some((&[(1, 3), (7, 3)], -7)),
        8 => Some((&[(1, 2), (2, 1), (4, 1), (8, 2)], -8)),
        12 => Some((&[(2, 3), (6, 3)], -3)),
        16 => Some((&[(4, 6)], -4)),
        _ => None,
    }
}

/// Builtin newform of the given level with `length` coefficients
/// (`a_0, …, a_{length-1}`), validated before it is returned.
pub fn newform_coeffs(level: u32, length: usize) -> Result<NewformSpec> {
    let (factors, d) = builtin_eta_quotient(level).ok_or_else(|| Error::RejectedSource {
        level,
        reason: "no builtin source for this level; supply a coefficient file".into(),
    })?;
    let a = eta_quotient_coeffs(factors, length)?;
    let f = NewformSpec::from_coeffs(level, d, &level.to_string(), a, NewformSource::BuiltinEta)?;
    f.validate()?;
    Ok(f)
}

/// Parse a coefficient file: header `# level weight character`, then one
/// integer `a_n` per line from `n = 1`. Blank lines are ignored. The form
/// is validated before it is returned.
pub fn load_newform_file(path: &Path) -> Result<NewformSpec> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse(format!("{}: empty file", path.display())))?;
    let h = header
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| Error::Parse(format!("{}: missing '# level weight character' header", path.display())))?;
    let fields: Vec<&str> = h.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::Parse(format!("{}: header needs three fields", path.display())));
    }
    let parse_err = |e: std::num::ParseIntError| Error::Parse(format!("{}: {e}", path.display()));
    let level: u32 = fields[0].parse().map_err(parse_err)?;
    let weight: u32 = fields[1].parse().map_err(parse_err)?;
    let character: i64 = fields[2].parse().map_err(parse_err)?;
    if weight != 3 {
        return Err(Error::RejectedSource { level, reason: format!("weight {weight} ≠ 3") });
    }
    let mut a = vec![0i64];
    for l in lines {
        a.push(l.trim().parse().map_err(parse_err)?);
    }
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let f = NewformSpec::from_coeffs(level, character, &label, a, NewformSource::File(path.to_path_buf()))?;
    f.validate()?;
    Ok(f)
}

/// Every coefficient file in `dir` whose header names `level`, sorted by
/// label. Files that fail validation are returned as errors in place.
pub fn load_level(dir: &Path, level: u32) -> Result<Vec<Result<NewformSpec>>> {
    let mut out = Vec::new();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    for p in paths {
        let text = std::fs::read_to_string(&p)?;
        let first = text.lines().next().unwrap_or("");
        let lvl = first.trim().strip_prefix('#').and_then(|h| h.split_whitespace().next()?.parse::<u32>().ok());
        if lvl == Some(level) {
            out.push(load_newform_file(&p));
        }
    }
    Ok(out)
}

/// Weight-3 CM theta series of `ℚ(√-d)`, `d ∈ {6, 10}` (class number two,
/// forms `x² + dy²` and `2x² + (d/2)y²`):
/// `g_± = ½ Σ (x² - d y²) q^{x²+dy²} ± ½ Σ (2x² - (d/2) y²) q^{2x²+(d/2)y²}`.
///
/// These come from the Hecke characters `ψ((α)) = α²` on principal ideals,
/// extended to the non-principal class by either square root of `ψ(𝔞²)`.
pub fn cm_theta_pair(d: i64, len: usize) -> Result<[Vec<i64>; 2]> {
    if d != 6 && d != 10 {
        return Err(Error::Unsupported(format!("CM theta pair for d = {d}")));
    }
    let mut s1 = vec![0i64; len];
    let mut s2 = vec![0i64; len];
    let lim = (len as f64).sqrt() as i64 + 1;
    let h = d / 2;
    for x in -lim..=lim {
        for y in -lim..=lim {
            let n1 = x * x + d * y * y;
            if (n1 as usize) < len {
                s1[n1 as usize] += x * x - d * y * y;
            }
            let n2 = 2 * x * x + h * y * y;
            if (n2 as usize) < len {
                s2[n2 as usize] += 2 * x * x - h * y * y;
            }
        }
    }
    let plus: Vec<i64> = s1.iter().zip(&s2).map(|(a, b)| (a + b) / 2).collect();
    let minus: Vec<i64> = s1.iter().zip(&s2).map(|(a, b)| (a - b) / 2).collect();
    for (i, (a, b)) in s1.iter().zip(&s2).enumerate() {
        if (a + b) % 2 != 0 || (a - b) % 2 != 0 {
            return Err(Error::Accuracy(format!("odd theta coefficient at n = {i}")));
        }
    }
    let mut plus = plus;
    let mut minus = minus;
    plus[0] = 0;
    minus[0] = 0;
    Ok([plus, minus])
}

/// Twist `a_n ↦ (D/n) a_n`.
pub fn twist(a: &[i64], d: i64) -> Vec<i64> {
    a.iter().enumerate().map(|(n, &v)| if n == 0 { 0 } else { v * kronecker(d, n as u64) as i64 }).collect()
}

/// CM candidates for the levels without a builtin source, each validated
/// by the invariant suite: the two theta series of `ℚ(√-6)` (level 24) and
/// `ℚ(√-10)` (level 40), and quadratic twists of the builtin forms. The
/// level attached to a twist is the expected one; callers confirm it with
/// the Fricke relation before use.
pub fn cm_candidates(len: usize) -> Result<Vec<NewformSpec>> {
    let mut out = Vec::new();
    for (d, level) in [(6i64, 24u32), (10, 40)] {
        let [p, m] = cm_theta_pair(d, len)?;
        out.push(NewformSpec::from_coeffs(level, -(4 * d), &format!("{level}a"), p, NewformSource::CmTheta)?);
        out.push(NewformSpec::from_coeffs(level, -(4 * d), &format!("{level}b"), m, NewformSource::CmTheta)?);
    }
    let base = |lvl: u32| newform_coeffs(lvl, len);
    let f7 = base(7)?;
    let f8 = base(8)?;
    let f12 = base(12)?;
    let f16 = base(16)?;
    let twists: [(&NewformSpec, i64, u32, i64, &str); 4] = [
        (&f8, -4, 32, -8, "32a"),
        (&f12, -4, 48, -3, "48a"),
        (&f16, 8, 64, -4, "64a"),
        (&f7, -4, 112, -7, "112a"),
    ];
    for (f, d, level, chi, label) in twists {
        out.push(NewformSpec::from_coeffs(level, chi, label, twist(f.coefficients(), d), NewformSource::CmTheta)?);
    }
    for f in &out {
        f.validate()?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level16_expansion() {
        let f = newform_coeffs(16, 30).unwrap();
        assert_eq!(&f.coefficients()[..14], &[0, 1, 0, 0, 0, -6, 0, 0, 0, 9, 0, 0, 0, 10]);
        assert_eq!(f.a(7), 0);
    }

    #[test]
    fn builtins_pass_invariants_to_ten_thousand() {
        for lvl in BUILTIN_LEVELS {
            let f = newform_coeffs(lvl, 10_001).unwrap();
            assert_eq!(f.a(15), f.a(3) * f.a(5));
        }
    }

    #[test]
    fn level7_matches_theta() {
        // η(τ)³η(7τ)³ = ½ Σ_{α∈O} α² q^{Nα} over ℤ[(1+√-7)/2]:
        // N = x² + xy + 2y², Re α² = x² + xy - 3y²/2.
        let len = 400;
        let f = newform_coeffs(7, len).unwrap();
        let mut twice = vec![0i64; len];
        for x in -30i64..=30 {
            for y in -30i64..=30 {
                let n = x * x + x * y + 2 * y * y;
                if (n as usize) < len {
                    twice[n as usize] += 2 * x * x + 2 * x * y - 3 * y * y;
                }
            }
        }
        for n in 1..len {
            assert_eq!(twice[n], 4 * f.a(n), "n = {n}");
        }
    }

    #[test]
    fn rejection_names_prime() {
        let mut a = newform_coeffs(16, 200).unwrap().coefficients().to_vec();
        a[13] += 1;
        let bad = NewformSpec::from_coeffs(16, -4, "bad", a, NewformSource::BuiltinEta).unwrap();
        let e = bad.validate().unwrap_err();
        assert!(matches!(&e, Error::RejectedSource { level: 16, reason } if reason.contains("13")), "{e}");
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("elltrilog-nf-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let f = newform_coeffs(8, 500).unwrap();
        let p = dir.join("8x.txt");
        std::fs::write(&p, f.to_file_string()).unwrap();
        let g = load_newform_file(&p).unwrap();
        assert_eq!(g.coefficients(), f.coefficients());
        assert_eq!(g.level, 8);
        assert_eq!(g.label, "8x");
        assert_eq!(load_level(&dir, 8).unwrap().len(), 1);
        std::fs::write(dir.join("bad.txt"), "8 3 -8\n1\n").unwrap();
        assert!(load_newform_file(&dir.join("bad.txt")).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn cm_candidates_valid() {
        let c = cm_candidates(2000).unwrap();
        assert_eq!(c.len(), 8);
        assert!(c.iter().all(|f| f.a(1) == 1));
    }
}
