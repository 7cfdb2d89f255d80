//! Closed-form right-hand sides written as rational combinations of the
//! constants `M_N` and `d_k`, together with the displayed L-value
//! identities and table cells.

use crate::error::{Error, Result};
use rug::Rational;

/// A constant appearing in a closed form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    /// `M_N`, optionally with a superscript distinguishing forms of one level.
    M(u32, Option<u32>),
    /// `d_k`.
    D(u32),
}

impl std::fmt::Display for Sym {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sym::M(n, None) => write!(f, "M{n}"),
            Sym::M(n, Some(k)) => write!(f, "M{n}^({k})"),
            Sym::D(k) => write!(f, "d{k}"),
        }
    }
}

/// `Σ cᵢ symᵢ` with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LinComb {
    /// Terms in source order.
    pub terms: Vec<(Rational, Sym)>,
}

impl LinComb {
    /// Parse `[-]( t ± t ± … )[/den]` or `t ± t ± …[/den]`, where a term
    /// is an optional integer followed by `M<level>[^<k>]` or `d<k>`.
    /// Whitespace is ignored. Example: `-(6M16+5d4)/36`.
    pub fn parse(src: &str) -> Result<Self> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || Error::Parse(format!("malformed closed form {src:?}"));
        let (body, den) = match s.rsplit_once('/') {
            Some((b, d)) => (b.to_string(), d.parse::<i64>().map_err(|_| err())?),
            None => (s.clone(), 1),
        };
        if den == 0 {
            return Err(err());
        }
        let (sign, inner) = if let Some(rest) = body.strip_prefix("-(") {
            (-1, rest.strip_suffix(')').ok_or_else(err)?.to_string())
        } else if let Some(rest) = body.strip_prefix('(') {
            (1, rest.strip_suffix(')').ok_or_else(err)?.to_string())
        } else {
            (1, body)
        };
        let mut terms = Vec::new();
        let bytes = inner.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut neg = false;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                neg = bytes[i] == b'-';
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coef: i64 = if i > start { inner[start..i].parse().map_err(|_| err())? } else { 1 };
            if i >= bytes.len() {
                return Err(err());
            }
            let kind = bytes[i];
            i += 1;
            let ns = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let idx: u32 = inner[ns..i].parse().map_err(|_| err())?;
            let sym = match kind {
                b'M' => {
                    let mut sup = None;
                    if i < bytes.len() && bytes[i] == b'^' {
                        i += 1;
                        let ss = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        sup = Some(inner[ss..i].parse().map_err(|_| err())?);
                    }
                    Sym::M(idx, sup)
                }
                b'd' => Sym::D(idx),
                _ => return Err(err()),
            };
            let c = if neg { -coef } else { coef } * sign;
            terms.push((Rational::from((c, den)), sym));
        }
        if terms.is_empty() {
            return Err(err());
        }
        Ok(Self { terms })
    }

    /// The distinct `M_N` symbols, in order of first appearance.
    pub fn m_symbols(&self) -> Vec<Sym> {
        let mut out: Vec<Sym> = Vec::new();
        for (_, s) in &self.terms {
            if matches!(s, Sym::M(..)) && !out.contains(s) {
                out.push(s.clone());
            }
        }
        out
    }
}

/// A divisor written by point names, `[(multiplicity, name)]`.
pub type NamedDivisor = &'static [(i64, &'static str)];

/// One cell of a table of `L_j = ℒ^{E_s}_{3,j}/π²` values.
#[derive(Clone, Copy, Debug)]
pub struct TableCell {
    /// `1` or `2`.
    pub j: u32,
    /// `s` of `E_s`.
    pub s: i64,
    /// Row label as printed, e.g. `L_1(P+2Q)`.
    pub entry: &'static str,
    /// Divisor of the row.
    pub divisor: NamedDivisor,
    /// Closed form.
    pub rhs: &'static str,
}

const fn cell(j: u32, s: i64, entry: &'static str, divisor: NamedDivisor, rhs: &'static str) -> TableCell {
    TableCell { j, s, entry, divisor, rhs }
}

const P2Q: NamedDivisor = &[(1, "2Q")];
const PP: NamedDivisor = &[(1, "P")];
const PP2Q: NamedDivisor = &[(1, "P+2Q")];
const PQ: NamedDivisor = &[(1, "Q")];
const PPQ: NamedDivisor = &[(1, "P+Q")];
const PO: NamedDivisor = &[(1, "O")];
const Q_PLUS_PQ: NamedDivisor = &[(1, "Q"), (1, "P+Q")];

/// `L_1` values on `E_s` for `s = -512, -64, -8`.
pub const TABLE1: &[TableCell] = &[
    cell(1, -512, "L_1(2Q)", P2Q, "-(6M16+5d4)/36"),
    cell(1, -64, "L_1(2Q)", P2Q, "-(18M8+d8)/36"),
    cell(1, -8, "L_1(2Q)", P2Q, "-(6M16+d4)/36"),
    cell(1, -512, "L_1(P)", PP, "(6M16+6M64-d4+12d8)/288"),
    cell(1, -64, "L_1(P)", PP, "(18M8+6M32+12d4-d8)/144"),
    cell(1, -8, "L_1(P)", PP, "(6M16-d4)/36"),
    cell(1, -512, "L_1(P+2Q)", PP2Q, "(6M16-6M64-d4-12d8)/288"),
    cell(1, -64, "L_1(P+2Q)", PP2Q, "(18M8-6M32-12d4-d8)/144"),
    cell(1, -8, "L_1(P+2Q)", PP2Q, "-d4/9"),
    cell(1, -512, "L_1(Q)", PQ, "-(6M16+d4)/288"),
    cell(1, -64, "L_1(Q)", PQ, "-(18M8+6M32-12d4+d8)/576"),
    cell(1, -8, "L_1(Q)", PQ, "-(6M16+6M64+d4-12d8)/576"),
    cell(1, -512, "L_1(P+Q)", PPQ, "-d4/72"),
    cell(1, -64, "L_1(P+Q)", PPQ, "-(18M8-6M32+12d4+d8)/576"),
    cell(1, -8, "L_1(P+Q)", PPQ, "-(6M16-6M64+d4+12d8)/576"),
    cell(1, -512, "L_1(O)", PO, "(6M16+7d4)/36"),
    cell(1, -64, "L_1(O)", PO, "(6M8+d8)/18"),
    cell(1, -8, "L_1(O)", PO, "2d4/9"),
];

/// `L_1` values on `E_s` for `s = 1, 16, 256, 4096`, with the combined
/// `L_1((Q)+(P+Q))` values where the individual ones have no closed form.
pub const TABLE2: &[TableCell] = &[
    cell(1, 1, "L_1(2Q)", P2Q, "-(48M7-d7)/36"),
    cell(1, 16, "L_1(2Q)", P2Q, "-(2M12+d3)/12"),
    cell(1, 256, "L_1(2Q)", P2Q, "(2M12-2M48-d3-8d4)/72"),
    cell(1, 4096, "L_1(2Q)", P2Q, "(48M7-6M112-96d4-d7)/504"),
    cell(1, 1, "L_1(P)", PP, "(33M7-2d7)/36"),
    cell(1, 16, "L_1(P)", PP, "(M12-d3)/12"),
    cell(1, 256, "L_1(P)", PP, "(2M12+2M48-d3+8d4)/72"),
    cell(1, 4096, "L_1(P)", PP, "(48M7+6M112+96d4+d7)/504"),
    cell(1, 1, "L_1(P+2Q)", PP2Q, "(33M7-2d7)/36"),
    cell(1, 16, "L_1(P+2Q)", PP2Q, "(M12-d3)/12"),
    cell(1, 256, "L_1(P+2Q)", PP2Q, "-(2M12+2d3)/9"),
    cell(1, 4096, "L_1(P+2Q)", PP2Q, "-(66M7+4d7)/63"),
    cell(1, 1, "L_1(Q)", PQ, "-(48M7+6M112-96d4-d7)/576"),
    cell(1, 16, "L_1(Q)", PQ, "-(2M12+2M48+d3-8d4)/192"),
    cell(1, 1, "L_1(P+Q)", PPQ, "-(48M7-6M112+96d4-d7)/576"),
    cell(1, 16, "L_1(P+Q)", PPQ, "-(2M12-2M48+d3+8d4)/192"),
    cell(1, 256, "L_1((Q)+(P+Q))", Q_PLUS_PQ, "(2M12-2M48-d3-8d4)/576"),
    cell(1, 4096, "L_1((Q)+(P+Q))", Q_PLUS_PQ, "(48M7-6M112-96d4+d7)/4032"),
    cell(1, 1, "L_1(O)", PO, "-(6M7-d7)/9"),
    cell(1, 16, "L_1(O)", PO, "d3/3"),
    cell(1, 256, "L_1(O)", PO, "(2M12+3d3)/9"),
    cell(1, 4096, "L_1(O)", PO, "(72M7+5d7)/63"),
];

const L2_A: NamedDivisor = &[(1, "P"), (-1, "P+2Q")];
const L2_B: NamedDivisor = &[(3, "P+Q"), (-4, "Q"), (1, "O")];
const L2_C: NamedDivisor = &[(1, "Q"), (-1, "P+Q")];
const L2_D: NamedDivisor = &[(1, "2Q"), (-1, "P")];
const L2_E: NamedDivisor = &[(1, "Q"), (1, "P+Q"), (-2, "O")];

/// `L_2` values on `E_s`.
pub const TABLE3: &[TableCell] = &[
    cell(2, -512, "L_2((P)-(P+2Q))", L2_A, "(M64-d8)/8"),
    cell(2, -512, "L_2(3(P+Q)-4(Q)+(O))", L2_B, "(3M16-d4)/4"),
    cell(2, -64, "L_2((P)-(P+2Q))", L2_A, "(M32-d4)/4"),
    cell(2, -64, "L_2((Q)-(P+Q))", L2_C, "(M32+d4)/16"),
    cell(2, -8, "L_2((2Q)-(P))", L2_D, "M16"),
    cell(2, -8, "L_2((Q)+(P+Q)-2(O))", L2_E, "(4M16-43d4)/64"),
    cell(2, 1, "L_2((2Q)-(P))", L2_D, "(54M7+d7)/8"),
    cell(2, 1, "L_2((Q)-(P+Q))", L2_C, "(M112+8d4)/16"),
    cell(2, 16, "L_2((2Q)-(P))", L2_D, "3M12/4"),
    cell(2, 16, "L_2((Q)-(P+Q))", L2_C, "(M48+2d4)/16"),
    cell(2, 256, "L_2((2Q)-(P))", L2_D, "(M48-2d4)/6"),
    cell(2, 256, "L_2((Q)+(P+Q)-2(O))", L2_E, "(508M12+4M48-385d3-8d4)/384"),
    cell(2, 4096, "L_2((2Q)-(P))", L2_D, "(M112-8d4)/14"),
    cell(2, 4096, "L_2((Q)+(P+Q)-2(O))", L2_E, "(6112M7+4M112-32d4-213d7)/896"),
];

/// Curve family of an L-value proposition entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropCurve {
    /// `E_s` with `P ↦ τ/2`, `Q ↦ 1/2`.
    E,
    /// `F_s` with `P ↦ 1/3`, `Q ↦ τ/3`.
    F,
    /// `G_s` with `P ↦ τ/2`, `Q ↦ 3/4`.
    G,
}

/// One displayed formula `k·ℒ_{3,1}(D₁) + ℒ_{3,2}(D₂) = (a/b)π²·(closed form)`.
#[derive(Clone, Copy, Debug)]
pub struct PropFormula {
    /// Registry id it belongs to.
    pub id: &'static str,
    /// Name of the left side, e.g. `U`.
    pub name: &'static str,
    /// Curve family.
    pub curve: PropCurve,
    /// `s` as written (`a`, `a+b√c` or `a-b√c` as `"a+bsqrtc"`).
    pub s: &'static str,
    /// Multiplier of `ℒ_{3,1}`.
    pub k31: i64,
    /// Divisor of `ℒ_{3,1}`.
    pub d31: NamedDivisor,
    /// Divisor of `ℒ_{3,2}` (`J_3(1) := 0` at the origin).
    pub d32: NamedDivisor,
    /// Rational multiplier of `π²` on the right.
    pub scale: (i64, i64),
    /// Closed form multiplied by `scale·π²`.
    pub rhs: &'static str,
}

const T31: NamedDivisor = &[(1, "Q"), (-3, "P"), (-6, "P+Q")];
const T32: NamedDivisor = &[(3, "P"), (6, "P+Q"), (-7, "Q"), (-2, "O")];
const U31: NamedDivisor = &[(2, "P"), (-1, "2Q"), (2, "P+2Q")];
const U32: NamedDivisor = &[(4, "Q"), (-5, "P"), (2, "2Q"), (4, "P+Q"), (-5, "P+2Q")];
const V31: NamedDivisor = &[(2, "2Q"), (-1, "P+2Q"), (2, "P")];
const V32: NamedDivisor = &[(5, "P+2Q"), (8, "Q"), (8, "P+Q"), (-11, "2Q"), (-10, "P")];

const fn prop(
    id: &'static str,
    name: &'static str,
    curve: PropCurve,
    s: &'static str,
    k31: i64,
    d31: NamedDivisor,
    d32: NamedDivisor,
    scale: (i64, i64),
    rhs: &'static str,
) -> PropFormula {
    PropFormula { id, name, curve, s, k31, d31, d32, scale, rhs }
}

/// The L-value proposition: `(6ℒ_{3,1} - ℒ_{3,2})((P)-(Q))` on `E_256`,
/// `𝒯(s)` on `F_s`, and `𝒰(s)`, `𝒱(s)` on `G_s`.
pub const PROP4: &[PropFormula] = &[
    prop("prop4.i", "E", PropCurve::E, "256", 6, &[(1, "P"), (-1, "Q")], &[(-1, "P"), (1, "Q")], (1, 2), "M48+2d4"),
    prop("prop4.ii", "T", PropCurve::F, "108", 15, T31, T32, (20, 1), "M12"),
    prop("prop4.ii", "T", PropCurve::F, "216", 15, T31, T32, (5, 1), "M24^2+d3"),
    prop("prop4.ii", "T", PropCurve::F, "1458", 15, T31, T32, (3, 2), "9M12+2d4"),
    prop("prop4.iii", "U", PropCurve::G, "256", 15, U31, U32, (45, 2), "M8"),
    prop("prop4.iii", "U", PropCurve::G, "648", 15, U31, U32, (45, 32), "4M16+d4"),
    prop("prop4.iii", "U", PropCurve::G, "2304", 15, U31, U32, (15, 4), "M24^1+d3"),
    prop("prop4.iii", "U", PropCurve::G, "20736", 15, U31, U32, (9, 20), "5M40^1+2d3"),
    prop("prop4.iii", "U", PropCurve::G, "614656", 15, U31, U32, (15, 2), "5M8+d3"),
    prop("prop4.iii", "U", PropCurve::G, "3656+2600sqrt2", 15, U31, U32, (45, 128), "4M32+28M8+4d4+d8"),
    prop("prop4.iii", "V", PropCurve::G, "3656-2600sqrt2", 30, V31, V32, (45, 64), "44M32-28M8+4d4-d8"),
];

/// A closed form that disagrees with the computed value as printed,
/// together with the form that does match. The printed form remains the
/// pass/fail check; the alternative is reported as a diagnostic.
#[derive(Clone, Copy, Debug)]
pub struct Erratum {
    /// Registry id.
    pub id: &'static str,
    /// `s` as written in the registry.
    pub s: &'static str,
    /// Table row, or the empty string for proposition formulas.
    pub entry: &'static str,
    /// Multiplier of `π²` (proposition formulas) or `(1, 1)` (tables).
    pub scale: (i64, i64),
    /// Matching closed form.
    pub rhs: &'static str,
    /// What differs from the printed form.
    pub note: &'static str,
}

const fn erratum(
    id: &'static str,
    s: &'static str,
    entry: &'static str,
    scale: (i64, i64),
    rhs: &'static str,
    note: &'static str,
) -> Erratum {
    Erratum { id, s, entry, scale, rhs, note }
}

/// Printed closed forms found to disagree, each with the integer relation
/// recovered by PSLQ at 70 digits (residual below `10⁻⁸⁴`).
pub const ERRATA: &[Erratum] = &[
    erratum("prop4.ii", "1458", "", (5, 2), "9M12+2d4", "prefactor 5π²/2, printed 3π²/2"),
    erratum("prop4.iii", "20736", "", (9, 20), "5M40^1+2d8", "d8 in place of the printed d3"),
    erratum(
        "prop4.iii",
        "3656-2600sqrt2",
        "",
        (45, 32),
        "4M32-28M8+4d4-d8",
        "45π²/32·(4M32-28M8+4d4-d8), printed 45π²/64·(44M32-28M8+4d4-d8)",
    ),
    erratum("table2", "4096", "L_1(2Q)", (1, 1), "(48M7-6M112-96d4+d7)/504", "sign of d7"),
    erratum("table3", "-512", "L_2((P)-(P+2Q))", (1, 1), "-(M64-d8)/8", "overall sign"),
    erratum("table3", "-512", "L_2(3(P+Q)-4(Q)+(O))", (1, 1), "-(3M16-d4)/4", "overall sign"),
    erratum("table3", "-64", "L_2((P)-(P+2Q))", (1, 1), "-(M32-d4)/4", "overall sign"),
];
