//! Explicit quintic generators of the fourth secant variety of the twisted
//! cubic threefold `v_3(P^3) ⊂ P^19`.
//!
//! The labelled matrices `A_1`, `A_2`, `B_2` are stored verbatim as tables and
//! validated on construction. `ξ`, `F`, `H` are Pfaffians of submatrices of
//! `A_1`; `G` is given explicitly. Their images under coordinate permutations
//! give 36 quintics spanning the degree-5 piece of the ideal.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det_rat, rank_rat, rref};
use crate::multiindex::{MultiIndex, Permutation, SMonomial};
use crate::polyring::{
    psi_is_zero, random_point, rat, secant_sample, Point, Rat, SPolynomial, TermRecord,
};
use crate::prolong::{kappa, relation_matrix};

// ------------------------------------------------------------------ data ---

const A1_COLS: &str = "2445 3534 3543 3453 3444(1) 3354 2544 2454 3345 3444(2) 3435";

const A1_ROWS: &[&str] = &[
    "4554: 0 s1020 s1011 s1101 s1110 s1200 s2010 s2100 0 0 0",
    "3465: -s1020 0 0 s0012 0 s0111 0 s1011 s0120 s0021 s0030",
    "3456: -s1011 0 0 s0003 0 s0102 0 s1002 s0111 s0012 s0021",
    "3546: -s1101 -s0012 -s0003 0 -s0102 0 -s1002 0 s0201 s0102 s0111",
    "3555: -s1110 0 0 s0102 0 s0201 0 s1101 s0210 s0111 s0120",
    "3645: -s1200 -s0111 -s0102 0 -s0201 0 -s1101 0 s0300 s0201 s0210",
    "4455: -s2010 0 0 s1002 0 s1101 0 s2001 s1110 s1011 s1020",
    "4545: -s2100 -s1011 -s1002 0 -s1101 0 -s2001 0 s1200 s1101 s1110",
    "3654: 0 -s0120 -s0111 -s0201 -s0210 -s0300 -s1110 -s1200 0 0 0",
    "3555: 0 -s0021 -s0012 -s0102 -s0111 -s0201 -s1011 -s1101 0 0 0",
    "3564: 0 -s0030 -s0021 -s0111 -s0120 -s0210 -s1020 -s1110 0 0 0",
];

const A2_ROWS: &[&str] = &[
    "4446: s2001 0 0 0 -s1002 0 0 0 0 s1002 -s1011",
    "4455(2): -s2010 0 0 0 s1011 0 0 0 0 -s1011 s1020",
    "4545(2): s2100 0 0 0 -s1101 0 0 0 0 s1101 -s1110",
    "5445: s3000 0 0 0 -s2001 0 0 0 0 s2001 -s2010",
    "5346: 0 0 0 0 0 0 0 0 -s2001 0 0",
    "5355: 0 0 0 0 0 0 0 0 s2010 0 0",
    "5445: 0 0 0 0 0 0 0 0 -s2100 0 0",
    "6345: 0 0 0 0 0 0 0 0 s3000 0 0",
    "5454: 0 0 0 -s2001 s2010 -s2100 0 -s3000 0 -2s2010 0",
    "5544: 0 -s2010 -s2001 0 -2s2100 0 -s3000 0 0 2s2100 0",
];

const B2_COLS: &str = "3444(3) 4434 4344(1) 4443 4245 4335 5343 5244 5334 4344(2)";

const B2_ROWS: &[&str] = &[
    "4446: s1002 -s0012 -s0102 -s0003 -s0201 s0111 0 0 0 0",
    "4455(2): -s1011 s0021 s0111 s0012 s0210 -s0120 0 0 0 0",
    "4545(2): s1101 -s0111 -s0201 -s0102 -s0300 s0210 0 0 0 0",
    "5445: s2001 -s1011 -s1101 -s1002 -s1200 s1110 0 0 0 0",
    "5346: 0 0 0 0 s1101 -s1011 s0003 s0102 -s0012 s1002",
    "5355: 0 0 0 0 -s1110 s1020 -s0012 -s0111 s0021 -s1011",
    "5445: 0 0 0 0 s1200 -s1110 s0102 s0201 -s0111 s1101",
    "6345: 0 0 0 0 -s2100 s2010 -s1002 -s1101 s1011 -s2001",
    "5454: -s2010 s1020 s1110 s1011 0 0 -s0111 -s0210 s0120 -s1110",
    "5544: s2100 -s1110 -s1200 -s1101 0 0 s0201 s0300 -s0210 s1200",
];

const G_A: &str = "\
-(s_{2001} s_{1110} s_{0003} - s_{2001} s_{1002} s_{0111} - s_{1110} s_{1002}^{2} + \
s_{1101} s_{1011} s_{1002}) (s_{0300} s_{0030} - s_{0210} s_{0120}) -2 (s_{1200} s_{1110} \
s_{1020} - s_{1110}^{3}) (s_{0111} s_{0003} - s_{0102} s_{0012}) -(s_{1200} s_{1020} \
s_{1002} - 2 s_{1110} s_{1101} s_{1011}) (s_{0201} s_{0021} + s_{0111}^{2}) -s_{1110}^{2} \
s_{1002} (s_{0201} s_{0021} + 3 s_{0111}^{2})";

const G_B: &str = "\
-(s_{2100} s_{1200} s_{0120} - 2 s_{2100} s_{1110} s_{0210} + s_{2100} s_{1020} s_{0300} - \
s_{1200}^{2} s_{1020} + s_{1200} s_{1110}^{2}) (s_{0021} s_{0003} - s_{0012}^{2}) \
+(s_{2100} s_{1200} s_{0111} - 2 s_{2100} s_{1101} s_{0210} + s_{2001} s_{1200} s_{0210} - \
s_{1200}^{2} s_{1011} + s_{1200} s_{1110} s_{1101}) (s_{0030} s_{0003} - s_{0021} \
s_{0012}) -(s_{2100} s_{1200} s_{0102} - 2 s_{2100} s_{1101} s_{0201} + s_{2100} s_{1002} \
s_{0300} - s_{1200}^{2} s_{1002} + s_{1200} s_{1101}^{2}) (s_{0030} s_{0012} - \
s_{0021}^{2}) +(2 s_{2100} s_{1002} s_{0102} - s_{1200} s_{1002}^{2} + s_{1101}^{2} \
s_{1002}) (s_{0210} s_{0030} - s_{0120}^{2}) -s_{2100} ( 2 s_{1110} (s_{0120} s_{0111} \
s_{0003} - s_{0120} s_{0102} s_{0012} - s_{0111}^{2} s_{0012} + s_{0111} s_{0102} \
s_{0021}) -2 s_{1101} (s_{0120}^{2} s_{0003} - 2 s_{0120} s_{0111} s_{0012} + s_{0111}^{2} \
s_{0021}) -s_{1020} (s_{0210} s_{0111} s_{0003} - s_{0210} s_{0102} s_{0012} - s_{0201} \
s_{0111} s_{0012} + s_{0201} s_{0102} s_{0021}) -s_{1011} (s_{0300} s_{0030} s_{0003} - \
s_{0300} s_{0021} s_{0012} - s_{0210} s_{0120} s_{0003} + 2 s_{0210} s_{0111} s_{0012} - \
s_{0210} s_{0102} s_{0021} - s_{0201} s_{0120} s_{0012} + 2 s_{0201} s_{0111} s_{0021} - \
s_{0201} s_{0102} s_{0030} + 2 s_{0120} s_{0111} s_{0102} - 2 s_{0111}^{3}) -s_{1002} \
(s_{0210} s_{0120} s_{0012} - 3 s_{0210} s_{0111} s_{0021} + s_{0201} s_{0120} s_{0021} - \
s_{0201} s_{0111} s_{0030} + 2 s_{0120} s_{0111}^{2}) ) -s_{2001} ( s_{1200} (s_{0120}^{2} \
s_{0003} - s_{0120} s_{0111} s_{0012} - s_{0120} s_{0102} s_{0021} + s_{0111} s_{0102} \
s_{0030})-s_{1110} (s_{0300} s_{0021} s_{0012} - s_{0210} s_{0102} s_{0021}) +s_{1002} \
(s_{0300} s_{0120} s_{0021} - s_{0210}^{2} s_{0021}) ) +(s_{1200} s_{1011} s_{1002} - \
s_{1110} s_{1101} s_{1002}) (s_{0210} s_{0021} + s_{0201} s_{0030} - 2 s_{0120} s_{0111}) \
+(3 s_{1200} s_{1110} s_{1011} - s_{1200} s_{1101} s_{1020} - 2 s_{1110}^{2} s_{1101}) \
s_{0120} s_{0003} -(s_{1200} s_{1110} s_{1011} + s_{1200} s_{1101} s_{1020} - 2 \
s_{1110}^{2} s_{1101}) s_{0102} s_{0021} -2 (s_{1200} s_{1110} s_{1011} - s_{1200} \
s_{1101} s_{1020}) s_{0111} s_{0012} +2 (2 s_{1200} s_{1110} s_{1002} - s_{1200} s_{1101} \
s_{1011} - s_{1110} s_{1101}^{2}) s_{0111} s_{0021} -(s_{1200} s_{1110} s_{1002} - \
s_{1200} s_{1101} s_{1011}) s_{0102} s_{0030} -(3 s_{1200} s_{1110} s_{1002} - s_{1200} \
s_{1101} s_{1011} - 2 s_{1110} s_{1101}^{2}) s_{0120} s_{0012}+(s_{1200} s_{1020} s_{1002} \
+ 2 s_{1110}^{2} s_{1002} - 2 s_{1110} s_{1101} s_{1011}) s_{0210} s_{0012} +s_{1200} \
s_{1011}^{2} s_{0111}^{2} -s_{1200} s_{1011}^{2} s_{0120} s_{0102}";

// -------------------------------------------------------- labelled matrices ---

/// A row or column label: a weight plus an optional tag separating repeats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Label {
    pub weight: MultiIndex,
    pub tag: Option<u8>,
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (w, tag) = match s.split_once('(') {
            Some((w, t)) => {
                let t = t
                    .strip_suffix(')')
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad label tag in {s}")))?;
                (w, Some(t))
            }
            None => (s, None),
        };
        Ok(Label {
            weight: MultiIndex::parse_subscript(w)?,
            tag,
        })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.weight.subscript())?;
        if let Some(t) = self.tag {
            write!(f, "({t})")?;
        }
        Ok(())
    }
}

/// A nonzero entry `coeff · s_var`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub coeff: i64,
    pub var: MultiIndex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub row_labels: Vec<Label>,
    pub col_labels: Vec<Label>,
    pub entries: Vec<Vec<Option<Entry>>>,
}

fn parse_entry(tok: &str) -> Result<Option<Entry>> {
    if tok == "0" {
        return Ok(None);
    }
    let (neg, rest) = match tok.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, tok),
    };
    let (c, var) = rest
        .split_once('s')
        .ok_or_else(|| Error::Parse(format!("bad entry {tok}")))?;
    let c: i64 = if c.is_empty() {
        1
    } else {
        c.parse()
            .map_err(|_| Error::Parse(format!("bad entry {tok}")))?
    };
    Ok(Some(Entry {
        coeff: if neg { -c } else { c },
        var: MultiIndex::parse_subscript(var)?,
    }))
}

fn parse_table(cols: &str, rows: &[&str]) -> Result<LabeledMatrix> {
    let col_labels = cols
        .split_whitespace()
        .map(Label::from_str)
        .collect::<Result<Vec<_>>>()?;
    let mut row_labels = Vec::new();
    let mut entries = Vec::new();
    for r in rows {
        let (lab, rest) = r
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad row {r}")))?;
        row_labels.push(lab.trim().parse()?);
        let row = rest
            .split_whitespace()
            .map(parse_entry)
            .collect::<Result<Vec<_>>>()?;
        if row.len() != col_labels.len() {
            return Err(Error::LengthMismatch {
                expected: col_labels.len(),
                got: row.len(),
            });
        }
        entries.push(row);
    }
    Ok(LabeledMatrix {
        row_labels,
        col_labels,
        entries,
    })
}

impl LabeledMatrix {
    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    /// Every nonzero entry is `±c · s_γ` with `γ` = row label − column label.
    pub fn check_label_law(&self) -> Result<()> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let Some(e) = e else { continue };
                let diff = self.row_labels[i]
                    .weight
                    .checked_sub(&self.col_labels[j].weight);
                if diff.as_ref() != Some(&e.var) {
                    return Err(Error::Validation(format!(
                        "entry ({}, {}) is s_{} but the labels differ by {:?}",
                        self.row_labels[i],
                        self.col_labels[j],
                        e.var.subscript(),
                        diff
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn check_skew(&self) -> Result<()> {
        let n = self.nrows();
        if n != self.ncols() {
            return Err(Error::NotSkew(n));
        }
        for i in 0..n {
            for j in 0..n {
                let ok = match (&self.entries[i][j], &self.entries[j][i]) {
                    (None, None) => true,
                    (Some(a), Some(b)) => a.var == b.var && a.coeff == -b.coeff,
                    _ => false,
                };
                if !ok {
                    return Err(Error::Validation(format!(
                        "entries ({i},{j}) and ({j},{i}) are not opposite"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn label_sums(&self) -> (MultiIndex, MultiIndex) {
        let sum = |ls: &[Label]| {
            ls.iter()
                .fold(MultiIndex::zero(4), |acc, l| acc.add(&l.weight))
        };
        (sum(&self.row_labels), sum(&self.col_labels))
    }

    pub fn position_of_row(&self, label: &str) -> Option<usize> {
        let l: Label = label.parse().ok()?;
        self.row_labels.iter().position(|x| *x == l)
    }

    pub fn position_of_col(&self, label: &str) -> Option<usize> {
        let l: Label = label.parse().ok()?;
        self.col_labels.iter().position(|x| *x == l)
    }

    pub fn polynomial(&self, i: usize, j: usize) -> SPolynomial {
        match &self.entries[i][j] {
            None => SPolynomial::zero(),
            Some(e) => SPolynomial::term(SMonomial::var(e.var.clone()), rat(e.coeff)),
        }
    }

    /// Symbolic entries restricted to the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<SPolynomial>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.polynomial(i, j)).collect())
            .collect()
    }

    pub fn evaluate(&self, point: &Point) -> Result<Vec<Vec<Rat>>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        None => Ok(Rat::zero()),
                        Some(e) => point
                            .get(&e.var)
                            .map(|x| x * rat(e.coeff))
                            .ok_or_else(|| Error::MissingAssignment(e.var.clone())),
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn build_a1() -> Result<LabeledMatrix> {
    let m = parse_table(A1_COLS, A1_ROWS)?;
    m.check_skew()?;
    m.check_label_law()?;
    let (rows, cols) = m.label_sums();
    if rows != MultiIndex::new(vec![36, 54, 54, 54])
        || cols != MultiIndex::new(vec![30, 45, 45, 45])
    {
        return Err(Error::Validation(format!("label sums {rows} / {cols}")));
    }
    Ok(m)
}

pub fn build_a2() -> Result<LabeledMatrix> {
    let m = parse_table(A1_COLS, A2_ROWS)?;
    m.check_label_law()?;
    Ok(m)
}

pub fn build_b2() -> Result<LabeledMatrix> {
    let m = parse_table(B2_COLS, B2_ROWS)?;
    m.check_label_law()?;
    Ok(m)
}

// -------------------------------------------------------------- pfaffians ---

trait Ring: Clone {
    fn r_zero() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_mul(&self, other: &Self) -> Self;
    fn r_add(&self, other: &Self) -> Self;
    fn r_sub(&self, other: &Self) -> Self;
}

impl Ring for SPolynomial {
    fn r_zero() -> Self {
        SPolynomial::zero()
    }
    fn r_is_zero(&self) -> bool {
        SPolynomial::is_zero(self)
    }
    fn r_mul(&self, other: &Self) -> Self {
        SPolynomial::mul(self, other)
    }
    fn r_add(&self, other: &Self) -> Self {
        SPolynomial::add(self, other)
    }
    fn r_sub(&self, other: &Self) -> Self {
        SPolynomial::sub(self, other)
    }
}

impl Ring for Rat {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn r_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn r_add(&self, other: &Self) -> Self {
        self + other
    }
    fn r_sub(&self, other: &Self) -> Self {
        self - other
    }
}

fn check_skew<T: Ring>(a: &[Vec<T>]) -> Result<()> {
    let n = a.len();
    if n % 2 == 1 || a.iter().any(|r| r.len() != n) {
        return Err(Error::NotSkew(n));
    }
    for i in 0..n {
        for j in i..n {
            if !a[i][j].r_add(&a[j][i]).r_is_zero() {
                return Err(Error::NotSkew(n));
            }
        }
    }
    Ok(())
}

/// Expansion along the first remaining index, memoised on the index set.
fn pf_rec<T: Ring>(a: &[Vec<T>], mask: u64, memo: &mut HashMap<u64, T>) -> T {
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut acc = T::r_zero();
    let mut sign_plus = true;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if !a[i][j].r_is_zero() {
            let sub = rest & !(1 << j);
            let term = if sub == 0 {
                a[i][j].clone()
            } else {
                a[i][j].r_mul(&pf_rec(a, sub, memo))
            };
            acc = if sign_plus {
                acc.r_add(&term)
            } else {
                acc.r_sub(&term)
            };
        }
        sign_plus = !sign_plus;
    }
    memo.insert(mask, acc.clone());
    acc
}

fn pf_generic<T: Ring>(a: &[Vec<T>]) -> Result<T> {
    check_skew(a)?;
    let n = a.len();
    if n == 0 {
        return Err(Error::NotSkew(0));
    }
    if n > 64 {
        return Err(Error::OutOfScope(format!("Pfaffian of size {n}")));
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(pf_rec(a, full, &mut HashMap::new()))
}

/// Pfaffian with `Pf([[0, a], [-a, 0]]) = a`, expanded along the first row.
pub fn pfaffian(a: &[Vec<SPolynomial>]) -> Result<SPolynomial> {
    pf_generic(a)
}

pub fn pfaffian_rat(a: &[Vec<Rat>]) -> Result<Rat> {
    pf_generic(a)
}

// ------------------------------------------------------------ polynomials ---

fn a1() -> LabeledMatrix {
    build_a1().expect("embedded A1 table is valid")
}

/// Pfaffian of `A_1` with the given row and column labels removed; removed
/// rows and columns sit in matching positions.
fn a1_pfaffian_without(rows: &[&str], cols: &[&str]) -> SPolynomial {
    let a = a1();
    let drop_r: Vec<usize> = rows.iter().map(|l| a.position_of_row(l).unwrap()).collect();
    let drop_c: Vec<usize> = cols.iter().map(|l| a.position_of_col(l).unwrap()).collect();
    let keep_r: Vec<usize> = (0..a.nrows()).filter(|i| !drop_r.contains(i)).collect();
    let keep_c: Vec<usize> = (0..a.ncols()).filter(|i| !drop_c.contains(i)).collect();
    pfaffian(&a.submatrix(&keep_r, &keep_c)).expect("submatrix is skew")
}

const XI_ROWS: [&str; 3] = ["4554", "4455", "4545"];
const XI_COLS: [&str; 3] = ["2445", "2544", "2454"];

fn xi_positions(m: &LabeledMatrix) -> (Vec<usize>, Vec<usize>) {
    let keep_r = (0..m.nrows())
        .filter(|i| !XI_ROWS.iter().any(|l| m.position_of_row(l) == Some(*i)))
        .collect();
    let keep_c = (0..m.ncols())
        .filter(|i| !XI_COLS.iter().any(|l| m.position_of_col(l) == Some(*i)))
        .collect();
    (keep_r, keep_c)
}

/// Quartic `ξ` of weight (0,4,4,4).
pub fn make_xi() -> SPolynomial {
    a1_pfaffian_without(&XI_ROWS, &XI_COLS)
}

/// Quintic `F` of weight (2,4,4,5).
pub fn make_f() -> SPolynomial {
    a1_pfaffian_without(&["4554"], &["2445"])
}

/// Quintic `H` of weight (3,3,4,5).
pub fn make_h() -> SPolynomial {
    a1_pfaffian_without(&["3654"], &["3345"])
}

fn transposition(i: usize, j: usize) -> Permutation {
    Permutation::transposition(4, i, j)
}

/// Quintic `G = s_3000 ξ' + G^a + G^b + φ_(12)(G^b)` of weight (3,4,4,4).
///
/// `G^a` and `G^b` are fixed data, so they pin the sign of the quartic: with
/// the first-row Pfaffian convention used here, `ξ' = −ξ`.
pub fn make_g() -> SPolynomial {
    let (ga, gb) = g_parts();
    let s3000 = SPolynomial::var(MultiIndex::new(vec![3, 0, 0, 0]));
    s3000
        .mul(&make_xi().neg())
        .add(&ga)
        .add(&gb)
        .add(&gb.apply_perm(&transposition(1, 2)))
}

pub fn g_parts() -> (SPolynomial, SPolynomial) {
    (
        SPolynomial::parse(G_A).expect("embedded polynomial parses"),
        SPolynomial::parse(G_B).expect("embedded polynomial parses"),
    )
}

/// One member of the 36-element basis.
#[derive(Clone, Debug)]
pub struct BasisMember {
    /// "F", "G" or "H".
    pub source: &'static str,
    /// Applied as `φ_τ`.
    pub tau: Permutation,
    pub weight: MultiIndex,
    pub poly: SPolynomial,
}

/// `φ_τ(F)` and `φ_τ(H)` for one `τ` per weight of their orbits, and
/// `φ_τ(G), φ_τ φ_(23)(G), φ_τ φ_(13)(G)` per weight of the orbit of (3,4,4,4).
pub fn thirty_six_basis() -> Vec<BasisMember> {
    let (f, g, h) = (make_f(), make_g(), make_h());
    let mut out = Vec::new();
    let mut push_orbit =
        |source: &'static str, p: &SPolynomial, base: &MultiIndex, extra: &[Permutation]| {
            let mut weights: Vec<MultiIndex> =
                Permutation::all(4).iter().map(|t| t.apply(base)).collect();
            weights.sort();
            weights.dedup();
            for w in weights {
                let tau = Permutation::mapping(base, &w).expect("same orbit");
                for e in extra {
                    let t = tau.compose(e);
                    out.push(BasisMember {
                        source,
                        weight: w.clone(),
                        poly: p.apply_perm(&t),
                        tau: t,
                    });
                }
            }
        };
    let id = Permutation::identity(4);
    push_orbit("F", &f, &MultiIndex::new(vec![2, 4, 4, 5]), &[id.clone()]);
    push_orbit(
        "G",
        &g,
        &MultiIndex::new(vec![3, 4, 4, 4]),
        &[id.clone(), transposition(2, 3), transposition(1, 3)],
    );
    push_orbit("H", &h, &MultiIndex::new(vec![3, 3, 4, 5]), &[id]);
    out
}

// ----------------------------------------------------------------- checks ---

/// Exact rank of `A_1` at a point.
pub fn check_rank_a1(point: &Point) -> Result<usize> {
    Ok(rank_rat(&a1().evaluate(point)?))
}

/// A cubic form in three variables placed in the slots 1..3 of P^19 by direct
/// coefficient assignment.
fn cubic_point(assign: &[(&str, Rat)]) -> Point {
    let mut p: Point = crate::multiindex::exponents(3, 3)
        .into_iter()
        .map(|a| (a, Rat::zero()))
        .collect();
    for (s, v) in assign {
        p.insert(MultiIndex::parse_subscript(s).unwrap(), v.clone());
    }
    p
}

/// `ξ²` (the determinant of its 8×8 matrix) at the normal forms
/// `x1²x2 − x0³ − x0x2²`, `x0x1x2`, `x0(x0² + x1x2)` and
/// `x1²x2 − x0³ − a x0x2² − b x2³`.
pub fn normal_form_checks(a: &Rat, b: &Rat) -> Vec<Rat> {
    let one = Rat::one();
    let forms = [
        cubic_point(&[
            ("0021", one.clone()),
            ("0300", -one.clone()),
            ("0102", -one.clone()),
        ]),
        cubic_point(&[("0111", one.clone())]),
        cubic_point(&[("0300", one.clone()), ("0111", one.clone())]),
        cubic_point(&[
            ("0021", one.clone()),
            ("0300", -one.clone()),
            ("0102", -a.clone()),
            ("0003", -b.clone()),
        ]),
    ];
    let m = a1();
    let (keep_r, keep_c) = xi_positions(&m);
    forms
        .iter()
        .map(|p| {
            let full = m.evaluate(p).unwrap();
            let sub: Vec<Vec<Rat>> = keep_r
                .iter()
                .map(|&i| keep_c.iter().map(|&j| full[i][j].clone()).collect())
                .collect();
            det_rat(&sub)
        })
        .collect()
}

/// Values of the determinant identities for `G` at one point, or `None` when
/// `Pf(Ã_1)` vanishes there.
#[derive(Clone, Debug)]
pub struct DeterminantSample {
    pub seed: u64,
    pub pf: Rat,
    /// `G · Pf(Ã_1)³ + det(L)`.
    pub full_residual: Rat,
    /// `G · Pf(Ã_1) + det([c̃_2 B̃_2])`.
    pub reduced_residual: Rat,
    /// `det(B_2) − Pf(Ã_1)²`.
    pub b2_residual: Rat,
}

impl DeterminantSample {
    pub fn passed(&self) -> bool {
        self.full_residual.is_zero()
            && self.reduced_residual.is_zero()
            && self.b2_residual.is_zero()
    }
}

fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.iter().map(|r| r[n].clone()).collect())
}

pub fn determinant_identities_at(
    point: &Point,
    seed: u64,
    g: &SPolynomial,
) -> Result<Option<DeterminantSample>> {
    let a1m = a1();
    let a2m = build_a2()?;
    let b2m = build_b2()?;
    let (a1v, a2v, b2v) = (
        a1m.evaluate(point)?,
        a2m.evaluate(point)?,
        b2m.evaluate(point)?,
    );
    let r_drop = a1m.position_of_row("3564").unwrap();
    let c_drop = a1m.position_of_col("3435").unwrap();
    let b_drop = b2m.position_of_col("3444(3)").unwrap();
    let rows1: Vec<usize> = (0..11).filter(|&i| i != r_drop).collect();
    let cols1: Vec<usize> = (0..11).filter(|&j| j != c_drop).collect();
    let colsb: Vec<usize> = (0..10).filter(|&j| j != b_drop).collect();
    let a1t: Vec<Vec<Rat>> = rows1
        .iter()
        .map(|&i| cols1.iter().map(|&j| a1v[i][j].clone()).collect())
        .collect();
    let pf = pfaffian_rat(&a1t)?;
    if pf.is_zero() {
        return Ok(None);
    }
    let c1: Vec<Rat> = rows1.iter().map(|&i| a1v[i][c_drop].clone()).collect();
    let a2t: Vec<Vec<Rat>> = a2v
        .iter()
        .map(|r| cols1.iter().map(|&j| r[j].clone()).collect())
        .collect();
    let c2: Vec<Rat> = a2v.iter().map(|r| r[c_drop].clone()).collect();
    let b2t: Vec<Vec<Rat>> = b2v
        .iter()
        .map(|r| colsb.iter().map(|&j| r[j].clone()).collect())
        .collect();

    // L = [[Ã1, c1, 0], [Ã2, c2, B̃2]]
    let mut l = Vec::with_capacity(20);
    for (r, c) in a1t.iter().zip(&c1) {
        let mut row = r.clone();
        row.push(c.clone());
        row.extend(std::iter::repeat(Rat::zero()).take(9));
        l.push(row);
    }
    for ((r, c), b) in a2t.iter().zip(&c2).zip(&b2t) {
        let mut row = r.clone();
        row.push(c.clone());
        row.extend(b.iter().cloned());
        l.push(row);
    }
    let gv = g.evaluate(point)?;
    let full_residual = &gv * &pf * &pf * &pf + det_rat(&l);

    let x = solve(&a1t, &c1).expect("Ã1 is invertible when its Pfaffian is nonzero");
    let mut red = Vec::with_capacity(10);
    for ((r, c), b) in a2t.iter().zip(&c2).zip(&b2t) {
        let dot = r.iter().zip(&x).fold(Rat::zero(), |s, (p, q)| s + p * q);
        let mut row = vec![c - dot];
        row.extend(b.iter().cloned());
        red.push(row);
    }
    let reduced_residual = &gv * &pf + det_rat(&red);
    let b2_residual = det_rat(&b2v) - &pf * &pf;
    Ok(Some(DeterminantSample {
        seed,
        pf,
        full_residual,
        reduced_residual,
        b2_residual,
    }))
}

#[derive(Clone, Debug)]
pub struct DeterminantReport {
    pub samples: Vec<DeterminantSample>,
    /// Points discarded because `Pf(Ã_1)` vanished.
    pub redraws: usize,
}

impl DeterminantReport {
    pub fn passed(&self) -> bool {
        !self.samples.is_empty() && self.samples.iter().all(|s| s.passed())
    }
}

/// Checks `G · Pf(Ã_1)³ + det(L) = 0`, the reduced form
/// `G · Pf(Ã_1) + det([c̃_2 B̃_2]) = 0` and `det(B_2) = Pf(Ã_1)²` at random
/// rational points, one per seed.
pub fn g_determinant_identity(seeds: &[u64]) -> Result<DeterminantReport> {
    let g = make_g();
    let mut samples = Vec::new();
    let mut redraws = 0;
    for &seed in seeds {
        let mut s = seed;
        loop {
            let p = random_point(3, 3, s, 12);
            match determinant_identities_at(&p, s, &g)? {
                Some(x) => {
                    samples.push(x);
                    break;
                }
                None => {
                    redraws += 1;
                    s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
                }
            }
        }
    }
    Ok(DeterminantReport { samples, redraws })
}

/// Splits `P = c · s_α · ξ + P′` and checks that `c = ±1`, that `P` is at most
/// linear in `s_α`, and that `P′` avoids the listed variables.
fn localizes(p: &SPolynomial, xi: &SPolynomial, alpha: &MultiIndex, avoid: &[MultiIndex]) -> bool {
    let lin = p.linear_coefficient(alpha);
    let sign_ok = lin == *xi || lin == xi.neg();
    let rest = p.sub(&SPolynomial::var(alpha.clone()).mul(&lin));
    sign_ok && avoid.iter().all(|v| !rest.mentions(v))
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizationReport {
    pub xi_avoids: bool,
    pub f1: bool,
    pub f2: bool,
    pub f3: bool,
    pub g: bool,
    pub f2_prime_weight: Option<MultiIndex>,
}

impl LocalizationReport {
    pub fn passed(&self) -> bool {
        self.xi_avoids
            && self.f1
            && self.f2
            && self.f3
            && self.g
            && self.f2_prime_weight == Some(MultiIndex::new(vec![2, 4, 5, 4]))
    }
}

pub fn localization_identities() -> LocalizationReport {
    let xi = make_xi();
    let f = make_f();
    let g = make_g();
    let four: Vec<MultiIndex> = ["2001", "2010", "2100", "3000"]
        .iter()
        .map(|s| MultiIndex::parse_subscript(s).unwrap())
        .collect();
    let f2 = f.apply_perm(&transposition(2, 3));
    let f3 = f.apply_perm(&transposition(1, 3));
    let lin = f2.linear_coefficient(&four[1]);
    let f2p = f2.sub(&SPolynomial::var(four[1].clone()).mul(&lin));
    LocalizationReport {
        xi_avoids: four.iter().all(|v| !xi.mentions(v)),
        f1: localizes(&f, &xi, &four[0], &four),
        f2: localizes(&f2, &xi, &four[1], &four),
        f3: localizes(&f3, &xi, &four[2], &four),
        g: localizes(&g, &xi, &four[3], &four[3..]),
        f2_prime_weight: f2p.weight(4),
    }
}

// ------------------------------------------------------------ verification ---

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Restriction of `members` to each weight of the three orbits, compared with
/// the kernel computed from the relation system.
pub fn span_checks(members: &[BasisMember]) -> Result<Vec<(MultiIndex, usize, usize, bool)>> {
    let mut out = Vec::new();
    let mut weights: Vec<MultiIndex> = members.iter().map(|m| m.weight.clone()).collect();
    weights.sort();
    weights.dedup();
    for w in weights {
        let rel = relation_matrix(&w, 4, 3, 3)?;
        let index: HashMap<&SMonomial, usize> = rel
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        let mut vecs = Vec::new();
        let mut inside = true;
        for m in members.iter().filter(|m| m.weight == w) {
            let mut v = vec![Rat::zero(); rel.columns.len()];
            for t in m.poly.terms().keys() {
                match index.get(t) {
                    Some(&i) => v[i] = m.poly.normalized_coeff(t),
                    None => inside = false,
                }
            }
            inside &= rel.matrix.apply(&v).iter().all(|x| x.is_zero());
            vecs.push(v);
        }
        let rank = rank_rat(&vecs);
        let kap = kappa(&w, 4, 3, 3, false)?.kappa;
        out.push((w, rank, kap, inside && rank == kap));
    }
    Ok(out)
}

/// Runs the full verification suite.
pub fn verify_all() -> Vec<Check> {
    let mut out = Vec::new();
    match build_a1() {
        Ok(a) => {
            let (r, c) = a.label_sums();
            out.push(check(
                "A1 skew, label law, label sums",
                true,
                format!("{}x{}, rows {r}, columns {c}", a.nrows(), a.ncols()),
            ))
        }
        Err(e) => out.push(check(
            "A1 skew, label law, label sums",
            false,
            e.to_string(),
        )),
    }
    for (name, m) in [("A2 label law", build_a2()), ("B2 label law", build_b2())] {
        out.push(match m {
            Ok(_) => check(name, true, ""),
            Err(e) => check(name, false, e.to_string()),
        });
    }

    let xi = make_xi();
    let f = make_f();
    let g = make_g();
    let h = make_h();
    let weight = |p: &SPolynomial| {
        p.weight(4)
            .map(|w| w.to_string())
            .unwrap_or_else(|| "mixed".into())
    };
    let mi = |v: &[u32]| MultiIndex::new(v.to_vec());
    for (name, p, deg, w) in [
        ("xi", &xi, 4, mi(&[0, 4, 4, 4])),
        ("F", &f, 5, mi(&[2, 4, 4, 5])),
        ("G", &g, 5, mi(&[3, 4, 4, 4])),
        ("H", &h, 5, mi(&[3, 3, 4, 5])),
    ] {
        let ok = p.degree() == Some(deg) && p.is_homogeneous() && p.weight(4) == Some(w.clone());
        out.push(check(
            &format!("{name}: degree {deg}, weight {w}"),
            ok,
            format!("{} terms, weight {}", p.len(), weight(p)),
        ));
    }
    let avoid = ["2010", "2100", "3000"]
        .iter()
        .all(|s| !f.mentions(&MultiIndex::parse_subscript(s).unwrap()));
    out.push(check("F avoids s_2010, s_2100, s_3000", avoid, ""));

    let psi = |p: &SPolynomial, k| psi_is_zero(p, k, 4).unwrap_or(false);
    out.push(check("Psi(xi) = 0 for k = 3", psi(&xi, 3), ""));
    for (name, p) in [("F", &f), ("G", &g), ("H", &h)] {
        out.push(check(&format!("Psi({name}) = 0 for k = 4"), psi(p, 4), ""));
    }

    let t = |i, j| transposition(i, j);
    let inv = [
        ("phi_(12) F = F", f.apply_perm(&t(1, 2)) == f),
        ("phi_(01) H = H", h.apply_perm(&t(0, 1)) == h),
        ("phi_(12) G = G", g.apply_perm(&t(1, 2)) == g),
        (
            "phi_(12), phi_(13), phi_(23) fix xi",
            [t(1, 2), t(1, 3), t(2, 3)]
                .iter()
                .all(|p| xi.apply_perm(p) == xi),
        ),
    ];
    for (name, ok) in inv {
        out.push(check(name, ok, ""));
    }
    let marker: SMonomial = "s_1110^3*s_0111*s_0003".parse().unwrap();
    let unique = !g.coeff(&marker).is_zero()
        && g.apply_perm(&t(2, 3)).coeff(&marker).is_zero()
        && g.apply_perm(&t(1, 3)).coeff(&marker).is_zero();
    out.push(check("s_1110^3 s_0111 s_0003 occurs only in G", unique, ""));

    let loc = localization_identities();
    out.push(check(
        "localization decompositions",
        loc.passed(),
        format!("{loc:?}"),
    ));

    let basis = thirty_six_basis();
    let all_psi = basis.iter().all(|m| psi(&m.poly, 4));
    out.push(check(
        "36 basis members satisfy Psi = 0",
        basis.len() == 36 && all_psi,
        format!("{} members", basis.len()),
    ));
    let cols: Vec<SMonomial> = {
        let mut c: Vec<SMonomial> = basis
            .iter()
            .flat_map(|m| m.poly.terms().keys().cloned())
            .collect();
        c.sort();
        c.dedup();
        c
    };
    let mat: Vec<Vec<Rat>> = basis
        .iter()
        .map(|m| cols.iter().map(|c| m.poly.coeff(c)).collect())
        .collect();
    let r = rank_rat(&mat);
    out.push(check(
        "36 basis members are independent",
        r == 36,
        format!("rank {r}"),
    ));
    let vanish = (0..10u64).all(|s| {
        let p = secant_sample(4, 3, 3, 1000 + s);
        basis
            .iter()
            .all(|m| m.poly.evaluate(&p).map(|v| v.is_zero()).unwrap_or(false))
    });
    out.push(check(
        "basis vanishes at 10 points of the secant variety",
        vanish,
        "",
    ));

    match span_checks(&basis) {
        Ok(spans) => {
            let bad: Vec<String> = spans
                .iter()
                .filter(|s| !s.3)
                .map(|s| format!("{} rank {} kappa {}", s.0, s.1, s.2))
                .collect();
            out.push(check(
                "basis spans every kernel of the 28 orbit weights",
                spans.len() == 28 && bad.is_empty(),
                if bad.is_empty() {
                    format!("{} weights", spans.len())
                } else {
                    bad.join("; ")
                },
            ));
        }
        Err(e) => out.push(check(
            "basis spans every kernel of the 28 orbit weights",
            false,
            e.to_string(),
        )),
    }

    let ver: Vec<usize> = (0..10u64)
        .map(|s| check_rank_a1(&secant_sample(1, 3, 3, 2000 + s)).unwrap_or(usize::MAX))
        .collect();
    out.push(check(
        "rank A1 = 2 on the Veronese (10 points)",
        ver.iter().all(|&r| r == 2),
        format!("{ver:?}"),
    ));
    let sec: Vec<usize> = (0..10u64)
        .map(|s| check_rank_a1(&secant_sample(4, 3, 3, 3000 + s)).unwrap_or(usize::MAX))
        .collect();
    out.push(check(
        "rank A1 <= 8 on the secant variety (10 points)",
        sec.iter().all(|&r| r <= 8),
        format!("{sec:?}"),
    ));
    let gen: Vec<usize> = (0..5u64)
        .map(|s| check_rank_a1(&random_point(3, 3, 4000 + s, 20)).unwrap_or(0))
        .collect();
    out.push(check(
        "rank A1 > 8 at some random point",
        gen.iter().any(|&r| r > 8),
        format!("{gen:?}"),
    ));

    for a in [2i64, 3, 5] {
        let v = normal_form_checks(&rat(a), &rat(3));
        let expect = vec![rat(1), rat(1), rat(1), rat(a * a)];
        out.push(check(
            &format!("xi^2 at the four normal forms, a = {a}"),
            v == expect,
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        ));
    }

    let seeds: Vec<u64> = (0..20).collect();
    match g_determinant_identity(&seeds) {
        Ok(rep) => out.push(check(
            "determinant identities for G (20 seeds)",
            rep.passed(),
            format!(
                "{} samples, {} redraws, failing seeds {:?}",
                rep.samples.len(),
                rep.redraws,
                rep.samples
                    .iter()
                    .filter(|s| !s.passed())
                    .map(|s| s.seed)
                    .collect::<Vec<_>>()
            ),
        )),
        Err(e) => out.push(check(
            "determinant identities for G (20 seeds)",
            false,
            e.to_string(),
        )),
    }

    let pf_det = (0..20u64).all(|s| {
        let p = random_point(3, 3, 5000 + s, 12);
        let a = a1();
        let (rows, cols) = xi_positions(&a);
        let m = a.evaluate(&p).unwrap();
        let sub: Vec<Vec<Rat>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
            .collect();
        let pf = pfaffian_rat(&sub).unwrap();
        &pf * &pf == det_rat(&sub)
    });
    out.push(check(
        "Pf^2 = det for the 8x8 xi matrix (20 points)",
        pf_det,
        "",
    ));
    out
}

// ----------------------------------------------------------------- export ---

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExportedPoly {
    pub name: String,
    pub weight: MultiIndex,
    pub records: Vec<TermRecord>,
    pub text: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuinticsExport {
    pub schema: u32,
    pub named: Vec<ExportedPoly>,
    pub basis: Vec<ExportedPoly>,
}

fn exported(name: String, p: &SPolynomial) -> ExportedPoly {
    ExportedPoly {
        name,
        weight: p.weight(4).expect("homogeneous weight"),
        records: p.to_records(),
        text: p.to_subscript_text(),
    }
}

pub fn export() -> QuinticsExport {
    let named = [
        ("xi", make_xi()),
        ("F", make_f()),
        ("G", make_g()),
        ("H", make_h()),
    ]
    .iter()
    .map(|(n, p)| exported(n.to_string(), p))
    .collect();
    let basis = thirty_six_basis()
        .iter()
        .map(|m| exported(format!("phi_{}({})", m.tau, m.source), &m.poly))
        .collect();
    QuinticsExport {
        schema: 1,
        named,
        basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(s: &str) -> MultiIndex {
        MultiIndex::parse_subscript(s).unwrap()
    }

    #[test]
    fn tables_validate() {
        let a = build_a1().unwrap();
        assert_eq!((a.nrows(), a.ncols()), (11, 11));
        let (r, c) = (
            a.position_of_row("4554").unwrap(),
            a.position_of_col("3534").unwrap(),
        );
        assert_eq!(
            a.entries[r][c],
            Some(Entry {
                coeff: 1,
                var: mi("1020")
            })
        );
        let a2 = build_a2().unwrap();
        let (r, c) = (
            a2.position_of_row("5544").unwrap(),
            a2.position_of_col("3444(1)").unwrap(),
        );
        assert_eq!(
            a2.entries[r][c],
            Some(Entry {
                coeff: -2,
                var: mi("2100")
            })
        );
        assert_eq!(build_b2().unwrap().nrows(), 10);
    }

    #[test]
    fn label_law_catches_corruption() {
        let mut a = build_a1().unwrap();
        a.entries[0][1] = Some(Entry {
            coeff: 1,
            var: mi("1011"),
        });
        assert!(a.check_label_law().is_err());
        a.entries[0][1] = Some(Entry {
            coeff: 1,
            var: mi("1020"),
        });
        a.entries[1][0] = None;
        assert!(a.check_skew().is_err());
    }

    #[test]
    fn pfaffian_conventions() {
        let a = SPolynomial::var(mi("1020"));
        let m = vec![
            vec![SPolynomial::zero(), a.clone()],
            vec![a.neg(), SPolynomial::zero()],
        ];
        assert_eq!(pfaffian(&m).unwrap(), a);
        let odd = vec![vec![rat(0)]];
        assert!(matches!(pfaffian_rat(&odd), Err(Error::NotSkew(1))));
        let not_skew = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]];
        assert!(pfaffian_rat(&not_skew).is_err());
    }

    #[test]
    fn named_polynomials() {
        let (xi, f, h) = (make_xi(), make_f(), make_h());
        assert_eq!(xi.degree(), Some(4));
        assert_eq!(xi.weight(4), Some(mi("0444")));
        assert_eq!(f.weight(4), Some(mi("2445")));
        assert_eq!(h.weight(4), Some(mi("3345")));
        assert!(psi_is_zero(&xi, 3, 4).unwrap());
        assert!(psi_is_zero(&f, 4, 4).unwrap());
        assert!(psi_is_zero(&h, 4, 4).unwrap());
    }

    #[test]
    fn g_is_in_the_kernel() {
        let g = make_g();
        assert_eq!(g.weight(4), Some(mi("3444")));
        assert!(psi_is_zero(&g, 4, 4).unwrap());
        assert_eq!(g.apply_perm(&transposition(1, 2)), g);
        let (ga, gb) = g_parts();
        assert_eq!(ga.apply_perm(&transposition(1, 2)), ga);
        assert_ne!(gb.apply_perm(&transposition(1, 2)), gb);
    }

    #[test]
    fn normal_forms() {
        let v = normal_form_checks(&rat(2), &rat(3));
        assert_eq!(v, vec![rat(1), rat(1), rat(1), rat(4)]);
        let v = normal_form_checks(&rat(0), &rat(7));
        assert_eq!(v[3], rat(0));
    }

    #[test]
    fn determinant_identities() {
        let rep = g_determinant_identity(&[1, 2, 3]).unwrap();
        assert!(rep.passed(), "{:?}", rep.samples);
        let zero: Point = crate::multiindex::exponents(3, 3)
            .into_iter()
            .map(|a| (a, Rat::zero()))
            .collect();
        assert!(determinant_identities_at(&zero, 0, &make_g())
            .unwrap()
            .is_none());
    }

    #[test]
    fn localization() {
        let r = localization_identities();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn rank_of_a1() {
        assert_eq!(check_rank_a1(&secant_sample(1, 3, 3, 9)).unwrap(), 2);
        let mut p = secant_sample(1, 3, 3, 9);
        p.remove(&mi("0003"));
        assert!(matches!(
            check_rank_a1(&p),
            Err(Error::MissingAssignment(_))
        ));
    }

    #[test]
    fn basis_shape() {
        let b = thirty_six_basis();
        assert_eq!(b.len(), 36);
        for m in &b {
            assert_eq!(m.poly.weight(4).as_ref(), Some(&m.weight));
        }
        let e = export();
        assert_eq!(e.basis.len(), 36);
        let g = SPolynomial::from_records(&e.named[2].records).unwrap();
        assert_eq!(g, make_g());
    }
}
