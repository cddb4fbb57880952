//! Splitting weight spaces and kernels along groups generated by disjoint
//! transpositions that fix the weight.
//!
//! For a character `χ` of such a group `H`, `L_β[χ]` is spanned by the sums
//! `Σ_{h ∈ H} χ(h) φ_h(m)` over monomial orbit representatives `m`; orbits
//! whose stabiliser meets `ker χ` properly contribute nothing.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{certified_kernel, IntRows, KernelOptions};
use crate::multiindex::{exponents, MultiIndex, Permutation, VarTable};
use crate::polyring::{Rat, SPolynomial};
use crate::prolong::{merge_into, pack, Config};

/// Disjoint transpositions, each with a sign selecting the `+τ` (invariant)
/// or `−τ` (anti-invariant) part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub transpositions: Vec<(usize, usize)>,
    pub signs: Vec<i8>,
}

impl SplitSpec {
    pub fn new(transpositions: Vec<(usize, usize)>, signs: Vec<i8>) -> Result<Self> {
        if transpositions.len() != signs.len() {
            return Err(Error::InvalidSplit("one sign per transposition".into()));
        }
        let mut used = Vec::new();
        for &(i, j) in &transpositions {
            if i == j || used.contains(&i) || used.contains(&j) {
                return Err(Error::InvalidSplit(format!(
                    "transpositions must be disjoint, got ({i}{j})"
                )));
            }
            used.push(i);
            used.push(j);
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidSplit("signs must be ±1".into()));
        }
        Ok(SplitSpec {
            transpositions,
            signs,
        })
    }

    pub fn with_signs(&self, signs: Vec<i8>) -> Result<Self> {
        Self::new(self.transpositions.clone(), signs)
    }

    pub fn validate(&self, beta: &MultiIndex) -> Result<()> {
        for &(i, j) in &self.transpositions {
            if i >= beta.len() || j >= beta.len() {
                return Err(Error::InvalidSplit(format!(
                    "({i}{j}) out of range for {beta}"
                )));
            }
            if beta.entries()[i] != beta.entries()[j] {
                return Err(Error::InvalidSplit(format!("({i}{j}) does not fix {beta}")));
            }
        }
        Ok(())
    }

    /// Every element of the group with its character value.
    pub fn elements(&self, len: usize) -> Vec<(Permutation, i8)> {
        let t = self.transpositions.len();
        (0..1usize << t)
            .map(|mask| {
                let mut p = Permutation::identity(len);
                let mut chi = 1i8;
                for (b, &(i, j)) in self.transpositions.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        p = p.compose(&Permutation::transposition(len, i, j));
                        chi *= self.signs[b];
                    }
                }
                (p, chi)
            })
            .collect()
    }

    /// All sign patterns for the same transpositions, `+…+` first.
    pub fn all_patterns(&self) -> Vec<SplitSpec> {
        let t = self.transpositions.len();
        (0..1usize << t)
            .map(|mask| {
                let signs = (0..t)
                    .map(|b| if mask >> b & 1 == 1 { -1 } else { 1 })
                    .collect();
                SplitSpec {
                    transpositions: self.transpositions.clone(),
                    signs,
                }
            })
            .collect()
    }

    /// Disjoint transpositions of equal entries of `beta`, paired greedily
    /// from the left, all with sign `+`. `None` if no two entries are equal.
    pub fn stabilizing(beta: &MultiIndex) -> Option<SplitSpec> {
        let b = beta.entries();
        let mut used = vec![false; b.len()];
        let mut transpositions = Vec::new();
        for i in 0..b.len() {
            if used[i] {
                continue;
            }
            if let Some(j) = (i + 1..b.len()).find(|&j| !used[j] && b[j] == b[i]) {
                used[i] = true;
                used[j] = true;
                transpositions.push((i, j));
            }
        }
        if transpositions.is_empty() {
            return None;
        }
        let signs = vec![1; transpositions.len()];
        Some(SplitSpec {
            transpositions,
            signs,
        })
    }

    pub fn pattern(&self) -> String {
        self.signs
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect()
    }
}

impl fmt::Display for SplitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .transpositions
            .iter()
            .zip(&self.signs)
            .map(|(&(i, j), &s)| format!("({i}{j}){}", if s > 0 { '+' } else { '-' }))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for SplitSpec {
    type Err = Error;

    /// Parses `"(01)-,(23)+"`; a missing sign means `+`.
    fn from_str(s: &str) -> Result<Self> {
        let mut ts = Vec::new();
        let mut signs = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::InvalidSplit(format!("cannot parse {part:?}"));
            let (body, sign) = match part.strip_suffix('-') {
                Some(b) => (b, -1),
                None => (part.strip_suffix('+').unwrap_or(part), 1),
            };
            let inner = body
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(bad)?;
            let digits: Vec<usize> = if inner.contains(' ') {
                inner
                    .split_whitespace()
                    .map(|x| x.parse().map_err(|_| bad()))
                    .collect::<Result<_>>()?
            } else {
                inner
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                    .collect::<Result<_>>()?
            };
            if digits.len() != 2 {
                return Err(bad());
            }
            ts.push((digits[0], digits[1]));
            signs.push(sign);
        }
        SplitSpec::new(ts, signs)
    }
}

/// `λ_A(f) = (1/#A) Σ_{φ ∈ A} φ(f)`.
pub fn average(group: &[Permutation], f: &SPolynomial) -> SPolynomial {
    let mut acc = SPolynomial::zero();
    for g in group {
        acc = acc.add(&f.apply_perm(g));
    }
    acc.scale(&Rat::new(One::one(), (group.len() as i64).into()))
}

/// The group acting on coordinate indices.
struct IndexGroup {
    perms: Vec<Vec<u16>>,
    chars: Vec<i8>,
}

impl IndexGroup {
    fn new(table: &VarTable, spec: &SplitSpec) -> Self {
        let elems = spec.elements(table.width());
        IndexGroup {
            perms: elems.iter().map(|(p, _)| table.permute_vars(p)).collect(),
            chars: elems.iter().map(|(_, c)| *c).collect(),
        }
    }

    fn image(&self, h: usize, seq: &[u16], out: &mut Vec<u16>) {
        out.clear();
        out.extend(seq.iter().map(|&i| self.perms[h][i as usize]));
        out.sort_unstable();
    }

    /// Smallest image key and the first group element reaching it.
    fn min_image(&self, seq: &[u16], buf: &mut Vec<u16>) -> (u128, usize) {
        let mut best = (pack(seq), 0);
        for h in 1..self.perms.len() {
            self.image(h, seq, buf);
            let k = pack(buf);
            if k < best.0 {
                best = (k, h);
            }
        }
        best
    }

    /// Whether `seq` is its own orbit representative and survives the
    /// character (no stabiliser element with `χ = −1`).
    fn rep_status(&self, seq: &[u16], buf: &mut Vec<u16>) -> (bool, bool) {
        let key = pack(seq);
        let mut is_min = true;
        let mut survives = true;
        for h in 1..self.perms.len() {
            self.image(h, seq, buf);
            let k = pack(buf);
            if k < key {
                is_min = false;
                break;
            }
            if k == key && self.chars[h] < 0 {
                survives = false;
            }
        }
        (is_min, survives)
    }
}

/// Basis of `L_β[χ]` in degree `e`, one vector `Σ_h χ(h) φ_h(m)` per
/// surviving orbit, scaled so the representative has coefficient 1.
pub fn split_basis(
    beta: &MultiIndex,
    d: u32,
    e: u32,
    spec: &SplitSpec,
) -> Result<Vec<SPolynomial>> {
    spec.validate(beta)?;
    if beta.total() != d * e {
        return Err(Error::WeightMismatch {
            beta: beta.clone(),
            total: beta.total(),
            expected: d * e,
        });
    }
    let table = VarTable::new(beta.len() - 1, d);
    let group = spec.elements(beta.len());
    let ig = IndexGroup::new(&table, spec);
    let mut buf = Vec::new();
    let mut out = Vec::new();
    table.for_each_of_weight(beta.entries(), e, |s| {
        let (is_min, survives) = ig.rep_status(s, &mut buf);
        if !(is_min && survives) {
            return;
        }
        let m = table.to_monomial(s);
        let mut v = SPolynomial::zero();
        for (p, chi) in &group {
            v.add_term(m.apply_perm(p), Rat::from_integer((*chi as i64).into()));
        }
        let lead = v.coeff(&m);
        out.push(v.scale(&lead.recip()));
    });
    Ok(out)
}

/// Relation system of `K_β[χ]` in the coordinates of the split basis.
pub(crate) struct SplitSystem {
    pub keys: Vec<u128>,
    pub rows: IntRows,
}

pub(crate) fn split_system(
    beta: &MultiIndex,
    cfg: Config,
    spec: &SplitSpec,
) -> Result<SplitSystem> {
    cfg.check_weight(beta)?;
    spec.validate(beta)?;
    let table = Arc::new(VarTable::new(cfg.n, cfg.d));
    if table.len() > 256 || cfg.k + 1 > 16 {
        return Err(Error::OutOfScope("packed monomial layout exceeded".into()));
    }
    let ig = IndexGroup::new(&table, spec);
    let elems = spec.elements(beta.len());
    let mut buf = Vec::new();
    let mut keys = Vec::new();
    table.for_each_of_weight(beta.entries(), cfg.k + 1, |s| {
        let (is_min, survives) = ig.rep_status(s, &mut buf);
        if is_min && survives {
            keys.push(pack(s));
        }
    });
    let mut rows = IntRows::new(keys.len());
    let mut prod = Vec::new();
    let mut entries = Vec::new();
    for eps in exponents(cfg.n, 2 * cfg.d) {
        if !eps.is_contained_in(beta) {
            continue;
        }
        // one ε per group orbit
        let images: Vec<MultiIndex> = elems.iter().map(|(p, _)| p.apply(&eps)).collect();
        if images.iter().any(|im| *im < eps) {
            continue;
        }
        let stab: Vec<usize> = (1..elems.len()).filter(|&h| images[h] == eps).collect();
        let mut qs = Vec::new();
        table.for_each_of_weight(eps.entries(), 2, |s| {
            qs.push((s[0], s[1], if s[0] == s[1] { 1i64 } else { 2 }));
        });
        if qs.is_empty() {
            continue;
        }
        let rest = beta.checked_sub(&eps).unwrap();
        table.for_each_of_weight(rest.entries(), cfg.k - 1, |m| {
            let key = pack(m);
            for &h in &stab {
                ig.image(h, m, &mut buf);
                if pack(&buf) < key {
                    return;
                }
            }
            entries.clear();
            for &(a, b, v) in &qs {
                merge_into(m, a, b, &mut prod);
                let (rk, h) = ig.min_image(&prod, &mut buf);
                if let Ok(c) = keys.binary_search(&rk) {
                    entries.push((c as u32, v * ig.chars[h] as i64));
                }
            }
            rows.push(&mut entries);
        });
    }
    Ok(SplitSystem { keys, rows })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplitComponent {
    pub spec: String,
    pub pattern: String,
    pub dim_l: usize,
    pub kappa: usize,
    pub certified: bool,
}

/// `κ_β` restricted to the component selected by the signs of `spec`.
pub fn split_kappa_component(
    beta: &MultiIndex,
    cfg: Config,
    spec: &SplitSpec,
) -> Result<SplitComponent> {
    let sys = split_system(beta, cfg, spec)?;
    let res = certified_kernel(&sys.rows, KernelOptions::default());
    Ok(SplitComponent {
        spec: spec.to_string(),
        pattern: spec.pattern(),
        dim_l: sys.keys.len(),
        kappa: res.kappa,
        certified: res.certified,
    })
}

/// `κ_β` on every sign component of the transpositions in `spec`, keyed by
/// sign pattern (e.g. `"+-"`).
pub fn split_kappa(
    beta: &MultiIndex,
    k: u32,
    d: u32,
    n: usize,
    spec: &SplitSpec,
) -> Result<BTreeMap<String, SplitComponent>> {
    let cfg = Config::new(k, d, n);
    let mut out = BTreeMap::new();
    for s in spec.all_patterns() {
        let c = split_kappa_component(beta, cfg, &s)?;
        out.insert(c.pattern.clone(), c);
    }
    Ok(out)
}

/// Kernel of the split system as polynomials in `L_β`.
pub fn split_kernel_basis(
    beta: &MultiIndex,
    cfg: Config,
    spec: &SplitSpec,
) -> Result<Vec<SPolynomial>> {
    let sys = split_system(beta, cfg, spec)?;
    let res = certified_kernel(
        &sys.rows,
        KernelOptions {
            want_basis: true,
            ..Default::default()
        },
    );
    let basis = res
        .basis
        .ok_or_else(|| Error::Validation("split kernel could not be certified".into()))?;
    let table = VarTable::new(cfg.n, cfg.d);
    let elems = spec.elements(beta.len());
    let len = cfg.k as usize + 1;
    Ok(basis
        .iter()
        .map(|y| {
            let mut f = SPolynomial::zero();
            for (c, yc) in y.iter().enumerate() {
                if yc.is_zero() {
                    continue;
                }
                let r = table.to_monomial(&crate::prolong::unpack(sys.keys[c], len));
                let w = Rat::from_integer(r.factorial_weight());
                // Σ over cosets: the full group sum counts each image |Stab| times
                let mut v = SPolynomial::zero();
                for (p, chi) in &elems {
                    v.add_term(r.apply_perm(p), Rat::from_integer((*chi as i64).into()));
                }
                let scale = yc / (w * v.coeff(&r));
                f = f.add(&v.scale(&scale));
            }
            f
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::SMonomial;
    use crate::polyring::psi_is_zero;
    use crate::prolong::kappa;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    #[test]
    fn split_text_round_trip() {
        let s: SplitSpec = "(01)-,(23)+".parse().unwrap();
        assert_eq!(s.transpositions, vec![(0, 1), (2, 3)]);
        assert_eq!(s.signs, vec![-1, 1]);
        assert_eq!(s.to_string(), "(01)-,(23)+");
        assert!("(01),(12)".parse::<SplitSpec>().is_err());
        assert!(s.validate(&mi("2,4,4,5")).is_err());
        assert!(s.validate(&mi("4,4,3,3")).is_ok());
    }

    #[test]
    fn basis_dimensions_add_up() {
        let beta = mi("4,4,4");
        let plus = split_basis(&beta, 4, 3, &"(01)+".parse().unwrap()).unwrap();
        let minus = split_basis(&beta, 4, 3, &"(01)-".parse().unwrap()).unwrap();
        let total = crate::multiindex::monomials_of_weight(&beta, 4, 3)
            .unwrap()
            .len();
        assert_eq!(plus.len() + minus.len(), total);
        let tau = Permutation::transposition(3, 0, 1);
        for v in &plus {
            assert_eq!(v.apply_perm(&tau), *v);
        }
        for v in &minus {
            assert_eq!(v.apply_perm(&tau), v.neg());
        }
    }

    #[test]
    fn fixed_monomial_only_in_plus() {
        let m: SMonomial = "s_220^2".parse().unwrap();
        let plus = split_basis(&mi("4,4,0"), 4, 2, &"(01)+".parse().unwrap()).unwrap();
        let minus = split_basis(&mi("4,4,0"), 4, 2, &"(01)-".parse().unwrap()).unwrap();
        assert!(plus
            .iter()
            .any(|v| v.coeff(&m) != Rat::zero() && v.len() == 1));
        assert!(minus.iter().all(|v| v.coeff(&m) == Rat::zero()));
    }

    #[test]
    fn split_sums_to_full() {
        for (b, k, d, n, spec) in [
            ("3,4,4,4", 4, 3, 3, "(12),(03)"),
            ("6,6,4", 3, 4, 2, "(01)"),
            ("4,4,4,3", 4, 3, 3, "(01)"),
            ("3,3,3,3", 3, 3, 3, "(01),(23)"),
        ] {
            let beta = mi(b);
            let spec: SplitSpec = spec.parse().unwrap();
            if spec.validate(&beta).is_err() {
                continue;
            }
            let parts = split_kappa(&beta, k, d, n, &spec).unwrap();
            let sum: usize = parts.values().map(|c| c.kappa).sum();
            assert_eq!(sum, kappa(&beta, k, d, n, false).unwrap().kappa, "{b}");
        }
    }

    #[test]
    fn split_kernel_members_are_in_kernel() {
        let beta = mi("3,4,4,4");
        let cfg = Config::new(4, 3, 3);
        let spec: SplitSpec = "(12)-".parse().unwrap();
        let basis = split_kernel_basis(&beta, cfg, &spec).unwrap();
        let tau = Permutation::transposition(4, 1, 2);
        for f in &basis {
            assert!(psi_is_zero(f, 4, 4).unwrap());
            assert_eq!(f.apply_perm(&tau), f.neg());
        }
    }

    #[test]
    fn averaging_is_idempotent() {
        let f = SPolynomial::parse("s_2100 s_0120 + 3 s_1200^2").unwrap();
        let g = vec![
            Permutation::identity(4),
            Permutation::transposition(4, 0, 1),
        ];
        let a = average(&g, &f);
        assert_eq!(average(&g, &a), a);
        assert_eq!(average(&[Permutation::identity(4)], &f), f);
    }
}
