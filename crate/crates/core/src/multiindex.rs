//! Exponent vectors, permutations of coordinates and monomials in the
//! ambient coordinates `s_α` of the Veronese embedding.
//!
//! Canonical order on exponent vectors of equal total is graded reverse
//! lexicographic, listed from the largest element: `(2,0) < (1,1) < (0,2)`
//! in `Ord` terms means "(2,0) comes first".

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exponent vector `α ∈ Z_{≥0}^{n+1}`. Also used for weights and for the
/// row/column labels of the labelled matrices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> MultiIndex {
        MultiIndex(self.0.iter().map(|a| a * k).collect())
    }

    /// `self − other`, or `None` when some entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.len() != other.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise `self ≤ other`, i.e. `self ⊂ other`.
    pub fn is_contained_in(&self, other: &MultiIndex) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// The compact subscript, e.g. `0012`. Falls back to a parenthesised
    /// comma list when an entry does not fit in one digit.
    pub fn subscript(&self) -> String {
        if self.0.iter().all(|&a| a < 10) {
            self.0.iter().map(|a| char::from(b'0' + *a as u8)).collect()
        } else {
            format!("({})", self)
        }
    }

    pub fn parse_subscript(s: &str) -> Result<MultiIndex> {
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            return inner.parse();
        }
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad subscript digit {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Entries sorted in weakly decreasing order (the orbit representative).
    pub fn sorted_desc(&self) -> MultiIndex {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        MultiIndex(v)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| {
                // Reverse lexicographic from the last slot: a smaller last entry
                // is larger in grevlex and is listed first.
                for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.len().cmp(&other.len()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad multi-index entry {p:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex(v.to_vec())
    }
}

/// `δ ⊂ β`: componentwise comparison.
pub fn contains(delta: &MultiIndex, beta: &MultiIndex) -> Result<bool> {
    if delta.len() != beta.len() {
        return Err(Error::LengthMismatch {
            expected: beta.len(),
            got: delta.len(),
        });
    }
    Ok(delta.is_contained_in(beta))
}

/// All `α` with `|α| = d` in `n+1` slots, in canonical order.
pub fn exponents(n: usize, d: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n + 1];
    fn rec(slot: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if slot + 1 == cur.len() {
            cur[slot] = rem;
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for a in 0..=rem {
            cur[slot] = a;
            rec(slot + 1, rem - a, cur, out);
        }
    }
    rec(0, d, &mut cur, &mut out);
    out.sort();
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

pub fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// A permutation of the slots `{0, …, n}`.
///
/// Acting on exponent vectors, `τα = (a_{τ(0)}, …, a_{τ(n)})`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return Err(Error::Parse(format!("not a permutation: {image:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(len: usize) -> Self {
        Permutation {
            image: (0..len).collect(),
        }
    }

    pub fn transposition(len: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(len);
        p.image.swap(i, j);
        p
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[1, 2, 3]]`.
    pub fn from_cycles(len: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..len).collect();
        for cycle in cycles {
            for (k, &i) in cycle.iter().enumerate() {
                let j = cycle[(k + 1) % cycle.len()];
                if i >= len || j >= len {
                    return Err(Error::Parse(format!("cycle entry out of range: {cycle:?}")));
                }
                image[i] = j;
            }
        }
        Self::new(image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// The product `στ` for which `apply(στ, x) = apply(σ, apply(τ, x))`.
    pub fn compose(&self, tau: &Permutation) -> Permutation {
        Permutation {
            image: (0..self.len()).map(|i| tau.image[self.image[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Permutation { image }
    }

    pub fn apply(&self, alpha: &MultiIndex) -> MultiIndex {
        MultiIndex(self.image.iter().map(|&j| alpha.0[j]).collect())
    }

    pub fn apply_slice(&self, alpha: &[u32], out: &mut [u32]) {
        for (o, &j) in out.iter_mut().zip(&self.image) {
            *o = alpha[j];
        }
    }

    /// All permutations of `len` symbols, in lexicographic order of images.
    pub fn all(len: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..len).collect();
        loop {
            out.push(Permutation { image: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..len.saturating_sub(1))
                .rev()
                .find(|&i| cur[i] < cur[i + 1])
            else {
                break;
            };
            let j = (i + 1..len).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Some permutation `τ` with `τ·from = to`, if the two are in one orbit.
    pub fn mapping(from: &MultiIndex, to: &MultiIndex) -> Option<Permutation> {
        if from.len() != to.len() {
            return None;
        }
        // need to[i] = from[image[i]]
        let mut used = vec![false; from.len()];
        let mut image = Vec::with_capacity(from.len());
        for &t in to.entries() {
            let j = (0..from.len()).find(|&j| !used[j] && from.0[j] == t)?;
            used[j] = true;
            image.push(j);
        }
        Some(Permutation { image })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.len()];
        let mut wrote = false;
        for start in 0..self.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.image[i];
            }
            let s: String = cyc.iter().map(|c| c.to_string()).collect();
            write!(f, "({s})")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Size of the `S_{n+1}`-orbit of `β`.
pub fn orbit_size(beta: &MultiIndex) -> u64 {
    let mut counts: HashMap<u32, u64> = HashMap::new();
    for &b in beta.entries() {
        *counts.entry(b).or_default() += 1;
    }
    counts
        .values()
        .fold(factorial(beta.len() as u64), |acc, &m| acc / factorial(m))
}

/// One weakly decreasing representative per `S_{n+1}`-orbit of weights of the
/// given total, with the orbit size.
pub fn orbit_reps(n: usize, total: u32) -> Vec<(MultiIndex, u64)> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 1);
    fn rec(slots: usize, rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if slots == 0 {
            if rem == 0 {
                out.push(MultiIndex(cur.clone()));
            }
            return;
        }
        let hi = rem.min(max);
        for a in (0..=hi).rev() {
            if (a as u64) * (slots as u64) < rem as u64 {
                break;
            }
            cur.push(a);
            rec(slots - 1, rem - a, a, cur, out);
            cur.pop();
        }
    }
    let mut reps = Vec::new();
    rec(n + 1, total, total, &mut cur, &mut reps);
    for r in reps {
        let s = orbit_size(&r);
        out.push((r, s));
    }
    out
}

/// All weights of the given total in `n+1` slots.
pub fn all_weights(n: usize, total: u32) -> Vec<MultiIndex> {
    exponents(n, total)
}

/// A monomial `s_{α_1}^{i_1} ⋯ s_{α_μ}^{i_μ}` with factors in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SMonomial {
    factors: Vec<(MultiIndex, u32)>,
}

impl SMonomial {
    pub fn one() -> Self {
        SMonomial {
            factors: Vec::new(),
        }
    }

    pub fn var(alpha: MultiIndex) -> Self {
        SMonomial {
            factors: vec![(alpha, 1)],
        }
    }

    /// Canonicalises: sorts factors, merges repeats, drops zero powers.
    pub fn new(mut factors: Vec<(MultiIndex, u32)>) -> Self {
        factors.retain(|(_, p)| *p > 0);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(MultiIndex, u32)> = Vec::with_capacity(factors.len());
        for (a, p) in factors {
            match merged.last_mut() {
                Some((b, q)) if *b == a => *q += p,
                _ => merged.push((a, p)),
            }
        }
        SMonomial { factors: merged }
    }

    pub fn from_vars<I: IntoIterator<Item = MultiIndex>>(vars: I) -> Self {
        Self::new(vars.into_iter().map(|a| (a, 1)).collect())
    }

    pub fn factors(&self) -> &[(MultiIndex, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, p)| p).sum()
    }

    pub fn power_of(&self, alpha: &MultiIndex) -> u32 {
        self.factors
            .iter()
            .find(|(a, _)| a == alpha)
            .map_or(0, |(_, p)| *p)
    }

    /// `Σ i_p α_p`; `None` for the empty monomial without a known length.
    pub fn weight(&self, len: usize) -> MultiIndex {
        let mut w = vec![0u32; len];
        for (a, p) in &self.factors {
            for (wi, ai) in w.iter_mut().zip(a.entries()) {
                *wi += ai * p;
            }
        }
        MultiIndex(w)
    }

    pub fn mul(&self, other: &SMonomial) -> SMonomial {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        SMonomial::new(f)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &SMonomial) -> Option<SMonomial> {
        let mut f = self.factors.clone();
        for (a, p) in &other.factors {
            let slot = f.iter_mut().find(|(b, _)| b == a)?;
            if slot.1 < *p {
                return None;
            }
            slot.1 -= p;
        }
        Some(SMonomial::new(f))
    }

    /// `∏ i_p!`, the scale between plain and normalised coefficients.
    pub fn factorial_weight(&self) -> BigInt {
        self.factors.iter().fold(BigInt::from(1), |acc, (_, p)| {
            acc * BigInt::from(factorial(*p as u64))
        })
    }

    pub fn apply_perm(&self, tau: &Permutation) -> SMonomial {
        SMonomial::new(
            self.factors
                .iter()
                .map(|(a, p)| (tau.apply(a), *p))
                .collect(),
        )
    }

    /// Factors repeated by multiplicity, in canonical order.
    pub fn flat(&self) -> impl Iterator<Item = &MultiIndex> {
        self.factors
            .iter()
            .flat_map(|(a, p)| std::iter::repeat(a).take(*p as usize))
    }
}

impl Ord for SMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.flat().cmp(other.flat()))
    }
}

impl PartialOrd for SMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(a, p)| {
                if *p == 1 {
                    format!("s_{}", a.subscript())
                } else {
                    format!("s_{}^{}", a.subscript(), p)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for SMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for SMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(SMonomial::one());
        }
        let mut factors = Vec::new();
        for tok in s.split(['*', ' ']).filter(|t| !t.is_empty()) {
            let body = tok
                .strip_prefix("s_")
                .ok_or_else(|| Error::Parse(format!("expected s_<digits>, got {tok:?}")))?;
            let body = body.replace(['{', '}'], "");
            let (sub, pow) = match body.split_once('^') {
                Some((a, p)) => (
                    a.to_string(),
                    p.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad power in {tok:?}")))?,
                ),
                None => (body.clone(), 1),
            };
            factors.push((MultiIndex::parse_subscript(&sub)?, pow));
        }
        Ok(SMonomial::new(factors))
    }
}

/// Lookup table for the coordinates `s_α` with `|α| = d`, indexed in canonical
/// order. Internal enumeration works on sorted index sequences, which orders
/// monomials of one degree exactly as [`SMonomial`]'s `Ord` does.
#[derive(Clone, Debug)]
pub struct VarTable {
    pub n: usize,
    pub d: u32,
    vars: Vec<MultiIndex>,
    flat: Vec<u32>,
    index: HashMap<MultiIndex, u16>,
}

impl VarTable {
    pub fn new(n: usize, d: u32) -> Self {
        let vars = exponents(n, d);
        let flat = vars
            .iter()
            .flat_map(|a| a.entries().iter().copied())
            .collect();
        let index = vars
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i as u16))
            .collect();
        VarTable {
            n,
            d,
            vars,
            flat,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn width(&self) -> usize {
        self.n + 1
    }

    pub fn var(&self, i: u16) -> &MultiIndex {
        &self.vars[i as usize]
    }

    pub fn vars(&self) -> &[MultiIndex] {
        &self.vars
    }

    pub fn entries(&self, i: u16) -> &[u32] {
        let w = self.width();
        &self.flat[i as usize * w..(i as usize + 1) * w]
    }

    pub fn index_of(&self, alpha: &MultiIndex) -> Option<u16> {
        self.index.get(alpha).copied()
    }

    /// Index permutation induced by `τ` on the coordinates.
    pub fn permute_vars(&self, tau: &Permutation) -> Vec<u16> {
        self.vars
            .iter()
            .map(|a| self.index[&tau.apply(a)])
            .collect()
    }

    pub fn to_monomial(&self, idx: &[u16]) -> SMonomial {
        SMonomial::from_vars(idx.iter().map(|&i| self.vars[i as usize].clone()))
    }

    pub fn from_monomial(&self, m: &SMonomial) -> Option<Vec<u16>> {
        let mut out = Vec::with_capacity(m.degree() as usize);
        for a in m.flat() {
            out.push(self.index_of(a)?);
        }
        Some(out)
    }

    /// Depth-first enumeration of sorted index sequences of length `e` whose
    /// weights sum to `beta`, in canonical (lexicographic) order. A factor is
    /// skipped as soon as it does not fit into the residual weight.
    pub fn for_each_of_weight<F: FnMut(&[u16])>(&self, beta: &[u32], e: u32, mut f: F) {
        let w = self.width();
        debug_assert_eq!(beta.len(), w);
        if beta.iter().sum::<u32>() != self.d * e {
            return;
        }
        let mut residual = beta.to_vec();
        let mut cur: Vec<u16> = Vec::with_capacity(e as usize);
        self.rec_weight(&mut residual, e, 0, &mut cur, &mut f);
    }

    fn rec_weight<F: FnMut(&[u16])>(
        &self,
        residual: &mut [u32],
        rem: u32,
        start: usize,
        cur: &mut Vec<u16>,
        f: &mut F,
    ) {
        if rem == 0 {
            f(cur);
            return;
        }
        let w = self.width();
        if rem == 1 {
            // the last factor is forced
            if let Some(&i) = self.index.get(&MultiIndex(residual.to_vec())) {
                if i as usize >= start {
                    cur.push(i);
                    f(cur);
                    cur.pop();
                }
            }
            return;
        }
        for i in start..self.vars.len() {
            let a = &self.flat[i * w..(i + 1) * w];
            if a.iter().zip(residual.iter()).any(|(x, r)| x > r) {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(a) {
                *r -= x;
            }
            cur.push(i as u16);
            self.rec_weight(residual, rem - 1, i, cur, f);
            cur.pop();
            for (r, x) in residual.iter_mut().zip(a) {
                *r += x;
            }
        }
    }

    pub fn count_of_weight(&self, beta: &[u32], e: u32) -> usize {
        let mut c = 0;
        self.for_each_of_weight(beta, e, |_| c += 1);
        c
    }

    pub fn weight_of(&self, idx: &[u16]) -> MultiIndex {
        let mut w = vec![0u32; self.width()];
        for &i in idx {
            for (wi, a) in w.iter_mut().zip(self.entries(i)) {
                *wi += a;
            }
        }
        MultiIndex(w)
    }
}

/// All monomials of degree `e` in the `s_α` (`|α| = d`) whose weight is `β`,
/// in canonical order.
pub fn monomials_of_weight(beta: &MultiIndex, d: u32, e: u32) -> Result<Vec<SMonomial>> {
    if beta.total() != d * e {
        return Err(Error::WeightMismatch {
            beta: beta.clone(),
            total: beta.total(),
            expected: d * e,
        });
    }
    if beta.is_empty() {
        return Err(Error::LengthMismatch {
            expected: 1,
            got: 0,
        });
    }
    let table = VarTable::new(beta.len() - 1, d);
    let mut out = Vec::new();
    table.for_each_of_weight(beta.entries(), e, |idx| out.push(table.to_monomial(idx)));
    Ok(out)
}

/// Either an exponent vector or a monomial; both carry the permutation action.
pub trait PermAction {
    fn apply_perm(&self, tau: &Permutation) -> Self;
}

impl PermAction for MultiIndex {
    fn apply_perm(&self, tau: &Permutation) -> Self {
        tau.apply(self)
    }
}

impl PermAction for SMonomial {
    fn apply_perm(&self, tau: &Permutation) -> Self {
        SMonomial::apply_perm(self, tau)
    }
}

pub fn apply_perm<T: PermAction>(tau: &Permutation, x: &T) -> T {
    x.apply_perm(tau)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    #[test]
    fn exponents_listing() {
        assert_eq!(exponents(1, 2), vec![mi("2,0"), mi("1,1"), mi("0,2")]);
        assert_eq!(exponents(3, 3).len(), 20);
        assert_eq!(exponents(2, 4).len(), 15);
        for n in 0..=6 {
            for d in 0..=8 {
                assert_eq!(
                    exponents(n, d).len() as u64,
                    binomial((n as u64) + d as u64, d as u64)
                );
            }
        }
    }

    #[test]
    fn weight_enumeration_examples() {
        let m = monomials_of_weight(&mi("0,0,1,5"), 3, 2).unwrap();
        assert_eq!(m, vec!["s_0012*s_0003".parse().unwrap()]);
        let m = monomials_of_weight(&mi("6,2,0"), 4, 2).unwrap();
        let expect: Vec<SMonomial> =
            vec!["s_400*s_220".parse().unwrap(), "s_310^2".parse().unwrap()];
        let mut got = m.clone();
        got.sort();
        let mut exp = expect.clone();
        exp.sort();
        assert_eq!(got, exp);
        assert_eq!(
            monomials_of_weight(&mi("3,0,0,0"), 3, 1).unwrap(),
            vec![SMonomial::var(mi("3,0,0,0"))]
        );
        assert_eq!(monomials_of_weight(&mi("8,4,4"), 4, 4).unwrap().len(), 51);
        assert!(monomials_of_weight(&mi("8,4,3"), 4, 4).is_err());
    }

    #[test]
    fn enumeration_is_sorted() {
        let m = monomials_of_weight(&mi("3,4,4,4"), 3, 5).unwrap();
        assert_eq!(m.len(), 303);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn containment() {
        assert!(contains(&mi("0,0,1,5"), &mi("2,4,4,5")).unwrap());
        assert!(!contains(&mi("3,0,0,0"), &mi("2,4,4,5")).unwrap());
        assert!(contains(&mi("2,4,4,5"), &mi("2,4,4,5")).unwrap());
        assert!(contains(&mi("1,2"), &mi("2,4,4,5")).is_err());
    }

    #[test]
    fn orbits() {
        assert_eq!(orbit_size(&mi("2,4,4,5")), 12);
        assert_eq!(orbit_size(&mi("3,4,4,4")), 4);
        assert_eq!(orbit_size(&mi("5,5,5,5,5,5")), 1);
        let reps = orbit_reps(3, 15);
        assert!(reps.iter().any(|(r, s)| *r == mi("5,4,4,2") && *s == 12));
        let total: u64 = reps.iter().map(|(_, s)| s).sum();
        assert_eq!(total, binomial(18, 3));
    }

    #[test]
    fn permutation_action() {
        let t12 = Permutation::transposition(4, 1, 2);
        let t13 = Permutation::transposition(4, 1, 3);
        assert_eq!(t12.apply(&mi("2,4,4,5")), mi("2,4,4,5"));
        assert_eq!(t13.apply(&mi("2,4,4,5")), mi("2,5,4,4"));
        let m: SMonomial = "s_0012*s_0003".parse().unwrap();
        assert_eq!(m.apply_perm(&Permutation::identity(4)), m);
        assert_eq!(format!("{}", t13), "(13)");
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn monomial_text_round_trip() {
        let m: SMonomial = "s_310^2*s_202*s_022".parse().unwrap();
        assert_eq!(m.degree(), 4);
        assert_eq!(m.weight(3), mi("8,4,4"));
        assert_eq!(m.to_string().parse::<SMonomial>().unwrap(), m);
        assert_eq!(
            "s_{0012} s_{0003}"
                .parse::<SMonomial>()
                .unwrap()
                .to_string(),
            "s_0012*s_0003"
        );
    }
}
