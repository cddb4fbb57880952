//! Sparse polynomials in the coordinates `s_α` with exact rational
//! coefficients, and their images in `C[t_0, …, t_n]`.
//!
//! Coefficients are stored plainly (`f = Σ a_m m`). The normalised coefficient
//! `c(f; m) = a_m ∏ i_p!` is available through [`SPolynomial::normalized_coeff`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::{exponents, factorial, MultiIndex, Permutation, SMonomial};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub type Point = HashMap<MultiIndex, Rat>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct SPolynomial {
    terms: BTreeMap<SMonomial, Rat>,
}

impl SPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(SMonomial::one(), c)
    }

    pub fn term(m: SMonomial, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(alpha: MultiIndex) -> Self {
        Self::term(SMonomial::var(alpha), Rat::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (SMonomial, Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Builds `Σ y_m · m / ∏ i_p!` from normalised coefficients.
    pub fn from_normalized<I: IntoIterator<Item = (SMonomial, Rat)>>(terms: I) -> Self {
        Self::from_terms(terms.into_iter().map(|(m, c)| {
            let w = Rat::from_integer(m.factorial_weight());
            (m, c / w)
        }))
    }

    pub fn add_term(&mut self, m: SMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<SMonomial, Rat> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &SMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn normalized_coeff(&self, m: &SMonomial) -> Rat {
        self.coeff(m) * Rat::from_integer(m.factorial_weight())
    }

    /// Degree of the first term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            Some(d) => it.all(|e| e == d),
            None => true,
        }
    }

    /// The common weight of all terms, if there is one.
    pub fn weight(&self, len: usize) -> Option<MultiIndex> {
        let mut it = self.terms.keys().map(|m| m.weight(len));
        let w = it.next()?;
        it.all(|v| v == w).then_some(w)
    }

    pub fn mentions(&self, alpha: &MultiIndex) -> bool {
        self.terms.keys().any(|m| m.power_of(alpha) > 0)
    }

    pub fn variables(&self) -> Vec<MultiIndex> {
        let mut v: Vec<MultiIndex> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(a, _)| a.clone()))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add(&self, other: &SPolynomial) -> SPolynomial {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &SPolynomial) -> SPolynomial {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }

    pub fn neg(&self) -> SPolynomial {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> SPolynomial {
        if c.is_zero() {
            return Self::zero();
        }
        SPolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SPolynomial) -> SPolynomial {
        let mut p = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> SPolynomial {
        let mut r = Self::constant(Rat::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// `φ_τ(f)`: substitutes `s_α ↦ s_{τα}`.
    pub fn apply_perm(&self, tau: &Permutation) -> SPolynomial {
        SPolynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.apply_perm(tau), c.clone())),
        )
    }

    /// Part of `f` whose terms involve `s_α` to exactly the given power.
    pub fn part_with_power(&self, alpha: &MultiIndex, power: u32) -> SPolynomial {
        SPolynomial::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.power_of(alpha) == power)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Cofactor of `s_α` in the part of `f` linear in `s_α`.
    pub fn linear_coefficient(&self, alpha: &MultiIndex) -> SPolynomial {
        let v = SMonomial::var(alpha.clone());
        SPolynomial::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.power_of(alpha) == 1)
                .map(|(m, c)| (m.div(&v).unwrap(), c.clone())),
        )
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (a, p) in m.factors() {
                let x = point
                    .get(a)
                    .ok_or_else(|| Error::MissingAssignment(a.clone()))?;
                v *= num_traits::pow(x.clone(), *p as usize);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Interchange records `[numerator, denominator, [[multiindex, mult], …]]`.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(m, c)| {
                TermRecord(
                    c.numer().to_string(),
                    c.denom().to_string(),
                    m.factors()
                        .iter()
                        .map(|(a, p)| (a.entries().to_vec(), *p))
                        .collect(),
                )
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<SPolynomial> {
        let mut p = SPolynomial::zero();
        for TermRecord(num, den, factors) in records {
            let parse = |s: &str| {
                s.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
            };
            let den = parse(den)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            let c = Rat::new(parse(num)?, den);
            let m = SMonomial::new(
                factors
                    .iter()
                    .map(|(a, e)| (MultiIndex::new(a.clone()), *e))
                    .collect(),
            );
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Text in subscript notation, e.g. `- 2 s_{2100} s_{1110}^{2} + …`.
    pub fn to_subscript_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push_str("- ");
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .factors()
                .iter()
                .map(|(al, p)| {
                    if *p == 1 {
                        format!("s_{{{}}}", al.subscript())
                    } else {
                        format!("s_{{{}}}^{{{}}}", al.subscript(), p)
                    }
                })
                .collect();
            if !a.is_one() || factors.is_empty() {
                out.push_str(&a.to_string());
                if !factors.is_empty() {
                    out.push(' ');
                }
            }
            out.push_str(&factors.join(" "));
        }
        out
    }

    /// Parses sums of products of integers, `s_<digits>` / `s_{<digits>}`
    /// coordinates, parenthesised groups and `^` powers. Juxtaposition
    /// multiplies; `{}` groups like `()` outside of subscripts.
    pub fn parse(text: &str) -> Result<SPolynomial> {
        let chars: Vec<char> = text
            .chars()
            .map(|c| if c == '−' { '-' } else { c })
            .filter(|c| !c.is_whitespace())
            .collect();
        let mut p = Parser { s: &chars, i: 0 };
        let r = p.expr()?;
        if p.i != chars.len() {
            return Err(Error::Parse(format!(
                "unexpected {:?} at offset {}",
                chars[p.i], p.i
            )));
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord(pub String, pub String, pub Vec<(Vec<u32>, u32)>);

struct Parser<'a> {
    s: &'a [char],
    i: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<SPolynomial> {
        let mut acc = SPolynomial::zero();
        let mut sign = Rat::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.i += 1;
            }
            Some('+') => self.i += 1,
            _ => {}
        }
        loop {
            let t = self.product()?;
            acc = acc.add(&t.scale(&sign));
            match self.peek() {
                Some('+') => {
                    sign = Rat::one();
                    self.i += 1;
                }
                Some('-') => {
                    sign = -Rat::one();
                    self.i += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<SPolynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(c) if c == '(' || c == '{' || c == 's' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<SPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        let braced = self.peek() == Some('{');
        if braced {
            self.i += 1;
        }
        let n = self.digits()?;
        if braced {
            self.expect('}')?;
        }
        n.parse()
            .map_err(|_| Error::Parse(format!("bad exponent {n:?}")))
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(Error::Parse(format!("expected digits at offset {start}")));
        }
        Ok(self.s[start..self.i].iter().collect())
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?} at offset {}", self.i)))
        }
    }

    fn atom(&mut self) -> Result<SPolynomial> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('{') => {
                self.i += 1;
                let e = self.expr()?;
                self.expect('}')?;
                Ok(e)
            }
            Some('s') => {
                self.i += 1;
                self.expect('_')?;
                let sub = if self.peek() == Some('{') {
                    self.i += 1;
                    let start = self.i;
                    while matches!(self.peek(), Some(c) if c != '}') {
                        self.i += 1;
                    }
                    let sub: String = self.s[start..self.i].iter().collect();
                    self.expect('}')?;
                    sub
                } else {
                    self.digits()?
                };
                Ok(SPolynomial::var(MultiIndex::parse_subscript(&sub)?))
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits()?.parse().unwrap();
                Ok(SPolynomial::constant(Rat::from_integer(n)))
            }
            other => Err(Error::Parse(format!(
                "unexpected {other:?} at offset {}",
                self.i
            ))),
        }
    }
}

impl fmt::Display for SPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_subscript_text())
    }
}

impl fmt::Debug for SPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_subscript_text())
    }
}

/// A polynomial in `t_0, …, t_n`, keyed by exponent vector.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TPolynomial {
    terms: BTreeMap<MultiIndex, Rat>,
}

impl TPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, e: MultiIndex, c: Rat) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &MultiIndex) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn mul(&self, other: &TPolynomial) -> TPolynomial {
        let mut p = TPolynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term(a.add(b), x * y);
            }
        }
        p
    }

    /// Relabels the variables: `t^γ ↦ t^{τγ}`.
    pub fn apply_perm(&self, tau: &Permutation) -> TPolynomial {
        let mut p = TPolynomial::zero();
        for (a, x) in &self.terms {
            p.add_term(tau.apply(a), x.clone());
        }
        p
    }
}

pub fn weight_of(m: &SMonomial, len: usize) -> MultiIndex {
    m.weight(len)
}

/// `v_d^*`: substitutes `s_α ↦ t^α`.
pub fn veronese_pullback(f: &SPolynomial, len: usize) -> TPolynomial {
    let mut p = TPolynomial::zero();
    for (m, c) in f.terms() {
        p.add_term(m.weight(len), c.clone());
    }
    p
}

/// `∂^{deg m} f / ∂m`, with `m` read as a multiset of variables.
pub fn partial_derivative(f: &SPolynomial, m: &SMonomial) -> SPolynomial {
    let mut out = SPolynomial::zero();
    'terms: for (mono, c) in f.terms() {
        let mut coef = c.clone();
        for (a, j) in m.factors() {
            let i = mono.power_of(a);
            if i < *j {
                continue 'terms;
            }
            // falling factorial i (i-1) … (i-j+1)
            let ff: u64 = ((i - j + 1)..=i).map(u64::from).product();
            coef *= rat(ff as i64);
        }
        out.add_term(mono.div(m).unwrap(), coef);
    }
    out
}

/// `Ψ_m(f) = v_d^*(∂^{k-1} f / ∂m)`.
pub fn psi_component(f: &SPolynomial, m: &SMonomial, k: u32, len: usize) -> Result<TPolynomial> {
    if m.degree() + 1 != k {
        return Err(Error::DegreeMismatch(format!(
            "differentiating monomial has degree {}, expected {}",
            m.degree(),
            k - 1
        )));
    }
    if let Some(e) = f.degree() {
        if e != k + 1 || !f.is_homogeneous() {
            return Err(Error::DegreeMismatch(format!(
                "polynomial has degree {e}, expected {}",
                k + 1
            )));
        }
    }
    Ok(veronese_pullback(&partial_derivative(f, m), len))
}

/// Degree-`e` sub-multisets of a monomial.
pub fn divisors_of_degree(m: &SMonomial, e: u32) -> Vec<SMonomial> {
    let f = m.factors();
    let mut out = Vec::new();
    let mut cur: Vec<(MultiIndex, u32)> = Vec::new();
    fn rec(
        f: &[(MultiIndex, u32)],
        i: usize,
        rem: u32,
        cur: &mut Vec<(MultiIndex, u32)>,
        out: &mut Vec<SMonomial>,
    ) {
        if rem == 0 {
            out.push(SMonomial::new(cur.clone()));
            return;
        }
        if i == f.len() {
            return;
        }
        for j in (0..=f[i].1.min(rem)).rev() {
            cur.push((f[i].0.clone(), j));
            rec(f, i + 1, rem - j, cur, out);
            cur.pop();
        }
    }
    rec(f, 0, e, &mut cur, &mut out);
    out
}

/// True iff every `Ψ_m(f)` vanishes. Only `m` dividing some term of `f` can
/// give a nonzero component.
pub fn psi_is_zero(f: &SPolynomial, k: u32, len: usize) -> Result<bool> {
    if let Some(e) = f.degree() {
        if e != k + 1 || !f.is_homogeneous() {
            return Err(Error::DegreeMismatch(format!(
                "polynomial has degree {e}, expected {}",
                k + 1
            )));
        }
    }
    let mut ms: Vec<SMonomial> = f
        .terms()
        .keys()
        .flat_map(|t| divisors_of_degree(t, k - 1))
        .collect();
    ms.sort();
    ms.dedup();
    for m in &ms {
        if !psi_component(f, m, k, len)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parameters of a point `Σ λ_i v_d(t^{(i)})` on the `k`-th secant variety.
#[derive(Clone, Debug)]
pub struct SecantParams {
    pub ts: Vec<Vec<i64>>,
    pub lambdas: Vec<i64>,
}

impl SecantParams {
    pub fn draw(k: usize, n: usize, rng: &mut impl Rng) -> Self {
        let mut ts = Vec::with_capacity(k);
        for _ in 0..k {
            loop {
                let t: Vec<i64> = (0..=n).map(|_| rng.gen_range(-9..=9)).collect();
                if t.iter().any(|&x| x != 0) {
                    ts.push(t);
                    break;
                }
            }
        }
        let lambdas = (0..k).map(|_| rng.gen_range(1..=9)).collect();
        SecantParams { ts, lambdas }
    }

    pub fn seeded(k: usize, n: usize, seed: u64) -> Self {
        Self::draw(k, n, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn value(&self, alpha: &[u32]) -> BigInt {
        let mut acc = BigInt::zero();
        for (t, l) in self.ts.iter().zip(&self.lambdas) {
            let mut v = BigInt::from(*l);
            for (x, a) in t.iter().zip(alpha) {
                v *= BigInt::from(*x).pow(*a);
            }
            acc += v;
        }
        acc
    }

    pub fn value_mod(&self, alpha: &[u32], p: u64) -> u64 {
        let mut acc = 0u64;
        for (t, l) in self.ts.iter().zip(&self.lambdas) {
            let mut v = (*l as u64) % p;
            for (x, a) in t.iter().zip(alpha) {
                let xm = x.rem_euclid(p as i64) as u64;
                for _ in 0..*a {
                    v = ((v as u128 * xm as u128) % p as u128) as u64;
                }
            }
            acc = (acc + v) % p;
        }
        acc
    }

    pub fn point(&self, d: u32) -> Point {
        let n = self.ts.first().map_or(0, |t| t.len() - 1);
        exponents(n, d)
            .into_iter()
            .map(|a| {
                let v = Rat::from_integer(self.value(a.entries()));
                (a, v)
            })
            .collect()
    }
}

/// A seeded point of `σ_k(v_d(P^n))` with `s_α = Σ λ_i (t^{(i)})^α`.
pub fn secant_sample(k: usize, d: u32, n: usize, seed: u64) -> Point {
    SecantParams::seeded(k, n, seed).point(d)
}

/// A seeded point with independent random integer coordinates.
pub fn random_point(d: u32, n: usize, seed: u64, range: i64) -> Point {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    exponents(n, d)
        .into_iter()
        .map(|a| (a, rat(rng.gen_range(-range..=range))))
        .collect()
}

/// Index labels of the catalecticant `φ_{a,b}`: entry `(α, γ)` is `s_{α+γ}`.
pub fn symmetric_flattening(n: usize, d: u32, a: u32, b: u32) -> Result<Vec<Vec<MultiIndex>>> {
    if a + b != d {
        return Err(Error::DegreeMismatch(format!("{a} + {b} != {d}")));
    }
    let rows = exponents(n, a);
    let cols = exponents(n, b);
    Ok(rows
        .iter()
        .map(|r| cols.iter().map(|c| r.add(c)).collect())
        .collect())
}

pub fn flattening_at(n: usize, d: u32, a: u32, b: u32, point: &Point) -> Result<Vec<Vec<Rat>>> {
    symmetric_flattening(n, d, a, b)?
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|g| point.get(&g).cloned().ok_or(Error::MissingAssignment(g)))
                .collect()
        })
        .collect()
}

/// Clears denominators of a rational vector to coprime integers.
pub fn to_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Small-integer rendering helper for reports.
pub fn rat_to_i64(x: &Rat) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn factorial_rat(n: u32) -> Rat {
    rat(factorial(n as u64) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn sp(s: &str) -> SPolynomial {
        SPolynomial::parse(s).unwrap()
    }

    #[test]
    fn weights() {
        let m: SMonomial = "s_0012*s_0003".parse().unwrap();
        assert_eq!(weight_of(&m, 4), mi("0,0,1,5"));
        let m: SMonomial = "s_310^2*s_202*s_022".parse().unwrap();
        assert_eq!(weight_of(&m, 3), mi("8,4,4"));
        assert_eq!(weight_of(&SMonomial::one(), 3), mi("0,0,0"));
    }

    #[test]
    fn pullback() {
        let t = veronese_pullback(&sp("s_0012 s_0003"), 4);
        assert_eq!(t.coeff(&mi("0,0,1,5")), rat(1));
        assert!(veronese_pullback(&sp("s_400 s_220 - s_310^2"), 3).is_zero());
    }

    #[test]
    fn derivatives() {
        let a = "s_210";
        let d = partial_derivative(&sp(&format!("{a}^3")), &format!("{a}").parse().unwrap());
        assert_eq!(d, sp(&format!("3 {a}^2")));
        let d = partial_derivative(&sp("s_210 s_120"), &"s_030".parse().unwrap());
        assert!(d.is_zero());
        let d = partial_derivative(&sp("s_210^2 s_120"), &"s_210^2".parse().unwrap());
        assert_eq!(d, sp("2 s_120"));
    }

    #[test]
    fn psi_power() {
        // s_α^{k+1} differentiated k-1 times along s_α.
        let k = 4;
        let f = sp("s_1110^5");
        let m: SMonomial = "s_1110^3".parse().unwrap();
        let t = psi_component(&f, &m, k, 4).unwrap();
        assert_eq!(t.coeff(&mi("2,2,2,0")), rat(60));
        assert!(!psi_is_zero(&f, k, 4).unwrap());
        assert!(psi_component(&f, &"s_1110".parse().unwrap(), k, 4).is_err());
    }

    #[test]
    fn evaluation() {
        let mut pt = Point::new();
        pt.insert(mi("0,0,1,2"), rat(2));
        pt.insert(mi("0,0,0,3"), rat(3));
        assert_eq!(sp("s_0012 s_0003").evaluate(&pt).unwrap(), rat(6));
        assert!(sp("s_1002").evaluate(&pt).is_err());
    }

    #[test]
    fn parser_forms() {
        let p = sp("-2 s_{2100} s_{1110}^{2} + (s_0003 - s_0012)^2");
        assert_eq!(p.len(), 4);
        assert_eq!(p.coeff(&"s_2100*s_1110^2".parse().unwrap()), rat(-2));
        assert_eq!(p.coeff(&"s_0003*s_0012".parse().unwrap()), rat(-2));
        assert_eq!(sp(&p.to_subscript_text()), p);
        assert!(SPolynomial::parse("s_12 +").is_err());
    }

    #[test]
    fn records_round_trip() {
        let p = sp("3 s_0012 s_0003 - s_1110^2");
        let p = p.scale(&Rat::new(BigInt::from(1), BigInt::from(7)));
        let r = p.to_records();
        assert_eq!(SPolynomial::from_records(&r).unwrap(), p);
        let json = serde_json::to_string(&r).unwrap();
        let back: Vec<TermRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn flattening_shapes() {
        let f = symmetric_flattening(3, 3, 1, 2).unwrap();
        assert_eq!((f.len(), f[0].len()), (4, 10));
        assert!(symmetric_flattening(3, 3, 1, 1).is_err());
    }

    #[test]
    fn secant_points_are_deterministic() {
        assert_eq!(secant_sample(3, 3, 2, 5), secant_sample(3, 3, 2, 5));
        let p = SecantParams::seeded(2, 3, 9);
        let a = [1u32, 0, 2, 0];
        let v = p.value(&a);
        let m = (v % BigInt::from(1_000_003i64) + BigInt::from(1_000_003i64))
            % BigInt::from(1_000_003i64);
        assert_eq!(m.to_u64().unwrap(), p.value_mod(&a, 1_000_003));
    }
}
