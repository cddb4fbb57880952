//! Exact linear algebra: dense fraction-free elimination over `Z`, a sparse
//! rational matrix with a fraction-free kernel routine, and a certified
//! kernel-dimension engine that eliminates modulo word-size primes and checks
//! the reconstructed kernel exactly over `Q`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polyring::Rat;

// ---------------------------------------------------------------- dense Z ---

/// Rank by Bareiss elimination; every division is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..m {
            for j in c + 1..n {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant by Bareiss elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut sign = 1;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if piv != c {
            a.swap(c, piv);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = (&a[c][c] * &a[i][j] - &a[i][c] * &a[c][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}

fn clear_row(row: &[Rat]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
        .collect()
}

pub fn rank_rat(a: &[Vec<Rat>]) -> usize {
    bareiss_rank(a.iter().map(|r| clear_row(r)).collect())
}

pub fn det_rat(a: &[Vec<Rat>]) -> Rat {
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            r.iter()
                .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    Rat::new(bareiss_det(rows), scale)
}

/// Reduced row echelon form over `Q`; returns the pivot columns.
pub fn rref(a: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let n = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..n {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    pivots
}

/// Canonical basis of the row space: the nonzero rows of the reduced echelon
/// form, each with leading coordinate 1.
pub fn canonical_basis(vectors: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let mut a = vectors;
    rref(&mut a);
    a
}

// ---------------------------------------------------------- sparse over Q ---

/// Sparse exact rational matrix. Rows are lists of `(column, value)` with
/// strictly increasing columns and no stored zeros.
#[derive(Clone, Debug, Default)]
pub struct SparseRationalMatrix {
    pub ncols: usize,
    pub rows: Vec<Vec<(u32, Rat)>>,
}

impl SparseRationalMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseRationalMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, mut row: Vec<(u32, Rat)>) {
        row.sort_by_key(|e| e.0);
        let mut merged: Vec<(u32, Rat)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            match merged.last_mut() {
                Some((d, w)) if *d == c => *w += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        self.rows.push(merged);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        self.rows
            .iter()
            .map(|r| {
                let mut v = vec![Rat::zero(); self.ncols];
                for (c, x) in r {
                    v[*c as usize] = x.clone();
                }
                v
            })
            .collect()
    }

    /// `M v` for a dense vector.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .fold(Rat::zero(), |acc, (c, x)| acc + x * &v[*c as usize])
            })
            .collect()
    }

    /// Integer rows with the same row space (denominators cleared, content
    /// removed).
    pub fn integer_rows(&self) -> Vec<Vec<(u32, BigInt)>> {
        self.rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let l = r
                    .iter()
                    .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
                let mut row: Vec<(u32, BigInt)> = r
                    .iter()
                    .map(|(c, x)| (*c, (x * Rat::from_integer(l.clone())).to_integer()))
                    .collect();
                primitive(&mut row);
                row
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        IntegerEchelon::from_rows(self.ncols, self.integer_rows()).rank()
    }

    /// Exact null-space basis in reduced echelon form (leading entry 1).
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        IntegerEchelon::from_rows(self.ncols, self.integer_rows()).kernel_basis()
    }
}

fn primitive(row: &mut [(u32, BigInt)]) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
    if row.first().is_some_and(|(_, x)| x.is_negative()) {
        for (_, x) in row.iter_mut() {
            *x = -&*x;
        }
    }
}

/// Fraction-free sparse row echelon form over `Z` in natural column order.
/// Each new row is reduced against existing pivots by cross-multiplication
/// and then divided by its content.
pub struct IntegerEchelon {
    ncols: usize,
    pivot_of: Vec<Option<usize>>,
    rows: Vec<Vec<(u32, BigInt)>>,
}

impl IntegerEchelon {
    pub fn new(ncols: usize) -> Self {
        IntegerEchelon {
            ncols,
            pivot_of: vec![None; ncols],
            rows: Vec::new(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Vec<(u32, BigInt)>>) -> Self {
        let mut rows = rows;
        rows.sort_by_key(|r| r.len());
        let mut e = Self::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert(&mut self, mut row: Vec<(u32, BigInt)>) -> bool {
        loop {
            let Some((lead, a)) = row.first().cloned() else {
                return false;
            };
            match self.pivot_of[lead as usize] {
                None => {
                    primitive(&mut row);
                    self.pivot_of[lead as usize] = Some(self.rows.len());
                    self.rows.push(row);
                    return true;
                }
                Some(pi) => {
                    let p = &self.rows[pi];
                    let b = p[0].1.clone();
                    let g = a.gcd(&b);
                    let (fa, fb) = (&b / &g, &a / &g);
                    // row ← fa·row − fb·p
                    let mut out = Vec::with_capacity(row.len() + p.len());
                    let (mut i, mut j) = (0, 0);
                    while i < row.len() || j < p.len() {
                        let ci = row.get(i).map_or(u32::MAX, |e| e.0);
                        let cj = p.get(j).map_or(u32::MAX, |e| e.0);
                        if ci < cj {
                            out.push((ci, &fa * &row[i].1));
                            i += 1;
                        } else if cj < ci {
                            out.push((cj, -(&fb * &p[j].1)));
                            j += 1;
                        } else {
                            let v = &fa * &row[i].1 - &fb * &p[j].1;
                            if !v.is_zero() {
                                out.push((ci, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    primitive(&mut out);
                    row = out;
                }
            }
        }
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        let mut basis = Vec::new();
        for f in 0..self.ncols {
            if self.pivot_of[f].is_some() {
                continue;
            }
            let mut x = vec![Rat::zero(); self.ncols];
            x[f] = Rat::one();
            for &ri in &order {
                let row = &self.rows[ri];
                let lead = row[0].0 as usize;
                let s = row[1..].iter().fold(Rat::zero(), |acc, (c, v)| {
                    acc + &x[*c as usize] * Rat::from_integer(v.clone())
                });
                x[lead] = -s / Rat::from_integer(row[0].1.clone());
            }
            basis.push(x);
        }
        canonical_basis(basis)
    }
}

// ---------------------------------------------------------- modular tools ---

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^62`.
pub fn word_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime_u64(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

pub fn to_mod(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

/// Recovers `n/d ≡ a (mod m)` with `|n|, d ≤ sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.clone().gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Chinese remaindering of `a (mod m)` with `b (mod p)`.
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let a_mod_p = bigint_mod(a, p);
    let m_mod_p = bigint_mod(m, p);
    let diff = (b + p - a_mod_p) % p;
    let k = mul_mod(diff, inv_mod(m_mod_p, p), p);
    let r = a + m * BigInt::from(k);
    r.mod_floor(&(m * pb))
}

/// Sparse row echelon form modulo `p` with rows normalised to leading 1.
/// Columns are positions in whatever order the caller chose.
pub struct ModEchelon {
    pub p: u64,
    ncols: usize,
    pivot_of: Vec<u32>,
    rows: Vec<Vec<(u32, u64)>>,
    scratch: Vec<(u32, u64)>,
}

const NO_PIVOT: u32 = u32::MAX;

impl ModEchelon {
    pub fn new(ncols: usize, p: u64) -> Self {
        ModEchelon {
            p,
            ncols,
            pivot_of: vec![NO_PIVOT; ncols],
            rows: Vec::new(),
            scratch: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Stored entries across all pivot rows.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// `row` must be sorted by column with nonzero entries reduced mod `p`.
    pub fn insert(&mut self, mut row: Vec<(u32, u64)>) -> bool {
        let p = self.p;
        loop {
            let Some(&(lead, a)) = row.first() else {
                return false;
            };
            let pi = self.pivot_of[lead as usize];
            if pi == NO_PIVOT {
                let inv = inv_mod(a, p);
                for e in row.iter_mut() {
                    e.1 = mul_mod(e.1, inv, p);
                }
                self.pivot_of[lead as usize] = self.rows.len() as u32;
                row.shrink_to_fit();
                self.rows.push(row);
                return true;
            }
            let prow = &self.rows[pi as usize];
            let f = p - a;
            let out = &mut self.scratch;
            out.clear();
            out.reserve(row.len() + prow.len());
            let (mut i, mut j) = (1, 1);
            while i < row.len() && j < prow.len() {
                let (ci, vi) = row[i];
                let (cj, vj) = prow[j];
                if ci < cj {
                    out.push((ci, vi));
                    i += 1;
                } else if cj < ci {
                    out.push((cj, mul_mod(f, vj, p)));
                    j += 1;
                } else {
                    let v = (vi + mul_mod(f, vj, p)) % p;
                    if v != 0 {
                        out.push((ci, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            out.extend_from_slice(&row[i..]);
            for &(cj, vj) in &prow[j..] {
                out.push((cj, mul_mod(f, vj, p)));
            }
            std::mem::swap(&mut row, out);
        }
    }

    /// Kernel vectors, one per non-pivot column `f`, with `x_f = 1` and all
    /// other non-pivot coordinates 0.
    pub fn kernel_vectors(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivot_of[f] != NO_PIVOT {
                continue;
            }
            let mut x = vec![0u64; self.ncols];
            x[f] = 1;
            for &ri in &order {
                let row = &self.rows[ri];
                let mut s = 0u64;
                for &(c, v) in &row[1..] {
                    let xc = x[c as usize];
                    if xc != 0 {
                        s = (s + mul_mod(v, xc, p)) % p;
                    }
                }
                x[row[0].0 as usize] = (p - s) % p;
            }
            out.push(x);
        }
        out
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|&c| self.pivot_of[c] == NO_PIVOT)
            .collect()
    }
}

// ------------------------------------------------------ certified kernels ---

/// Integer relation rows in compressed form.
#[derive(Clone, Debug, Default)]
pub struct IntRows {
    pub ncols: usize,
    ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<i64>,
}

/// Column-to-row incidence of an [`IntRows`].
struct Incidence {
    start: Vec<usize>,
    rows: Vec<u32>,
}

impl Incidence {
    fn of(m: &IntRows) -> Self {
        let mut start = vec![0usize; m.ncols + 1];
        for &c in &m.cols {
            start[c as usize + 1] += 1;
        }
        for i in 0..m.ncols {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut rows = vec![0u32; m.cols.len()];
        for r in 0..m.nrows() {
            for k in m.ptr[r]..m.ptr[r + 1] {
                let c = m.cols[k] as usize;
                rows[fill[c]] = r as u32;
                fill[c] += 1;
            }
        }
        Incidence { start, rows }
    }

    fn rows_of(&self, c: usize) -> &[u32] {
        &self.rows[self.start[c]..self.start[c + 1]]
    }
}

impl IntRows {
    pub fn new(ncols: usize) -> Self {
        IntRows {
            ncols,
            ptr: vec![0],
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// Appends a row after merging repeated columns and dropping zeros.
    pub fn push(&mut self, entries: &mut Vec<(u32, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let start = self.cols.len();
        for &(c, v) in entries.iter() {
            if self.cols.len() > start && *self.cols.last().unwrap() == c {
                *self.vals.last_mut().unwrap() += v;
                if *self.vals.last().unwrap() == 0 {
                    self.cols.pop();
                    self.vals.pop();
                }
            } else if v != 0 {
                self.cols.push(c);
                self.vals.push(v);
            }
        }
        if self.cols.len() > start {
            self.ptr.push(self.cols.len());
        }
    }

    pub fn nrows(&self) -> usize {
        self.ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (u32, i64)> + '_ {
        let r = self.ptr[i]..self.ptr[i + 1];
        self.cols[r.clone()]
            .iter()
            .copied()
            .zip(self.vals[r].iter().copied())
    }

    pub fn row_len(&self, i: usize) -> usize {
        self.ptr[i + 1] - self.ptr[i]
    }

    pub fn to_sparse_rational(&self) -> SparseRationalMatrix {
        let mut m = SparseRationalMatrix::new(self.ncols);
        for i in 0..self.nrows() {
            m.push_row(
                self.row(i)
                    .map(|(c, v)| (c, Rat::from_integer(BigInt::from(v))))
                    .collect(),
            );
        }
        m
    }

    /// Columns forced to zero by rows with a single remaining unknown,
    /// propagated to a fixed point.
    pub fn forced_zero_columns(&self) -> Vec<bool> {
        let inc = Incidence::of(self);
        let mut live: Vec<u32> = (0..self.nrows()).map(|r| self.row_len(r) as u32).collect();
        let mut zero = vec![false; self.ncols];
        let mut queue: Vec<u32> = (0..self.nrows() as u32)
            .filter(|&r| live[r as usize] == 1)
            .collect();
        while let Some(r) = queue.pop() {
            let r = r as usize;
            if live[r] != 1 {
                continue;
            }
            let Some(c) = self.cols[self.ptr[r]..self.ptr[r + 1]]
                .iter()
                .map(|&c| c as usize)
                .find(|&c| !zero[c])
            else {
                continue;
            };
            zero[c] = true;
            for &r2 in inc.rows_of(c) {
                let l = &mut live[r2 as usize];
                *l -= 1;
                if *l == 1 {
                    queue.push(r2);
                }
            }
        }
        zero
    }
}

fn trace_stage<F: FnOnce() -> String>(f: F) {
    if std::env::var_os("SECANT_TRACE").is_some() {
        eprintln!("[kernel] {}", f());
    }
}

/// Outcome of a kernel computation.
#[derive(Clone, Debug)]
pub struct KernelResult {
    pub kappa: usize,
    /// True when `kappa` is the exact dimension over `Q`; otherwise it is the
    /// dimension modulo a prime, an upper bound.
    pub certified: bool,
    /// Canonical basis (reduced echelon form) when requested and certified.
    pub basis: Option<Vec<Vec<Rat>>>,
    pub primes_used: usize,
    pub backend: Backend,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Sparse row echelon form after singleton propagation.
    Echelon,
    /// Staged solving: singleton rows determine one unknown at a time in terms
    /// of free variables introduced when no row qualifies; the remaining rows
    /// then constrain the variables.
    Staged,
}

#[derive(Clone, Copy, Debug)]
pub struct KernelOptions {
    pub want_basis: bool,
    pub max_primes: usize,
    /// Force a backend; by default small systems use the echelon form.
    pub backend: Option<Backend>,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions {
            want_basis: false,
            max_primes: 6,
            backend: None,
        }
    }
}

const STAGED_THRESHOLD: usize = 20_000;

/// A kernel modulo `p` in reduced echelon form over the original columns.
struct ModKernel {
    kappa: usize,
    pivots: Vec<usize>,
    vectors: Vec<Vec<u64>>,
}

fn rref_mod(a: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let n = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..m {
            if i != r && a[i][c] != 0 {
                let f = p - a[i][c];
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for j in c..n {
                    if src[j] != 0 {
                        dst[j] = (dst[j] + mul_mod(f, src[j], p)) % p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    pivots
}

struct Reduced {
    live: Vec<u32>,
    order_pos: Vec<u32>,
    rows: Vec<Vec<(u32, i64)>>,
}

fn reduce_system(m: &IntRows) -> Reduced {
    let zero = m.forced_zero_columns();
    let mut live_id = vec![u32::MAX; m.ncols];
    let mut live = Vec::new();
    for c in 0..m.ncols {
        if !zero[c] {
            live_id[c] = live.len() as u32;
            live.push(c as u32);
        }
    }
    let mut seen: HashSet<Vec<(u32, i64)>> = HashSet::new();
    let mut rows = Vec::new();
    let mut nnz = vec![0u32; live.len()];
    for r in 0..m.nrows() {
        let mut row: Vec<(u32, i64)> = m
            .row(r)
            .filter(|(c, _)| !zero[*c as usize])
            .map(|(c, v)| (live_id[c as usize], v))
            .collect();
        if row.is_empty() {
            continue;
        }
        let g = row.iter().fold(0i64, |acc, e| acc.gcd(&e.1));
        let s = if row[0].1 < 0 { -g } else { g };
        for e in row.iter_mut() {
            e.1 /= s;
        }
        if seen.insert(row.clone()) {
            for e in &row {
                nnz[e.0 as usize] += 1;
            }
            rows.push(row);
        }
    }
    drop(seen);
    // sparse columns first
    let mut order: Vec<u32> = (0..live.len() as u32).collect();
    order.sort_by_key(|&c| (nnz[c as usize], c));
    let mut order_pos = vec![0u32; live.len()];
    for (pos, &c) in order.iter().enumerate() {
        order_pos[c as usize] = pos as u32;
    }
    for row in rows.iter_mut() {
        for e in row.iter_mut() {
            e.0 = order_pos[e.0 as usize];
        }
        row.sort_unstable_by_key(|e| e.0);
    }
    rows.sort_by_key(|r| r.len());
    Reduced {
        live,
        order_pos,
        rows,
    }
}

fn echelon_kernel(m: &IntRows, red: &Reduced, p: u64) -> ModKernel {
    let mut e = ModEchelon::new(red.live.len(), p);
    for row in &red.rows {
        let r: Vec<(u32, u64)> = row.iter().map(|&(c, v)| (c, to_mod(v, p))).collect();
        e.insert(r);
        if e.rank() == red.live.len() {
            break;
        }
    }
    trace_stage(|| {
        format!(
            "echelon rank {} of {} (nnz {})",
            e.rank(),
            red.live.len(),
            e.nnz()
        )
    });
    let kappa = red.live.len() - e.rank();
    let mut vectors: Vec<Vec<u64>> = e
        .kernel_vectors()
        .into_iter()
        .map(|v| {
            let mut full = vec![0u64; m.ncols];
            for (li, &c) in red.live.iter().enumerate() {
                full[c as usize] = v[red.order_pos[li] as usize];
            }
            full
        })
        .collect();
    let pivots = rref_mod(&mut vectors, p);
    ModKernel {
        kappa,
        pivots,
        vectors,
    }
}

/// Staged solving modulo `p`.
///
/// Every column ends up expressed as a linear form in `V` free variables.
/// Rows with exactly one undetermined column define it; when none is left, the
/// undetermined column that occurs in the most rows with two undetermined
/// columns becomes a new variable. Every row not used as a definition is then
/// a linear condition on the variables, and the kernel is the common null
/// space of those conditions mapped back through the linear forms.
fn staged_kernel(m: &IntRows, p: u64) -> ModKernel {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let ncols = m.ncols;
    let nrows = m.nrows();
    let inc = Incidence::of(m);
    let mut live: Vec<u32> = (0..nrows).map(|r| m.row_len(r) as u32).collect();
    let mut det = vec![false; ncols];
    let mut expr: Vec<Vec<u64>> = vec![Vec::new(); ncols];
    let mut used = vec![false; nrows];
    let mut residual: Vec<u32> = Vec::new();
    let mut two = vec![0u32; ncols];
    let mut heap: BinaryHeap<(u32, Reverse<u32>)> = BinaryHeap::new();
    let mut queue: Vec<u32> = Vec::new();
    let mut nvars = 0usize;

    let row_cols = |r: usize| &m.cols[m.ptr[r]..m.ptr[r + 1]];
    for r in 0..nrows {
        match live[r] {
            1 => queue.push(r as u32),
            2 => {
                for &c in row_cols(r) {
                    two[c as usize] += 1;
                }
            }
            _ => {}
        }
    }
    for c in 0..ncols {
        if two[c] > 0 {
            heap.push((two[c], Reverse(c as u32)));
        }
    }

    // Marks c determined and updates row states.
    let settle = |c: usize,
                  by: Option<usize>,
                  det: &mut Vec<bool>,
                  live: &mut Vec<u32>,
                  two: &mut Vec<u32>,
                  heap: &mut BinaryHeap<(u32, Reverse<u32>)>,
                  queue: &mut Vec<u32>,
                  residual: &mut Vec<u32>| {
        det[c] = true;
        for &r2 in inc.rows_of(c) {
            let r2 = r2 as usize;
            let old = live[r2];
            live[r2] = old - 1;
            match old {
                3 => {
                    for &j in row_cols(r2) {
                        if !det[j as usize] {
                            two[j as usize] += 1;
                            heap.push((two[j as usize], Reverse(j)));
                        }
                    }
                }
                2 => {
                    for &j in row_cols(r2) {
                        if !det[j as usize] {
                            two[j as usize] -= 1;
                        }
                    }
                    two[c] = two[c].saturating_sub(1);
                }
                _ => {}
            }
            if live[r2] == 1 {
                queue.push(r2 as u32);
            } else if live[r2] == 0 && by != Some(r2) {
                residual.push(r2 as u32);
            }
        }
    };

    let mut next_free = 0usize;
    let mut acc: Vec<u64> = Vec::new();
    loop {
        while let Some(r) = queue.pop() {
            let r = r as usize;
            if live[r] != 1 {
                continue;
            }
            let mut target = None;
            acc.clear();
            for (j, v) in m.row(r) {
                let j = j as usize;
                if !det[j] {
                    target = Some((j, v));
                    continue;
                }
                let e = &expr[j];
                if e.is_empty() {
                    continue;
                }
                if acc.len() < e.len() {
                    acc.resize(e.len(), 0);
                }
                let vm = to_mod(v, p);
                for (a, &x) in acc.iter_mut().zip(e) {
                    if x != 0 {
                        *a = (*a + mul_mod(vm, x, p)) % p;
                    }
                }
            }
            let (c, a) = target.expect("row has one undetermined column");
            let f = mul_mod(p - 1, inv_mod(to_mod(a, p), p), p);
            while acc.last() == Some(&0) {
                acc.pop();
            }
            expr[c] = acc.iter().map(|&x| mul_mod(x, f, p)).collect();
            used[r] = true;
            settle(
                c,
                Some(r),
                &mut det,
                &mut live,
                &mut two,
                &mut heap,
                &mut queue,
                &mut residual,
            );
        }
        // stuck: introduce a variable
        let mut pick = None;
        while let Some((cnt, Reverse(c))) = heap.pop() {
            let c = c as usize;
            if !det[c] && cnt == two[c] && cnt > 0 {
                pick = Some(c);
                break;
            }
        }
        if pick.is_none() {
            while next_free < ncols && det[next_free] {
                next_free += 1;
            }
            if next_free < ncols {
                pick = Some(next_free);
            }
        }
        let Some(c) = pick else { break };
        let mut e = vec![0u64; nvars + 1];
        e[nvars] = 1;
        expr[c] = e;
        nvars += 1;
        settle(
            c,
            None,
            &mut det,
            &mut live,
            &mut two,
            &mut heap,
            &mut queue,
            &mut residual,
        );
    }
    trace_stage(|| {
        format!(
            "staged: {} variables, {} residual rows",
            nvars,
            residual.len()
        )
    });

    // Null space of the residual conditions, maintained incrementally.
    let mut kernel: Vec<Vec<u64>> = (0..nvars)
        .map(|i| {
            let mut z = vec![0u64; nvars];
            z[i] = 1;
            z
        })
        .collect();
    let mut v = vec![0u64; nvars];
    let mut dots = Vec::new();
    for &r in &residual {
        if kernel.is_empty() {
            break;
        }
        v.iter_mut().for_each(|x| *x = 0);
        let mut any = false;
        for (j, a) in m.row(r as usize) {
            let e = &expr[j as usize];
            if e.is_empty() {
                continue;
            }
            any = true;
            let am = to_mod(a, p);
            for (x, &y) in v.iter_mut().zip(e) {
                if y != 0 {
                    *x = (*x + mul_mod(am, y, p)) % p;
                }
            }
        }
        if !any {
            continue;
        }
        dots.clear();
        dots.extend(kernel.iter().map(|z| {
            z.iter().zip(&v).fold(0u64, |s, (&a, &b)| {
                if a == 0 || b == 0 {
                    s
                } else {
                    (s + mul_mod(a, b, p)) % p
                }
            })
        }));
        let Some(i) = dots.iter().position(|&d| d != 0) else {
            continue;
        };
        let zi = kernel.swap_remove(i);
        let di = dots.swap_remove(i);
        let inv = inv_mod(di, p);
        for (z, &d) in kernel.iter_mut().zip(&dots) {
            if d == 0 {
                continue;
            }
            let f = p - mul_mod(d, inv, p);
            for (a, &b) in z.iter_mut().zip(&zi) {
                if b != 0 {
                    *a = (*a + mul_mod(f, b, p)) % p;
                }
            }
        }
    }
    let kappa = kernel.len();
    let mut vectors: Vec<Vec<u64>> = kernel
        .iter()
        .map(|z| {
            expr.iter()
                .map(|e| {
                    e.iter().zip(z).fold(0u64, |s, (&a, &b)| {
                        if a == 0 || b == 0 {
                            s
                        } else {
                            (s + mul_mod(a, b, p)) % p
                        }
                    })
                })
                .collect()
        })
        .collect();
    let pivots = rref_mod(&mut vectors, p);
    ModKernel {
        kappa,
        pivots,
        vectors,
    }
}

/// Checks `M x = 0` exactly for an integer vector.
fn verify_integer_kernel(m: &IntRows, x: &[BigInt]) -> bool {
    let bits = x.iter().map(|v| v.bits()).max().unwrap_or(0);
    let max_entry = m.vals.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    if bits <= 80 && max_entry < 1 << 20 && m.vals.len() < 1 << 24 {
        let xs: Vec<i128> = x.iter().map(|v| v.to_i128().unwrap()).collect();
        (0..m.nrows()).all(|r| {
            m.row(r)
                .map(|(c, v)| v as i128 * xs[c as usize])
                .sum::<i128>()
                == 0
        })
    } else {
        (0..m.nrows()).all(|r| {
            m.row(r)
                .fold(BigInt::zero(), |acc, (c, v)| {
                    acc + BigInt::from(v) * &x[c as usize]
                })
                .is_zero()
        })
    }
}

fn lift_and_verify(m: &IntRows, acc: &[Vec<BigInt>], modulus: &BigInt) -> Option<Vec<Vec<Rat>>> {
    let mut out = Vec::with_capacity(acc.len());
    for v in acc {
        let mut full = vec![Rat::zero(); m.ncols];
        for (c, x) in v.iter().enumerate() {
            if !x.is_zero() {
                full[c] = rational_reconstruct(x, modulus)?;
            }
        }
        let ints = crate::polyring::to_integer_vector(&full);
        if !verify_integer_kernel(m, &ints) {
            return None;
        }
        out.push(full);
    }
    Some(out)
}

/// Exact kernel dimension of an integer system.
///
/// The kernel is computed modulo a prime; its dimension bounds the rational
/// one from above, and a zero modular kernel is exact. Otherwise the modular
/// kernel (in reduced echelon form) is lifted by rational reconstruction,
/// adding primes as needed, and every lifted vector is checked exactly. The
/// checked vectors are independent, so the two dimensions agree.
pub fn certified_kernel(m: &IntRows, opts: KernelOptions) -> KernelResult {
    let t0 = std::time::Instant::now();
    let backend = opts.backend.unwrap_or(if m.ncols > STAGED_THRESHOLD {
        Backend::Staged
    } else {
        Backend::Echelon
    });
    let red = (backend == Backend::Echelon).then(|| reduce_system(m));
    let run = |p: u64| match &red {
        Some(red) => echelon_kernel(m, red, p),
        None => staged_kernel(m, p),
    };
    let primes = word_primes(opts.max_primes.max(1));
    let mut base = run(primes[0]);
    trace_stage(|| format!("kappa mod p = {} ({:?})", base.kappa, t0.elapsed()));
    let mut res = KernelResult {
        kappa: base.kappa,
        certified: false,
        basis: None,
        primes_used: 1,
        backend,
    };
    if base.kappa == 0 {
        res.certified = true;
        if opts.want_basis {
            res.basis = Some(Vec::new());
        }
        return res;
    }
    let to_big = |k: &ModKernel| -> Vec<Vec<BigInt>> {
        k.vectors
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    };
    let mut acc = to_big(&base);
    let mut modulus = BigInt::from(primes[0]);
    let mut used = 1;
    loop {
        if let Some(vectors) = lift_and_verify(m, &acc, &modulus) {
            res.kappa = base.kappa;
            res.certified = true;
            res.primes_used = used;
            if opts.want_basis {
                res.basis = Some(vectors);
            }
            trace_stage(|| format!("certified with {used} primes ({:?})", t0.elapsed()));
            return res;
        }
        if used >= primes.len() {
            break;
        }
        let p = primes[used];
        used += 1;
        let next = run(p);
        if next.kappa < base.kappa || (next.kappa == base.kappa && next.pivots != base.pivots) {
            // the earlier prime was unlucky; start over from this one
            base = next;
            acc = to_big(&base);
            modulus = BigInt::from(p);
            continue;
        }
        if next.kappa > base.kappa {
            continue;
        }
        for (a, v) in acc.iter_mut().zip(&next.vectors) {
            for (x, &y) in a.iter_mut().zip(v) {
                *x = crt(x, &modulus, y, p);
            }
        }
        modulus *= BigInt::from(p);
    }
    res.kappa = base.kappa;
    res.primes_used = used;
    res
}

/// Kernel dimension modulo one prime: an upper bound on the dimension over `Q`.
pub fn modular_kernel_dim(m: &IntRows, p: u64) -> usize {
    if m.ncols > STAGED_THRESHOLD {
        staged_kernel(m, p).kappa
    } else {
        echelon_kernel(m, &reduce_system(m), p).kappa
    }
}

/// Determinant modulo `p` of a square matrix.
pub fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(c, piv);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[c][c], p);
        let inv = inv_mod(a[c][c], p);
        let (top, bottom) = a.split_at_mut(c + 1);
        let prow = &top[c];
        for row in bottom.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = p - mul_mod(row[c], inv, p);
            for j in c..n {
                if prow[j] != 0 {
                    row[j] = (row[j] + mul_mod(f, prow[j], p)) % p;
                }
            }
        }
    }
    det
}

/// Rank modulo `p` of a dense matrix.
pub fn rank_mod_dense(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for j in c..n {
            a[r][j] = mul_mod(a[r][j], inv, p);
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in bottom.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for j in c..n {
                if prow[j] != 0 {
                    row[j] = (row[j] + mul_mod(nf, prow[j], p)) % p;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn ints(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(bareiss_det(ints(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(bareiss_det(ints(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            bareiss_det(ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            BigInt::from(-3)
        );
        assert_eq!(bareiss_rank(ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]])), 2);
        assert_eq!(bareiss_rank(ints(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn kernel_trivial_cases() {
        let m = SparseRationalMatrix::new(3);
        assert_eq!(m.kernel_basis().len(), 3);
        let mut id = SparseRationalMatrix::new(3);
        for i in 0..3 {
            id.push_row(vec![(i, rat(1))]);
        }
        assert!(id.kernel_basis().is_empty());
        let mut m = SparseRationalMatrix::new(3);
        m.push_row(vec![(0, rat(1)), (1, rat(1)), (2, rat(1))]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn reconstruction() {
        let p = word_primes(1)[0];
        let x = Rat::new(BigInt::from(-7), BigInt::from(12));
        let a = (x.numer() * BigInt::from(inv_mod(12, p))).mod_floor(&BigInt::from(p));
        assert_eq!(rational_reconstruct(&a, &BigInt::from(p)), Some(x));
        let ps = word_primes(2);
        let c = crt(&BigInt::from(3), &BigInt::from(ps[0]), 5, ps[1]);
        assert_eq!(bigint_mod(&c, ps[0]), 3);
        assert_eq!(bigint_mod(&c, ps[1]), 5);
    }

    #[test]
    fn certified_matches_exact() {
        let mut m = IntRows::new(5);
        m.push(&mut vec![(0, 2)]);
        m.push(&mut vec![(0, 1), (1, 3)]);
        m.push(&mut vec![(2, 1), (3, -1), (4, 2)]);
        m.push(&mut vec![(2, 2), (3, -2), (4, 4)]);
        let r = certified_kernel(
            &m,
            KernelOptions {
                want_basis: true,
                ..Default::default()
            },
        );
        assert!(r.certified);
        assert_eq!(r.kappa, 2);
        assert_eq!(r.basis.unwrap(), m.to_sparse_rational().kernel_basis());
    }

    #[test]
    fn staged_agrees_with_echelon() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let ncols = rng.gen_range(1..40);
            let mut m = IntRows::new(ncols);
            for _ in 0..rng.gen_range(0..45) {
                let len = rng.gen_range(1..4);
                let mut row: Vec<(u32, i64)> = (0..len)
                    .map(|_| (rng.gen_range(0..ncols as u32), rng.gen_range(-3..=3)))
                    .collect();
                m.push(&mut row);
            }
            let run = |b| {
                certified_kernel(
                    &m,
                    KernelOptions {
                        want_basis: true,
                        backend: Some(b),
                        ..Default::default()
                    },
                )
            };
            let (e, s) = (run(Backend::Echelon), run(Backend::Staged));
            assert!(e.certified && s.certified);
            assert_eq!(e.kappa, s.kappa);
            assert_eq!(e.basis, s.basis);
            assert_eq!(e.basis.unwrap(), m.to_sparse_rational().kernel_basis());
        }
    }
}
