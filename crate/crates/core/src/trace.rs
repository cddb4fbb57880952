//! Coefficient elimination by hand-style passes.
//!
//! Relations `(ε, m)` are scanned in order. A relation with exactly one
//! undetermined coefficient determines it as a linear form in the variables
//! introduced so far. When a full pass determines nothing, one undetermined
//! coefficient becomes a new variable. Relations left over constrain the
//! variables; the kernel dimension is the number of variables minus their rank.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank_rat, rref};
use crate::multiindex::{MultiIndex, SMonomial};
use crate::polyring::Rat;
use crate::prolong::{relation_matrix, Config};

/// One coefficient of a linear form: `coeff · x_var`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearTerm {
    pub var: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Step {
    /// `c(f; monomial)` is fixed by the relation `(epsilon, m)`.
    Determine {
        pass: usize,
        monomial: SMonomial,
        epsilon: MultiIndex,
        m: SMonomial,
        expression: Vec<LinearTerm>,
    },
    /// `c(f; monomial)` becomes the variable `x_variable`.
    NewVariable {
        pass: usize,
        monomial: SMonomial,
        variable: usize,
    },
}

impl Step {
    pub fn monomial(&self) -> &SMonomial {
        match self {
            Step::Determine { monomial, .. } | Step::NewVariable { monomial, .. } => monomial,
        }
    }

    pub fn pass(&self) -> usize {
        match self {
            Step::Determine { pass, .. } | Step::NewVariable { pass, .. } => *pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationTrace {
    pub beta: MultiIndex,
    pub k: u32,
    pub d: u32,
    pub n: usize,
    pub steps: Vec<Step>,
    pub variables: usize,
    /// Distinct nonzero linear forms the variables must satisfy.
    pub residual: Vec<Vec<LinearTerm>>,
    pub residual_rank: usize,
    pub final_kappa: usize,
}

fn to_terms(v: &[Rat]) -> Vec<LinearTerm> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| LinearTerm {
            var: i,
            coeff: c.to_string(),
        })
        .collect()
}

fn from_terms(t: &[LinearTerm], len: usize) -> Result<Vec<Rat>> {
    let mut v = vec![Rat::zero(); len];
    for term in t {
        let c = Rat::from_str(&term.coeff)
            .map_err(|_| Error::Parse(format!("bad coefficient {}", term.coeff)))?;
        *v.get_mut(term.var)
            .ok_or_else(|| Error::Parse(format!("variable x{} out of range", term.var)))? = c;
    }
    Ok(v)
}

/// Runs the elimination for `L_β`. `priority` lists monomials to prefer, in
/// order, when a new variable is needed; otherwise the first undetermined
/// monomial in canonical order is used.
pub fn elimination_trace(
    beta: &MultiIndex,
    k: u32,
    d: u32,
    n: usize,
    priority: Option<&[SMonomial]>,
) -> Result<EliminationTrace> {
    Config::new(k, d, n).check_weight(beta)?;
    let rel = relation_matrix(beta, k, d, n)?;
    let ncols = rel.columns.len();
    let rows = &rel.matrix.rows;
    let prio: Vec<usize> = priority
        .unwrap_or(&[])
        .iter()
        .filter_map(|m| rel.columns.iter().position(|c| c == m))
        .collect();

    let mut expr: Vec<Option<Vec<Rat>>> = vec![None; ncols];
    let mut used = vec![false; rows.len()];
    let mut steps = Vec::new();
    let mut nvars = 0usize;
    let mut pass = 0usize;
    let mut remaining = ncols;
    while remaining > 0 {
        pass += 1;
        let mut progress = false;
        for (r, row) in rows.iter().enumerate() {
            if used[r] {
                continue;
            }
            let mut open = row.iter().filter(|(c, _)| expr[*c as usize].is_none());
            let (Some(&(c, ref a)), None) = (open.next(), open.next()) else {
                continue;
            };
            let mut acc = vec![Rat::zero(); nvars];
            for (j, v) in row {
                if *j == c {
                    continue;
                }
                for (x, y) in acc.iter_mut().zip(expr[*j as usize].as_ref().unwrap()) {
                    *x += v * y;
                }
            }
            let f = -Rat::one() / a;
            for x in acc.iter_mut() {
                *x *= &f;
            }
            let (eps, m) = &rel.rows[r];
            steps.push(Step::Determine {
                pass,
                monomial: rel.columns[c as usize].clone(),
                epsilon: eps.clone(),
                m: m.clone(),
                expression: to_terms(&acc),
            });
            expr[c as usize] = Some(acc);
            used[r] = true;
            remaining -= 1;
            progress = true;
        }
        if !progress && remaining > 0 {
            let c = prio
                .iter()
                .copied()
                .find(|&c| expr[c].is_none())
                .or_else(|| expr.iter().position(|e| e.is_none()))
                .unwrap();
            let mut e = vec![Rat::zero(); nvars + 1];
            e[nvars] = Rat::one();
            expr[c] = Some(e);
            steps.push(Step::NewVariable {
                pass,
                monomial: rel.columns[c].clone(),
                variable: nvars,
            });
            nvars += 1;
            remaining -= 1;
        }
    }

    let mut residual: Vec<Vec<Rat>> = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        if used[r] {
            continue;
        }
        let mut acc = vec![Rat::zero(); nvars];
        for (j, v) in row {
            for (x, y) in acc.iter_mut().zip(expr[*j as usize].as_ref().unwrap()) {
                *x += v * y;
            }
        }
        if let Some(lead) = acc.iter().find(|x| !x.is_zero()).cloned() {
            for x in acc.iter_mut() {
                *x /= &lead;
            }
            if !residual.contains(&acc) {
                residual.push(acc);
            }
        }
    }
    let residual_rank = rank_rat(&residual);
    Ok(EliminationTrace {
        beta: beta.clone(),
        k,
        d,
        n,
        steps,
        variables: nvars,
        residual: residual.iter().map(|v| to_terms(v)).collect(),
        residual_rank,
        final_kappa: nvars - residual_rank,
    })
}

impl EliminationTrace {
    /// Kernel vectors of `L_β` (over the canonical monomial order) obtained by
    /// solving the residual relations and substituting into every step.
    pub fn solutions(&self) -> Result<Vec<Vec<Rat>>> {
        let mut res = self
            .residual
            .iter()
            .map(|t| from_terms(t, self.variables))
            .collect::<Result<Vec<_>>>()?;
        let pivots = rref(&mut res);
        let free: Vec<usize> = (0..self.variables)
            .filter(|i| !pivots.contains(i))
            .collect();
        let mut columns: Vec<&SMonomial> = self.steps.iter().map(|s| s.monomial()).collect();
        columns.sort();
        let mut out = Vec::new();
        for &f in &free {
            let mut x = vec![Rat::zero(); self.variables];
            x[f] = Rat::one();
            for (row, &p) in res.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            let mut v = vec![Rat::zero(); columns.len()];
            for s in &self.steps {
                let col = columns.binary_search(&s.monomial()).unwrap();
                v[col] = match s {
                    Step::NewVariable { variable, .. } => x[*variable].clone(),
                    Step::Determine { expression, .. } => expression
                        .iter()
                        .map(|t| Rat::from_str(&t.coeff).unwrap() * &x[t.var])
                        .fold(Rat::zero(), |a, b| a + b),
                };
            }
            out.push(v);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn render_form(terms: &[LinearTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        let (neg, mag) = match t.coeff.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, t.coeff.as_str()),
        };
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if mag != "1" {
            let _ = write!(s, "{mag}*");
        }
        let _ = write!(s, "x{}", t.var);
    }
    s
}

/// Human-readable derivation, one block per pass.
pub fn render_trace(tr: &EliminationTrace) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "weight {} for (k,d,n) = ({},{},{})",
        tr.beta, tr.k, tr.d, tr.n
    );
    if tr.steps.is_empty() {
        out.push_str("no monomials of this weight; kappa = 0\n");
        return out;
    }
    let mut current = 0;
    for s in &tr.steps {
        if s.pass() != current {
            current = s.pass();
            let _ = writeln!(out, "Step {current}.");
        }
        match s {
            Step::Determine {
                monomial,
                epsilon,
                m,
                expression,
                ..
            } => {
                let _ = writeln!(
                    out,
                    "  c(f; {monomial}) = {}   [epsilon = {epsilon:?}, m = {m}]",
                    render_form(expression)
                );
            }
            Step::NewVariable {
                monomial, variable, ..
            } => {
                let _ = writeln!(out, "  add c(f; {monomial}) as variable x{variable}");
            }
        }
    }
    let _ = writeln!(
        out,
        "{} variables, {} residual relations of rank {}",
        tr.variables,
        tr.residual.len(),
        tr.residual_rank
    );
    for r in &tr.residual {
        let _ = writeln!(out, "  {} = 0", render_form(r));
    }
    let _ = writeln!(out, "kappa = {}", tr.final_kappa);
    out
}
