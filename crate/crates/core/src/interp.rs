//! Recovering a residual polynomial from known enumerative counts.
//!
//! Writing `R_η = sum a_I c^I` with unknown `a_I`, the integrated target
//! formula on a model map is affine in the `a_I`; each known count gives one
//! linear equation, solved exactly over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::maps::{LnIndex, MapModel};
use crate::tpcore::{
    decomposable_part, integrate, MultiSingType, ResidualDb, Side, SymMonomial, SymbolicExpr,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coefficients: Vec<Rational>,
    pub rhs: Rational,
    pub label: String,
}

/// Equations in the coefficients of the Chern monomials `c^I` listed in `unknowns`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub unknowns: Vec<LnIndex>,
    pub rows: Vec<Row>,
}

/// All `I` with `deg c^I = degree`, in ascending order.
pub fn chern_monomials(degree: u32) -> Vec<LnIndex> {
    fn rec(rest: u32, max_part: u32, exps: &mut Vec<u32>, out: &mut Vec<LnIndex>) {
        if rest == 0 {
            out.push(LnIndex::new(exps.clone()));
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            exps[part as usize - 1] += 1;
            rec(rest - part, part, exps, out);
            exps[part as usize - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(degree, degree, &mut vec![0; degree as usize], &mut out);
    out.sort();
    out
}

/// One row per `(model, count)`: the coefficient of `a_I` is `∫_Y s_I(f)` and
/// the right-hand side is `#Aut(η) * count` minus the part of `∫_Y n_η(f)`
/// not involving `R_η`.
pub fn assemble_system(
    t: &MultiSingType,
    db: &ResidualDb,
    constraints: &[(MapModel, Rational)],
) -> Result<LinearSystem> {
    let degree = t.ell() - t.kappa();
    if degree < 0 {
        return Err(Error::DegreeMismatch {
            expected: "a nonnegative degree".into(),
            got: degree.to_string(),
        });
    }
    let unknowns = chern_monomials(degree as u32);
    let known = decomposable_part(t, db, Side::Target)?;
    let aut = Rational::from_integer(t.aut_order().into());
    let mut rows = Vec::new();
    for (f, count) in constraints {
        let dim = f.target_dimension() as i32;
        if t.ell() != dim || t.kappa() != f.kappa() {
            return Err(Error::NotZeroDimensional { ell: t.ell(), dim });
        }
        let coefficients = unknowns
            .iter()
            .map(|i| integrate(&SymbolicExpr::s(i.clone()), f))
            .collect::<Result<Vec<_>>>()?;
        let rhs = &aut * count - integrate(&known, f)?;
        rows.push(Row {
            coefficients,
            rhs,
            label: format!("{}={}", f.name(), count),
        });
    }
    Ok(LinearSystem { unknowns, rows })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(BTreeMap<LnIndex, Rational>),
    /// A particular solution with free unknowns set to zero, plus a kernel basis.
    Underdetermined {
        particular: BTreeMap<LnIndex, Rational>,
        kernel: Vec<BTreeMap<LnIndex, Rational>>,
    },
    /// Labels of rows contradicting the ones before them.
    Inconsistent {
        labels: Vec<String>,
    },
}

impl Solution {
    /// `sum a_I c^I` for a unique solution.
    pub fn residual(&self) -> Option<SymbolicExpr> {
        match self {
            Solution::Unique(a) => Some(to_residual(a)),
            _ => None,
        }
    }
}

pub fn to_residual(a: &BTreeMap<LnIndex, Rational>) -> SymbolicExpr {
    SymbolicExpr::from_terms(
        Side::Source,
        a.iter().map(|(i, q)| (SymMonomial::chern(i), q.clone())),
    )
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solution::Unique(a) => write!(f, "{}", to_residual(a)),
            Solution::Underdetermined { particular, kernel } => {
                write!(
                    f,
                    "underdetermined (kernel dimension {}): {}",
                    kernel.len(),
                    to_residual(particular)
                )?;
                for k in kernel {
                    write!(f, "; kernel {}", to_residual(k))?;
                }
                Ok(())
            }
            Solution::Inconsistent { labels } => {
                write!(f, "inconsistent rows: {}", labels.join(", "))
            }
        }
    }
}

/// Exact Gauss-Jordan elimination, adding rows one at a time.
pub fn solve_exact(sys: &LinearSystem) -> Solution {
    let n = sys.unknowns.len();
    // reduced rows as (pivot column, coefficients, rhs)
    let mut pivots: Vec<(usize, Vec<Rational>, Rational)> = Vec::new();
    let mut bad = Vec::new();
    for row in &sys.rows {
        let mut v = row.coefficients.clone();
        let mut rhs = row.rhs.clone();
        for (col, p, prhs) in &pivots {
            if v[*col].is_zero() {
                continue;
            }
            let factor = v[*col].clone();
            for j in 0..n {
                v[j] -= &factor * &p[j];
            }
            rhs -= &factor * prhs;
        }
        let Some(col) = v.iter().position(|q| !q.is_zero()) else {
            if !rhs.is_zero() {
                bad.push(row.label.clone());
            }
            continue;
        };
        let inv = Rational::one() / &v[col];
        for q in v.iter_mut() {
            *q *= &inv;
        }
        rhs *= &inv;
        for (_, p, prhs) in pivots.iter_mut() {
            let factor = p[col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                p[j] -= &factor * &v[j];
            }
            *prhs -= &factor * &rhs;
        }
        pivots.push((col, v, rhs));
    }
    if !bad.is_empty() {
        return Solution::Inconsistent { labels: bad };
    }
    let mut particular = BTreeMap::new();
    for (col, _, rhs) in &pivots {
        if !rhs.is_zero() {
            particular.insert(sys.unknowns[*col].clone(), rhs.clone());
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _, _)| *c).collect();
    let free: Vec<usize> = (0..n).filter(|j| !pivot_cols.contains(j)).collect();
    if free.is_empty() {
        return Solution::Unique(particular);
    }
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut k = BTreeMap::from([(sys.unknowns[fc].clone(), Rational::one())]);
            for (col, p, _) in &pivots {
                if !p[fc].is_zero() {
                    k.insert(sys.unknowns[*col].clone(), -&p[fc]);
                }
            }
            k
        })
        .collect();
    Solution::Underdetermined { particular, kernel }
}

impl LinearSystem {
    pub fn rank(&self) -> usize {
        let probe = LinearSystem {
            unknowns: self.unknowns.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| Row {
                    coefficients: r.coefficients.clone(),
                    rhs: Rational::zero(),
                    label: r.label.clone(),
                })
                .collect(),
        };
        match solve_exact(&probe) {
            Solution::Underdetermined { kernel, .. } => self.unknowns.len() - kernel.len(),
            _ => self.unknowns.len(),
        }
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let lhs = to_residual(
                &self
                    .unknowns
                    .iter()
                    .cloned()
                    .zip(row.coefficients.iter().cloned())
                    .collect(),
            );
            writeln!(
                f,
                "{lhs} = {}    [{}]",
                crate::algebra::rational::format_rational(&row.rhs),
                row.label
            )?;
        }
        Ok(())
    }
}
