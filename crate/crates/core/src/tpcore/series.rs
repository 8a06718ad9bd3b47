use std::collections::BTreeMap;

use super::db::ResidualDb;
use super::expand::expand_target;
use super::symbolic::{Side, SymbolicExpr};
use crate::algebra::rational::factorial;
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Multi-indices `alpha` over the given types, `1 <= |alpha| <= max_r`.
fn multi_indices(m: usize, max_r: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let used: u32 = prefix.iter().sum();
                (0..=max_r - used).map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out.retain(|a| a.iter().sum::<u32>() >= 1);
    out
}

fn tuple_of(names: &[&str], alpha: &[u32]) -> Vec<String> {
    names
        .iter()
        .zip(alpha)
        .flat_map(|(n, a)| std::iter::repeat_n(n.to_string(), *a as usize))
        .collect()
}

fn alpha_factorial(alpha: &[u32]) -> Rational {
    alpha.iter().map(|a| factorial(*a)).product()
}

type Series = BTreeMap<Vec<u32>, SymbolicExpr>;

fn series_mul(a: &Series, b: &Series, max_r: u32) -> Series {
    let mut out = Series::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            if k.iter().sum::<u32>() > max_r {
                continue;
            }
            let term = va * vb;
            let slot = out
                .entry(k)
                .or_insert_with(|| SymbolicExpr::zero(Side::Target));
            *slot = &*slot + &term;
        }
    }
    out
}

/// `exp(sum_alpha f_*(R_alpha) t^alpha / alpha!)` truncated at `|alpha| <= max_r`.
pub fn exponential_series(
    names: &[&str],
    kappa: i32,
    max_r: u32,
    db: &ResidualDb,
) -> Result<Series> {
    let m = names.len();
    let mut log = Series::new();
    for alpha in multi_indices(m, max_r) {
        let tuple = tuple_of(names, &alpha);
        let r = db
            .get(&tuple, kappa)
            .ok_or_else(|| Error::MissingResidual {
                types: sorted(&tuple),
                kappa,
            })?;
        let coeff = Rational::from_integer(1.into()) / alpha_factorial(&alpha);
        log.insert(alpha, r.push_chern()?.scale(&coeff));
    }
    let zero = vec![0; m];
    let mut result = Series::from([(zero.clone(), SymbolicExpr::one(Side::Target))]);
    let mut power = result.clone();
    for k in 1..=max_r {
        power = series_mul(&power, &log, max_r);
        let inv = Rational::from_integer(1.into()) / factorial(k);
        for (alpha, v) in &power {
            let slot = result
                .entry(alpha.clone())
                .or_insert_with(|| SymbolicExpr::zero(Side::Target));
            *slot = &*slot + &v.scale(&inv);
        }
    }
    result.retain(|_, v| !v.is_zero());
    Ok(result)
}

/// `n_η` predicted by the exponential formula: `alpha!` times the `t^alpha`
/// coefficient of the exponential series.
pub fn exponential_coefficient(
    names: &[&str],
    kappa: i32,
    alpha: &[u32],
    db: &ResidualDb,
) -> Result<SymbolicExpr> {
    if alpha.len() != names.len() {
        return Err(Error::Parse("one exponent per type is required".into()));
    }
    let r: u32 = alpha.iter().sum();
    let series = exponential_series(names, kappa, r, db)?;
    Ok(series
        .get(alpha)
        .map(|v| v.scale(&alpha_factorial(alpha)))
        .unwrap_or_else(|| SymbolicExpr::zero(Side::Target)))
}

/// Checks `1 + sum n_η t^η / #Aut(η) = exp(sum f_*(R_η) t^η / #Aut(η))`
/// coefficientwise for all tuples of at most `max_r` entries.
pub fn verify_generating_series(
    names: &[&str],
    kappa: i32,
    max_r: u32,
    db: &ResidualDb,
) -> Result<bool> {
    let mut distinct = names.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != names.len() {
        return Err(Error::Parse(
            "generating series types must be distinct".into(),
        ));
    }
    let series = exponential_series(names, kappa, max_r, db)?;
    for alpha in multi_indices(names.len(), max_r) {
        let t = db.multi_type(&tuple_of(names, &alpha), kappa)?;
        let lhs = expand_target(&t, db)?;
        let rhs = series
            .get(&alpha)
            .map(|v| v.scale(&alpha_factorial(&alpha)))
            .unwrap_or_else(|| SymbolicExpr::zero(Side::Target));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sorted(v: &[String]) -> Vec<String> {
    let mut v = v.to_vec();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tpcore::TypeRegistry;

    fn tgt(s: &str) -> SymbolicExpr {
        SymbolicExpr::parse(Side::Target, s).unwrap()
    }

    /// Every residual is a distinct Chern monomial, so the `f_*(R_J)` are free symbols.
    fn free_db() -> ResidualDb {
        let text = "\
types=[P] kappa=1 R= c1
types=[Q] kappa=1 R= c2
types=[P,P] kappa=1 R= c3
types=[P,Q] kappa=1 R= c4
types=[Q,Q] kappa=1 R= c5
types=[P,P,P] kappa=1 R= c1*c4
types=[P,P,Q] kappa=1 R= c6
types=[P,Q,Q] kappa=1 R= c7
types=[Q,Q,Q] kappa=1 R= c8
";
        ResidualDb::from_str_with(TypeRegistry::empty(), text).unwrap()
    }

    #[test]
    fn index_enumeration() {
        assert_eq!(multi_indices(1, 3), [vec![1], vec![2], vec![3]]);
        assert_eq!(multi_indices(2, 2).len(), 5);
    }

    #[test]
    fn free_symbols_follow_the_exponential_formula() {
        let db = free_db();
        assert!(verify_generating_series(&["P", "Q"], 1, 3, &db).unwrap());
        // P = s_1, Q = s_01, PP = s_001, PQ = s_0001, PPQ = s_000001
        let ppq = expand_target(&db.multi_type(&["P", "P", "Q"], 1).unwrap(), &db).unwrap();
        assert_eq!(
            ppq,
            tgt("s_000001 + 2*s_1*s_0001 + s_001*s_01 + s_1^2*s_01")
        );
        assert_eq!(
            exponential_coefficient(&["P", "Q"], 1, &[2, 1], &db).unwrap(),
            ppq
        );
    }

    #[test]
    fn shipped_families() {
        let mut db = ResidualDb::shipped();
        assert!(verify_generating_series(&["A0"], 1, 4, &db).unwrap());
        assert!(verify_generating_series(&["A1"], -1, 3, &db).unwrap());
        assert!(verify_generating_series(&["A1"], -1, 1, &db).unwrap());
        db.ensure_multiple_point_family(2).unwrap();
        assert!(verify_generating_series(&["A0"], 2, 3, &db).unwrap());
        assert!(matches!(
            verify_generating_series(&["A0"], 2, 4, &db),
            Err(Error::MissingResidual { .. })
        ));
    }

    #[test]
    fn middle_term_uses_the_pair_residual() {
        let db = ResidualDb::shipped();
        let p1 = db.get(&["A1"], -1).unwrap().push_chern().unwrap();
        let p2 = db.get(&["A1"; 2], -1).unwrap().push_chern().unwrap();
        let p3 = db.get(&["A1"; 3], -1).unwrap().push_chern().unwrap();
        let three = Rational::from_integer(3.into());
        let want = &(&p3 + &(&p2 * &p1).scale(&three)) + &p1.pow(3);
        assert_eq!(
            exponential_coefficient(&["A1"], -1, &[3], &db).unwrap(),
            want
        );
    }
}
