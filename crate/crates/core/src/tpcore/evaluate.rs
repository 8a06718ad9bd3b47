use std::collections::BTreeMap;

use super::db::ResidualDb;
use super::expand::{expand_source, expand_target};
use super::symbolic::{Side, Symbol, SymbolicExpr};
use super::types::MultiSingType;
use crate::algebra::{GradedClass, Rational};
use crate::error::{Error, Result};
use crate::maps::MapModel;

/// Substitutes `c_j = c_j(f)`, `σ_I = f^* s_I(f)` and `s_I = s_I(f)`.
///
/// Source expressions land in the ambient ring of the source (a representative
/// of the class on `X`), target expressions in the target ring.
pub fn evaluate(expr: &SymbolicExpr, f: &MapModel) -> Result<GradedClass> {
    let ring = match expr.side() {
        Side::Source => f.source().ambient().clone(),
        Side::Target => f.target_ring().clone(),
    };
    let mut images: BTreeMap<&Symbol, GradedClass> = BTreeMap::new();
    let mut out = GradedClass::zero(&ring);
    for (m, q) in expr.terms() {
        let mut term = GradedClass::constant(&ring, q.clone());
        for (s, e) in m.factors() {
            if !images.contains_key(s) {
                let image = match s {
                    Symbol::C(j) => f.chern(*j),
                    Symbol::S(i) => f.landweber_novikov(i),
                    Symbol::Sigma(i) => f.pullback(&f.landweber_novikov(i))?,
                };
                images.insert(s, image);
            }
            term = term.multiply(&images[s].pow(e))?;
            if term.is_zero() {
                break;
            }
        }
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// `∫_Y` of a target expression, or `∫_X` of a source expression.
pub fn integrate(expr: &SymbolicExpr, f: &MapModel) -> Result<Rational> {
    let class = evaluate(expr, f)?;
    match expr.side() {
        Side::Source => f.source().integrate_on(&class),
        Side::Target => f.integrate_target(&class),
    }
}

fn check_zero_dimensional(f: &MapModel, t: &MultiSingType) -> Result<()> {
    let dim = f.target_dimension() as i32;
    if t.ell() != dim || t.kappa() != f.kappa() {
        return Err(Error::NotZeroDimensional { ell: t.ell(), dim });
    }
    Ok(())
}

/// Number of `η`-points in the target: `(1/#Aut(η)) ∫_Y n_η(f)`.
pub fn count_points(f: &MapModel, t: &MultiSingType, db: &ResidualDb) -> Result<Rational> {
    check_zero_dimensional(f, t)?;
    let total = integrate(&expand_target(t, db)?, f)?;
    Ok(total / Rational::from_integer(t.aut_order().into()))
}

/// The same count computed on the source: `(1/#Aut(η)) ∫_X m_η(f)`.
pub fn count_points_source(f: &MapModel, t: &MultiSingType, db: &ResidualDb) -> Result<Rational> {
    check_zero_dimensional(f, t)?;
    let total = integrate(&expand_source(t, db)?, f)?;
    Ok(total / Rational::from_integer(t.aut_order().into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn model(s: &str) -> MapModel {
        MapModel::from_description(s).unwrap()
    }

    fn src(s: &str) -> SymbolicExpr {
        SymbolicExpr::parse(Side::Source, s).unwrap()
    }

    fn tgt(s: &str) -> SymbolicExpr {
        SymbolicExpr::parse(Side::Target, s).unwrap()
    }

    #[test]
    fn roman_surface() {
        let f = model("veronese-p3");
        let x = f.source().ambient().clone();
        assert_eq!(
            evaluate(&src("c2"), &f).unwrap(),
            GradedClass::parse(&x, "6*h^2").unwrap()
        );
        assert_eq!(
            evaluate(&src("fs_0 - c1"), &f).unwrap(),
            GradedClass::parse(&x, "3*h").unwrap()
        );
        let double = evaluate(&tgt("s_0^2 - s_1"), &f).unwrap();
        assert_eq!(
            double,
            GradedClass::parse(f.target_ring(), "6*H^2").unwrap()
        );
        let db = ResidualDb::shipped();
        let t = db.multi_type(&["A0"; 3], 1).unwrap();
        assert_eq!(count_points(&f, &t, &db).unwrap(), int(1));
        assert_eq!(count_points_source(&f, &t, &db).unwrap(), int(1));
    }

    #[test]
    fn discriminant_of_pencils() {
        for d in 2..=8i64 {
            let f = model(&format!("pencil:{d}"));
            let got = evaluate(&tgt("s_2 - s_01"), &f).unwrap();
            let want = GradedClass::parse(f.target_ring(), &format!("{}*H", 3 * (d - 1) * (d - 1)))
                .unwrap();
            assert_eq!(got, want, "d={d}");
        }
    }

    #[test]
    fn counts_need_top_degree() {
        let db = ResidualDb::shipped();
        let f = model("veronese-p3");
        let t = db.multi_type(&["A0"; 2], 1).unwrap();
        assert!(matches!(
            count_points(&f, &t, &db),
            Err(Error::NotZeroDimensional { ell: 2, dim: 3 })
        ));
        let t = db.multi_type(&["A1"], -1).unwrap();
        assert!(count_points(&f, &t, &db).is_err());
    }

    #[test]
    fn tritangent_planes_of_the_cubic() {
        let db = ResidualDb::shipped();
        let t = db.multi_type(&["A1"; 3], -1).unwrap();
        assert_eq!(
            count_points(&model("dual-surface:3"), &t, &db).unwrap(),
            int(45)
        );
    }
}
