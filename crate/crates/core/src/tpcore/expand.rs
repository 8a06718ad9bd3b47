use super::db::ResidualDb;
use super::partitions::{set_partitions, SetPartition};
use super::symbolic::{Side, SymbolicExpr};
use super::types::MultiSingType;
use crate::algebra::rational::int;
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Target formula `n_η = sum over partitions of prod f_*(R_J)`, a polynomial in `s_I`.
pub fn expand_target(t: &MultiSingType, db: &ResidualDb) -> Result<SymbolicExpr> {
    let mut out = SymbolicExpr::zero(Side::Target);
    for p in set_partitions(t.len())? {
        out = &out + &target_term(t, db, &p)?;
    }
    Ok(out)
}

/// Source formula `m_η = sum R_{J_1} * prod f^* f_*(R_J)` over partitions,
/// `J_1` being the block holding the first entry.
pub fn expand_source(t: &MultiSingType, db: &ResidualDb) -> Result<SymbolicExpr> {
    let mut out = SymbolicExpr::zero(Side::Source);
    for p in set_partitions(t.len())? {
        out = &out + &source_term(t, db, &p)?;
    }
    Ok(out)
}

pub fn expand(t: &MultiSingType, db: &ResidualDb, side: Side) -> Result<SymbolicExpr> {
    match side {
        Side::Source => expand_source(t, db),
        Side::Target => expand_target(t, db),
    }
}

fn target_term(t: &MultiSingType, db: &ResidualDb, p: &SetPartition) -> Result<SymbolicExpr> {
    let mut term = SymbolicExpr::one(Side::Target);
    for block in p.blocks() {
        term = &term * &db.residual_of(t, block)?.push_chern()?;
    }
    Ok(term)
}

fn source_term(t: &MultiSingType, db: &ResidualDb, p: &SetPartition) -> Result<SymbolicExpr> {
    let mut term = db.residual_of(t, p.first_block())?.clone();
    for block in &p.blocks()[1..] {
        term = &term * &db.residual_of(t, block)?.pull_push_chern()?;
    }
    Ok(term)
}

/// The expansion of `t` without its one-block term, i.e. everything not
/// involving `R_η` itself.
pub fn decomposable_part(t: &MultiSingType, db: &ResidualDb, side: Side) -> Result<SymbolicExpr> {
    let mut out = SymbolicExpr::zero(side);
    for p in set_partitions(t.len())?.iter().filter(|p| p.len() >= 2) {
        let term = match side {
            Side::Source => source_term(t, db, p)?,
            Side::Target => target_term(t, db, p)?,
        };
        out = &out + &term;
    }
    Ok(out)
}

/// Divisor turning an ordered-tuple class into the normalized one:
/// `#Aut(η)` on the target, `#Aut(η / η_1)` on the source.
pub fn normalization(t: &MultiSingType, side: Side) -> u64 {
    match side {
        Side::Source => t.aut_order_rest(),
        Side::Target => t.aut_order(),
    }
}

pub fn normalize(expr: &SymbolicExpr, t: &MultiSingType) -> SymbolicExpr {
    expr.scale(&Rational::new(
        1.into(),
        normalization(t, expr.side()).into(),
    ))
}

pub fn denormalize(expr: &SymbolicExpr, t: &MultiSingType) -> SymbolicExpr {
    expr.scale(&int(normalization(t, expr.side()) as i64))
}

/// Degree every expansion of `t` has on the given side.
pub fn expected_degree(t: &MultiSingType, side: Side) -> i32 {
    match side {
        Side::Source => t.ell() - t.kappa(),
        Side::Target => t.ell(),
    }
}

/// Recovers `R_η` from a known (unnormalized) expansion by subtracting every
/// partition with at least two blocks; the remainder is `R_η` on the source
/// side and `f_*(R_η)` on the target side. The result is inserted into `db`.
pub fn extract_residual(
    t: &MultiSingType,
    known: &SymbolicExpr,
    side: Side,
    db: &mut ResidualDb,
) -> Result<SymbolicExpr> {
    if known.side() != side {
        return Err(Error::WrongSide {
            symbol: known.to_string(),
            side: side.as_str(),
        });
    }
    let d = expected_degree(t, side);
    if !known.is_homogeneous_of(t.kappa(), d) {
        return Err(Error::DegreeMismatch {
            expected: format!("homogeneous of degree {d}"),
            got: format!("degrees {:?}", known.degrees(t.kappa())),
        });
    }
    let rest = known - &decomposable_part(t, db, side)?;
    let r = match side {
        Side::Source if rest.is_chern_only() => rest,
        Side::Source => {
            return Err(Error::Inconsistent(format!(
                "remainder `{rest}` involves pulled-back classes"
            )))
        }
        Side::Target => rest
            .unpush()
            .map_err(|_| Error::Inconsistent(format!("remainder `{rest}` is not linear in s_I")))?,
    };
    db.insert(t.entries(), t.kappa(), r.clone())?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tpcore::TypeRegistry;

    fn src(s: &str) -> SymbolicExpr {
        SymbolicExpr::parse(Side::Source, s).unwrap()
    }

    fn tgt(s: &str) -> SymbolicExpr {
        SymbolicExpr::parse(Side::Target, s).unwrap()
    }

    fn ty(db: &ResidualDb, s: &str, kappa: i32) -> MultiSingType {
        MultiSingType::parse(s, kappa, db.registry()).unwrap()
    }

    #[test]
    fn target_expansions() {
        let db = ResidualDb::shipped();
        assert_eq!(
            expand_target(&ty(&db, "A0,A0", 1), &db).unwrap(),
            tgt("s_0^2 - s_1")
        );
        assert_eq!(
            expand_target(&ty(&db, "A0,A0,A0", 1), &db).unwrap(),
            tgt("s_0^3 - 3*s_0*s_1 + 2*s_2 + 2*s_01")
        );
        assert_eq!(
            expand_target(&ty(&db, "A1", -1), &db).unwrap(),
            tgt("s_2 - s_01")
        );
    }

    #[test]
    fn source_expansions() {
        let mut db = ResidualDb::shipped();
        assert_eq!(
            expand_source(&ty(&db, "A0,A0", 1), &db).unwrap(),
            src("fs_0 - c1")
        );
        db.ensure_multiple_point_family(3).unwrap();
        assert_eq!(
            expand_source(&ty(&db, "A0,A0", 3), &db).unwrap(),
            src("fs_0 - c3")
        );
        assert_eq!(
            expand_source(&ty(&db, "A0,A1", 1), &db).unwrap(),
            src("fs_01 - 2*c1*c2 - 2*c3")
        );
        let t = ty(&db, "A0,A0,A0", 1);
        assert_eq!(
            normalize(&expand_source(&t, &db).unwrap(), &t),
            src("1/2*fs_0^2 - 1/2*fs_1 - fs_0*c1 + c1^2 + c2")
        );
    }

    #[test]
    fn missing_entries_are_named() {
        let db = ResidualDb::shipped();
        let t = ty(&db, "A1,A1", 1);
        match expand_target(&t, &db).unwrap_err() {
            Error::MissingResidual { types, kappa } => {
                assert_eq!(types, ["A1", "A1"]);
                assert_eq!(kappa, 1);
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn extraction_round_trip() {
        let shipped = ResidualDb::shipped();
        for (names, kappa, r) in shipped.entries() {
            let t = shipped.multi_type(names, kappa).unwrap();
            for side in [Side::Source, Side::Target] {
                let known = expand(&t, &shipped, side).unwrap();
                let mut db = shipped.clone();
                assert_eq!(&extract_residual(&t, &known, side, &mut db).unwrap(), r);
            }
        }
    }

    #[test]
    fn extraction_rejects_bad_input() {
        let mut db = ResidualDb::shipped();
        let t = ty(&db, "A0,A0", 1);
        assert!(matches!(
            extract_residual(&t, &tgt("s_0^2 - s_1 + s_0"), Side::Target, &mut db),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            extract_residual(&t, &tgt("s_0^2 - s_1 + s_0*s_0"), Side::Target, &mut db),
            Err(Error::Inconsistent(_))
        ));
        assert!(matches!(
            extract_residual(&t, &tgt("s_0^2 + s_1"), Side::Target, &mut db),
            Err(Error::Inconsistent(_))
        ));
        let mut fresh = ResidualDb::new(TypeRegistry::shipped());
        let t = ty(&fresh, "A0,A0", 1);
        assert!(matches!(
            extract_residual(&t, &tgt("s_0^2 - s_1"), Side::Target, &mut fresh),
            Err(Error::MissingResidual { .. })
        ));
    }
}
