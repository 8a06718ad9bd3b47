use std::fs;

use serde_json::{json, Value};
use tpcalc_core::algebra::rational::format_rational;
use tpcalc_core::interp::{assemble_system, solve_exact, to_residual, Solution};
use tpcalc_core::oracle::{double_point_degree, engine_double_point_degree, CurveParam};
use tpcalc_core::tpcore::{
    count_points, denormalize, evaluate, expand, extract_residual, format_record, normalize,
    thom_porteous, TypeRegistry,
};
use tpcalc_core::verify::{Check, Suite};
use tpcalc_core::{Error, MapModel, MultiSingType, Rational, ResidualDb, Result, Side};

use crate::report::Report;
use crate::{Cli, Command};

/// The shipped database, with entries from `--db` taking precedence.
fn load_db(cli: &Cli) -> Result<ResidualDb> {
    let shipped = ResidualDb::shipped();
    let Some(path) = &cli.db else {
        return Ok(shipped);
    };
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let mut db = ResidualDb::new(TypeRegistry::shipped());
    db.load_str(&text)?;
    for (names, kappa, r) in shipped.entries() {
        if db.get(names, kappa).is_none() {
            db.insert(names, kappa, r.clone())?;
        }
    }
    Ok(db)
}

/// Adds the multiple-point residuals at `kappa` where they are missing.
fn with_family(mut db: ResidualDb, kappa: i32) -> Result<ResidualDb> {
    if kappa < 0 {
        return Ok(db);
    }
    let mut family = ResidualDb::new(TypeRegistry::empty());
    family.ensure_multiple_point_family(kappa)?;
    for (names, k, r) in family.entries() {
        if db.get(names, k).is_none() {
            db.insert(names, k, r.clone())?;
        }
    }
    Ok(db)
}

fn multi_type(db: &ResidualDb, types: &str, kappa: i32) -> Result<MultiSingType> {
    MultiSingType::parse(types, kappa, db.registry())
}

fn side(s: &str) -> Result<Side> {
    s.parse()
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Expand {
            types,
            kappa,
            side: s,
            normalized,
        } => {
            let db = with_family(load_db(cli)?, *kappa)?;
            let t = multi_type(&db, types, *kappa)?;
            let side = side(s)?;
            let mut e = expand(&t, &db, side)?;
            if *normalized {
                e = normalize(&e, &t);
            }
            let mut r = Report::new("expand")
                .input("type", types.as_str())
                .input("kappa", *kappa)
                .input("side", side.as_str())
                .input("normalized", *normalized);
            r.result = json!({ "polynomial": e.to_string(), "degree": e.degrees(*kappa).into_iter().collect::<Vec<_>>() });
            r.line(e.to_string());
            Ok(r)
        }
        Command::Eval {
            model,
            poly,
            side: s,
        } => {
            let f = MapModel::from_description(model)?;
            let side = match s {
                Some(s) => side(s)?,
                None if mentions_source_symbols(poly) => Side::Source,
                None => Side::Target,
            };
            let e = tpcalc_core::SymbolicExpr::parse(side, poly)?;
            let class = evaluate(&e, &f)?;
            let integral = match side {
                Side::Source => f.source().integrate_on(&class)?,
                Side::Target => f.integrate_target(&class)?,
            };
            let mut r = Report::new("eval")
                .input("model", f.name())
                .input("poly", poly.as_str())
                .input("side", side.as_str());
            r.result =
                json!({ "class": class.to_string(), "integral": format_rational(&integral) });
            r.line(class.to_string());
            r.line(format!("integral: {}", format_rational(&integral)));
            Ok(r)
        }
        Command::Count {
            model,
            types,
            kappa,
        } => {
            let f = MapModel::from_description(model)?;
            let kappa = kappa.unwrap_or(f.kappa());
            let db = with_family(load_db(cli)?, kappa)?;
            let t = multi_type(&db, types, kappa)?;
            let n = count_points(&f, &t, &db)?;
            let mut r = Report::new("count")
                .input("model", f.name())
                .input("type", types.as_str())
                .input("kappa", kappa);
            r.result = json!({ "count": format_rational(&n) });
            r.line(format_rational(&n));
            Ok(r)
        }
        Command::Porteous { kappa, k } => {
            let e = thom_porteous(*kappa, *k);
            let mut r = Report::new("porteous")
                .input("kappa", *kappa)
                .input("k", *k);
            r.result = json!({ "polynomial": e.to_string() });
            r.line(e.to_string());
            Ok(r)
        }
        Command::Extract {
            types,
            kappa,
            side: s,
            poly,
            normalized,
        } => {
            let mut db = with_family(load_db(cli)?, *kappa)?;
            let t = multi_type(&db, types, *kappa)?;
            let side = side(s)?;
            let mut known = tpcalc_core::SymbolicExpr::parse(side, poly)?;
            if *normalized {
                known = denormalize(&known, &t);
            }
            let r_poly = extract_residual(&t, &known, side, &mut db)?;
            let record = format_record(&t.key(), *kappa, &r_poly);
            let mut r = Report::new("extract")
                .input("type", types.as_str())
                .input("kappa", *kappa)
                .input("side", side.as_str())
                .input("poly", poly.as_str())
                .input("normalized", *normalized);
            r.result = json!({ "residual": r_poly.to_string(), "record": record });
            r.line(record);
            Ok(r)
        }
        Command::Interp {
            types,
            kappa,
            constraints,
        } => interp(cli, types, *kappa, constraints),
        Command::Oracle { curve } => {
            let c = CurveParam::parse(curve)?;
            let d = c.degree() as u32;
            let delta = double_point_degree(&c)?;
            let engine = engine_double_point_degree(d)?;
            let mut r = Report::new("oracle").input("curve", curve.as_str());
            r.result = json!({ "degree": d, "resultant_degree": delta, "engine": format_rational(&engine) });
            r.line(format!("curve degree: {d}"));
            r.line(format!("resultant degree (2 delta): {delta}"));
            r.line(format!(
                "engine m_A0^2 degree: {}",
                format_rational(&engine)
            ));
            r.check(&Check::compare(
                "oracle/double-points",
                &engine,
                &Rational::from_integer(delta.into()),
            ));
            Ok(r)
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut r = Report::new("verify").input("suite", suite.as_str());
            let mut summary = serde_json::Map::new();
            for s in suites {
                let checks = s.run();
                let passed = checks.iter().filter(|c| c.pass).count();
                summary.insert(
                    s.as_str().into(),
                    json!({ "passed": passed, "total": checks.len() }),
                );
                for c in &checks {
                    r.check(c);
                }
            }
            r.result = Value::Object(summary);
            Ok(r)
        }
    }
}

fn mentions_source_symbols(poly: &str) -> bool {
    poly.contains("fs_")
        || poly
            .split(|c: char| !c.is_ascii_alphanumeric())
            .any(|w| w.starts_with('c'))
}

fn interp(cli: &Cli, types: &str, kappa: i32, constraints: &[String]) -> Result<Report> {
    let db = with_family(load_db(cli)?, kappa)?;
    let t = multi_type(&db, types, kappa)?;
    let mut pairs = Vec::new();
    for c in constraints {
        let (m, n) = c
            .rsplit_once('=')
            .ok_or_else(|| Error::Parse(format!("constraint `{c}` must look like model=count")))?;
        let count = tpcalc_core::algebra::rational::parse_rational(n.trim())?;
        pairs.push((MapModel::from_description(m.trim())?, count));
    }
    // solve with the entry itself withheld
    let mut without = ResidualDb::new(db.registry().clone());
    for (names, k, r) in db.entries() {
        if !(k == kappa && names == t.key().as_slice()) {
            without.insert(names, k, r.clone())?;
        }
    }
    let sys = assemble_system(&t, &without, &pairs)?;
    let sol = solve_exact(&sys);
    let mut r = Report::new("interp")
        .input("type", types)
        .input("kappa", kappa)
        .input("constraints", constraints.to_vec());
    let unknowns: Vec<String> = sys
        .unknowns
        .iter()
        .map(|i| tpcalc_core::tpcore::SymMonomial::chern(i).to_string())
        .collect();
    let rank = sys.rank();
    for line in sys.to_string().lines() {
        r.line(format!("# {line}"));
    }
    r.line(format!("# rank {rank} of {}", unknowns.len()));
    match &sol {
        Solution::Unique(a) => {
            let poly = to_residual(a);
            let record = format_record(&t.key(), kappa, &poly);
            r.result = json!({ "status": "unique", "rank": rank, "unknowns": unknowns, "residual": poly.to_string(), "record": record });
            r.line(record);
        }
        Solution::Underdetermined { particular, kernel } => {
            let kernel: Vec<String> = kernel.iter().map(|k| to_residual(k).to_string()).collect();
            r.result = json!({
                "status": "underdetermined",
                "rank": rank,
                "unknowns": unknowns,
                "particular": to_residual(particular).to_string(),
                "kernel": kernel,
            });
            r.line(sol.to_string());
        }
        Solution::Inconsistent { labels } => {
            r.result = json!({ "status": "inconsistent", "rank": rank, "unknowns": unknowns, "rows": labels });
            r.line(sol.to_string());
            r.check(&Check {
                name: "interp/consistency".into(),
                expected: "a consistent system".into(),
                got: format!("violated rows: {}", labels.join(", ")),
                pass: false,
            });
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn side_inference() {
        assert!(mentions_source_symbols("fs_0 - c1"));
        assert!(mentions_source_symbols("c2"));
        assert!(!mentions_source_symbols("s_2 - s_01"));
        assert!(!mentions_source_symbols("3*s_0^2"));
    }

    #[test]
    fn family_fills_gaps_only() {
        let db = with_family(ResidualDb::shipped(), 2).unwrap();
        assert_eq!(db.get(&["A0", "A0"], 2).unwrap().to_string(), "-c2");
        assert_eq!(db.len(), ResidualDb::shipped().len() + 3);
        let same = with_family(ResidualDb::shipped(), -1).unwrap();
        assert_eq!(same, ResidualDb::shipped());
    }
}
