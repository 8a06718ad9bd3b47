//! Deterministic check suites reproducing known formulas and counts.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::rational::{int, ratio};
use crate::algebra::{GradedClass, Rational, Ring};
use crate::error::{Error, Result};
use crate::interp::{assemble_system, solve_exact};
use crate::maps::{shipped_models, MapModel};
use crate::oracle::{double_point_degree, random_immersive_curve, CurveParam};
use crate::tpcore::{
    count_points, evaluate, expand_source, expand_target, exponential_coefficient,
    extract_residual, normalize, thom_porteous, verify_generating_series, MultiSingType,
    ResidualDb, Side, SymbolicExpr, TypeRegistry,
};

/// Outcome of one comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl Check {
    pub fn compare<T: PartialEq + fmt::Display>(
        name: impl Into<String>,
        expected: &T,
        got: &T,
    ) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            got: got.to_string(),
            pass: expected == got,
        }
    }

    /// Compares against a computation that may fail; a failure is a failed check.
    pub fn compare_result<T: PartialEq + fmt::Display>(
        name: impl Into<String>,
        expected: &T,
        got: Result<T>,
    ) -> Self {
        match got {
            Ok(g) => Self::compare(name, expected, &g),
            Err(e) => Self::failed(name, expected.to_string(), e),
        }
    }

    pub fn failed(name: impl Into<String>, expected: String, e: Error) -> Self {
        Check {
            name: name.into(),
            expected,
            got: format!("error: {e}"),
            pass: false,
        }
    }

    fn flag(name: impl Into<String>, ok: Result<bool>) -> Self {
        Self::compare_result(name, &true, ok)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "PASS {}: {}", self.name, self.got)
        } else {
            write!(
                f,
                "FAIL {}: expected {}, got {}",
                self.name, self.expected, self.got
            )
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Table1,
    Classical,
    Series,
    Properties,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Table1,
        Suite::Classical,
        Suite::Series,
        Suite::Properties,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Classical => "classical",
            Suite::Series => "series",
            Suite::Properties => "properties",
        }
    }

    pub fn run(self) -> Vec<Check> {
        match self {
            Suite::Table1 => table1(),
            Suite::Classical => classical(),
            Suite::Series => series(),
            Suite::Properties => properties(),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown suite `{s}` (table1, classical, series, properties)"
                ))
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn src(s: &str) -> SymbolicExpr {
    SymbolicExpr::parse(Side::Source, s).expect("well-formed source polynomial")
}

fn tgt(s: &str) -> SymbolicExpr {
    SymbolicExpr::parse(Side::Target, s).expect("well-formed target polynomial")
}

fn model(s: &str) -> MapModel {
    MapModel::from_description(s).expect("built-in model")
}

/// `(types, denominator, polynomial)` for the codimension-one sample table.
pub const TABLE1: [(&str, i64, &str); 6] = [
    ("A0,A0", 1, "fs_0 - c1"),
    ("A1", 1, "c2"),
    ("A0,A0,A0", 2, "fs_0^2 - fs_1 - 2*fs_0*c1 + 2*c1^2 + 2*c2"),
    ("A0,A1", 1, "fs_01 - 2*c1*c2 - 2*c3"),
    ("A1,A0", 1, "fs_0*c2 - 2*c1*c2 - 2*c3"),
    (
        "A0,A0,A0,A0",
        6,
        "fs_0^3 - 3*fs_0*fs_1 + 2*fs_2 + 2*fs_01 - 3*fs_0^2*c1 + 3*fs_1*c1 + 6*fs_0*c1^2 + 6*fs_0*c2 - 6*c1^3 - 18*c1*c2 - 12*c3",
    ),
];

/// The shipped database with one entry removed.
pub fn db_without(names: &[String], kappa: i32) -> ResidualDb {
    let mut db = ResidualDb::new(TypeRegistry::shipped());
    let key = {
        let mut k = names.to_vec();
        k.sort();
        k
    };
    for (n, k, r) in ResidualDb::shipped().entries() {
        if !(k == kappa && n == key.as_slice()) {
            db.insert(n, k, r.clone()).expect("shipped entry");
        }
    }
    db
}

fn table1_row(types: &str, denominator: i64, poly: &str) -> Check {
    let name = format!("table1/{}", types.replace(',', ""));
    let expected = src(poly).scale(&ratio(1, denominator));
    let shipped = ResidualDb::shipped();
    let run = || -> Result<SymbolicExpr> {
        let t = MultiSingType::parse(types, 1, shipped.registry())?;
        if !matches!(types, "A1,A0" | "A0,A0,A0,A0") {
            return Ok(normalize(&expand_source(&t, &shipped)?, &t));
        }
        // recover R from the row itself, then re-expand
        let mut db = db_without(t.entries(), 1);
        let raw = expected.scale(&int(t.aut_order_rest() as i64));
        let r = extract_residual(&t, &raw, Side::Source, &mut db)?;
        let want = shipped.get(t.entries(), 1).expect("shipped entry");
        if &r != want {
            return Err(Error::Inconsistent(format!(
                "extracted R = {r}, shipped R = {want}"
            )));
        }
        Ok(normalize(&expand_source(&t, &db)?, &t))
    };
    Check::compare_result(name, &expected, run())
}

pub fn table1() -> Vec<Check> {
    TABLE1
        .iter()
        .map(|(t, d, p)| table1_row(t, *d, p))
        .collect()
}

fn count(f: &MapModel, types: &str, kappa: i32) -> Result<Rational> {
    let db = ResidualDb::shipped();
    count_points(f, &MultiSingType::parse(types, kappa, db.registry())?, &db)
}

pub fn salmon(d: i64) -> Rational {
    let p = d.pow(7) - 4 * d.pow(6) + 7 * d.pow(5) - 45 * d.pow(4) + 114 * d.pow(3) - 111 * d * d
        + 548 * d
        - 960;
    ratio(d * (d - 2) * p, 6)
}

pub fn roberts(d: i64) -> Rational {
    let p =
        9 * d.pow(6) - 54 * d.pow(5) + 9 * d.pow(4) + 423 * d.pow(3) - 458 * d * d - 829 * d + 1050;
    ratio(p, 2)
}

/// `∫_X c_2(f)`, the number of pinch points of a surface in 3-space.
pub fn pinch_points(f: &MapModel) -> Result<Rational> {
    f.source().integrate_on(&evaluate(&src("c2"), f)?)
}

/// Degree of the image double curve, `(1/2) ∫_Y n_{A0^2} H`.
pub fn double_curve_degree(f: &MapModel) -> Result<Rational> {
    let n = evaluate(&tgt("s_0^2 - s_1"), f)?;
    let h = GradedClass::generator(f.target_ring(), crate::maps::TARGET_GENERATOR)?;
    Ok(f.integrate_target(&n.multiply(&h)?)? / int(2))
}

fn q(n: i64) -> Rational {
    int(n)
}

pub fn classical() -> Vec<Check> {
    let mut out = Vec::new();
    let steiner = model("veronese-p3");
    let scroll = model("scroll-q-p3");
    out.push(Check::compare_result(
        "steiner/pinch-points",
        &q(6),
        pinch_points(&steiner),
    ));
    out.push(Check::compare_result(
        "steiner/double-curve-degree",
        &q(3),
        double_curve_degree(&steiner),
    ));
    out.push(Check::compare_result(
        "steiner/triple-points",
        &q(1),
        count(&steiner, "A0,A0,A0", 1),
    ));
    out.push(Check::compare_result(
        "scroll/pinch-points",
        &q(4),
        pinch_points(&scroll),
    ));
    out.push(Check::compare_result(
        "scroll/triple-points",
        &q(0),
        count(&scroll, "A0,A0,A0", 1),
    ));
    for d in 3..=6 {
        let f = MapModel::from_description(&format!("dual-surface:{d}"));
        let got = f.and_then(|f| count(&f, "A1,A1,A1", -1));
        out.push(Check::compare_result(
            format!("salmon/d={d}"),
            &salmon(d),
            got,
        ));
    }
    for d in 4..=8 {
        let f = MapModel::from_description(&format!("web3:{d}"));
        let got = f.and_then(|f| count(&f, "A1,A1,A1", -1));
        out.push(Check::compare_result(
            format!("roberts/d={d}"),
            &roberts(d),
            got,
        ));
    }
    for d in 2..=8i64 {
        let name = format!("discriminant/d={d}");
        match MapModel::from_description(&format!("pencil:{d}")) {
            Ok(f) => out.push(Check::compare_result(
                name,
                &discriminant_class(f.target_ring(), d),
                evaluate(&tgt("s_2 - s_01"), &f),
            )),
            Err(e) => out.push(Check::failed(
                name,
                format!("{}*H", 3 * (d - 1) * (d - 1)),
                e,
            )),
        }
    }
    out.extend(interpolation_checks());
    out.extend(oracle_checks(25, 20261016));
    out
}

fn discriminant_class(ring: &Ring, d: i64) -> GradedClass {
    GradedClass::parse(ring, &format!("{}*H", 3 * (d - 1) * (d - 1))).expect("discriminant class")
}

/// Types, `(model, count)` constraints and the expected residual.
type InterpCase = (&'static str, &'static [(&'static str, i64)], &'static str);

/// Residuals recovered from counts on model maps with the entry itself withheld.
pub fn interpolation_checks() -> Vec<Check> {
    let cases: [InterpCase; 2] = [
        ("A0,A0", &[("ratcurve:4", 3)], "-c1"),
        (
            "A0,A0,A0",
            &[("veronese-p3", 1), ("scroll-q-p3", 0)],
            "2*c1^2 + 2*c2",
        ),
    ];
    cases
        .iter()
        .map(|(types, constraints, want)| {
            let run = || -> Result<SymbolicExpr> {
                let reg = TypeRegistry::shipped();
                let t = MultiSingType::parse(types, 1, &reg)?;
                let db = db_without(t.entries(), 1);
                let cons = constraints
                    .iter()
                    .map(|(m, c)| Ok((MapModel::from_description(m)?, int(*c))))
                    .collect::<Result<Vec<_>>>()?;
                let sol = solve_exact(&assemble_system(&t, &db, &cons)?);
                sol.residual()
                    .ok_or_else(|| Error::Inconsistent(sol.to_string()))
            };
            Check::compare_result(
                format!("interp/{}", types.replace(',', "")),
                &src(want),
                run(),
            )
        })
        .collect()
}

/// Cuspidal cubic plus `trials` random immersive curves of degrees 3 to 6.
pub fn oracle_checks(trials: usize, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let cusp = CurveParam::parse("t^2, t^3").expect("cuspidal cubic");
    out.push(Check::compare_result(
        "oracle/cuspidal-cubic",
        &2u32,
        double_point_degree(&cusp),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..trials {
        let d = 3 + i % 4;
        let c = random_immersive_curve(d, &mut rng);
        let expected = ((d - 1) * (d - 2)) as u32;
        out.push(Check::compare_result(
            format!("oracle/random-{i}/d={d}"),
            &expected,
            double_point_degree(&c),
        ));
    }
    out
}

pub fn series() -> Vec<Check> {
    let db = ResidualDb::shipped();
    let mut out = vec![
        Check::flag(
            "series/A0/kappa=1/r<=4",
            verify_generating_series(&["A0"], 1, 4, &db),
        ),
        Check::flag(
            "series/A1/kappa=-1/r<=3",
            verify_generating_series(&["A1"], -1, 3, &db),
        ),
        Check::flag(
            "series/A1/kappa=-1/r<=1",
            verify_generating_series(&["A1"], -1, 1, &db),
        ),
    ];
    let n1 = tgt("s_2 - s_01");
    let p2 = tgt("-7*s_3 + 8*s_11 - s_001");
    let p3 = tgt("138*s_4 - 158*s_21 + 2*s_02 + 20*s_101 - 2*s_0001");
    let n2 = &p2 + &n1.pow(2);
    let n3 = &(&p3 + &(&n1 * &p2).scale(&int(3))) + &n1.pow(3);
    let reg = db.registry();
    let expand =
        |types: &str| MultiSingType::parse(types, -1, reg).and_then(|t| expand_target(&t, &db));
    out.push(Check::compare_result("series/A1/n1", &n1, expand("A1")));
    out.push(Check::compare_result("series/A1/n2", &n2, expand("A1,A1")));
    out.push(Check::compare_result(
        "series/A1/n3",
        &n3,
        expand("A1,A1,A1"),
    ));
    out.push(Check::compare_result(
        "series/A1/t^3-coefficient",
        &n3,
        exponential_coefficient(&["A1"], -1, &[3], &db),
    ));
    let reg = db.registry();
    let expand1 =
        |types: &str| MultiSingType::parse(types, 1, reg).and_then(|t| expand_target(&t, &db));
    out.push(Check::compare_result(
        "target/A0A0",
        &tgt("s_0^2 - s_1"),
        expand1("A0,A0"),
    ));
    out.push(Check::compare_result(
        "target/A0A0A0",
        &tgt("s_0^3 - 3*s_0*s_1 + 2*s_2 + 2*s_01"),
        expand1("A0,A0,A0"),
    ));
    out
}

/// Every multi-type in the shipped database, plus the `A0` family at `kappa = 2, 3`.
pub fn database_types() -> (ResidualDb, Vec<MultiSingType>) {
    let mut db = ResidualDb::shipped();
    for k in [2, 3] {
        db.ensure_multiple_point_family(k).expect("family");
    }
    let types = db
        .entries()
        .map(|(n, k, _)| MultiSingType::new(n, k, db.registry()).expect("registered"))
        .collect();
    (db, types)
}

pub fn projection_formula_checks(pairs: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shipped_models()
        .iter()
        .map(|f| {
            let mut run = || -> Result<bool> {
                for _ in 0..pairs {
                    let a = random_class(f.source().ambient(), &mut rng);
                    let b = random_class(f.target_ring(), &mut rng);
                    let lhs = f.pushforward(&a.multiply(&f.pullback(&b)?)?)?;
                    let rhs = f.pushforward(&a)?.multiply(&b)?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            Check::flag(format!("projection-formula/{}", f.name()), run())
        })
        .collect()
}

pub fn random_class<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> GradedClass {
    let terms = ring
        .basis()
        .into_iter()
        .map(|m| (m, int(rng.random_range(-3..=3))));
    GradedClass::from_terms(ring, terms).expect("basis monomials are normal")
}

pub fn homogeneity_checks() -> Vec<Check> {
    let (db, types) = database_types();
    types
        .iter()
        .map(|t| {
            let run = || -> Result<bool> {
                let n = expand_target(t, &db)?;
                let m = expand_source(t, &db)?;
                Ok(n.is_homogeneous_of(t.kappa(), t.ell())
                    && m.is_homogeneous_of(t.kappa(), t.ell() - t.kappa()))
            };
            Check::flag(format!("homogeneity/{}/kappa={}", t, t.kappa()), run())
        })
        .collect()
}

pub fn pushforward_identity_checks() -> Vec<Check> {
    let (db, types) = database_types();
    types
        .iter()
        .map(|t| {
            let got = expand_source(t, &db).and_then(|m| m.formal_pushforward());
            let want = expand_target(t, &db);
            let name = format!("pushforward/{}/kappa={}", t, t.kappa());
            match want {
                Ok(w) => Check::compare_result(name, &w, got),
                Err(e) => Check::failed(name, "target expansion".into(), e),
            }
        })
        .collect()
}

/// Extraction from permuted tuples, on both sides, always gives the stored residual.
pub fn order_independence_checks(perms: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (shipped, types) = database_types();
    types
        .iter()
        .map(|t| {
            let want = shipped.get(t.entries(), t.kappa()).expect("entry").clone();
            let mut run = || -> Result<SymbolicExpr> {
                for _ in 0..perms {
                    let mut order: Vec<usize> = (0..t.len()).collect();
                    order.shuffle(&mut rng);
                    let p = t.permuted(&order);
                    for side in [Side::Source, Side::Target] {
                        let known = crate::tpcore::expand(&p, &shipped, side)?;
                        let mut db = ResidualDb::new(shipped.registry().clone());
                        for (n, k, r) in shipped.entries() {
                            if !(k == t.kappa() && n == t.key().as_slice()) {
                                db.insert(n, k, r.clone())?;
                            }
                        }
                        let r = extract_residual(&p, &known, side, &mut db)?;
                        if r != want {
                            return Ok(r);
                        }
                    }
                }
                Ok(want.clone())
            };
            Check::compare_result(
                format!("order-independence/{}/kappa={}", t, t.kappa()),
                &want,
                run(),
            )
        })
        .collect()
}

pub fn porteous_checks() -> Vec<Check> {
    [(1, 1, "c2"), (0, 1, "c1"), (-1, 2, "c1^2 - c2")]
        .iter()
        .map(|(kappa, k, want)| {
            Check::compare(
                format!("porteous/kappa={kappa}/k={k}"),
                &src(want),
                &thom_porteous(*kappa, *k),
            )
        })
        .collect()
}

/// The partition expansion of `m_{A0^3}` against the nested triple-point formula
/// `f^*f_*(m_{A0^2}) - 2 c_k f^*f_*(1) + R_{A0^3}`, evaluated directly on each map.
pub fn two_route_checks() -> Vec<Check> {
    let db = ResidualDb::shipped();
    shipped_models()
        .iter()
        .filter(|f| f.kappa() == 1)
        .map(|f| {
            let run = || -> Result<bool> {
                let t = MultiSingType::parse("A0,A0,A0", 1, db.registry())?;
                let lhs = evaluate(&expand_source(&t, &db)?, f)?;
                let one = GradedClass::one(f.source().ambient());
                let ck = f.chern(1);
                let pp1 = f.pullback(&f.pushforward(&one)?)?;
                let m2 = pp1.try_sub(&ck)?;
                let r3 = evaluate(db.get(&["A0"; 3], 1).expect("shipped"), f)?;
                let rhs = f
                    .pullback(&f.pushforward(&m2)?)?
                    .try_sub(&ck.multiply(&pp1)?.scale(&int(2)))?
                    .try_add(&r3)?;
                Ok(lhs == rhs)
            };
            Check::flag(format!("two-route/{}", f.name()), run())
        })
        .collect()
}

pub fn properties() -> Vec<Check> {
    let mut out = projection_formula_checks(100, 11);
    out.extend(homogeneity_checks());
    out.extend(pushforward_identity_checks());
    out.extend(order_independence_checks(10, 12));
    out.extend(porteous_checks());
    out.extend(two_route_checks());
    out
}
