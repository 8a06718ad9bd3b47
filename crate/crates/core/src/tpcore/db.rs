use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::symbolic::{Side, SymbolicExpr};
use super::types::{MultiSingType, TypeRegistry};
use crate::algebra::rational::int;
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Residual polynomials `R_η` keyed by the sorted multiset of type names and
/// `kappa`. Entries are Chern polynomials on the source side, homogeneous of
/// degree `ell(η) - kappa`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResidualDb {
    registry: TypeRegistry,
    entries: BTreeMap<(Vec<String>, i32), SymbolicExpr>,
}

const SHIPPED: &str = "\
types=[A0] kappa=1 R= 1
types=[A0,A0] kappa=1 R= -c1
types=[A0,A0,A0] kappa=1 R= 2*c1^2 + 2*c2
types=[A0,A0,A0,A0] kappa=1 R= -6*c1^3 - 18*c1*c2 - 12*c3
types=[A0,A1] kappa=1 R= -2*c1*c2 - 2*c3
types=[A1] kappa=-1 R= c1^2 - c2
types=[A1] kappa=1 R= c2
types=[A1,A1] kappa=-1 R= -7*c1^3 + 8*c1*c2 - c3
types=[A1,A1,A1] kappa=-1 R= 138*c1^4 - 158*c1^2*c2 + 2*c2^2 + 20*c1*c3 - 2*c4
";

impl ResidualDb {
    /// An empty database over the given registry.
    pub fn new(registry: TypeRegistry) -> Self {
        ResidualDb {
            registry,
            entries: BTreeMap::new(),
        }
    }

    /// The built-in entries for `kappa = 1` and `kappa = -1`.
    pub fn shipped() -> Self {
        let mut db = Self::new(TypeRegistry::shipped());
        db.load_str(SHIPPED)
            .expect("shipped residual database is well formed");
        db
    }

    pub fn registry(&self) -> &TypeRegistry {
        &self.registry
    }

    pub fn registry_mut(&mut self) -> &mut TypeRegistry {
        &mut self.registry
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries as `(sorted names, kappa, R)`.
    pub fn entries(&self) -> impl Iterator<Item = (&[String], i32, &SymbolicExpr)> {
        self.entries.iter().map(|((n, k), r)| (n.as_slice(), *k, r))
    }

    pub fn get<S: AsRef<str>>(&self, names: &[S], kappa: i32) -> Option<&SymbolicExpr> {
        self.entries.get(&(sorted(names), kappa))
    }

    /// `R_J` for the sub-tuple of `t` at `positions`.
    pub fn residual_of(&self, t: &MultiSingType, positions: &[usize]) -> Result<&SymbolicExpr> {
        let key = t.key_of(positions);
        self.entries
            .get(&(key.clone(), t.kappa()))
            .ok_or(Error::MissingResidual {
                types: key,
                kappa: t.kappa(),
            })
    }

    /// The multi-type with these entries, resolved against this registry.
    pub fn multi_type<S: AsRef<str>>(&self, names: &[S], kappa: i32) -> Result<MultiSingType> {
        MultiSingType::new(names, kappa, &self.registry)
    }

    /// Inserts `R`, checking that it is a homogeneous Chern polynomial of the
    /// right degree. Mono-types missing from the registry get `ell` inferred
    /// from the degree of `R`. Re-inserting a different polynomial fails.
    pub fn insert<S: AsRef<str>>(
        &mut self,
        names: &[S],
        kappa: i32,
        r: SymbolicExpr,
    ) -> Result<()> {
        if names.is_empty() {
            return Err(Error::Parse(
                "residual entry needs at least one type".into(),
            ));
        }
        if r.side() != Side::Source || !r.is_chern_only() {
            return Err(Error::Inconsistent(format!(
                "residual `{r}` must be a polynomial in c only"
            )));
        }
        let degrees = r.degrees(kappa);
        if degrees.len() > 1 {
            return Err(Error::DegreeMismatch {
                expected: "a homogeneous polynomial".into(),
                got: format!("degrees {degrees:?} in `{r}`"),
            });
        }
        let key = sorted(names);
        let first = &key[0];
        let unknown = key.iter().any(|n| self.registry.ell(n, kappa).is_err());
        if unknown {
            let inferable = key.iter().all(|n| n == first);
            match degrees.iter().next() {
                Some(d) if inferable && (d + kappa) % key.len() as i32 == 0 => {
                    self.registry
                        .register(first, kappa, (d + kappa) / key.len() as i32)?;
                }
                _ => {
                    return Err(Error::UnknownType {
                        name: first.clone(),
                        kappa,
                    })
                }
            }
        }
        let t = MultiSingType::new(&key, kappa, &self.registry)?;
        let expected = t.ell() - kappa;
        if let Some(d) = degrees.iter().next() {
            if *d != expected {
                return Err(Error::DegreeMismatch {
                    expected: format!("degree {expected} for {t} at kappa={kappa}"),
                    got: format!("degree {d}"),
                });
            }
        }
        match self.entries.get(&(key.clone(), kappa)) {
            Some(old) if *old != r => Err(Error::Inconsistent(format!(
                "R for [{}] at kappa={kappa} is already `{old}`, not `{r}`",
                key.join(",")
            ))),
            Some(_) => Ok(()),
            None => {
                self.entries.insert((key, kappa), r);
                Ok(())
            }
        }
    }

    /// Instantiates `R_A0`, `R_A0^2`, `R_A0^3` at a concrete `kappa >= 0`.
    pub fn ensure_multiple_point_family(&mut self, kappa: i32) -> Result<()> {
        if kappa < 0 {
            return Err(Error::UnknownType {
                name: "A0".into(),
                kappa,
            });
        }
        let c = SymbolicExpr::c;
        self.insert(&["A0"], kappa, SymbolicExpr::one(Side::Source))?;
        self.insert(&["A0"; 2], kappa, -&c(kappa))?;
        let mut r3 = c(kappa).pow(2);
        let mut weight = Rational::one();
        for i in 0..kappa {
            r3 = &r3 + &(&c(kappa - i - 1) * &c(kappa + i + 1)).scale(&weight);
            weight *= int(2);
        }
        self.insert(&["A0"; 3], kappa, r3.scale(&int(2)))
    }

    /// Adds every record of a database file. Blank lines and `#` comments are skipped.
    pub fn load_str(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (names, kappa, r) = parse_record(line).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("line {}: {m}", n + 1)),
                other => other,
            })?;
            self.insert(&names, kappa, r)?;
        }
        Ok(())
    }

    pub fn from_str_with(registry: TypeRegistry, text: &str) -> Result<Self> {
        let mut db = Self::new(registry);
        db.load_str(text)?;
        Ok(db)
    }
}

/// One line of the file format.
pub fn format_record<S: AsRef<str>>(names: &[S], kappa: i32, r: &SymbolicExpr) -> String {
    let names: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
    format!("types=[{}] kappa={kappa} R= {r}", names.join(","))
}

/// Parses `types=[A0,A1] kappa=1 R= -2*c1*c2 - 2*c3`.
pub fn parse_record(line: &str) -> Result<(Vec<String>, i32, SymbolicExpr)> {
    let bad = |what: &str| Error::Parse(format!("{what} in record `{line}`"));
    let rest = line
        .trim()
        .strip_prefix("types=[")
        .ok_or_else(|| bad("missing `types=[`"))?;
    let (names, rest) = rest
        .split_once(']')
        .ok_or_else(|| bad("unclosed type list"))?;
    let names: Vec<String> = names.split(',').map(|s| s.trim().to_string()).collect();
    if names
        .iter()
        .any(|n| n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'))
    {
        return Err(bad("invalid type name"));
    }
    let rest = rest
        .trim_start()
        .strip_prefix("kappa=")
        .ok_or_else(|| bad("missing `kappa=`"))?;
    let (kappa, rest) = rest
        .split_once(char::is_whitespace)
        .ok_or_else(|| bad("missing `R=`"))?;
    let kappa: i32 = kappa.parse().map_err(|_| bad("invalid kappa"))?;
    let poly = rest
        .trim_start()
        .strip_prefix("R=")
        .ok_or_else(|| bad("missing `R=`"))?;
    let r = SymbolicExpr::parse(Side::Source, poly.trim())?;
    Ok((names, kappa, r))
}

fn sorted<S: AsRef<str>>(names: &[S]) -> Vec<String> {
    let mut v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    v.sort();
    v
}

impl fmt::Display for ResidualDb {
    /// The file format, one record per line in key order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((names, kappa), r) in &self.entries {
            writeln!(f, "{}", format_record(names, *kappa, r))?;
        }
        Ok(())
    }
}
