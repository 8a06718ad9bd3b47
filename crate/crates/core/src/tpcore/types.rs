use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A mono-singularity type with its target codimension `ell`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SingType {
    pub name: String,
    pub kappa: i32,
    pub ell: i32,
}

/// Target codimensions `ell(eta, kappa)` of known mono-singularity types.
///
/// `A0` is built in for every `kappa >= 0` with `ell = kappa`; `A1` is
/// registered for `kappa = 1` (`ell = 3`) and `kappa = -1` (`ell = 1`).
/// Other types need an explicit entry.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypeRegistry {
    entries: BTreeMap<(String, i32), i32>,
}

impl TypeRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn shipped() -> Self {
        let mut r = Self::empty();
        r.entries.insert(("A1".into(), 1), 3);
        r.entries.insert(("A1".into(), -1), 1);
        r
    }

    pub fn ell(&self, name: &str, kappa: i32) -> Result<i32> {
        if let Some(l) = self.entries.get(&(name.to_string(), kappa)) {
            return Ok(*l);
        }
        if name == "A0" && kappa >= 0 {
            return Ok(kappa);
        }
        Err(Error::UnknownType {
            name: name.into(),
            kappa,
        })
    }

    pub fn get(&self, name: &str, kappa: i32) -> Result<SingType> {
        Ok(SingType {
            name: name.into(),
            kappa,
            ell: self.ell(name, kappa)?,
        })
    }

    /// Adds an entry; re-registering with a different `ell` is an error.
    pub fn register(&mut self, name: &str, kappa: i32, ell: i32) -> Result<()> {
        match self.ell(name, kappa) {
            Ok(old) if old != ell => Err(Error::Inconsistent(format!(
                "ell({name}, kappa={kappa}) already {old}, not {ell}"
            ))),
            Ok(_) => Ok(()),
            Err(_) => {
                self.entries.insert((name.into(), kappa), ell);
                Ok(())
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = SingType> + '_ {
        self.entries.iter().map(|((n, k), l)| SingType {
            name: n.clone(),
            kappa: *k,
            ell: *l,
        })
    }
}

/// An ordered tuple of mono-singularity types at a common codimension `kappa`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiSingType {
    entries: Vec<String>,
    kappa: i32,
    ells: Vec<i32>,
}

impl MultiSingType {
    pub fn new<S: AsRef<str>>(entries: &[S], kappa: i32, registry: &TypeRegistry) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Parse("empty multi-singularity type".into()));
        }
        let entries: Vec<String> = entries.iter().map(|s| s.as_ref().to_string()).collect();
        let ells = entries
            .iter()
            .map(|n| registry.ell(n, kappa))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiSingType {
            entries,
            kappa,
            ells,
        })
    }

    /// Parses a comma list such as `A0,A1,A0`.
    pub fn parse(src: &str, kappa: i32, registry: &TypeRegistry) -> Result<Self> {
        let names: Vec<&str> = src.split(',').map(str::trim).collect();
        if names
            .iter()
            .any(|n| n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'))
        {
            return Err(Error::Parse(format!("invalid type list `{src}`")));
        }
        Self::new(&names, kappa, registry)
    }

    pub fn entries(&self) -> &[String] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    /// `ell` of the tuple: the sum over entries.
    pub fn ell(&self) -> i32 {
        self.ells.iter().sum()
    }

    /// `ell` of the sub-tuple at the given positions.
    pub fn ell_of(&self, positions: &[usize]) -> i32 {
        positions.iter().map(|i| self.ells[*i]).sum()
    }

    /// Sorted names at the given positions; the order-independent residual key.
    pub fn key_of(&self, positions: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = positions.iter().map(|i| self.entries[*i].clone()).collect();
        v.sort();
        v
    }

    pub fn key(&self) -> Vec<String> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.key_of(&all)
    }

    /// Order of the permutation group preserving the tuple: `prod (multiplicity)!`.
    pub fn aut_order(&self) -> u64 {
        multiplicity_factorial(&self.entries)
    }

    /// Same, over the entries after the first.
    pub fn aut_order_rest(&self) -> u64 {
        multiplicity_factorial(&self.entries[1..])
    }

    /// The tuple with entries permuted: `out[i] = self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        MultiSingType {
            entries: perm.iter().map(|i| self.entries[*i].clone()).collect(),
            kappa: self.kappa,
            ells: perm.iter().map(|i| self.ells[*i]).collect(),
        }
    }
}

fn multiplicity_factorial(names: &[String]) -> u64 {
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for n in names {
        *counts.entry(n).or_default() += 1;
    }
    counts.values().map(|m| (1..=*m).product::<u64>()).product()
}

impl fmt::Display for MultiSingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries.join(","))
    }
}
