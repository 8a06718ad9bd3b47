use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::text::{format_power, format_terms, parse_terms};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::maps::LnIndex;

/// Which space an expression lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Polynomials in `c_j` and `σ_I = f^* s_I`.
    Source,
    /// Polynomials in `s_I`.
    Target,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Source => "source",
            Side::Target => "target",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "source" => Ok(Side::Source),
            "target" => Ok(Side::Target),
            _ => Err(Error::Parse(format!(
                "side must be `source` or `target`, got `{s}`"
            ))),
        }
    }
}

/// A free commuting variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Landweber-Novikov class `s_I`, printed `s_I`.
    S(LnIndex),
    /// Its pullback `f^* s_I`, printed `fs_I`.
    Sigma(LnIndex),
    /// Quotient Chern class `c_j`, `j >= 1`, printed `cj`.
    C(u32),
}

impl Symbol {
    pub fn degree(&self, kappa: i32) -> i32 {
        match self {
            Symbol::C(j) => *j as i32,
            Symbol::S(i) | Symbol::Sigma(i) => i.degree(kappa),
        }
    }

    fn allowed_on(&self, side: Side) -> bool {
        matches!(
            (self, side),
            (Symbol::S(_), Side::Target) | (Symbol::Sigma(_) | Symbol::C(_), Side::Source)
        )
    }

    fn parse(name: &str) -> Result<Self> {
        if let Some(idx) = name.strip_prefix("fs_") {
            return Ok(Symbol::Sigma(LnIndex::parse(idx)?));
        }
        if let Some(idx) = name.strip_prefix("s_") {
            return Ok(Symbol::S(LnIndex::parse(idx)?));
        }
        if let Some(rest) = name.strip_prefix('c') {
            if let Ok(j) = rest.parse::<u32>() {
                if j >= 1 && rest == j.to_string() {
                    return Ok(Symbol::C(j));
                }
            }
        }
        Err(Error::Parse(format!(
            "unknown symbol `{name}` (expected cN, s_I or fs_I)"
        )))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::C(j) => write!(f, "c{j}"),
            Symbol::S(i) => write!(f, "s_{i}"),
            Symbol::Sigma(i) => write!(f, "fs_{i}"),
        }
    }
}

/// A monomial in the free symbols; zero exponents are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymMonomial(BTreeMap<Symbol, u32>);

impl SymMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn single(s: Symbol) -> Self {
        SymMonomial(BTreeMap::from([(s, 1)]))
    }

    /// The Chern monomial `c^I`.
    pub fn chern(index: &LnIndex) -> Self {
        SymMonomial(
            index
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| (Symbol::C(i as u32 + 1), *e))
                .collect(),
        )
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Symbol, u32)> {
        self.0.iter().map(|(s, e)| (s, *e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, kappa: i32) -> i32 {
        self.0
            .iter()
            .map(|(s, e)| s.degree(kappa) * *e as i32)
            .sum()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (s, e) in &other.0 {
            *m.entry(s.clone()).or_insert(0) += e;
        }
        SymMonomial(m)
    }

    /// `I` with `c^I` equal to this monomial, if it only involves Chern classes.
    pub fn chern_index(&self) -> Option<LnIndex> {
        let mut exps = Vec::new();
        for (s, e) in &self.0 {
            match s {
                Symbol::C(j) => {
                    let j = *j as usize;
                    if exps.len() < j {
                        exps.resize(j, 0);
                    }
                    exps[j - 1] = *e;
                }
                _ => return None,
            }
        }
        Some(LnIndex::new(exps))
    }

    /// Splits into the Chern part `c^I` and the `s`/`σ` part.
    pub fn split_chern(&self) -> (LnIndex, Vec<(&LnIndex, u32)>) {
        let mut exps = Vec::new();
        let mut rest = Vec::new();
        for (s, e) in &self.0 {
            match s {
                Symbol::C(j) => {
                    let j = *j as usize;
                    if exps.len() < j {
                        exps.resize(j, 0);
                    }
                    exps[j - 1] = *e;
                }
                Symbol::S(i) | Symbol::Sigma(i) => rest.push((i, *e)),
            }
        }
        (LnIndex::new(exps), rest)
    }

    fn chern_weight(&self) -> u32 {
        self.0
            .iter()
            .map(|(s, e)| if let Symbol::C(j) = s { j * e } else { 0 })
            .sum()
    }

    fn exponent(&self, s: &Symbol) -> u32 {
        self.0.get(s).copied().unwrap_or(0)
    }

    /// Display order: by Chern weight, then larger powers of earlier `s`
    /// symbols first, then Chern parts reverse-lexicographically.
    fn display_cmp(&self, other: &Self) -> Ordering {
        let w = self.chern_weight().cmp(&other.chern_weight());
        if w != Ordering::Equal {
            return w;
        }
        let svars: BTreeSet<&Symbol> = self
            .0
            .keys()
            .chain(other.0.keys())
            .filter(|s| !matches!(s, Symbol::C(_)))
            .collect();
        for v in svars {
            let (a, b) = (self.exponent(v), other.exponent(v));
            if a != b {
                return b.cmp(&a);
            }
        }
        let top = self
            .0
            .keys()
            .chain(other.0.keys())
            .filter_map(|s| if let Symbol::C(j) = s { Some(*j) } else { None })
            .max()
            .unwrap_or(0);
        for j in (1..=top).rev() {
            let (a, b) = (self.exponent(&Symbol::C(j)), other.exponent(&Symbol::C(j)));
            if a != b {
                return a.cmp(&b);
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| format_power(&s.to_string(), *e))
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A polynomial with rational coefficients in the free symbols `c_j`, `s_I`, `σ_I`.
///
/// No relations are imposed among the symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicExpr {
    side: Side,
    terms: BTreeMap<SymMonomial, Rational>,
}

impl SymbolicExpr {
    pub fn zero(side: Side) -> Self {
        SymbolicExpr {
            side,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(side: Side) -> Self {
        Self::constant(side, Rational::one())
    }

    pub fn constant(side: Side, q: Rational) -> Self {
        Self::monomial(side, SymMonomial::one(), q)
    }

    fn monomial(side: Side, m: SymMonomial, q: Rational) -> Self {
        let mut e = Self::zero(side);
        e.accumulate(m, q);
        e
    }

    pub fn symbol(side: Side, s: Symbol) -> Result<Self> {
        if !s.allowed_on(side) {
            return Err(Error::WrongSide {
                symbol: s.to_string(),
                side: side.as_str(),
            });
        }
        Ok(Self::monomial(
            side,
            SymMonomial::single(s),
            Rational::one(),
        ))
    }

    /// `c_j` on the source side, with `c_0 = 1` and `c_j = 0` for `j < 0`.
    pub fn c(j: i32) -> Self {
        match j.cmp(&0) {
            Ordering::Less => Self::zero(Side::Source),
            Ordering::Equal => Self::one(Side::Source),
            Ordering::Greater => Self::monomial(
                Side::Source,
                SymMonomial::single(Symbol::C(j as u32)),
                Rational::one(),
            ),
        }
    }

    pub fn s(index: LnIndex) -> Self {
        Self::monomial(
            Side::Target,
            SymMonomial::single(Symbol::S(index)),
            Rational::one(),
        )
    }

    pub fn sigma(index: LnIndex) -> Self {
        Self::monomial(
            Side::Source,
            SymMonomial::single(Symbol::Sigma(index)),
            Rational::one(),
        )
    }

    pub(crate) fn from_terms(
        side: Side,
        terms: impl IntoIterator<Item = (SymMonomial, Rational)>,
    ) -> Self {
        let mut e = Self::zero(side);
        for (m, q) in terms {
            e.accumulate(m, q);
        }
        e
    }

    fn accumulate(&mut self, m: SymMonomial, q: Rational) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Same polynomial relabelled to another side; fails if a symbol is not allowed there.
    pub fn with_side(&self, side: Side) -> Result<Self> {
        for m in self.terms.keys() {
            if let Some((s, _)) = m.factors().find(|(s, _)| !s.allowed_on(side)) {
                return Err(Error::WrongSide {
                    symbol: s.to_string(),
                    side: side.as_str(),
                });
            }
        }
        Ok(SymbolicExpr {
            side,
            terms: self.terms.clone(),
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &SymMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_terms(
            self.side,
            self.terms.iter().map(|(m, c)| (m.clone(), c * q)),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.side), |acc, _| &acc * self)
    }

    /// Degrees of all terms when `deg s_I = kappa + |I|`.
    pub fn degrees(&self, kappa: i32) -> BTreeSet<i32> {
        self.terms.keys().map(|m| m.degree(kappa)).collect()
    }

    /// True if every term has degree `d` (vacuously for zero).
    pub fn is_homogeneous_of(&self, kappa: i32, d: i32) -> bool {
        self.terms.keys().all(|m| m.degree(kappa) == d)
    }

    pub fn is_chern_only(&self) -> bool {
        self.terms.keys().all(|m| m.chern_index().is_some())
    }

    /// `f_*` of a Chern polynomial: `sum a_I c^I -> sum a_I s_I`.
    pub fn push_chern(&self) -> Result<Self> {
        self.linearize(Symbol::S, Side::Target)
    }

    /// `f^* f_*` of a Chern polynomial: `sum a_I c^I -> sum a_I σ_I`.
    pub fn pull_push_chern(&self) -> Result<Self> {
        self.linearize(Symbol::Sigma, Side::Source)
    }

    fn linearize(&self, wrap: fn(LnIndex) -> Symbol, side: Side) -> Result<Self> {
        let mut out = Self::zero(side);
        for (m, q) in &self.terms {
            let idx = m.chern_index().ok_or_else(|| {
                Error::Inconsistent(format!("`{self}` is not a Chern polynomial"))
            })?;
            out.accumulate(SymMonomial::single(wrap(idx)), q.clone());
        }
        Ok(out)
    }

    /// Inverse of [`push_chern`](Self::push_chern): a target expression linear in `s_I`.
    pub fn unpush(&self) -> Result<Self> {
        let mut out = Self::zero(Side::Source);
        for (m, q) in &self.terms {
            let mut f = m.factors();
            match (f.next(), f.next()) {
                (Some((Symbol::S(i), 1)), None) => out.accumulate(SymMonomial::chern(i), q.clone()),
                _ => {
                    return Err(Error::Inconsistent(format!(
                        "term `{m}` is not a single Landweber-Novikov class"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Formal pushforward of a source expression via the projection formula:
    /// `c^I * prod σ_J -> s_I * prod s_J`.
    pub fn formal_pushforward(&self) -> Result<Self> {
        if self.side != Side::Source {
            return Err(Error::WrongSide {
                symbol: "expression".into(),
                side: "target",
            });
        }
        let mut out = Self::zero(Side::Target);
        for (m, q) in &self.terms {
            let (chern, rest) = m.split_chern();
            let mut mono = SymMonomial::single(Symbol::S(chern));
            for (i, e) in rest {
                mono = mono.mul(&SymMonomial(BTreeMap::from([(Symbol::S(i.clone()), e)])));
            }
            out.accumulate(mono, q.clone());
        }
        Ok(out)
    }

    pub fn parse(side: Side, src: &str) -> Result<Self> {
        let mut out = Self::zero(side);
        for (q, factors) in parse_terms(src)? {
            let mut m = BTreeMap::new();
            for (name, e) in factors {
                let s = Symbol::parse(&name)?;
                if !s.allowed_on(side) {
                    return Err(Error::WrongSide {
                        symbol: name,
                        side: side.as_str(),
                    });
                }
                *m.entry(s).or_insert(0) += e;
            }
            out.accumulate(SymMonomial(m), q);
        }
        Ok(out)
    }

    /// Terms in display order.
    pub fn ordered_terms(&self) -> Vec<(&SymMonomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }
}

impl fmt::Display for SymbolicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.ordered_terms();
        f.write_str(&format_terms(
            terms.into_iter().map(|(m, q)| (q, m.to_string())),
        ))
    }
}

fn check_sides(a: &SymbolicExpr, b: &SymbolicExpr) {
    assert_eq!(
        a.side, b.side,
        "mixing {} and {} expressions",
        a.side, b.side
    );
}

impl Add for &SymbolicExpr {
    type Output = SymbolicExpr;
    fn add(self, rhs: &SymbolicExpr) -> SymbolicExpr {
        check_sides(self, rhs);
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.accumulate(m.clone(), q.clone());
        }
        out
    }
}

impl Sub for &SymbolicExpr {
    type Output = SymbolicExpr;
    fn sub(self, rhs: &SymbolicExpr) -> SymbolicExpr {
        self + &-rhs
    }
}

impl Neg for &SymbolicExpr {
    type Output = SymbolicExpr;
    fn neg(self) -> SymbolicExpr {
        SymbolicExpr {
            side: self.side,
            terms: self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect(),
        }
    }
}

impl Mul for &SymbolicExpr {
    type Output = SymbolicExpr;
    fn mul(self, rhs: &SymbolicExpr) -> SymbolicExpr {
        check_sides(self, rhs);
        let mut out = SymbolicExpr::zero(self.side);
        for (ma, qa) in &self.terms {
            for (mb, qb) in &rhs.terms {
                out.accumulate(ma.mul(mb), qa * qb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn src(s: &str) -> SymbolicExpr {
        SymbolicExpr::parse(Side::Source, s).unwrap()
    }

    fn tgt(s: &str) -> SymbolicExpr {
        SymbolicExpr::parse(Side::Target, s).unwrap()
    }

    #[test]
    fn display_order_matches_conventional_layout() {
        for s in [
            "s_0^3 - 3*s_0*s_1 + 2*s_2 + 2*s_01",
            "138*s_4 - 158*s_21 + 2*s_02 + 20*s_101 - 2*s_0001",
            "138*c1^4 - 158*c1^2*c2 + 2*c2^2 + 20*c1*c3 - 2*c4",
            "fs_0^2 - fs_1 - 2*fs_0*c1 + 2*c1^2 + 2*c2",
            "fs_0^3 - 3*fs_0*fs_1 + 2*fs_2 + 2*fs_01 - 3*fs_0^2*c1 + 3*fs_1*c1 + 6*fs_0*c1^2 + 6*fs_0*c2 - 6*c1^3 - 18*c1*c2 - 12*c3",
            "fs_0*c2 - 2*c1*c2 - 2*c3",
            "-7*s_3 + 8*s_11 - s_001",
            "-3 + 1/2*c1",
        ] {
            let side = if s.contains("s_") && !s.contains("fs_") { Side::Target } else { Side::Source };
            assert_eq!(SymbolicExpr::parse(side, s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn side_validation() {
        assert!(matches!(
            SymbolicExpr::parse(Side::Target, "c1").unwrap_err(),
            Error::WrongSide { .. }
        ));
        assert!(matches!(
            SymbolicExpr::parse(Side::Source, "s_0").unwrap_err(),
            Error::WrongSide { .. }
        ));
        assert!(SymbolicExpr::parse(Side::Source, "c0").is_err());
        assert!(SymbolicExpr::parse(Side::Source, "x1").is_err());
    }

    #[test]
    fn c_conventions() {
        assert_eq!(SymbolicExpr::c(0), SymbolicExpr::one(Side::Source));
        assert!(SymbolicExpr::c(-2).is_zero());
    }

    #[test]
    fn degrees_follow_kappa() {
        let e = tgt("s_0^2 - s_1");
        assert!(e.is_homogeneous_of(1, 2));
        assert!(!e.is_homogeneous_of(0, 2));
        let r = src("c1^2 - c2");
        assert_eq!(r.degrees(-1), BTreeSet::from([2]));
    }

    #[test]
    fn linear_maps() {
        let r = src("-7*c1^3 + 8*c1*c2 - c3");
        let pushed = r.push_chern().unwrap();
        assert_eq!(pushed, tgt("-7*s_3 + 8*s_11 - s_001"));
        assert_eq!(pushed.unpush().unwrap(), r);
        assert_eq!(
            r.pull_push_chern().unwrap(),
            src("-7*fs_3 + 8*fs_11 - fs_001")
        );
        assert_eq!(src("1").push_chern().unwrap(), tgt("s_0"));
        assert!(tgt("s_0^2").unpush().is_err());
        assert!(src("fs_0").push_chern().is_err());
    }

    #[test]
    fn formal_pushforward_uses_projection_formula() {
        let m = src("fs_01 - 2*c1*c2 - 2*c3 + 3*fs_0*fs_1*c2");
        assert_eq!(
            m.formal_pushforward().unwrap(),
            tgt("s_0*s_01 - 2*s_11 - 2*s_001 + 3*s_0*s_1*s_01")
        );
    }

    #[test]
    fn arithmetic() {
        let a = tgt("s_2 - s_01");
        assert_eq!(a.pow(2), tgt("s_2^2 - 2*s_2*s_01 + s_01^2"));
        assert_eq!((&a - &a), SymbolicExpr::zero(Side::Target));
        assert_eq!(
            a.scale(&int(3)).coefficient(&SymMonomial::single(Symbol::S(
                LnIndex::parse("2").unwrap()
            ))),
            int(3)
        );
    }
}
