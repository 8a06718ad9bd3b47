use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::text::format_power;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    /// Largest surviving exponent: `g^(nilpotency + 1) = 0`.
    pub nilpotency: u32,
}

/// A truncated polynomial ring `Q[g_1, ..., g_k] / (g_i^(n_i + 1))`.
///
/// With all degrees one this is the Chow ring of `P^{n_1} x ... x P^{n_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    generators: Vec<Generator>,
    top_degree: u32,
}

pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn new<S: Into<String>>(spec: impl IntoIterator<Item = (S, u32, u32)>) -> Result<Ring> {
        let mut generators: Vec<Generator> = Vec::new();
        for (name, degree, nilpotency) in spec {
            let name = name.into();
            if generators.iter().any(|g| g.name == name) {
                return Err(Error::DuplicateGenerator(name));
            }
            if degree == 0 {
                return Err(Error::InvalidGenerator {
                    name,
                    what: "degree",
                    value: degree,
                });
            }
            if nilpotency == 0 {
                return Err(Error::InvalidGenerator {
                    name,
                    what: "nilpotency",
                    value: nilpotency,
                });
            }
            generators.push(Generator {
                name,
                degree,
                nilpotency,
            });
        }
        let top_degree = generators.iter().map(|g| g.degree * g.nilpotency).sum();
        Ok(Arc::new(RingSpec {
            generators,
            top_degree,
        }))
    }

    /// Chow ring of a product of projective spaces with the given generator names.
    pub fn projective<S: Into<String>>(
        factors: impl IntoIterator<Item = (S, u32)>,
    ) -> Result<Ring> {
        Self::new(factors.into_iter().map(|(n, d)| (n, 1, d)))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Exponents of the fundamental top monomial `prod g_i^(n_i)`.
    pub fn top_monomial(&self) -> Monomial {
        Monomial(self.generators.iter().map(|g| g.nilpotency).collect())
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(e, g)| e * g.degree)
            .sum()
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        m.0.len() == self.generators.len()
            && m.0
                .iter()
                .zip(&self.generators)
                .all(|(e, g)| *e <= g.nilpotency)
    }

    /// Every normal-form monomial, in increasing degree.
    pub fn basis(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial(Vec::new())];
        for g in &self.generators {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..=g.nilpotency).map(move |e| {
                        let mut v = m.0.clone();
                        v.push(e);
                        Monomial(v)
                    })
                })
                .collect();
        }
        out.sort_by(|a, b| self.degree_of(a).cmp(&self.degree_of(b)).then(a.cmp(b)));
        out
    }

    pub(crate) fn format_monomial(&self, m: &Monomial) -> String {
        m.0.iter()
            .zip(&self.generators)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| format_power(&g.name, *e))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<_> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let rels: Vec<_> = self
            .generators
            .iter()
            .map(|g| format!("{}^{}", g.name, g.nilpotency + 1))
            .collect();
        write!(f, "Q[{}]/({})", gens.join(","), rels.join(","))
    }
}

/// Exponent vector indexed by ring generators.
///
/// Ordered lexicographically with larger exponents of earlier generators
/// first, so `h^2 > h*H > H^2` and iteration lists leading terms first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub(crate) fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_ring() {
        let r = RingSpec::new([("h", 1, 2)]).unwrap();
        assert_eq!(r.top_degree(), 2);
        assert_eq!(r.to_string(), "Q[h]/(h^3)");
        let r = RingSpec::new([("h", 1, 2), ("H", 1, 3)]).unwrap();
        assert_eq!(r.top_degree(), 5);
        assert_eq!(r.basis().len(), 12);
        assert_eq!(r.top_monomial(), Monomial(vec![2, 3]));
    }

    #[test]
    fn rejects_bad_generators() {
        assert_eq!(
            RingSpec::new([("h", 1, 2), ("h", 1, 1)]).unwrap_err(),
            Error::DuplicateGenerator("h".into())
        );
        assert!(matches!(
            RingSpec::new([("h", 0, 2)]).unwrap_err(),
            Error::InvalidGenerator { what: "degree", .. }
        ));
        assert!(RingSpec::new([("h", 1, 0)]).is_err());
    }

    #[test]
    fn monomial_order_puts_earlier_generators_first() {
        let mut v = vec![
            Monomial(vec![0, 2]),
            Monomial(vec![2, 0]),
            Monomial(vec![1, 1]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Monomial(vec![2, 0]),
                Monomial(vec![1, 1]),
                Monomial(vec![0, 2])
            ]
        );
    }
}
