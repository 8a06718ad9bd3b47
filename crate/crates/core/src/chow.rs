//! Complete intersections in products of projective spaces.
//!
//! Classes on a complete intersection `X` are carried by ambient-ring
//! representatives. Equality on `X` itself is never decided; everything
//! downstream only consumes `alpha * [X]`, which is well defined.

use std::fmt;

use crate::algebra::{same_ring, GradedClass, Monomial, Rational, Ring, RingSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct VarietyModel {
    ambient: Ring,
    factor_dims: Vec<u32>,
    divisors: Vec<GradedClass>,
    dimension: u32,
    tangent_total: GradedClass,
    fundamental: GradedClass,
}

impl VarietyModel {
    /// `P^{d_1} x ... x P^{d_k}` with generators `h` (one factor) or `h1, ..., hk`.
    pub fn product_projective(dims: &[u32]) -> Result<Self> {
        let names: Vec<String> = if dims.len() == 1 {
            vec!["h".to_string()]
        } else {
            (1..=dims.len()).map(|i| format!("h{i}")).collect()
        };
        let factors: Vec<(&str, u32)> = names
            .iter()
            .map(|n| n.as_str())
            .zip(dims.iter().copied())
            .collect();
        Self::product_projective_named(&factors)
    }

    pub fn product_projective_named(factors: &[(&str, u32)]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidModel(
                "empty product of projective spaces".into(),
            ));
        }
        if let Some((n, _)) = factors.iter().find(|(_, d)| *d == 0) {
            return Err(Error::InvalidModel(format!("factor `{n}` has dimension 0")));
        }
        let ambient = RingSpec::projective(factors.iter().map(|(n, d)| (*n, *d)))?;
        // Euler sequence on each factor
        let mut tangent = GradedClass::one(&ambient);
        for (i, (_, d)) in factors.iter().enumerate() {
            let one_plus_g = &GradedClass::one(&ambient) + &GradedClass::gen(&ambient, i);
            tangent = &tangent * &one_plus_g.pow(d + 1);
        }
        Ok(VarietyModel {
            factor_dims: factors.iter().map(|(_, d)| *d).collect(),
            divisors: Vec::new(),
            dimension: ambient.top_degree(),
            fundamental: GradedClass::one(&ambient),
            tangent_total: tangent,
            ambient,
        })
    }

    /// Cuts `self` by divisors of the given classes; tangent class by adjunction.
    pub fn complete_intersection(&self, divisors: Vec<GradedClass>) -> Result<Self> {
        if !self.divisors.is_empty() {
            return Err(Error::InvalidModel(
                "ambient of a complete intersection must be a product".into(),
            ));
        }
        if divisors.len() as u32 >= self.dimension {
            return Err(Error::InvalidModel(format!(
                "{} divisors in an ambient of dimension {}",
                divisors.len(),
                self.dimension
            )));
        }
        let mut normal = GradedClass::one(&self.ambient);
        let mut fundamental = GradedClass::one(&self.ambient);
        for l in &divisors {
            if !same_ring(l.ring(), &self.ambient) {
                return Err(Error::RingMismatch);
            }
            if l.homogeneous_degree() != Some(1) {
                return Err(Error::InvalidModel(format!(
                    "divisor `{l}` is not homogeneous of degree 1"
                )));
            }
            normal = &normal * &(&GradedClass::one(&self.ambient) + l);
            fundamental = &fundamental * l;
        }
        Ok(VarietyModel {
            ambient: self.ambient.clone(),
            factor_dims: self.factor_dims.clone(),
            dimension: self.dimension - divisors.len() as u32,
            tangent_total: &self.tangent_total * &normal.invert_unit()?,
            fundamental,
            divisors,
        })
    }

    /// Complete intersection of hypersurfaces with the given integer multidegrees.
    pub fn complete_intersection_multidegrees(&self, multidegrees: &[Vec<i64>]) -> Result<Self> {
        let divisors = multidegrees
            .iter()
            .map(|md| self.divisor(md))
            .collect::<Result<Vec<_>>>()?;
        self.complete_intersection(divisors)
    }

    /// The degree-one class `sum d_i g_i`.
    pub fn divisor(&self, multidegree: &[i64]) -> Result<GradedClass> {
        if multidegree.len() != self.ambient.len() {
            return Err(Error::InvalidModel(format!(
                "multidegree {multidegree:?} has {} entries, ambient has {} factors",
                multidegree.len(),
                self.ambient.len()
            )));
        }
        let terms = multidegree.iter().enumerate().map(|(i, d)| {
            let mut e = vec![0; self.ambient.len()];
            e[i] = 1;
            (Monomial(e), crate::algebra::rational::int(*d))
        });
        GradedClass::from_terms(&self.ambient, terms)
    }

    pub fn ambient(&self) -> &Ring {
        &self.ambient
    }

    pub fn factor_dims(&self) -> &[u32] {
        &self.factor_dims
    }

    pub fn divisors(&self) -> &[GradedClass] {
        &self.divisors
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn tangent_total(&self) -> &GradedClass {
        &self.tangent_total
    }

    /// `[X]` as a class in the ambient ring.
    pub fn fundamental(&self) -> &GradedClass {
        &self.fundamental
    }

    /// `c_i(TX)` as an ambient representative.
    pub fn chern_class(&self, i: u32) -> GradedClass {
        self.tangent_total.component(i)
    }

    pub fn integrate_on(&self, p: &GradedClass) -> Result<Rational> {
        Ok(p.multiply(&self.fundamental)?.integrate_top())
    }

    /// Euler characteristic `int_X c_top(TX)`.
    pub fn euler_characteristic(&self) -> Rational {
        self.integrate_on(&self.chern_class(self.dimension))
            .expect("tangent class lives in the ambient ring")
    }

    /// Parses `product [2,3]` or `ci [3,3] [(3,0),(1,1)]`.
    pub fn from_description(src: &str) -> Result<Self> {
        let src = src.trim();
        let bad = |m: &str| Error::Parse(format!("{m} in variety description `{src}`"));
        if let Some(rest) = src.strip_prefix("product") {
            let dims = parse_int_list(rest.trim()).ok_or_else(|| bad("expected `[d1,...]`"))?;
            Self::product_projective(
                &to_dims(&dims).ok_or_else(|| bad("dimensions must be positive"))?,
            )
        } else if let Some(rest) = src.strip_prefix("ci") {
            let rest = rest.trim();
            let close = rest.find(']').ok_or_else(|| bad("expected `[d1,...]`"))?;
            let dims = parse_int_list(&rest[..=close]).ok_or_else(|| bad("expected `[d1,...]`"))?;
            let dims = to_dims(&dims).ok_or_else(|| bad("dimensions must be positive"))?;
            let degs = parse_tuple_list(rest[close + 1..].trim())
                .ok_or_else(|| bad("expected `[(a,b),...]`"))?;
            Self::product_projective(&dims)?.complete_intersection_multidegrees(&degs)
        } else {
            Err(bad("expected `product` or `ci`"))
        }
    }
}

impl fmt::Display for VarietyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.factor_dims.iter().map(|d| d.to_string()).collect();
        if self.divisors.is_empty() {
            return write!(f, "product [{}]", dims.join(","));
        }
        let degs: Vec<String> = self
            .divisors
            .iter()
            .map(|l| {
                let v: Vec<String> = (0..self.ambient.len())
                    .map(|i| {
                        let mut e = vec![0; self.ambient.len()];
                        e[i] = 1;
                        crate::algebra::rational::format_rational(&l.coefficient(&Monomial(e)))
                    })
                    .collect();
                format!("({})", v.join(","))
            })
            .collect();
        write!(f, "ci [{}] [{}]", dims.join(","), degs.join(","))
    }
}

fn to_dims(v: &[i64]) -> Option<Vec<u32>> {
    v.iter()
        .map(|d| u32::try_from(*d).ok().filter(|d| *d > 0))
        .collect()
}

pub(crate) fn parse_int_list(s: &str) -> Option<Vec<i64>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

pub(crate) fn parse_tuple_list(s: &str) -> Option<Vec<Vec<i64>>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?.trim();
    let mut out = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest.strip_prefix('(')?;
        let close = body.find(')')?;
        out.push(
            body[..close]
                .split(',')
                .map(|t| t.trim().parse().ok())
                .collect::<Option<Vec<i64>>>()?,
        );
        rest = body[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Some(out)
}
