//! Proper-map models `f: X -> Y` with pullback, pushforward, quotient Chern
//! class `c(f) = f^*c(TY) / c(TX)` and Landweber-Novikov classes
//! `s_I(f) = f_*(c^I(f))`.

mod describe;
mod index;

use std::fmt;

use num_traits::Zero;

use crate::algebra::{same_ring, GradedClass, Monomial, Rational, Ring, RingSpec};
use crate::chow::VarietyModel;
use crate::error::{Error, Result};

pub use index::LnIndex;

/// Name of the target generator for linear-projection models.
pub const TARGET_GENERATOR: &str = "H";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapKind {
    /// Restriction to `X` of the projection of a product onto some of its factors.
    ProductProjection { target_factors: Vec<usize> },
    /// Generic linear projection of `X`, embedded by `e`, into `P^target_dim`.
    LinearProjection { target_dim: u32 },
    /// A generic degree-`d` map `P^1 -> P^2`.
    RationalCurve { degree: u32 },
}

#[derive(Debug, Clone)]
enum PushRule {
    Fiber {
        target_factors: Vec<usize>,
    },
    Degree {
        embedding: GradedClass,
        target_dim: u32,
    },
}

#[derive(Debug, Clone)]
pub struct MapModel {
    name: String,
    kind: MapKind,
    source: VarietyModel,
    target: Ring,
    target_tangent: GradedClass,
    kappa: i32,
    /// Images of the target generators in the source ambient ring.
    pull_images: Vec<GradedClass>,
    rule: PushRule,
    quotient_chern: GradedClass,
}

impl MapModel {
    /// `X -> prod_{i in target_factors} P^{n_i}` for `X` inside a product.
    pub fn projection_from_product(x: &VarietyModel, target_factors: &[usize]) -> Result<Self> {
        let k = x.ambient().len();
        let mut factors = target_factors.to_vec();
        factors.sort_unstable();
        factors.dedup();
        if factors.len() != target_factors.len() || factors.iter().any(|i| *i >= k) {
            return Err(Error::InvalidModel(format!(
                "invalid target factors {target_factors:?}"
            )));
        }
        if factors.is_empty() {
            return Err(Error::InvalidModel("empty target".into()));
        }
        if factors.len() == k {
            return Err(Error::InvalidModel("target equals the full ambient".into()));
        }
        let gens = x.ambient().generators();
        let target = RingSpec::new(
            factors
                .iter()
                .map(|i| (gens[*i].name.clone(), 1, gens[*i].nilpotency)),
        )?;
        let mut tangent = GradedClass::one(&target);
        for (j, i) in factors.iter().enumerate() {
            let one_plus = &GradedClass::one(&target) + &GradedClass::gen(&target, j);
            tangent = &tangent * &one_plus.pow(gens[*i].nilpotency + 1);
        }
        let pull_images = factors
            .iter()
            .map(|i| GradedClass::gen(x.ambient(), *i))
            .collect();
        let kappa = target.top_degree() as i32 - x.dimension() as i32;
        let names: Vec<String> = factors.iter().map(|i| (i + 1).to_string()).collect();
        Self::assemble(
            format!("project {x} onto [{}]", names.join(",")),
            MapKind::ProductProjection {
                target_factors: factors.clone(),
            },
            x.clone(),
            target,
            tangent,
            kappa,
            pull_images,
            PushRule::Fiber {
                target_factors: factors,
            },
        )
    }

    /// Generic linear projection of `x`, embedded by the degree-one class `e`, into `P^target_dim`.
    pub fn linear_projection_model(
        x: &VarietyModel,
        e: &GradedClass,
        target_dim: u32,
    ) -> Result<Self> {
        let name = format!(
            "linear {x} by {} into {target_dim}",
            describe::format_divisor(x, e)
        );
        Self::linear(
            name,
            MapKind::LinearProjection { target_dim },
            x,
            e,
            target_dim,
        )
    }

    /// Generic degree-`d` map `P^1 -> P^2`; the source point class is `p`.
    pub fn rational_curve_model(d: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidModel(
                "rational curve degree must be at least 1".into(),
            ));
        }
        let p1 = VarietyModel::product_projective_named(&[("p", 1)])?;
        let e = GradedClass::gen(p1.ambient(), 0).scale(&crate::algebra::rational::int(d as i64));
        Self::linear(
            format!("ratcurve:{d}"),
            MapKind::RationalCurve { degree: d },
            &p1,
            &e,
            2,
        )
    }

    /// The identity of `P^n`, as the linear projection embedded by `O(1)`.
    pub fn identity(n: u32) -> Result<Self> {
        let pn = VarietyModel::product_projective(&[n])?;
        let h = GradedClass::gen(pn.ambient(), 0);
        Self::linear(
            format!("identity:{n}"),
            MapKind::LinearProjection { target_dim: n },
            &pn,
            &h,
            n,
        )
    }

    fn linear(
        name: String,
        kind: MapKind,
        x: &VarietyModel,
        e: &GradedClass,
        target_dim: u32,
    ) -> Result<Self> {
        if !same_ring(e.ring(), x.ambient()) {
            return Err(Error::RingMismatch);
        }
        if e.homogeneous_degree() != Some(1) {
            return Err(Error::InvalidModel(format!(
                "embedding class `{e}` is not of degree 1"
            )));
        }
        if target_dim == 0 {
            return Err(Error::InvalidModel(
                "target dimension must be positive".into(),
            ));
        }
        let target = RingSpec::projective([(TARGET_GENERATOR, target_dim)])?;
        let one_plus = &GradedClass::one(&target) + &GradedClass::gen(&target, 0);
        let tangent = one_plus.pow(target_dim + 1);
        let kappa = target_dim as i32 - x.dimension() as i32;
        Self::assemble(
            name,
            kind,
            x.clone(),
            target,
            tangent,
            kappa,
            vec![e.clone()],
            PushRule::Degree {
                embedding: e.clone(),
                target_dim,
            },
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: String,
        kind: MapKind,
        source: VarietyModel,
        target: Ring,
        target_tangent: GradedClass,
        kappa: i32,
        pull_images: Vec<GradedClass>,
        rule: PushRule,
    ) -> Result<Self> {
        let pulled = target_tangent.substitute(&pull_images)?;
        let quotient_chern = &pulled * &source.tangent_total().invert_unit()?;
        Ok(MapModel {
            name,
            kind,
            source,
            target,
            target_tangent,
            kappa,
            pull_images,
            rule,
            quotient_chern,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn source(&self) -> &VarietyModel {
        &self.source
    }

    pub fn target_ring(&self) -> &Ring {
        &self.target
    }

    pub fn target_tangent(&self) -> &GradedClass {
        &self.target_tangent
    }

    pub fn target_dimension(&self) -> u32 {
        self.target.top_degree()
    }

    /// `dim Y - dim X`.
    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    /// Ring homomorphism `f^*` into source ambient representatives.
    pub fn pullback(&self, beta: &GradedClass) -> Result<GradedClass> {
        if !same_ring(beta.ring(), &self.target) {
            return Err(Error::RingMismatch);
        }
        beta.substitute(&self.pull_images)
    }

    /// `f_*` of a source ambient representative.
    pub fn pushforward(&self, alpha: &GradedClass) -> Result<GradedClass> {
        if !same_ring(alpha.ring(), self.source.ambient()) {
            return Err(Error::RingMismatch);
        }
        match &self.rule {
            PushRule::Fiber { target_factors } => {
                let on_x = alpha.multiply(self.source.fundamental())?;
                let gens = self.source.ambient().generators();
                let mut terms = Vec::new();
                for (m, q) in on_x.terms() {
                    let full_fiber = m
                        .exponents()
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !target_factors.contains(i))
                        .all(|(i, e)| *e == gens[i].nilpotency);
                    if full_fiber {
                        let t = target_factors.iter().map(|i| m.exponents()[*i]).collect();
                        terms.push((Monomial(t), q.clone()));
                    }
                }
                GradedClass::from_terms(&self.target, terms)
            }
            PushRule::Degree {
                embedding,
                target_dim,
            } => {
                let dim = self.source.dimension() as i64;
                let mut terms = Vec::new();
                for (c, part) in alpha.components() {
                    let c = c as i64;
                    let exp = *target_dim as i64 - dim + c;
                    if c > dim || exp < 0 {
                        continue;
                    }
                    let deg = self
                        .source
                        .integrate_on(&(&part * &embedding.pow((dim - c) as u32)))?;
                    if !deg.is_zero() {
                        terms.push((Monomial(vec![exp as u32]), deg));
                    }
                }
                GradedClass::from_terms(&self.target, terms)
            }
        }
    }

    /// Total quotient Chern class `c(f)` as a source ambient representative.
    pub fn quotient_chern(&self) -> &GradedClass {
        &self.quotient_chern
    }

    /// `c_j(f)`, with `c_0 = 1`.
    pub fn chern(&self, j: u32) -> GradedClass {
        self.quotient_chern.component(j)
    }

    /// `c^I(f) = prod c_j(f)^{i_j}`.
    pub fn chern_monomial(&self, index: &LnIndex) -> GradedClass {
        let mut acc = GradedClass::one(self.source.ambient());
        for (i, e) in index.exponents().iter().enumerate() {
            if *e > 0 {
                acc = &acc * &self.chern(i as u32 + 1).pow(*e);
            }
        }
        acc
    }

    /// `s_I(f) = f_*(c^I(f))` in the target ring.
    pub fn landweber_novikov(&self, index: &LnIndex) -> GradedClass {
        self.pushforward(&self.chern_monomial(index))
            .expect("Chern monomials live in the source ambient ring")
    }

    /// Degree of `f_*(alpha)` for top-degree targets, i.e. `int_Y f_*(alpha)`.
    pub fn integrate_target(&self, beta: &GradedClass) -> Result<Rational> {
        if !same_ring(beta.ring(), &self.target) {
            return Err(Error::RingMismatch);
        }
        Ok(beta.integrate_top())
    }

    /// Looks up a built-in model or parses a `project`/`linear` description.
    ///
    /// Built-ins: `veronese-p3`, `scroll-q-p3`, `ratcurve:d`, `pencil:d`,
    /// `web3:d`, `dual-surface:d`, `identity:n`.
    pub fn from_description(src: &str) -> Result<Self> {
        describe::parse_map(src)
    }
}

impl fmt::Display for MapModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Every built-in model used by the check suites.
pub fn shipped_models() -> Vec<MapModel> {
    let mut names: Vec<String> = vec![
        "veronese-p3".into(),
        "scroll-q-p3".into(),
        "identity:2".into(),
    ];
    names.extend((1..=4).map(|d| format!("ratcurve:{d}")));
    names.extend((2..=4).map(|d| format!("pencil:{d}")));
    names.push("web3:4".into());
    names.push("dual-surface:3".into());
    names
        .iter()
        .map(|n| MapModel::from_description(n).expect("built-in model"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    fn model(s: &str) -> MapModel {
        MapModel::from_description(s).unwrap()
    }

    fn tcls(f: &MapModel, s: &str) -> GradedClass {
        GradedClass::parse(f.target_ring(), s).unwrap()
    }

    fn scls(f: &MapModel, s: &str) -> GradedClass {
        GradedClass::parse(f.source().ambient(), s).unwrap()
    }

    fn ln(s: &str) -> LnIndex {
        LnIndex::parse(s).unwrap()
    }

    #[test]
    fn veronese() {
        let f = model("veronese-p3");
        assert_eq!(f.kappa(), 1);
        assert_eq!(f.pushforward(&scls(&f, "1")).unwrap(), tcls(&f, "4*H"));
        assert_eq!(f.pushforward(&scls(&f, "h")).unwrap(), tcls(&f, "2*H^2"));
        assert_eq!(f.pullback(&tcls(&f, "H")).unwrap(), scls(&f, "2*h"));
        assert_eq!(f.quotient_chern(), &scls(&f, "1 + 5*h + 6*h^2"));
        assert_eq!(f.landweber_novikov(&ln("0")), tcls(&f, "4*H"));
    }

    #[test]
    fn scroll() {
        let f = model("scroll-q-p3");
        assert_eq!(f.kappa(), 1);
        assert_eq!(f.pushforward(&scls(&f, "1")).unwrap(), tcls(&f, "4*H"));
        assert_eq!(f.chern(2), scls(&f, "4*a*b"));
    }

    #[test]
    fn identity() {
        let f = MapModel::identity(2).unwrap();
        assert_eq!(f.kappa(), 0);
        assert_eq!(f.quotient_chern(), &scls(&f, "1"));
        assert_eq!(f.landweber_novikov(&ln("0")), tcls(&f, "1"));
    }

    #[test]
    fn rational_curves() {
        for d in 1..6u32 {
            let f = MapModel::rational_curve_model(d).unwrap();
            assert_eq!(f.kappa(), 1);
            assert_eq!(
                f.quotient_chern(),
                &scls(&f, &format!("1 + {}*p", 3 * d - 2))
            );
            assert_eq!(
                f.pushforward(&scls(&f, "1")).unwrap(),
                tcls(&f, &format!("{d}*H"))
            );
            assert_eq!(f.pushforward(&scls(&f, "p")).unwrap(), tcls(&f, "H^2"));
            assert_eq!(
                f.landweber_novikov(&ln("1")),
                tcls(&f, &format!("{}*H^2", 3 * d - 2))
            );
        }
        assert!(MapModel::rational_curve_model(0).is_err());
    }

    #[test]
    fn quartic_scroll_linear_projection() {
        let x = VarietyModel::product_projective_named(&[("a", 1), ("b", 1)]).unwrap();
        let e = GradedClass::parse(x.ambient(), "a + 2*b").unwrap();
        let f = MapModel::linear_projection_model(&x, &e, 3).unwrap();
        assert_eq!(f.landweber_novikov(&LnIndex::empty()), tcls(&f, "4*H"));
        assert!(MapModel::linear_projection_model(
            &x,
            &GradedClass::parse(x.ambient(), "a*b").unwrap(),
            3
        )
        .is_err());
    }

    #[test]
    fn degenerate_product_projection() {
        let x = VarietyModel::product_projective_named(&[("h", 2), ("H", 3)]).unwrap();
        let f = MapModel::projection_from_product(&x, &[1]).unwrap();
        assert_eq!(f.pushforward(&scls(&f, "h^2*H")).unwrap(), tcls(&f, "H"));
        assert!(MapModel::projection_from_product(&x, &[0, 1]).is_err());
        assert!(MapModel::projection_from_product(&x, &[]).is_err());
        assert!(MapModel::projection_from_product(&x, &[2]).is_err());
    }

    #[test]
    fn pencil_discriminant() {
        for d in 2..=8 {
            let f = model(&format!("pencil:{d}"));
            assert_eq!(f.kappa(), -1);
            assert_eq!(f.chern(1), scls(&f, &format!("{}*h + H", d - 3)));
            let disc = &f.landweber_novikov(&ln("2")) - &f.landweber_novikov(&ln("01"));
            assert_eq!(disc, tcls(&f, &format!("{}*H", 3 * (d - 1) * (d - 1))));
        }
    }

    #[test]
    fn ring_mismatch() {
        let f = model("veronese-p3");
        let g = model("scroll-q-p3");
        assert_eq!(
            f.pushforward(&GradedClass::one(g.source().ambient()))
                .unwrap_err(),
            Error::RingMismatch
        );
        assert_eq!(
            f.pullback(&GradedClass::one(f.source().ambient()))
                .unwrap_err(),
            Error::RingMismatch
        );
    }
}
