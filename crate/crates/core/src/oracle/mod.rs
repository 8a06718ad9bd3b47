//! Independent double-point counter for parametrized plane curves.
//!
//! For `t -> (x(t), y(t))` the ordered pairs `t != u` with the same image are
//! the common zeros of the divided differences `(x(t)-x(u))/(t-u)` and
//! `(y(t)-y(u))/(t-u)`. Their resultant in `u` is a polynomial in `t` whose
//! degree is `2δ`.

mod poly;

use std::fmt;

use rand::Rng;

pub use poly::UniPoly;

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::maps::MapModel;
use crate::tpcore::{integrate, MultiSingType, ResidualDb};

/// Polynomial in `u` with coefficients in `Q[t]`, lowest power of `u` first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly(Vec<UniPoly>);

impl BiPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly(coeffs)
    }

    /// A polynomial in `u` alone.
    pub fn in_u(p: &UniPoly) -> Self {
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| UniPoly::constant(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_u(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut v = vec![UniPoly::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        Self::new(v)
    }

    /// `(p(t) - p(u)) / (t - u) = sum_k a_k sum_{i+j=k-1} t^i u^j`.
    pub fn divided_difference(p: &UniPoly) -> Self {
        let a = p.coeffs();
        let coeffs = (0..a.len().saturating_sub(1))
            .map(|j| UniPoly::new((j + 1..a.len()).map(|k| a[k].clone()).collect()))
            .collect();
        Self::new(coeffs)
    }
}

/// `Res_u(p, q)` as the Sylvester determinant, by fraction-free elimination over `Q[t]`.
pub fn resultant(p: &BiPoly, q: &BiPoly) -> Result<UniPoly> {
    let (m, n) = match (p.degree_u(), q.degree_u()) {
        (None, None) => return Err(Error::ZeroResultant),
        (None, _) | (_, None) => return Ok(UniPoly::zero()),
        (Some(m), Some(n)) => (m, n),
    };
    let size = m + n;
    let mut rows = vec![vec![UniPoly::zero(); size]; size];
    for r in 0..n {
        for i in 0..=m {
            rows[r][r + i] = p.0[m - i].clone();
        }
    }
    for r in 0..m {
        for j in 0..=n {
            rows[n + r][r + j] = q.0[n - j].clone();
        }
    }
    Ok(bareiss_det(rows))
}

fn bareiss_det(mut a: Vec<Vec<UniPoly>>) -> UniPoly {
    let size = a.len();
    if size == 0 {
        return UniPoly::one();
    }
    let mut negate = false;
    let mut prev = UniPoly::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Affine chart `t -> (x(t), y(t))` of a map from the projective line to the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveParam {
    x: UniPoly,
    y: UniPoly,
}

impl CurveParam {
    pub fn new(x: UniPoly, y: UniPoly) -> Result<Self> {
        if x.degree().unwrap_or(0) == 0 && y.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidModel(
                "curve parametrization is constant".into(),
            ));
        }
        Ok(CurveParam { x, y })
    }

    /// Parses `"x(t), y(t)"`.
    pub fn parse(src: &str) -> Result<Self> {
        let (x, y) = src
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `x(t), y(t)`, got `{src}`")))?;
        Self::new(UniPoly::parse(x, "t")?, UniPoly::parse(y, "t")?)
    }

    pub fn x(&self) -> &UniPoly {
        &self.x
    }

    pub fn y(&self) -> &UniPoly {
        &self.y
    }

    pub fn degree(&self) -> usize {
        self.x
            .degree()
            .unwrap_or(0)
            .max(self.y.degree().unwrap_or(0))
    }

    /// `Res_u` of the two divided differences.
    pub fn double_point_resultant(&self) -> Result<UniPoly> {
        resultant(
            &BiPoly::divided_difference(&self.x),
            &BiPoly::divided_difference(&self.y),
        )
    }
}

impl fmt::Display for CurveParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.x, self.y)
    }
}

/// `2δ`: the degree in `t` of the divided-difference resultant.
pub fn double_point_degree(c: &CurveParam) -> Result<u32> {
    let res = match c.double_point_resultant() {
        Err(Error::ZeroResultant) => return Err(Error::NonBirational),
        r => r?,
    };
    match res.degree() {
        None => Err(Error::NonBirational),
        Some(d) => Ok(d as u32),
    }
}

/// `∫ m_{A0^2}` over the line for the degree-`d` rational plane curve model.
pub fn engine_double_point_degree(d: u32) -> Result<Rational> {
    let f = MapModel::rational_curve_model(d)?;
    let mut db = ResidualDb::shipped();
    db.ensure_multiple_point_family(1)?;
    let t = MultiSingType::new(&["A0", "A0"], 1, db.registry())?;
    integrate(&crate::tpcore::expand_source(&t, &db)?, &f)
}

/// A random parametrization with both coordinates of degree `d`, small
/// integer coefficients, no finite critical points and a smooth branch at
/// infinity. Rejects birationality failures.
pub fn random_immersive_curve<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CurveParam {
    assert!(d >= 2, "degree must be at least 2");
    loop {
        let mut draw = || -> Vec<i64> { (0..=d).map(|_| rng.random_range(-5..=5)).collect() };
        let (a, b) = (draw(), draw());
        if a[d] == 0 || b[d] == 0 || b[d - 1] * a[d] - b[d] * a[d - 1] == 0 {
            continue;
        }
        let (x, y) = (UniPoly::from_ints(&a), UniPoly::from_ints(&b));
        if x.derivative().gcd(&y.derivative()).degree() != Some(0) {
            continue;
        }
        let c = CurveParam { x, y };
        if c.double_point_resultant()
            .map(|r| r.is_zero())
            .unwrap_or(true)
        {
            continue;
        }
        return c;
    }
}
