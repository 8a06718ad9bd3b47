//! Built-in model names and the `project`/`linear` description grammar.
//!
//! ```text
//! project <variety> onto [k,...]        (1-based factor indices)
//! linear <variety> by (e1,...,ek) into N
//! ```

use super::MapModel;
use crate::algebra::{GradedClass, Monomial};
use crate::chow::{parse_int_list, VarietyModel};
use crate::error::{Error, Result};

fn degree_arg(name: &str, arg: &str) -> Result<u32> {
    arg.parse::<u32>().ok().filter(|d| *d >= 1).ok_or_else(|| {
        Error::InvalidModel(format!(
            "`{name}` needs a positive integer degree, got `{arg}`"
        ))
    })
}

fn incidence(
    name: String,
    factors: &[(&str, u32)],
    degrees: &[Vec<i64>],
    target: usize,
) -> Result<MapModel> {
    let amb = VarietyModel::product_projective_named(factors)?;
    let x = amb.complete_intersection_multidegrees(degrees)?;
    let mut f = MapModel::projection_from_product(&x, &[target])?;
    f.name = name;
    Ok(f)
}

pub(super) fn parse_map(src: &str) -> Result<MapModel> {
    let src = src.trim();
    if let Some(rest) = src.strip_prefix("project ") {
        let (var, factors) = rest
            .rsplit_once(" onto ")
            .ok_or_else(|| Error::Parse(format!("expected `onto [..]` in `{src}`")))?;
        let x = VarietyModel::from_description(var)?;
        let idx = parse_int_list(factors)
            .ok_or_else(|| Error::Parse(format!("invalid factor list `{factors}`")))?;
        let idx = idx
            .iter()
            .map(|i| {
                usize::try_from(*i - 1)
                    .map_err(|_| Error::InvalidModel(format!("factor index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        return MapModel::projection_from_product(&x, &idx);
    }
    if let Some(rest) = src.strip_prefix("linear ") {
        let (head, dim) = rest
            .rsplit_once(" into ")
            .ok_or_else(|| Error::Parse(format!("expected `into N` in `{src}`")))?;
        let (var, e) = head
            .rsplit_once(" by ")
            .ok_or_else(|| Error::Parse(format!("expected `by (..)` in `{src}`")))?;
        let x = VarietyModel::from_description(var)?;
        let coeffs = crate::chow::parse_tuple_list(&format!("[{}]", e.trim()))
            .and_then(|v| v.into_iter().next())
            .ok_or_else(|| Error::Parse(format!("invalid embedding class `{e}`")))?;
        let e = x.divisor(&coeffs)?;
        let dim = dim
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("invalid target dimension `{dim}`")))?;
        return MapModel::linear_projection_model(&x, &e, dim);
    }
    let (name, arg) = src.split_once(':').unwrap_or((src, ""));
    match name {
        "veronese-p3" if arg.is_empty() => {
            let p2 = VarietyModel::product_projective_named(&[("h", 2)])?;
            let e = p2.divisor(&[2])?;
            let mut f = MapModel::linear_projection_model(&p2, &e, 3)?;
            f.name = src.to_string();
            Ok(f)
        }
        "scroll-q-p3" if arg.is_empty() => {
            let q = VarietyModel::product_projective_named(&[("a", 1), ("b", 1)])?;
            let e = q.divisor(&[1, 2])?;
            let mut f = MapModel::linear_projection_model(&q, &e, 3)?;
            f.name = src.to_string();
            Ok(f)
        }
        "ratcurve" => MapModel::rational_curve_model(degree_arg(name, arg)?),
        "identity" => MapModel::identity(degree_arg(name, arg)?),
        "pencil" => {
            let d = degree_arg(name, arg)? as i64;
            incidence(src.to_string(), &[("h", 2), ("H", 1)], &[vec![d, 1]], 1)
        }
        "web3" => {
            let d = degree_arg(name, arg)? as i64;
            incidence(src.to_string(), &[("h", 2), ("H", 3)], &[vec![d, 1]], 1)
        }
        "dual-surface" => {
            let d = degree_arg(name, arg)? as i64;
            incidence(
                src.to_string(),
                &[("h", 3), ("H", 3)],
                &[vec![d, 0], vec![1, 1]],
                1,
            )
        }
        _ => Err(Error::InvalidModel(format!("unknown model `{src}`"))),
    }
}

/// `(c_1,...,c_k)` for a degree-one class.
pub(super) fn format_divisor(x: &VarietyModel, e: &GradedClass) -> String {
    let n = x.ambient().len();
    let v: Vec<String> = (0..n)
        .map(|i| {
            let mut m = vec![0; n];
            m[i] = 1;
            crate::algebra::rational::format_rational(&e.coefficient(&Monomial(m)))
        })
        .collect();
    format!("({})", v.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_ins_parse() {
        for (name, kappa, dim_y) in [
            ("veronese-p3", 1, 3),
            ("scroll-q-p3", 1, 3),
            ("ratcurve:4", 1, 2),
            ("pencil:3", -1, 1),
            ("web3:4", -1, 3),
            ("dual-surface:3", -1, 3),
            ("identity:3", 0, 3),
        ] {
            let f = parse_map(name).unwrap();
            assert_eq!(f.kappa(), kappa, "{name}");
            assert_eq!(f.target_dimension(), dim_y, "{name}");
            assert_eq!(f.name(), name);
        }
    }

    #[test]
    fn unknown_and_malformed() {
        assert!(parse_map("klein-bottle").is_err());
        assert!(parse_map("ratcurve:0").is_err());
        assert!(parse_map("ratcurve:x").is_err());
        assert!(parse_map("veronese-p3:2").is_err());
        assert!(parse_map("project product [2,1] onto [3]").is_err());
    }

    #[test]
    fn descriptions_round_trip() {
        let f = parse_map("project ci [2,1] [(3,1)] onto [2]").unwrap();
        assert_eq!(f.kappa(), -1);
        assert_eq!(parse_map(f.name()).unwrap().name(), f.name());
        let g = parse_map("linear product [1,1] by (1,2) into 3").unwrap();
        assert_eq!(g.name(), "linear product [1,1] by (1,2) into 3");
        assert_eq!(
            g.landweber_novikov(&super::super::LnIndex::empty())
                .to_string(),
            "4*H"
        );
    }
}
