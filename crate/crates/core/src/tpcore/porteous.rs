use super::symbolic::{Side, SymbolicExpr};

/// Thom-Porteous class `det[c_{kappa+k+j-i}]_{1<=i,j<=k}` with `c_0 = 1`, `c_{<0} = 0`.
pub fn thom_porteous(kappa: i32, k: u32) -> SymbolicExpr {
    let k = k as i32;
    let matrix: Vec<Vec<SymbolicExpr>> = (1..=k)
        .map(|i| {
            (1..=k)
                .map(|j| SymbolicExpr::c(kappa + k + j - i))
                .collect()
        })
        .collect();
    determinant(&matrix)
}

/// Laplace expansion along the first row.
fn determinant(m: &[Vec<SymbolicExpr>]) -> SymbolicExpr {
    if m.is_empty() {
        return SymbolicExpr::one(Side::Source);
    }
    let mut det = SymbolicExpr::zero(Side::Source);
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<SymbolicExpr>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = entry * &determinant(&minor);
        det = if col % 2 == 0 {
            &det + &term
        } else {
            &det - &term
        };
    }
    det
}
