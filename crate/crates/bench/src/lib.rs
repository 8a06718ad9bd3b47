//! Fixed workloads shared by the criterion benches.

use tpcalc_core::oracle::{random_immersive_curve, CurveParam};
use tpcalc_core::tpcore::MultiSingType;
use tpcalc_core::{MapModel, ResidualDb};

/// The shipped database and the tuple `(A0, A0, A0, A0)` at `kappa = 1`.
pub fn quadruple_points() -> (ResidualDb, MultiSingType) {
    let db = ResidualDb::shipped();
    let t = MultiSingType::new(&["A0"; 4], 1, db.registry()).expect("shipped type");
    (db, t)
}

/// The tuple `(A1, A1, A1)` at `kappa = -1` with the family model for degree `d`.
pub fn triple_nodes(d: u32) -> (ResidualDb, MultiSingType, MapModel) {
    let db = ResidualDb::shipped();
    let t = MultiSingType::new(&["A1"; 3], -1, db.registry()).expect("shipped type");
    let f = MapModel::from_description(&format!("web3:{d}")).expect("built-in model");
    (db, t, f)
}

/// A seeded random immersive curve of degree `d`.
pub fn curve(d: usize, seed: u64) -> CurveParam {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    random_immersive_curve(d, &mut rng)
}
