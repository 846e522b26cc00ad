//! Regenerates the coefficients in `data/all_central_p3_n4.json`:
//! `cargo test --test fixture_search -- --ignored --nocapture`.

use holo_core::delta::{AllCentralGroup, AllCentralSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
#[ignore]
fn search_all_central_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for attempt in 0.. {
        let coefficients: Vec<Vec<u64>> = (0..4).map(|_| (0..6).map(|_| rng.gen_range(0..3)).collect()).collect();
        let g = AllCentralGroup::new(&AllCentralSpec { p: 3, n: 4, coefficients: coefficients.clone() }).unwrap();
        let r = g.centrality().unwrap();
        println!("attempt {attempt}: {} compatible matrices", r.compatible_matrices);
        if r.all_central && g.center_is_derived() {
            println!("{}", serde_json::to_string(&g.spec()).unwrap());
            return;
        }
    }
}
