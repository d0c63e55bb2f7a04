use opconvex_core::falsifier::{falsify, SearchConfig};
use opconvex_core::functions::{ScalarFunction, WeightFunction};
use opconvex_core::interval::Interval;
use opconvex_core::linalg::ToleranceConfig;
use opconvex_core::oracles::{ExtraParams, InequalityId, Oracle};
use opconvex_core::samplers::SeedSpec;

fn main() {
    let k = Interval::closed(0.0f64, 10.0).unwrap();
    for &p in &[0.5, 1.0, 2.0] {
        for &ratio in &[0.5, 0.9, 2.1, 3.0] {
            let s = ratio * p;
            let oracle = Oracle::new(
                InequalityId::Definition,
                Some(ScalarFunction::power(s, k).unwrap()),
                Some(WeightFunction::identity()),
                p,
                k,
                ToleranceConfig::default(),
            )
            .unwrap();
            let cfg = SearchConfig::from_budget(
                oracle,
                ExtraParams::default(),
                20000,
                vec![2, 3],
                SeedSpec::new(2024, 0),
            )
            .unwrap();
            let t0 = std::time::Instant::now();
            match falsify(&cfg).unwrap() {
                Some(w) => println!(
                    "p={p} s/p={ratio}: violation={:.3e} certified={} restart={} ({:.2}s)",
                    w.violation, w.certified, w.restart, t0.elapsed().as_secs_f64()
                ),
                None => println!("p={p} s/p={ratio}: NONE ({:.2}s)", t0.elapsed().as_secs_f64()),
            }
        }
    }
}
