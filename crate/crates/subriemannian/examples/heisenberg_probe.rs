//! Prints Heisenberg central-pair distances across resolutions and indices.

use std::time::Instant;

use subriemannian::{
    cc_distance, model_catalog, ApproximantIndex, ApproximantSchedule, GridDomain,
};

fn main() {
    let target = 2.0 * std::f64::consts::PI.sqrt();
    println!("analytic value 2*sqrt(pi) = {target:.6}");
    for h in [1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0] {
        let grid = GridDomain::new(
            vec![(-1.25, 1.25), (-1.25, 1.25), (-0.25, 1.25)],
            h,
            2,
        )
        .unwrap();
        let s = model_catalog("heisenberg", grid).unwrap();
        let start = Instant::now();
        let schedule =
            ApproximantSchedule::for_structure(&s, ApproximantIndex::Infinity).unwrap();
        let d = cc_distance(&s, &schedule, &[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0]);
        println!(
            "h = 1/{:>3}  m = inf  d = {:?}  rel = {:+.4}  ({:.2?})",
            (1.0 / h).round() as i64,
            d,
            d.as_ref().map(|v| v / target - 1.0).unwrap_or(f64::NAN),
            start.elapsed()
        );
        for m in [1u32, 2, 4, 8, 16, 24, 32, 40] {
            let start = Instant::now();
            let schedule =
                ApproximantSchedule::for_structure(&s, ApproximantIndex::Finite(m)).unwrap();
            let d = cc_distance(&s, &schedule, &[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0]).unwrap();
            println!(
                "h = 1/{:>3}  m = {m:>3}  d = {d:.6}  rel = {:+.4}  ({:.2?})",
                (1.0 / h).round() as i64,
                d / target - 1.0,
                start.elapsed()
            );
        }
        // Small central displacements for the collapse experiment.
        for t in [0.25, 0.0625] {
            let schedule =
                ApproximantSchedule::for_structure(&s, ApproximantIndex::Infinity).unwrap();
            let d = cc_distance(&s, &schedule, &[0.0, 0.0, 0.0], &[0.0, 0.0, t]);
            let oracle = 2.0 * (std::f64::consts::PI * t).sqrt();
            println!("  t = {t}: d = {d:?} (oracle {oracle:.6})");
        }
    }
}
