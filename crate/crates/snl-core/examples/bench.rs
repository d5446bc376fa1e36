use snl_core::compose::{adapt, AdaptOptions, Method};
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec};
use snl_core::strategy::HeuristicsConfig;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let d: u32 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(17);
    let n: u64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(10);
    let profile = args.get(3).map(|s| s.as_str()).unwrap_or("h1");
    let chip = Chip::build(WindowSpec::square(d).with_padding(Padding::Ancilla)).unwrap();
    let heur = HeuristicsConfig::preset(profile).unwrap();
    for method in [Method::Snl, Method::Dqd] {
        let t0 = Instant::now();
        let mut ok = 0;
        let mut fail = 0;
        let mut sum_rel = 0.0;
        for seed in 0..n {
            let defects = sample_defects(&chip, &DefectRates::uniform(0.01), seed);
            match adapt(&chip, &defects, &AdaptOptions::new(method, heur)) {
                Ok(o) => {
                    ok += 1;
                    sum_rel += o.report.d_rel;
                }
                Err(_) => fail += 1,
            }
        }
        println!(
            "d={d} {} {profile}: ok={ok} fail={fail} mean_rel={:.3} elapsed={:.2?} ({:.1} ms/adapt)",
            method.name(),
            sum_rel / ok.max(1) as f64,
            t0.elapsed(),
            t0.elapsed().as_millis() as f64 / n as f64
        );
    }
}
