use snl_core::compose::{adapt, AdaptOptions, Method};
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec};
use snl_core::strategy::HeuristicsConfig;

fn main() {
    let n: u64 = std::env::args().nth(1).map(|s| s.parse().unwrap()).unwrap_or(300);
    let chip = Chip::build(WindowSpec::square(7).with_padding(Padding::DPlusOne)).unwrap();
    for prof in ["h0", "h2", "h4", "h6"] {
        let heur = HeuristicsConfig::preset(prof).unwrap();
        let mut full = 0u64;
        let mut diffs: Vec<u64> = Vec::new();
        for seed in 0..n {
            let defects = sample_defects(&chip, &DefectRates::uniform(0.01), seed);
            if let Ok(o) = adapt(&chip, &defects, &AdaptOptions::new(Method::Snl, heur)) {
                if o.report.d_out >= 7 { full += 1; } else if prof == "h6" { diffs.push(seed); }
            }
        }
        println!("{prof}: yield {:.1}%", 100.0 * full as f64 / n as f64);
        if prof == "h6" {
            println!("  h6 failing seeds: {:?}", &diffs[..diffs.len().min(12)]);
        }
    }
}
