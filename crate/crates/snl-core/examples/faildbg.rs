use snl_core::compose::{adapt, AdaptOptions, Method};
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec};
use snl_core::strategy::HeuristicsConfig;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let d: u32 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(17);
    let n: u64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(20);
    let chip = Chip::build(WindowSpec::square(d).with_padding(Padding::Ancilla)).unwrap();
    let heur = HeuristicsConfig::preset("h1").unwrap();
    for method in [Method::Snl, Method::Dqd] {
        for seed in 0..n {
            let defects = sample_defects(&chip, &DefectRates::uniform(0.01), seed);
            if let Err(e) = adapt(&chip, &defects, &AdaptOptions::new(method, heur)) {
                println!("{} seed={seed}: {e}", method.name());
            }
        }
    }
}
