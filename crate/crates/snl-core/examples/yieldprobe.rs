use snl_core::compose::{adapt, AdaptOptions, Method};
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec};
use snl_core::strategy::HeuristicsConfig;

fn main() {
    let n: u64 = std::env::args().nth(1).map(|s| s.parse().unwrap()).unwrap_or(200);
    let d = 7u32;
    let heur = HeuristicsConfig::preset("h2").unwrap();
    for method in [Method::Snl, Method::Dqd] {
        for padding in [Padding::None, Padding::Ancilla, Padding::DPlusOne] {
            let chip = Chip::build(WindowSpec::square(d).with_padding(padding)).unwrap();
            let mut full = 0u64;
            let mut zero_defect = 0u64;
            for seed in 0..n {
                let defects = sample_defects(&chip, &DefectRates::uniform(0.01), seed);
                if defects.is_empty() { zero_defect += 1; }
                if let Ok(o) = adapt(&chip, &defects, &AdaptOptions::new(method, heur)) {
                    if o.report.d_out >= d as i32 { full += 1; }
                }
            }
            println!("{} {:?}: yield {:.1}% (no-defect rate {:.1}%)", method.name(), padding,
                100.0 * full as f64 / n as f64, 100.0 * zero_defect as f64 / n as f64);
        }
    }
    // dominance check at d=17
    let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
    let h1 = HeuristicsConfig::preset("h1").unwrap();
    let mut viol = 0;
    for seed in 0..60 {
        let defects = sample_defects(&chip, &DefectRates::uniform(0.01), seed);
        let s = adapt(&chip, &defects, &AdaptOptions::new(Method::Snl, h1)).map(|o| o.report.d_out);
        let q = adapt(&chip, &defects, &AdaptOptions::new(Method::Dqd, h1)).map(|o| o.report.d_out);
        if let (Ok(s), Ok(q)) = (s, q) {
            if s < q { viol += 1; println!("DOMINANCE VIOLATION seed {seed}: snl {s} dqd {q}"); }
        }
    }
    println!("dominance violations: {viol}/60");
}
