use snl_core::compose::{adapt, AdaptOptions, Method};
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec};
use snl_core::strategy::HeuristicsConfig;

fn main() {
    let d = 7u32;
    let chip = Chip::build(WindowSpec::square(d).with_padding(Padding::Ancilla)).unwrap();
    let heur = HeuristicsConfig::preset("h2").unwrap();
    let (mut full, mut tot) = (0u32, 0u32);
    let mut worse: Vec<String> = Vec::new();
    for seed in 0..30000u64 {
        let m = sample_defects(&chip, &DefectRates::uniform(0.01), seed);
        if m.data.len() != 0 || m.ancillas.len() + m.links.len() != 2 { continue; }
        tot += 1;
        match adapt(&chip, &m, &AdaptOptions::new(Method::Snl, heur)) {
            Ok(o) if o.report.d_out >= d as i32 => full += 1,
            Ok(o) => worse.push(format!("({},{}) a={:?} l={:?}", o.report.d_x, o.report.d_z, m.ancillas, m.links.iter().map(|l| (l.data, l.ancilla)).collect::<Vec<_>>())),
            Err(e) => worse.push(format!("ERR {e} a={:?} l={:?}", m.ancillas, m.links.iter().map(|l| (l.data, l.ancilla)).collect::<Vec<_>>())),
        }
        if tot >= 400 { break; }
    }
    println!("pairs (any 2 of anc/link, 0 data): {full}/{tot}");
    for w in worse.iter().take(15) { println!("  {w}"); }
}
