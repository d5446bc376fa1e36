use snl_core::compose::{adapt, AdaptOptions, Method};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};
use snl_core::strategy::HeuristicsConfig;

fn main() {
    let padding = match std::env::args().nth(1).as_deref() {
        Some("ancilla") => Padding::Ancilla,
        Some("dplus") => Padding::DPlusOne,
        _ => Padding::None,
    };
    let d = 7u32;
    let target = d as i32;
    let chip = Chip::build(WindowSpec::square(d).with_padding(padding)).unwrap();
    let heur = HeuristicsConfig::preset("h2").unwrap();
    let mut stats: std::collections::BTreeMap<&str, (u32, u32)> = Default::default();
    let mut cases: Vec<(&str, DefectMap)> = Vec::new();
    for &q in &chip.data {
        let mut m = DefectMap::default();
        m.data.insert(q);
        cases.push(("data", m));
    }
    for &a in &chip.ancillas {
        let mut m = DefectMap::default();
        m.ancillas.insert(a);
        cases.push(("anc", m));
    }
    for &l in &chip.links {
        let mut m = DefectMap::default();
        m.links.insert(l);
        cases.push(("link", m));
    }
    let mut failures: Vec<String> = Vec::new();
    for (kind, m) in cases {
        let e = stats.entry(kind).or_insert((0, 0));
        e.1 += 1;
        match adapt(&chip, &m, &AdaptOptions::new(Method::Snl, heur)) {
            Ok(o) if o.report.d_out >= target => e.0 += 1,
            Ok(o) => failures.push(format!("{kind} {:?}{:?}{:?} -> ({},{})", m.data, m.ancillas, m.links.iter().map(|l| (l.data, l.ancilla)).collect::<Vec<_>>(), o.report.d_x, o.report.d_z)),
            Err(err) => failures.push(format!("{kind} {:?}{:?}{:?} -> ERR {err}", m.data, m.ancillas, m.links.iter().map(|l| (l.data, l.ancilla)).collect::<Vec<_>>())),
        }
    }
    for (k, (full, tot)) in &stats {
        println!("{k}: {full}/{tot} full-distance");
    }
    for f in failures.iter().filter(|f| !f.starts_with("data")).take(40) {
        println!("  {f}");
    }
    println!("({} failures total)", failures.len());
}
