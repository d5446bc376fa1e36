use snl_core::boundary::{deform_best, frame_for};
use snl_core::clustering::cluster_defects;
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec};
use snl_core::patch::{resolve_snakes, Frame};
use snl_core::strategy::build_slots;

fn main() {
    let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
    let defects = sample_defects(&chip, &DefectRates::uniform(0.01), 7);
    let frame = frame_for(&chip, false, &defects);
    let clusters = cluster_defects(&frame);
    let c = &clusters[1];
    let mut local_defects = c.defects.clone();
    for &a in &frame.defects.ancillas {
        if !frame.code_defects.ancillas.contains(&a) {
            local_defects.ancillas.insert(a);
        }
    }
    for l in &frame.defects.links {
        if !frame.code_defects.links.contains(l) {
            local_defects.links.insert(*l);
        }
    }
    println!("local defects: a={:?} l={:?}", local_defects.ancillas, local_defects.links);
    let local = Frame::new(frame.chip, frame.window, frame.flip, &local_defects).finish();
    let slots = build_slots(&local, c);
    for s in &slots {
        println!("slot {:?}", s);
    }
    // try first slot's plans manually
    if let snl_core::strategy::Slot::LinkMulti { plans, .. } | snl_core::strategy::Slot::Ancilla { plans, .. } = &slots[0] {
        for p in plans {
            let mut pieces = p.pieces();
            pieces.dead.extend(c.defects.data.iter());
            let (dead, reps) = resolve_snakes(&local, &pieces.reps, &pieces.dead, &pieces.replaced);
            println!("plan {:?}: resolved dead={:?} reps={}", p.orientation, dead, reps.len());
            let solved = snl_core::patch::Pieces { dead, reps, shapes: pieces.shapes.clone(), replaced: pieces.replaced.clone() };
            match deform_best(&local, &solved) {
                Ok((_, dx, dz)) => println!("  deform ok ({dx},{dz})"),
                Err(e) => println!("  deform ERR {e}"),
            }
        }
    }
}
