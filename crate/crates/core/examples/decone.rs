// Projective arrangements: multiplicities, cyclic orders, and deconing
// with respect to different lines.

use aomoto::arrangement::Arrangement;
use aomoto::bands::bands;
use aomoto::chambers::{classify_chambers, Flag};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/a16-1.arr");
    let p = Arrangement::parse(&std::fs::read_to_string(path).unwrap()).unwrap().projectivize();
    let m = p.multiplicities();
    for k in [2, 3, 8] {
        println!("{} points of multiplicity {k}", m.iter().filter(|&&x| x == k).count());
    }
    for name in ["H1", "H10"] {
        let a = p.decone(p.id_by_name(name).unwrap()).unwrap();
        let cc = classify_chambers(&a, &Flag::construct(&a));
        println!("deconed at {name}: {} chambers, {} bands", 1 + cc.c.len() + cc.d.len(), bands(&a, &cc).len());
    }
}
