// The local case at each quadruple point for every F₂ cocycle, and the
// refutation of the Hesse configuration as a real 4-net.

use aomoto::arrangement::Arrangement;
use aomoto::incidence::{hesse_classes, hesse_configuration};
use aomoto::nets::{fournet_cocycles, non_separation_check, refute_4net, Certificate};
use aomoto::os::enumerate_f2_cocycles;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/b3.arr");
    let a = Arrangement::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let inc = a.projectivize().incidence();
    for s in enumerate_f2_cocycles(&inc) {
        let r = non_separation_check(&inc, &s).unwrap();
        println!("cocycle {s:?}: {} entries, {} empty, {} full quadruple points", r.entries.len(), r.empty_points, r.full_points);
        assert!(r.holds());
    }

    // the Hesse configuration is a (4,3)-net but has no real picture
    let h = hesse_configuration();
    let fc = fournet_cocycles(&h, &hesse_classes()).unwrap();
    println!("Hesse: S12 {:?}, S13 {:?}, S14 {:?}, rank mod diagonal {}", fc.s12, fc.s13, fc.s14, fc.rank_mod_diagonal);
    match refute_4net(&h, &hesse_classes()).unwrap() {
        Certificate::Separated { subset, witness, .. } => {
            println!("A1 ∪ A3 = {subset:?} separates at {:?} (cyclic {:?})", witness.point, witness.cyclic)
        }
        c => panic!("unexpected certificate {c:?}"),
    }
}
