// H¹ of the Aomoto complex straight from the Orlik–Solomon relations, on
// an affine arrangement and on its cone.

use aomoto::arrangement::Arrangement;
use aomoto::os::{cone_oneform, h1_coned, h1_direct, wedge, OneForm};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/three_pairs.arr");
    let a = Arrangement::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let inc = a.incidence();
    for b in inc.blocks() {
        println!("point {:?}, cyclic order {:?}", b.lines, b.cyclic);
    }

    let eta = OneForm::from_ints(2, &a.ids(), &[0, 1, 1, 0, 0, 1]).unwrap();
    let h = h1_direct(&inc, &eta).unwrap();
    println!("H1 mod 2 at e2+e3+e6: {}", h.invariants);
    for w in &h.representatives {
        println!("  representative {:?}, wedge zero: {}", w.coeffs(), wedge(&inc, &eta, w).unwrap().is_zero());
    }

    // the same class computed on the cone
    let coned = cone_oneform(&eta).unwrap();
    let hc = h1_coned(&a.projectivize().incidence(), &coned).unwrap();
    println!("coned: {}", hc.invariants);
    assert!(h.invariants.same_type(&hc.invariants));
}
