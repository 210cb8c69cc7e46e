// 3-nets on the complete quadrilateral, from F₃ cohomology and by search.

use aomoto::arrangement::Arrangement;
use aomoto::nets::{extract_3nets, search_nets, verify_multinet};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/quad.arr");
    let a = Arrangement::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let inc = a.projectivize().incidence();
    let name = |ids: &[usize]| ids.iter().map(|&i| inc.name(i)).collect::<Vec<_>>().join(",");

    let ex = extract_3nets(&inc).unwrap();
    println!("H1 over F3 has rank {}, {} nonzero classes", ex.h1_rank, ex.nonzero_classes);
    for n in &ex.nets {
        let classes: Vec<String> = n.classes.iter().map(|c| name(c)).collect();
        println!("  3-net {} with {} base points", classes.join(" | "), n.base.len());
    }
    assert!(ex.count_identity_holds());
    assert_eq!(search_nets(&inc, 3).unwrap(), ex.nets);
    assert!(search_nets(&inc, 4).unwrap().is_empty());

    // moving one line breaks condition (ii)
    let mut bad = ex.nets[0].classes.clone();
    let moved = bad[0].pop().unwrap();
    let kept = bad[1].pop().unwrap();
    bad[0].push(kept);
    bad[1].push(moved);
    let r = verify_multinet(&inc, &bad).unwrap();
    println!("swapped classes: multinet {}, first violation {:?}", r.is_multinet, r.violations[0]);
}
