// F₂ cocycles of the diagonal element on a projective arrangement, by the
// local parity rule and by linear algebra.

use aomoto::arrangement::Arrangement;
use aomoto::os::{enumerate_f2_cocycles, is_cocycle_modp, mod2_subset_check, OneForm};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/three_pairs.arr");
    let a = Arrangement::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let inc = a.projectivize().incidence();
    println!("lines {:?}", inc.names());

    let all = enumerate_f2_cocycles(&inc);
    println!("{} cocycles: {:?}", all.len(), all);

    // the parity rule agrees on every subset
    let n = inc.n();
    for mask in 0u32..1 << n {
        let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| inc.ids()[i]).collect();
        assert_eq!(mod2_subset_check(&inc, &s).unwrap().passes, all.contains(&s));
    }

    // H2, H3, H6 fails, for instance at the triple point of H1, H3, H6
    let s = [2, 3, 6];
    let r = mod2_subset_check(&inc, &s).unwrap();
    println!("{{H2, H3, H6}}: passes {}, violations {:?}", r.passes, r.violations);
    let eta = OneForm::diagonal(2, inc.ids());
    let rep = is_cocycle_modp(&inc, &eta, &OneForm::indicator(2, inc.ids(), &s)).unwrap();
    assert_eq!(rep.is_cocycle, r.passes);
}
