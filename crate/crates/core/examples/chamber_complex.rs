// The chamber cochain complex of a flag and its H¹, compared with the
// Orlik–Solomon answer.

use aomoto::arrangement::Arrangement;
use aomoto::chamber_complex::{h1_chambers, nabla0, nabla1};
use aomoto::chambers::{classify_chambers, Flag};
use aomoto::os::{h1_direct, OneForm};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/three_pairs.arr");
    let a = Arrangement::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let cc = classify_chambers(&a, &Flag::choose(&a, a.flag_hint()).unwrap());

    for m in [2u64, 3, 4, 6] {
        let eta = OneForm::diagonal(m, &a.ids());
        let d0 = nabla0(&cc, &eta).unwrap();
        let d1 = nabla1(&cc, &eta).unwrap();
        // ∇∘∇ = 0
        assert!(d1.left_apply(&d0).iter().all(|&x| x == 0));
        let ch = h1_chambers(&cc, &eta).unwrap();
        let os = h1_direct(&a.incidence(), &eta).unwrap();
        println!("mod {m}: chambers {}, Orlik-Solomon {}", ch.invariants, os.invariants);
        assert!(ch.invariants.same_type(&os.invariants));
    }
}
