// Bands, η-resonance and H¹ through resonant bands on the 16-line octagon
// arrangement deconed at H1, over Z/8.

use aomoto::arrangement::Arrangement;
use aomoto::bands::{band_rows, h1_via_rb};
use aomoto::chambers::{classify_chambers, Flag};
use aomoto::os::OneForm;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/a16-1-dec1.arr");
    let a = Arrangement::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let cc = classify_chambers(&a, &Flag::choose(&a, a.flag_hint()).unwrap());

    // 1 on odd-numbered lines, 6 on even-numbered ones
    let coeffs: Vec<i64> = a.lines().iter().map(|l| if l.name[1..].parse::<u32>().unwrap() % 2 == 1 { 1 } else { 6 }).collect();
    let eta = OneForm::from_ints(8, &a.ids(), &coeffs).unwrap();

    for b in band_rows(&a, &cc, &eta).unwrap() {
        let (l, r) = b.band.walls;
        println!("band {}|{}: length {}, weight {}, resonant {}", a.line(l).name, a.line(r).name, b.band.length(), b.weight, b.resonant);
    }
    let h = h1_via_rb(&a, &cc, &eta).unwrap();
    println!("H1 = {} ({:?}), kernel generator {:?}", h.invariants(), h.status, h.kernel.invariants.generators);
    for w in &h.representatives {
        let terms: Vec<String> = a.ids().iter().zip(w.centered()).filter(|(_, c)| *c != 0).map(|(&i, c)| format!("{c}*e{}", &a.line(i).name[1..])).collect();
        println!("  {}", terms.join(" + "));
    }
    assert_eq!(h.agrees_with_direct, Some(true));
}
