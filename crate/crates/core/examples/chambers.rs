// Parse an arrangement file, list its multiple points and chambers.

use aomoto::arrangement::{Arrangement, Location};
use aomoto::chambers::{chambers, expected_chamber_count};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/six_lines.arr");
    let a = Arrangement::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    println!("{} lines over {}, parallel classes {:?}", a.n(), a.field(), a.parallel_classes());
    for p in a.intersection_poset(true) {
        match p.location {
            Location::Affine { x, y } => println!("  point ({x}, {y}) on {:?}", p.incident),
            Location::Infinity { dx, dy } => println!("  direction ({dx}, {dy}) at infinity on {:?}", p.incident),
        }
    }
    let ch = chambers(&a);
    assert_eq!(ch.len(), expected_chamber_count(&a));
    println!("{} chambers", ch.len());
    for c in &ch {
        let s: String = c.signs.iter().map(|&b| if b { '+' } else { '-' }).collect();
        println!("  {s} at ({}, {})", c.witness.x, c.witness.y);
    }
}
