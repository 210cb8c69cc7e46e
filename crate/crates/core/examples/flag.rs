// Choose a flag, split the chambers into ch⁰, ch¹, ch² and print the
// degree table, with ch² labelled by points inside each chamber.

use aomoto::arrangement::Arrangement;
use aomoto::chamber_complex::degree_table;
use aomoto::chambers::{classify_chambers, Flag, Point};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/six_lines.arr");
    let a = Arrangement::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let flag = Flag::choose(&a, a.flag_hint()).unwrap();
    println!("F0 = ({}, {}), direction ({}, {}), order {:?}", flag.f0.x, flag.f0.y, flag.direction.x, flag.direction.y, flag.order);

    let mut cc = classify_chambers(&a, &flag);
    println!("|ch0|, |ch1|, |ch2| = 1, {}, {}", cc.c.len(), cc.d.len());

    // one point inside each of D_1..D_9
    let labels = [(163, 68), (135, 75), (38, 143), (166, 93), (156, 111), (98, 143), (198, 143), (163, 143), (138, 143)];
    cc.relabel_d(&a, &labels.map(|(x, y)| Point::ints(x, y))).unwrap();
    for (i, row) in degree_table(&cc).rows.iter().enumerate() {
        println!("C{} {:?}", i + 1, row);
    }
}
