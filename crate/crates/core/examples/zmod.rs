// Linear algebra over Z/m: Howell form, kernels and module invariants.

use aomoto::zmod::{howell_form, kernel, quotient_invariants, ModMatrix};

fn main() {
    let m = ModMatrix::from_rows(8, 3, &[[2, 4, 6], [0, 4, 4]]);
    let h = howell_form(&m);
    println!("Howell form {:?}, {:?} elements in the row space", h.matrix().to_rows(), h.row_space_size());

    let (gens, inv) = kernel(&m);
    println!("kernel {inv} generated by {:?}", gens.to_rows());

    let big = ModMatrix::identity(8, 2);
    let sub = ModMatrix::from_rows(8, 2, &[[2, 0], [0, 4]]);
    println!("(Z/8)^2 / <2e1, 4e2> = {}", quotient_invariants(&big, &sub).unwrap());
}
