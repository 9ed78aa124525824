//! Smith normal form of an integer matrix and the quotient it describes.

use pgraph::lattice::{smith_normal_form, GDegree, IntMatrix, Subgroup};

pub fn run() -> String {
    let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
    let snf = smith_normal_form(&a);
    let mut out = format!("invariant factors of diag(2,3): {:?}\n", snf.invariant_factors());
    assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);

    let h = Subgroup::new(2, &[GDegree(vec![2, 0])]);
    let q = pgraph::lattice::quotient_structure(&h);
    out += &format!("Z^2 / {h} = {}\n", q.describe());
    out += &format!("q(1,0) = {}, q(0,1) = {}\n", q.q(&GDegree(vec![1, 0])), q.q(&GDegree(vec![0, 1])));
    out
}

fn main() {
    print!("{}", run());
}
