use pvslab::action_sets::PairingId;
use pvslab::ring::smallest_nonresidue;
use pvslab::sums::eval_row_direct;

fn main() {
    let p = 7;
    let nr = smallest_nonresidue(p);
    for param in [(1, 1), (1, 3), (3, 3)] {
        let h = eval_row_direct(PairingId::S1s1sD2, "7", param, p, &nr);
        println!("(x,y)={:?}: S = {:?}", param, h.as_integer());
    }
}
