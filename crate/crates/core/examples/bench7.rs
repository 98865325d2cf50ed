use pvslab::action_sets::{action_set_count, pairing_reps, PairingId};
use pvslab::orbits::{brute_stabilizer_count, representative, Orbit};
use pvslab::ring::smallest_nonresidue;

fn main() {
    let p = 7;
    let nr = smallest_nonresidue(p);
    let t = std::time::Instant::now();
    let x = representative(Orbit::O1e4, p, &nr);
    let n = brute_stabilizer_count(&x, p).unwrap();
    println!("stab 1^4 at p=7: {} [{:?}]", n, t.elapsed());
    let t = std::time::Instant::now();
    let x = representative(Orbit::O1111, p, &nr);
    let n = brute_stabilizer_count(&x, p).unwrap();
    println!("stab 1111 at p=7: {} [{:?}]", n, t.elapsed());
    let t = std::time::Instant::now();
    let (_, xi0) = pairing_reps(PairingId::S1s11D1s, p, &nr);
    let n = action_set_count(Orbit::O1s11, &xi0, p, &nr).unwrap();
    println!("action set 1^211:D1^2 at p=7: {} [{:?}]", n, t.elapsed());
}
