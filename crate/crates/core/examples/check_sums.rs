use pvslab::action_sets::ALL_PAIRINGS;
use pvslab::ring::smallest_nonresidue;
use pvslab::sums::verify_pairing;

fn main() {
    let p: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let nr = smallest_nonresidue(p);
    let mut bad = 0;
    for id in ALL_PAIRINGS {
        match verify_pairing(id, p, &nr) {
            Ok(rows) => {
                for r in rows.iter().filter(|r| !r.pass) {
                    bad += 1;
                    println!(
                        "FAIL {} row {}: S exp {} got {} | M exp {} got {}",
                        r.pairing, r.row, r.expected_s, r.computed_s, r.expected_m, r.computed_m
                    );
                }
                println!("{}: {} rows checked", id.name(), rows.len());
            }
            Err(e) => {
                bad += 1;
                println!("ERROR {}: {}", id.name(), e);
            }
        }
    }
    println!("total failures: {}", bad);
}
