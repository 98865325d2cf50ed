use pvslab::action_sets::{expected_pairs, nonempty_pair_scan, verify_action_set_counts};
use pvslab::ring::smallest_nonresidue;

fn main() {
    let p: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let nr = smallest_nonresidue(p);
    let t = std::time::Instant::now();
    let pairs = nonempty_pair_scan(p, &nr).unwrap();
    println!("scan [{:?}]: {} pairs, match={}", t.elapsed(), pairs.len(), pairs == expected_pairs());
    for (x, xi) in &pairs {
        println!("  ({}, {})", x.name(), xi.name());
    }
    let t = std::time::Instant::now();
    let rows = verify_action_set_counts(p, &nr).unwrap();
    println!("counts [{:?}]:", t.elapsed());
    for r in &rows {
        println!("  {}:{} {} pass={}", r.x_label, r.xi_label, r.computed_count, r.pass);
    }
}
