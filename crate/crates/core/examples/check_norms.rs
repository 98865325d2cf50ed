use pvslab::fourier::verify_norms;
use pvslab::ring::smallest_nonresidue;

fn main() {
    let p = 5;
    let nr = smallest_nonresidue(p);
    let t = std::time::Instant::now();
    match verify_norms(p, &nr) {
        Ok(r) => println!(
            "L1 {} (exp {})\nL2^2 {} (exp {})\nsupp {} (exp {})\n#nonmax {}\nparseval {} theorem {} [{:?}]",
            r.l1, r.l1_expected, r.l2sq, r.l2sq_expected, r.support, r.support_expected,
            r.nonmax_count, r.parseval_ok, r.theorem_match, t.elapsed()
        ),
        Err(e) => println!("ERROR: {}", e),
    }
}
