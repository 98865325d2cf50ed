//! Acceptance suite: every published table recomputed from scratch at the
//! stated primes, one summary line per criterion.

use pvslab::action_sets::{expected_pairs, nonempty_pair_scan, verify_action_set_counts};
use pvslab::forms::{act, gl2_elements, pair, row_space, transform3, FormPair, GroupElement};
use pvslab::fourier::{
    assemble_all_classes, frequency_partition_check, lift_mass_identity, verify_norms,
};
use pvslab::orbits::{brute_stabilizer_count, group_order, orbit_table, Orbit};
use pvslab::quotient::{
    literal_nonmax_pattern_first_kind, literal_nonmax_pattern_second_kind, verify_modp2_stabilizers,
    verify_quotient_orbit,
};
use pvslab::ring::{gauss_tau, legendre_i64, smallest_nonresidue, CycInt};
use pvslab::sums::{m_values_scaled, verify_all_pairings};
use pvslab::tangent::verify_tangent_table;

fn line(criterion: u32, what: &str, pass: bool) {
    println!(
        "ACCEPTANCE {}: {} ... {}",
        criterion,
        what,
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {} failed: {}", criterion, what);
}

#[test]
fn criterion_1_orbit_table_stabilizers() {
    let mut pass = true;
    for p in [5i64, 7] {
        let nr = smallest_nonresidue(p);
        let mut total: i128 = 0;
        for rec in orbit_table(p, &nr) {
            let stab = brute_stabilizer_count(&rec.representative, p).unwrap();
            total += rec.size.eval(p);
            if stab != rec.stabilizer.eval(p) || rec.size.eval(p) * stab != group_order(p) {
                eprintln!("orbit {} at p={}: stabilizer {}", rec.label.name(), p, stab);
                pass = false;
            }
        }
        pass &= total == (p as i128).pow(12);
    }
    line(
        1,
        "orbit table: brute stabilizers and orbit-stabilizer products at p=5,7",
        pass,
    );
}

#[test]
fn criterion_2_annihilator_subspaces() {
    let mut pass = true;
    for p in [5i64, 7, 11, 13] {
        let nr = smallest_nonresidue(p);
        for row in verify_tangent_table(p, &nr) {
            if !row.equal {
                eprintln!("tangent {} at p={} differs", row.orbit, p);
                pass = false;
            }
        }
    }
    line(
        2,
        "annihilator subspaces match the tabulated spans at p=5,7,11,13",
        pass,
    );
}

#[test]
fn criterion_3_action_sets() {
    let mut pass = true;
    for p in [5i64, 7] {
        let nr = smallest_nonresidue(p);
        for row in verify_action_set_counts(p, &nr).unwrap() {
            if !row.pass {
                eprintln!("action set {}:{} at p={}", row.x_label, row.xi_label, p);
                pass = false;
            }
        }
        let pairs = nonempty_pair_scan(p, &nr).unwrap();
        if pairs != expected_pairs() {
            eprintln!("pair scan at p={} returned {:?}", p, pairs.len());
            pass = false;
        }
    }
    line(
        3,
        "action-set cardinalities and the nonempty-pair scan at p=5,7",
        pass,
    );
}

#[test]
fn criterion_4_quotient_tables() {
    let mut pass = true;
    for p in [5i64, 7] {
        let nr = smallest_nonresidue(p);
        for base in [
            Orbit::OD1s,
            Orbit::OD11,
            Orbit::OD2,
            Orbit::OCs,
            Orbit::O1e4,
            Orbit::O1e31,
            Orbit::O1s1s,
        ] {
            let v = verify_quotient_orbit(base, p, &nr).unwrap();
            for r in &v.rows {
                if !r.pass {
                    eprintln!("quotient {} row {} at p={}", r.base, r.row, p);
                    pass = false;
                }
            }
            pass &= v.partition_ok;
            pass &= v.density_ok.unwrap_or(true);
            pass &= lift_mass_identity(base, p, &nr).unwrap();
        }
        // the single-non-maximal-orbit cases: density and the literal
        // congruence pattern of the zero-coset lift
        for label in [Orbit::O1s11, Orbit::O1s2] {
            let x = pvslab::orbits::representative(label, p, &nr);
            pass &= literal_nonmax_pattern_first_kind(&x, p);
        }
        pass &= literal_nonmax_pattern_second_kind(
            &pvslab::orbits::representative(Orbit::O2s, p, &nr),
            p,
        );
        for r in verify_modp2_stabilizers(p, &nr).unwrap() {
            if !r.pass {
                eprintln!("mod-p2 stabilizer {} {} at p={}", r.base, r.lift, p);
                pass = false;
            }
        }
    }
    line(
        4,
        "quotient orbit decompositions, maximal densities and mod-p^2 stabilizers at p=5,7",
        pass,
    );
}

#[test]
fn criterion_5_exponential_sum_tables() {
    let mut pass = true;
    for p in [5i64, 7] {
        let nr = smallest_nonresidue(p);
        for row in verify_all_pairings(p, &nr).unwrap() {
            if !row.pass {
                eprintln!("sums {} row {} at p={}", row.pairing, row.row, p);
                pass = false;
            }
        }
        // dilation identity on three sampled rows per pairing, all unit λ
        for id in pvslab::action_sets::ALL_PAIRINGS {
            let base = m_values_scaled(id, 1, p, &nr).unwrap();
            let picks = [0, base.len() / 2, base.len() - 1];
            for lam in 2..p {
                let scaled = m_values_scaled(id, lam, p, &nr).unwrap();
                for &i in &picks {
                    if scaled[i].1 != base[i].1 {
                        eprintln!("dilation {} row {} λ={} p={}", id.name(), base[i].0, lam, p);
                        pass = false;
                    }
                }
            }
        }
    }
    line(
        5,
        "every S and M table entry at p=5,7, zero rows exact, dilation invariance",
        pass,
    );
}

#[test]
fn criterion_6_fourier_tables() {
    let p = 5;
    let nr = smallest_nonresidue(p);
    let (rows, classes) = assemble_all_classes(p, &nr).unwrap();
    let mut pass = rows.iter().all(|r| r.pass);
    // vanishing over the Cs and 1^4 frequency families
    for c in classes.iter().filter(|c| c.family == "Cs" || c.family == "1^4") {
        pass &= c.value == 0;
    }
    pass &= frequency_partition_check(p, &nr).unwrap().pass;
    line(
        6,
        "assembled transform matches all four frequency-family tables at p=5",
        pass,
    );
}

#[test]
fn criterion_7_norm_theorem() {
    let p = 5;
    let nr = smallest_nonresidue(p);
    let n = verify_norms(p, &nr).unwrap();
    line(
        7,
        "L1, L2^2 and support of the non-maximality transform at p=5, with Parseval",
        n.theorem_match && n.parseval_ok,
    );
}

#[test]
fn criterion_8_property_suites() {
    let mut pass = true;
    // τ² = (-1/p)·p at p = 5, 7, 11, and character sums vanish
    for p in [5i64, 7, 11] {
        let tau = gauss_tau(p);
        pass &= tau.mul(&tau).as_integer() == Ok(legendre_i64(p - 1, p) * p);
        for a in 1..p {
            let mut s = CycInt::zero(p);
            for n in 0..p {
                s.add_assign(&CycInt::from_exponent(a * n, p));
            }
            pass &= s.as_integer() == Ok(0);
        }
    }

    // pairing invariance, exhaustive over G(F_5) on a fixed sample
    let p = 5i64;
    let x = FormPair::new([1, 2, 3, 4, 0, 1], [0, 1, 4, 2, 3, 1]).reduce(p);
    let y = FormPair::new([2, 0, 1, 1, 4, 3], [1, 1, 0, 0, 2, 4]).reduce(p);
    let base = pair(&x, &y, p);
    let rows = row_space(p);
    let g2s = gl2_elements(p);
    use rayon::prelude::*;
    let eq7_ok = rows
        .par_iter()
        .map(|r0| {
            let mut ok = true;
            pvslab::forms::for_each_gl3_with_first_row(p, r0, &rows, &mut |g3| {
                if !ok {
                    return;
                }
                let g3i = pvslab::forms::mat3_transpose(&pvslab::forms::mat3_inv(g3, p));
                // transforms of the four single forms, then the GL₂ layer
                let xa = transform3(g3, &x.a, p);
                let xb = transform3(g3, &x.b, p);
                let ya = transform3(&g3i, &y.a, p);
                let yb = transform3(&g3i, &y.b, p);
                for g2 in &g2s {
                    let g2it = pvslab::forms::mat2_transpose(&pvslab::forms::mat2_inv(g2, p));
                    let gx = FormPair::new(
                        combine(g2[0][0], &xa, g2[0][1], &xb, p),
                        combine(g2[1][0], &xa, g2[1][1], &xb, p),
                    );
                    let gy = FormPair::new(
                        combine(g2it[0][0], &ya, g2it[0][1], &yb, p),
                        combine(g2it[1][0], &ya, g2it[1][1], &yb, p),
                    );
                    if pair(&gx, &gy, p) != base {
                        ok = false;
                        return;
                    }
                }
            });
            ok
        })
        .reduce(|| true, |a, b| a && b);
    pass &= eq7_ok;

    // lift independence of the reduced exponent on sampled action-set
    // elements, 10^4 samples per pairing
    for id in pvslab::action_sets::ALL_PAIRINGS {
        let nr = smallest_nonresidue(p);
        let total = id.expected_count(p);
        let step = std::cmp::max(1, (total / 10_000) as u64);
        let table = pvslab::sums::pairing_table(id);
        let params = pvslab::sums::x1_parameters(table.x1, p, &nr);
        let row_ids: Vec<&str> = table
            .rows
            .iter()
            .filter(|r| r.branch.applies(p))
            .map(|r| r.index)
            .collect();
        let mut i = 0u64;
        let mut all_ok = true;
        pvslab::action_sets::for_each_template_element(id, p, &nr, |g3, g2| {
            if i % step == 0 {
                let g = GroupElement { g3: *g3, g2: *g2 };
                let row = row_ids[(i / step) as usize % row_ids.len()];
                let param = params[(i / step) as usize % params.len()];
                if !pvslab::sums::lift_independence_check(id, &g, row, param, p, &nr) {
                    all_ok = false;
                }
            }
            i += 1;
        });
        pass &= all_ok;
        // an element outside the action set averages to zero over its lifts
        let outside = GroupElement {
            g3: [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
            g2: GroupElement::identity().g2,
        };
        let (x_label, _) = id.labels();
        let vx = pvslab::tangent::annihilator_of_label(x_label, p, &nr);
        let (_, xi0) = pvslab::action_sets::pairing_reps(id, p, &nr);
        if !pvslab::action_sets::is_in_transposed_action_set(&outside, &vx, &xi0, p) {
            pass &= pvslab::sums::lift_family_averages_to_zero(id, &outside, p, &nr);
        }
    }
    line(
        8,
        "pairing invariance over all of G(F_5), lift independence, Gauss-sum identities",
        pass,
    );
}

fn combine(
    a: i64,
    fa: &pvslab::forms::Coeffs,
    b: i64,
    fb: &pvslab::forms::Coeffs,
    p: i64,
) -> pvslab::forms::Coeffs {
    let mut out = [0i64; 6];
    for i in 0..6 {
        out[i] = (a * fa[i] + b * fb[i]).rem_euclid(p);
    }
    out
}

#[test]
fn ell_override_independence() {
    // the verification is independent of the choice of non-residue
    let p = 5;
    for ell in [2i64, 3] {
        let nr = pvslab::ring::nonresidue_checked(p, ell).unwrap();
        for row in verify_tangent_table(p, &nr) {
            assert!(row.equal, "ell={} orbit {}", ell, row.orbit);
        }
        let v = verify_quotient_orbit(Orbit::O1s1s, p, &nr).unwrap();
        assert!(v.rows.iter().all(|r| r.pass), "ell={}", ell);
        for row in pvslab::sums::verify_pairing(pvslab::action_sets::PairingId::S2sD2, p, &nr)
            .unwrap()
        {
            assert!(row.pass, "ell={} row {}", ell, row.row);
        }
    }
}

#[test]
fn act_transpose_of_action_set_members_lands_in_perp() {
    // the defining membership property, on sampled template elements
    let p = 5;
    let nr = smallest_nonresidue(p);
    for id in pvslab::action_sets::ALL_PAIRINGS {
        let (x_label, _) = id.labels();
        let vx = pvslab::tangent::annihilator_of_label(x_label, p, &nr);
        let perp = vx.orthogonal_complement();
        let (_, xi0) = pvslab::action_sets::pairing_reps(id, p, &nr);
        let mut i = 0u64;
        pvslab::action_sets::for_each_template_element(id, p, &nr, |g3, g2| {
            if i % 1009 == 0 {
                let g = GroupElement { g3: *g3, g2: *g2 };
                let moved = act(&g, &xi0, p);
                assert!(perp.contains(&moved.flat()), "{}", id.name());
            }
            i += 1;
        });
    }
}
