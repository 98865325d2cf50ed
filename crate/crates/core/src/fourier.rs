//! Assembly of the Fourier transform of the maximality indicator on
//! V(Z/p²): the four frequency-family value tables, the norm identities of
//! the non-maximality transform, and the frequency-space partition checks.
//!
//! Values are assembled from this crate's own computed sums (the mod-p
//! orbital sums for frequencies divisible by p, the maximal exponential sums
//! elsewhere), then compared row by row against the closed-form tables.

use serde::Serialize;

use crate::action_sets::PairingId;
use crate::forms::FormPair;
use crate::orbits::{
    orbit_table, record, representative, Gl2SumTable, Orbit, ALL_ORBITS, DENSITY_ONE_ORBITS,
    MIXED_ORBITS,
};
use crate::quotient::{quotient_table, verify_quotient_orbit, QuotientSpace};
use crate::ring::NonResidue;
use crate::sums::m_values;
use crate::Error;

fn pw1(p: i64) -> i128 {
    p as i128 - 1
}
fn pq1(p: i64) -> i128 {
    p as i128 + 1
}
fn pp(p: i64, e: u32) -> i128 {
    (p as i128).pow(e)
}
fn cyc(p: i64) -> i128 {
    let q = p as i128;
    q * q + q + 1
}

/// Density of maximal lifts above a mod-p orbit, as (num, den).
pub fn maximal_lift_density(label: Orbit, p: i64) -> (i128, i128) {
    let q = p as i128;
    match label {
        Orbit::O1e4 | Orbit::O1e31 | Orbit::O1s11 | Orbit::O1s2 => (q - 1, q),
        Orbit::O1s1s => ((q - 1) * (q - 1), q * q),
        Orbit::O2s => (q * q - 1, q * q),
        l if DENSITY_ONE_ORBITS.contains(&l) => (1, 1),
        _ => (0, 1),
    }
}

/// #max in V(Z/p²): p¹²·Σ_orbits density·orbit size.
pub fn maximal_count(p: i64, nr: &NonResidue) -> i128 {
    let mut num = 0i128; // Σ density·size, over common denominator p²
    let q2 = pp(p, 2);
    for rec in orbit_table(p, nr) {
        let (n, d) = maximal_lift_density(rec.label, p);
        num += rec.size.eval(p) * n * (q2 / d);
    }
    assert_eq!(num % q2, 0);
    pp(p, 12) * (num / q2)
}

/// Expected p^{-12}·(transform of the maximal set) at frequencies pξ₁, per
/// mod-p orbit of ξ₁.
pub fn zero_family_expected(label: Orbit, p: i64) -> i128 {
    let q = p as i128;
    match label {
        Orbit::O0 => {
            pw1(p).pow(4)
                * q
                * pq1(p).pow(2)
                * (q.pow(5) + 2 * q.pow(4) + 4 * q.pow(3) + 4 * q.pow(2) + 3 * q + 1)
        }
        Orbit::OD1s => -pw1(p).pow(3) * q * pq1(p).pow(4),
        Orbit::OD11 => -pw1(p).pow(3) * q * (2 * q.pow(3) + 6 * q.pow(2) + 4 * q + 1),
        Orbit::OD2
        | Orbit::ODns
        | Orbit::OCns
        | Orbit::OB11
        | Orbit::OB2 => pw1(p).pow(2) * q * (2 * q.pow(2) + 3 * q + 1),
        Orbit::OCs => {
            -q.pow(7) + 5 * q.pow(5) - 3 * q.pow(4) - 3 * q.pow(3) + q.pow(2) + q
        }
        Orbit::O1e4 | Orbit::O1e31 | Orbit::O1s11 | Orbit::O1s2 => {
            q * (q.pow(3) - 3 * q.pow(2) + q + 1)
        }
        Orbit::O1s1s => pw1(p).pow(2) * q * (3 * q + 1),
        Orbit::O2s => -pw1(p) * q * pq1(p).pow(2),
        Orbit::O1111 | Orbit::O112 | Orbit::O22 | Orbit::O13 | Orbit::O4 => {
            -q.pow(3) + q.pow(2) + q
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct FourierRow {
    pub family: String,
    pub row: String,
    pub p: i64,
    pub orbit_size: String,
    pub expected_value: String,
    pub computed_value: String,
    pub pass: bool,
}

/// One assembled frequency class: its mod-p² orbit size and the value of
/// p^{-12}·(transform of the maximal set) on it.
#[derive(Clone, Debug)]
pub struct FrequencyClass {
    pub family: String,
    pub row: String,
    pub size: i128,
    pub value: i128,
}

/// The frequencies divisible by p: p^{-12}·transform(pξ₁) =
/// Σ_orbits density(O)·Σ_{x in O} e_p([x, ξ₁]), recomputed from the mod-p
/// orbital sums and compared with the tabulated column.
pub fn verify_zero_family(
    p: i64,
    nr: &NonResidue,
) -> Result<(Vec<FourierRow>, Vec<FrequencyClass>), Error> {
    if p != 5 {
        return Err(Error::ResourceGuard {
            what: "mod-p orbital sum assembly",
            p,
        });
    }
    let table = Gl2SumTable::new(p);
    let xis: Vec<FormPair> = ALL_ORBITS
        .iter()
        .map(|&o| representative(o, p, nr))
        .collect();
    let q2 = pp(p, 2);
    // Σ density·orbital-sum per frequency orbit, over denominator p²
    let mut totals = vec![0i128; ALL_ORBITS.len()];
    for label in ALL_ORBITS {
        let (n, d) = maximal_lift_density(label, p);
        if n == 0 {
            continue;
        }
        let sums = crate::orbits::modp_orbital_sums_multi(label, &xis, p, nr, &table)?;
        for (i, s) in sums.into_iter().enumerate() {
            let v = s
                .as_integer()
                .map_err(|_| Error::TableMismatch("orbital sum not rational".into()))?;
            totals[i] += i128::from(v) * n * (q2 / d);
        }
    }
    let mut rows = Vec::new();
    let mut classes = Vec::new();
    for (i, &xi_label) in ALL_ORBITS.iter().enumerate() {
        assert_eq!(totals[i] % q2, 0, "density-weighted sum must be integral");
        let computed = totals[i] / q2;
        let expected = zero_family_expected(xi_label, p);
        let size = record(xi_label, p, nr).size.eval(p);
        rows.push(FourierRow {
            family: "p*xi1".into(),
            row: xi_label.name().into(),
            p,
            orbit_size: size.to_string(),
            expected_value: expected.to_string(),
            computed_value: computed.to_string(),
            pass: computed == expected,
        });
        classes.push(FrequencyClass {
            family: "p*xi1".into(),
            row: xi_label.name().into(),
            size,
            value: computed,
        });
    }
    Ok((rows, classes))
}

/// The pairings contributing to each frequency family.
pub fn family_pairings(base: Orbit) -> Vec<PairingId> {
    match base {
        Orbit::OD1s => vec![
            PairingId::S1s11D1s,
            PairingId::S1s2D1s,
            PairingId::S1s1sD1s,
            PairingId::S1e31D1s,
            PairingId::S1e4D1s,
        ],
        Orbit::OD11 => vec![PairingId::S2sD11, PairingId::S1s1sD11, PairingId::S1e4D11],
        Orbit::OD2 => vec![PairingId::S2sD2, PairingId::S1s1sD2],
        Orbit::OCs => vec![PairingId::S1e31Cs],
        Orbit::O1e4 => vec![PairingId::S1e4S1e4],
        _ => vec![],
    }
}

/// Expected p^{-12}·value per row of the D1² family.
pub fn d1s_family_expected(row: usize, p: i64) -> i128 {
    let q = p as i128;
    match row {
        1 => -pw1(p).pow(3) * q * pq1(p).pow(3),
        2 | 3 => pw1(p).pow(2) * q * (2 * q + 1),
        4 | 6 | 7 | 14 => -pw1(p) * q * pq1(p),
        5 => q * (q.pow(3) - 2 * q.pow(2) + 1),
        8 | 9 | 15 | 16 => q,
        10 => pw1(p).pow(2) * q * pq1(p).pow(2),
        11 => pw1(p).pow(2) * q * pq1(p),
        12 | 13 => -pw1(p) * q,
        17..=23 => 0,
        _ => unreachable!(),
    }
}

/// Tabulated mod-p² orbit sizes of the D1² frequency rows.
pub fn d1s_family_size(row: usize, p: i64) -> i128 {
    let c = cyc(p);
    let (a, b, q1, den): (u32, u32, u32, i128) = match row {
        1 => (1, 4, 1, 1),
        2 => (2, 4, 2, 1),
        3 => (2, 5, 2, 2),
        4 => (3, 5, 1, 2),
        5 => (3, 4, 2, 1),
        6 | 7 => (3, 5, 2, 1),
        8 | 9 => (4, 5, 2, 2),
        10 => (2, 4, 2, 1),
        11 => (2, 6, 2, 1),
        12 => (3, 6, 2, 1),
        13 => (3, 7, 2, 1),
        14 => (3, 6, 2, 1),
        15 => (4, 6, 2, 1),
        16 => (4, 7, 2, 1),
        17 => (2, 8, 2, 2),
        18 => (3, 8, 2, 1),
        19 | 20 | 22 | 23 => (4, 8, 2, 4),
        21 => (3, 8, 1, 2),
        _ => unreachable!(),
    };
    pw1(p).pow(a) * pp(p, b) * pq1(p).pow(q1) * c / den
}

pub fn d11_family_expected(row: usize, p: i64) -> i128 {
    let q = p as i128;
    match row {
        14 => pw1(p) * q * q,
        15 => -pw1(p) * q * q,
        17 => -q * q,
        18 => q * q,
        _ => 0,
    }
}

pub fn d11_family_size(row: usize, p: i64) -> i128 {
    let c = cyc(p);
    let (a, b, q1, den): (u32, u32, u32, i128) = match row {
        1 => (2, 10, 2, 2),
        2 => (3, 10, 2, 2),
        3 => (4, 10, 2, 8),
        4 => (3, 10, 2, 2),
        5 => (4, 10, 2, 4),
        6 => (4, 10, 2, 8),
        7 => (2, 8, 2, 1),
        8 => (3, 9, 2, 2),
        9 | 10 => (3, 8, 2, 1),
        11 => (4, 9, 2, 2),
        12 => (4, 8, 2, 1),
        13 => (2, 7, 2, 1),
        14 | 15 => (3, 7, 2, 4),
        16 => (3, 7, 2, 1),
        17 | 18 => (4, 7, 2, 4),
        19 => (2, 7, 2, 2),
        20 => (1, 7, 2, 2),
        _ => unreachable!(),
    };
    pw1(p).pow(a) * pp(p, b) * pq1(p).pow(q1) * c / den
}

pub fn d2_family_expected(row: usize, p: i64) -> i128 {
    let q = p as i128;
    match row {
        6 => pw1(p) * q * q,
        7 => -q * q,
        8 => -pw1(p) * q * q,
        9 => q * q,
        _ => 0,
    }
}

pub fn d2_family_size(row: usize, p: i64) -> i128 {
    let c = cyc(p);
    let (a, b, q1, den): (u32, u32, u32, i128) = match row {
        1 => (3, 10, 1, 2),
        2 | 3 => (4, 10, 2, 4),
        4 => (3, 9, 2, 2),
        5 => (4, 9, 2, 2),
        6 | 8 => (3, 7, 2, 4),
        7 | 9 => (4, 7, 2, 4),
        10 => (3, 7, 1, 2),
        11 => (2, 7, 1, 2),
        _ => unreachable!(),
    };
    pw1(p).pow(a) * pp(p, b) * pq1(p).pow(q1) * c / den
}

fn row_number(index: &str) -> usize {
    let digits: String = index.chars().take_while(|c| c.is_ascii_digit()).collect();
    digits.parse().expect("row index starts with a number")
}

/// Assemble the transform above a nonzero frequency family from the computed
/// maximal exponential sums, verify values (and sizes, where tabulated), and
/// return the frequency classes.
pub fn verify_nonzero_family(
    base: Orbit,
    p: i64,
    nr: &NonResidue,
) -> Result<(Vec<FourierRow>, Vec<FrequencyClass>), Error> {
    let pairings = family_pairings(base);
    assert!(!pairings.is_empty(), "not a frequency family");
    // Σ over pairings of M per row index
    let mut value_by_row: Vec<(String, i128)> = Vec::new();
    for id in &pairings {
        let mv = m_values(*id, p, nr)?;
        if value_by_row.is_empty() {
            value_by_row = mv;
        } else {
            assert_eq!(value_by_row.len(), mv.len(), "pairings disagree on rows");
            for (slot, (idx, m)) in value_by_row.iter_mut().zip(mv) {
                assert_eq!(slot.0, idx);
                slot.1 += m;
            }
        }
    }
    // quotient data for the orbit sizes; the Cs and 1⁴ families carry value 0
    // and their own row numbering, so no size column is matched there
    let tabulated_sizes = matches!(base, Orbit::OD1s | Orbit::OD11 | Orbit::OD2);
    let qv = if tabulated_sizes {
        Some(verify_quotient_orbit(base, p, nr)?)
    } else {
        None
    };
    let x0 = representative(base, p, nr);
    let qdim = QuotientSpace::new(&x0, p).vx.dim() as u32;
    let base_size = record(base, p, nr).size.eval(p);

    let mut rows = Vec::new();
    let mut classes = Vec::new();
    for (idx, m_total) in &value_by_row {
        let n = row_number(idx);
        assert_eq!(m_total % pp(p, 12), 0, "assembled value must be p^12-divisible");
        let computed = m_total / pp(p, 12);
        let (expected, expected_size) = match base {
            Orbit::OD1s => (d1s_family_expected(n, p), Some(d1s_family_size(n, p))),
            Orbit::OD11 => (d11_family_expected(n, p), Some(d11_family_size(n, p))),
            Orbit::OD2 => (d2_family_expected(n, p), Some(d2_family_size(n, p))),
            // the transform vanishes over the Cs and 1⁴ families
            Orbit::OCs | Orbit::O1e4 => (0, None),
            _ => unreachable!(),
        };
        // mod-p² orbit size from the quotient decomposition
        let size = qv
            .as_ref()
            .and_then(|qv| {
                qv.resolved
                    .iter()
                    .find(|(name, _, _)| row_number(name) == n)
                    .map(|(_, s, _)| base_size * pp(p, qdim) * s)
            })
            .unwrap_or(0);
        let size_ok = expected_size.map_or(true, |es| es == size);
        rows.push(FourierRow {
            family: base.name().into(),
            row: idx.clone(),
            p,
            orbit_size: size.to_string(),
            expected_value: expected.to_string(),
            computed_value: computed.to_string(),
            pass: computed == expected && size_ok,
        });
        classes.push(FrequencyClass {
            family: base.name().into(),
            row: idx.clone(),
            size,
            value: computed,
        });
    }
    Ok((rows, classes))
}

#[derive(Serialize, Clone, Debug)]
pub struct NormsReport {
    pub p: i64,
    pub l1: String,
    pub l1_expected: String,
    pub l2sq: String,
    pub l2sq_expected: String,
    pub support: String,
    pub support_expected: String,
    pub nonmax_count: String,
    pub parseval_ok: bool,
    pub theorem_match: bool,
}

/// Theorem-1 norm polynomials for the transform of the non-maximal set.
pub fn expected_l1(p: i64) -> i128 {
    let q = p as i128;
    2 * q.pow(29) + 2 * q.pow(28) + 4 * q.pow(27) - 8 * q.pow(26) - 19 * q.pow(25)
        - 2 * q.pow(24)
        + 20 * q.pow(23)
        + 24 * q.pow(22)
        - 5 * q.pow(21)
        - 17 * q.pow(20)
        - 5 * q.pow(19)
        + 3 * q.pow(18)
        + 2 * q.pow(17)
        - 2 * q.pow(16)
        + q.pow(15)
        + q.pow(14)
}

pub fn expected_l2sq(p: i64) -> i128 {
    let q = p as i128;
    q.pow(46) + 2 * q.pow(45) + 2 * q.pow(44) - 3 * q.pow(43) - 4 * q.pow(42) - q.pow(41)
        + 3 * q.pow(40)
        + 3 * q.pow(39)
        - q.pow(38)
        - q.pow(37)
}

pub fn expected_support(p: i64) -> i128 {
    let q = p as i128;
    2 * q.pow(15) + q.pow(14) - 2 * q.pow(13) - q.pow(12) + 2 * q.pow(10) - q.pow(8)
}

/// All frequency classes of the nonzero support families plus the divisible
/// frequencies, with the values of the maximal-set transform.
pub fn assemble_all_classes(
    p: i64,
    nr: &NonResidue,
) -> Result<(Vec<FourierRow>, Vec<FrequencyClass>), Error> {
    let mut rows = Vec::new();
    let mut classes = Vec::new();
    let (r, c) = verify_zero_family(p, nr)?;
    rows.extend(r);
    classes.extend(c);
    for base in [Orbit::OD1s, Orbit::OD11, Orbit::OD2, Orbit::OCs, Orbit::O1e4] {
        let (r, c) = verify_nonzero_family(base, p, nr)?;
        rows.extend(r);
        classes.extend(c);
    }
    Ok((rows, classes))
}

/// L¹, L² and support of the non-maximality transform at p = 5, against the
/// closed forms and Parseval.
pub fn verify_norms(p: i64, nr: &NonResidue) -> Result<NormsReport, Error> {
    if p != 5 {
        return Err(Error::ResourceGuard {
            what: "norm assembly",
            p,
        });
    }
    let (rows, classes) = assemble_all_classes(p, nr)?;
    for r in &rows {
        if !r.pass {
            return Err(Error::TableMismatch(format!(
                "family {} row {}",
                r.family, r.row
            )));
        }
    }
    let nmax = maximal_count(p, nr);
    let nonmax = pp(p, 24) - nmax;
    let mut l1: i128 = 0;
    let mut l2sq: i128 = 0;
    let mut support: i128 = 0;
    for c in &classes {
        // transform of the non-maximal set: p²⁴δ₀ - transform of the maximal
        let v = if c.family == "p*xi1" && c.row == "0" {
            // the zero frequency: p²⁴ - #max = #nonmax
            debug_assert_eq!(c.size, 1);
            nonmax
        } else {
            -c.value * pp(p, 12)
        };
        if v != 0 {
            support += c.size;
            l1 += c.size * v.abs();
            l2sq += c.size * v * v;
        }
    }
    let theorem_match =
        l1 == expected_l1(p) && l2sq == expected_l2sq(p) && support == expected_support(p);
    Ok(NormsReport {
        p,
        l1: l1.to_string(),
        l1_expected: expected_l1(p).to_string(),
        l2sq: l2sq.to_string(),
        l2sq_expected: expected_l2sq(p).to_string(),
        support: support.to_string(),
        support_expected: expected_support(p).to_string(),
        nonmax_count: nonmax.to_string(),
        parseval_ok: l2sq == pp(p, 24) * nonmax,
        theorem_match,
    })
}

#[derive(Serialize, Clone, Debug)]
pub struct PartitionReport {
    pub p: i64,
    pub families: Vec<(String, String, String, bool)>,
    pub grand_total: String,
    pub expected_total: String,
    pub pass: bool,
}

/// Every frequency family's classes must partition its p¹²·|orbit| lifts, and
/// the families plus the unclassified orbits must partition all of V(Z/p²)^*.
pub fn frequency_partition_check(p: i64, nr: &NonResidue) -> Result<PartitionReport, Error> {
    if p != 5 && p != 7 {
        return Err(Error::ResourceGuard {
            what: "frequency partition",
            p,
        });
    }
    let mut families = Vec::new();
    let mut grand: i128 = 0;
    // frequencies divisible by p: one class per mod-p orbit of ξ₁
    let zero_total: i128 = orbit_table(p, nr).iter().map(|r| r.size.eval(p)).sum();
    families.push((
        "p*xi1".to_string(),
        pp(p, 12).to_string(),
        zero_total.to_string(),
        zero_total == pp(p, 12),
    ));
    grand += zero_total;
    // classified families partition their lifts
    for base in [Orbit::OD1s, Orbit::OD11, Orbit::OD2, Orbit::OCs] {
        let qv = verify_quotient_orbit(base, p, nr)?;
        let x0 = representative(base, p, nr);
        let qdim = QuotientSpace::new(&x0, p).vx.dim() as u32;
        let base_size = record(base, p, nr).size.eval(p);
        let total: i128 = qv
            .resolved
            .iter()
            .map(|(_, s, _)| base_size * pp(p, qdim) * s)
            .sum();
        let expected = pp(p, 12) * base_size;
        families.push((
            base.name().to_string(),
            expected.to_string(),
            total.to_string(),
            total == expected,
        ));
        grand += total;
    }
    // remaining nonzero orbits contribute their full lift mass
    for rec in orbit_table(p, nr) {
        if matches!(
            rec.label,
            Orbit::O0 | Orbit::OD1s | Orbit::OD11 | Orbit::OD2 | Orbit::OCs
        ) {
            continue;
        }
        grand += pp(p, 12) * rec.size.eval(p);
    }
    let pass = families.iter().all(|f| f.3) && grand == pp(p, 24);
    Ok(PartitionReport {
        p,
        families,
        grand_total: grand.to_string(),
        expected_total: pp(p, 24).to_string(),
        pass,
    })
}

/// Aggregated quotient-table check: Σ sizes of the mod-p² orbits above a base
/// orbit is p¹²·|orbit|, the rearranged stabilizer-size identity.
pub fn lift_mass_identity(base: Orbit, p: i64, nr: &NonResidue) -> Result<bool, Error> {
    if !quotient_table(base).full {
        return Ok(true);
    }
    let qv = verify_quotient_orbit(base, p, nr)?;
    let x0 = representative(base, p, nr);
    let qdim = QuotientSpace::new(&x0, p).vx.dim() as u32;
    let base_size = record(base, p, nr).size.eval(p);
    let total: i128 = qv
        .resolved
        .iter()
        .map(|(_, s, _)| base_size * pp(p, qdim) * s)
        .sum();
    Ok(total == pp(p, 12) * base_size)
}

/// CSV export of the assembled table: family,row,orbit_size,value_max,
/// value_nonmax (values carry the p¹² normalization removed/applied).
pub fn classes_to_csv(classes: &[FrequencyClass], p: i64) -> String {
    let mut out = String::from("family,row,orbit_size,value_max_over_p12,value_nonmax\n");
    let nmax = classes
        .iter()
        .find(|c| c.family == "p*xi1" && c.row == "0")
        .map(|c| c.value * pp(p, 12))
        .unwrap_or(0);
    for c in classes {
        let nonmax = if c.family == "p*xi1" && c.row == "0" {
            pp(p, 24) - nmax
        } else {
            -c.value * pp(p, 12)
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            c.family, c.row, c.size, c.value, nonmax
        ));
    }
    out
}

/// Support containment sanity: L¹ and the support bound against max |value|.
pub fn norm_sanity(l1: i128, l2sq: i128, support: i128, classes: &[FrequencyClass], p: i64) -> bool {
    let max_v = classes
        .iter()
        .map(|c| (c.value * pp(p, 12)).abs())
        .max()
        .unwrap_or(0)
        .max(1);
    l1 * max_v >= l2sq && support * max_v >= l1
}

/// The mixed orbits whose lifts contain both classes; everything above the
/// other nonzero orbits is all-maximal or all-non-maximal, so the transform
/// of the maximal set vanishes there for nonzero frequencies.
pub fn density_zero_or_one(label: Orbit) -> bool {
    !MIXED_ORBITS.contains(&label) && label != Orbit::O0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::smallest_nonresidue;

    #[test]
    fn size_columns_match_quotient_data_p5() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        for (base, size_fn) in [
            (Orbit::OD1s, d1s_family_size as fn(usize, i64) -> i128),
            (Orbit::OD11, d11_family_size),
            (Orbit::OD2, d2_family_size),
        ] {
            let qv = verify_quotient_orbit(base, p, &nr).unwrap();
            let x0 = representative(base, p, &nr);
            let qdim = QuotientSpace::new(&x0, p).vx.dim() as u32;
            let base_size = record(base, p, &nr).size.eval(p);
            for (name, qsize, _) in &qv.resolved {
                let n = row_number(name);
                assert_eq!(
                    base_size * pp(p, qdim) * qsize,
                    size_fn(n, p),
                    "{} row {}",
                    base.name(),
                    name
                );
            }
        }
    }

    #[test]
    fn maximal_count_matches_zero_row() {
        // value at the zero frequency times p¹² is #max
        for p in [5i64, 7, 11, 13] {
            let nr = smallest_nonresidue(p);
            assert_eq!(
                maximal_count(p, &nr),
                pp(p, 12) * zero_family_expected(Orbit::O0, p),
                "p={}",
                p
            );
        }
    }

    #[test]
    fn partition_check_p5() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        let report = frequency_partition_check(p, &nr).unwrap();
        assert!(report.pass, "{:?}", report);
    }

    #[test]
    fn d2_family_assembles_p5() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        let (rows, _) = verify_nonzero_family(Orbit::OD2, p, &nr).unwrap();
        assert_eq!(rows.len(), 11);
        for r in &rows {
            assert!(r.pass, "{:?}", r);
        }
    }
}
