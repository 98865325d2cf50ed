//! The 20 orbits of G(F_p) acting on V(F_p): labels, representatives, size and
//! stabilizer polynomials, brute-force stabilizer verification and the mod-p
//! orbital character sums.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::forms::{
    for_each_gl3_with_first_row, gl2_elements, pair_forms, row_space, transform3, Coeffs,
    FormPair, ZERO_FORM,
};
use crate::ring::{md, CycInt, NonResidue};
use crate::Error;

/// Labels of the 20 orbits, named by the splitting/geometry types used in the
/// tables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orbit {
    O0,
    OD1s,  // D1²
    OD11,
    OD2,
    ODns,
    OCs,
    OCns,
    OB11,
    OB2,
    O1e4,  // 1⁴
    O1e31, // 1³1
    O1s1s, // 1²1²
    O2s,   // 2²
    O1s11, // 1²11
    O1s2,  // 1²2
    O1111,
    O112,
    O22,
    O13,
    O4,
}

pub const ALL_ORBITS: [Orbit; 20] = [
    Orbit::O0,
    Orbit::OD1s,
    Orbit::OD11,
    Orbit::OD2,
    Orbit::ODns,
    Orbit::OCs,
    Orbit::OCns,
    Orbit::OB11,
    Orbit::OB2,
    Orbit::O1e4,
    Orbit::O1e31,
    Orbit::O1s1s,
    Orbit::O2s,
    Orbit::O1s11,
    Orbit::O1s2,
    Orbit::O1111,
    Orbit::O112,
    Orbit::O22,
    Orbit::O13,
    Orbit::O4,
];

/// The six orbits mixing maximal and non-maximal lifts.
pub const MIXED_ORBITS: [Orbit; 6] = [
    Orbit::O1e4,
    Orbit::O1e31,
    Orbit::O1s1s,
    Orbit::O2s,
    Orbit::O1s11,
    Orbit::O1s2,
];

/// The five full-density orbits, all of whose lifts are maximal.
pub const DENSITY_ONE_ORBITS: [Orbit; 5] =
    [Orbit::O1111, Orbit::O112, Orbit::O22, Orbit::O13, Orbit::O4];

impl Orbit {
    pub fn name(&self) -> &'static str {
        match self {
            Orbit::O0 => "0",
            Orbit::OD1s => "D1^2",
            Orbit::OD11 => "D11",
            Orbit::OD2 => "D2",
            Orbit::ODns => "Dns",
            Orbit::OCs => "Cs",
            Orbit::OCns => "Cns",
            Orbit::OB11 => "B11",
            Orbit::OB2 => "B2",
            Orbit::O1e4 => "1^4",
            Orbit::O1e31 => "1^31",
            Orbit::O1s1s => "1^21^2",
            Orbit::O2s => "2^2",
            Orbit::O1s11 => "1^211",
            Orbit::O1s2 => "1^22",
            Orbit::O1111 => "1111",
            Orbit::O112 => "112",
            Orbit::O22 => "22",
            Orbit::O13 => "13",
            Orbit::O4 => "4",
        }
    }

    pub fn from_name(s: &str) -> Option<Orbit> {
        ALL_ORBITS.iter().copied().find(|o| o.name() == s)
    }
}

/// s(a,b,c,d)·num/den with s(a,b,c,d) = (p-1)^a p^b (p+1)^c (p²+p+1)^{d/2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizePoly {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d2: u32, // exponent of p²+p+1, i.e. d/2
    pub num: i64,
    pub den: i64,
}

pub const fn s_poly(a: u32, b: u32, c: u32, d: u32) -> SizePoly {
    SizePoly {
        a,
        b,
        c,
        d2: d / 2,
        num: 1,
        den: 1,
    }
}

impl SizePoly {
    pub const fn times(self, num: i64) -> SizePoly {
        SizePoly { num, ..self }
    }
    pub const fn over(self, den: i64) -> SizePoly {
        SizePoly { den, ..self }
    }

    pub fn eval(&self, p: i64) -> i128 {
        let p = p as i128;
        let v = (p - 1).pow(self.a) * p.pow(self.b) * (p + 1).pow(self.c)
            * (p * p + p + 1).pow(self.d2)
            * self.num as i128;
        assert_eq!(v % self.den as i128, 0, "size polynomial not integral");
        v / self.den as i128
    }

    pub fn display(&self) -> String {
        let mut s = String::new();
        if self.num != 1 {
            s.push_str(&format!("{}*", self.num));
        }
        s.push_str(&format!("s({},{},{},{})", self.a, self.b, self.c, 2 * self.d2));
        if self.den != 1 {
            s.push_str(&format!("/{}", self.den));
        }
        s
    }
}

/// |G(F_p)| = s(5,4,2,2).
pub fn group_order(p: i64) -> i128 {
    s_poly(5, 4, 2, 2).eval(p)
}

/// One row of the orbit table: label, representative, orbit size and
/// stabilizer size.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub label: Orbit,
    pub representative: FormPair,
    pub size: SizePoly,
    pub stabilizer: SizePoly,
}

const W2: Coeffs = [0, 0, 0, 0, 0, 1];
const VW: Coeffs = [0, 0, 0, 0, 1, 0];
const UW: Coeffs = [0, 0, 1, 0, 0, 0];
const UV: Coeffs = [0, 1, 0, 0, 0, 0];
const V2: Coeffs = [0, 0, 0, 1, 0, 0];

/// Coefficients of the lexicographically smallest monic irreducible cubic
/// X³ + aX² + bX + c over F_p.
pub fn smallest_irreducible_cubic(p: i64) -> (i64, i64, i64) {
    for a in 0..p {
        for b in 0..p {
            'c: for c in 0..p {
                for x in 0..p {
                    if md(((x + a) * x + b) * x + c, p) == 0 {
                        continue 'c;
                    }
                }
                return (a, b, c);
            }
        }
    }
    unreachable!("irreducible cubics exist over every F_p")
}

/// Coefficients of the lexicographically smallest monic irreducible quartic
/// X⁴ + aX³ + bX² + cX + d over F_p.
pub fn smallest_irreducible_quartic(p: i64) -> (i64, i64, i64, i64) {
    // monic irreducible quadratics, for trial division
    let mut quads = Vec::new();
    for s in 0..p {
        for t in 0..p {
            // X² + sX + t irreducible iff s² - 4t is a non-square
            if crate::ring::legendre_i64(s * s - 4 * t, p) == -1 {
                quads.push((s, t));
            }
        }
    }
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                'd: for d in 0..p {
                    for x in 0..p {
                        if md((((x + a) * x + b) * x + c) * x + d, p) == 0 {
                            continue 'd;
                        }
                    }
                    // no linear factor; exclude products of two irreducible quadratics:
                    // (X²+sX+t)(X²+uX+v) = X⁴+aX³+bX²+cX+d forces u = a-s, then
                    // v = b - t - s(a-s), and the remaining two coefficient matches.
                    for &(s, t) in &quads {
                        let u = md(a - s, p);
                        let v = md(b - t - s * u, p);
                        if md(s * v + t * u - c, p) == 0 && md(t * v - d, p) == 0 {
                            continue 'd;
                        }
                    }
                    return (a, b, c, d);
                }
            }
        }
    }
    unreachable!("irreducible quartics exist over every F_p")
}

/// Representative of an orbit, with ℓ substituted and with the B₃/B₄ forms
/// built from the smallest irreducible cubic/quartic.
pub fn representative(label: Orbit, p: i64, nr: &NonResidue) -> FormPair {
    let l = nr.ell;
    let pair = |a: Coeffs, b: Coeffs| FormPair::new(a, b).reduce(p);
    match label {
        Orbit::O0 => pair(ZERO_FORM, ZERO_FORM),
        Orbit::OD1s => pair(ZERO_FORM, W2),
        Orbit::OD11 => pair(ZERO_FORM, VW),
        Orbit::OD2 => pair(ZERO_FORM, [0, 0, 0, 1, 0, -l]),
        Orbit::ODns => pair(ZERO_FORM, [1, 0, 0, 0, -1, 0]),
        Orbit::OCs => pair(W2, VW),
        Orbit::OCns => pair(VW, UW),
        Orbit::OB11 => pair(W2, V2),
        Orbit::OB2 => pair(VW, [0, 0, 0, 1, 0, l]),
        Orbit::O1e4 => pair(W2, [0, 0, 1, 1, 0, 0]),
        Orbit::O1e31 => pair(VW, [0, 0, 1, 1, 0, 0]),
        Orbit::O1s1s => pair(W2, UV),
        Orbit::O2s => pair(W2, [1, 0, 0, -l, 0, 0]),
        Orbit::O1s11 => pair([0, 0, 0, 1, 0, -1], UW),
        Orbit::O1s2 => pair([0, 0, 0, 1, 0, -l], UW),
        Orbit::O1111 => pair([0, 0, 1, 0, -1, 0], [0, 1, 0, 0, -1, 0]),
        Orbit::O112 => pair(VW, [1, 0, 0, -1, 0, -l]),
        Orbit::O22 => pair(VW, [1, 0, 0, -l, 0, -l]),
        Orbit::O13 => {
            let (a3, b3, c3) = smallest_irreducible_cubic(p);
            pair([0, 0, 1, -1, 0, 0], [0, 1, 0, a3, b3, c3])
        }
        Orbit::O4 => {
            let (a4, b4, c4, d4) = smallest_irreducible_quartic(p);
            pair([0, 0, 1, -1, 0, 0], [1, a4, 0, b4, c4, d4])
        }
    }
}

/// The orbit table: size and stabilizer polynomials for every label.
pub fn orbit_table(p: i64, nr: &NonResidue) -> Vec<OrbitRecord> {
    let rec = |label, size: SizePoly, stab: SizePoly| OrbitRecord {
        label,
        representative: representative(label, p, nr),
        size,
        stabilizer: stab,
    };
    vec![
        rec(Orbit::O0, s_poly(0, 0, 0, 0), s_poly(5, 4, 2, 2)),
        rec(Orbit::OD1s, s_poly(1, 0, 1, 2), s_poly(4, 4, 1, 0)),
        rec(Orbit::OD11, s_poly(1, 1, 2, 2).over(2), s_poly(4, 3, 0, 0).times(2)),
        rec(Orbit::OD2, s_poly(2, 1, 1, 2).over(2), s_poly(3, 3, 1, 0).times(2)),
        rec(Orbit::ODns, s_poly(2, 2, 1, 2), s_poly(3, 2, 1, 0)),
        rec(Orbit::OCs, s_poly(2, 1, 2, 2), s_poly(3, 3, 0, 0)),
        rec(Orbit::OCns, s_poly(2, 3, 1, 2), s_poly(3, 1, 1, 0)),
        rec(Orbit::OB11, s_poly(2, 2, 2, 2).over(2), s_poly(3, 2, 0, 0).times(2)),
        rec(Orbit::OB2, s_poly(3, 2, 1, 2).over(2), s_poly(2, 2, 1, 0).times(2)),
        rec(Orbit::O1e4, s_poly(3, 2, 2, 2), s_poly(2, 2, 0, 0)),
        rec(Orbit::O1e31, s_poly(3, 3, 2, 2), s_poly(2, 1, 0, 0)),
        rec(Orbit::O1s1s, s_poly(2, 4, 2, 2).over(2), s_poly(3, 0, 0, 0).times(2)),
        rec(Orbit::O2s, s_poly(3, 4, 1, 2).over(2), s_poly(2, 0, 1, 0).times(2)),
        rec(Orbit::O1s11, s_poly(3, 4, 2, 2).over(2), s_poly(2, 0, 0, 0).times(2)),
        rec(Orbit::O1s2, s_poly(3, 4, 2, 2).over(2), s_poly(2, 0, 0, 0).times(2)),
        rec(Orbit::O1111, s_poly(4, 4, 2, 2).over(24), s_poly(1, 0, 0, 0).times(24)),
        rec(Orbit::O112, s_poly(4, 4, 2, 2).over(4), s_poly(1, 0, 0, 0).times(4)),
        rec(Orbit::O22, s_poly(4, 4, 2, 2).over(8), s_poly(1, 0, 0, 0).times(8)),
        rec(Orbit::O13, s_poly(4, 4, 2, 2).over(3), s_poly(1, 0, 0, 0).times(3)),
        rec(Orbit::O4, s_poly(4, 4, 2, 2).over(4), s_poly(1, 0, 0, 0).times(4)),
    ]
}

pub fn record(label: Orbit, p: i64, nr: &NonResidue) -> OrbitRecord {
    orbit_table(p, nr)
        .into_iter()
        .find(|r| r.label == label)
        .expect("every label is in the table")
}

fn guard_scan_prime(p: i64) -> Result<(), Error> {
    if p == 5 || p == 7 {
        Ok(())
    } else {
        Err(Error::ResourceGuard {
            what: "full GL3 group scan",
            p,
        })
    }
}

/// #{g in G(F_p): g·x = x} by scanning GL₃ and solving for the GL₂ factor.
///
/// For fixed g₃ the fixed-point condition is a pair of linear systems: with
/// Ã = g₃Ag₃ᵗ and B̃ = g₃Bg₃ᵗ, the GL₂ rows (α,β) and (γ,δ) must satisfy
/// αÃ + βB̃ = A and γÃ + δB̃ = B; count solutions with αδ - βγ a unit.
pub fn brute_stabilizer_count(x: &FormPair, p: i64) -> Result<i128, Error> {
    guard_scan_prime(p)?;
    let x = x.reduce(p);
    if x.is_zero_mod(p) {
        return Ok(group_order(p));
    }
    let rows = row_space(p);
    let total: i128 = rows
        .par_iter()
        .map(|r0| {
            let mut local: i128 = 0;
            for_each_gl3_with_first_row(p, r0, &rows, &mut |g3| {
                let ta = transform3(g3, &x.a, p);
                let tb = transform3(g3, &x.b, p);
                local += count_g2_solutions(p, &ta, &tb, &x.a) .map_or(0, |s1| {
                    count_g2_solutions(p, &ta, &tb, &x.b)
                        .map_or(0, |s2| count_unit_det_pairs(p, &s1, &s2))
                });
            });
            local
        })
        .sum();
    Ok(total)
}

/// Solutions (α, β) of αÃ + βB̃ = target over F_p, as an affine line/plane:
/// (particular, kernel basis). None if inconsistent.
fn count_g2_solutions(
    p: i64,
    ta: &Coeffs,
    tb: &Coeffs,
    target: &Coeffs,
) -> Option<(Vec<i64>, Vec<Vec<i64>>)> {
    let mut rows: Vec<[i64; 4]> = Vec::with_capacity(6);
    let mut rhs: Vec<i64> = Vec::with_capacity(6);
    for i in 0..6 {
        rows.push([ta[i], tb[i], 0, 0]);
        rhs.push(target[i]);
    }
    crate::linalg::solve_affine(p, &rows, &rhs, 2)
}

/// Count pairs ((α,β) in S1, (γ,δ) in S2) with αδ - βγ != 0.
fn count_unit_det_pairs(
    p: i64,
    s1: &(Vec<i64>, Vec<Vec<i64>>),
    s2: &(Vec<i64>, Vec<Vec<i64>>),
) -> i128 {
    let mut n = 0i128;
    let enum1 = enumerate_affine(p, s1);
    let enum2 = enumerate_affine(p, s2);
    for (a, b) in &enum1 {
        for (c, d) in &enum2 {
            if md(a * d - b * c, p) != 0 {
                n += 1;
            }
        }
    }
    n
}

fn enumerate_affine(p: i64, s: &(Vec<i64>, Vec<Vec<i64>>)) -> Vec<(i64, i64)> {
    let (part, ker) = s;
    match ker.len() {
        0 => vec![(part[0], part[1])],
        1 => (0..p)
            .map(|t| {
                (
                    md(part[0] + t * ker[0][0], p),
                    md(part[1] + t * ker[0][1], p),
                )
            })
            .collect(),
        _ => {
            let mut out = Vec::with_capacity((p * p) as usize);
            for t in 0..p {
                for u in 0..p {
                    out.push((
                        md(part[0] + t * ker[0][0] + u * ker[1][0], p),
                        md(part[1] + t * ker[0][1] + u * ker[1][1], p),
                    ));
                }
            }
            out
        }
    }
}

/// Exponent-histogram table for the inner GL₂ character sums: entry
/// [α,β,γ,δ] is the histogram over GL₂ of αa + βb + γc + δd mod p, so inner
/// sums over the GL₂ factor become table lookups in the GL₃ scans.
pub struct Gl2SumTable {
    pub p: i64,
    hist: Vec<i64>, // (p^4) x p
}

impl Gl2SumTable {
    pub fn new(p: i64) -> Self {
        let pu = p as usize;
        let mut hist = vec![0i64; pu.pow(4) * pu];
        for g in gl2_elements(p) {
            let (a, b, c, d) = (g[0][0], g[0][1], g[1][0], g[1][1]);
            for al in 0..p {
                for be in 0..p {
                    for ga in 0..p {
                        let partial = al * a + be * b + ga * c;
                        for de in 0..p {
                            let t = md(partial + de * d, p);
                            let key = (((al * p + be) * p + ga) * p + de) as usize;
                            hist[key * pu + t as usize] += 1;
                        }
                    }
                }
            }
        }
        Gl2SumTable { p, hist }
    }

    /// Histogram slice for coefficient vector (α,β,γ,δ).
    #[inline]
    pub fn slice(&self, al: i64, be: i64, ga: i64, de: i64) -> &[i64] {
        let p = self.p;
        let idx = (((al * p + be) * p + ga) * p + de) as usize * p as usize;
        &self.hist[idx..idx + p as usize]
    }
}

/// Σ_{x' in orbit} e_p([x', ξ]) as a cyclotomic integer, computed as
/// S_p(x₀,ξ)/|Stab(x₀)| with the sum over G(F_p) factored through GL₃ and the
/// GL₂ histogram table.
pub fn modp_orbital_sum(
    label: Orbit,
    xi: &FormPair,
    p: i64,
    nr: &NonResidue,
    table: &Gl2SumTable,
) -> Result<CycInt, Error> {
    let sums = modp_orbital_sums_multi(label, std::slice::from_ref(xi), p, nr, table)?;
    Ok(sums.into_iter().next().unwrap())
}

/// The same sum for several frequencies in a single GL₃ pass.
pub fn modp_orbital_sums_multi(
    label: Orbit,
    xis: &[FormPair],
    p: i64,
    nr: &NonResidue,
    table: &Gl2SumTable,
) -> Result<Vec<CycInt>, Error> {
    guard_scan_prime(p)?;
    let x = representative(label, p, nr);
    if x.is_zero_mod(p) {
        // single zero element: e_p([0, xi]) = 1
        return Ok(xis.iter().map(|_| CycInt::from_integer(1, p)).collect());
    }
    let rows = row_space(p);
    let nxi = xis.len();
    let pu = p as usize;
    let group_hist: Vec<i64> = rows
        .par_iter()
        .map(|r0| {
            let mut local = vec![0i64; nxi * pu];
            for_each_gl3_with_first_row(p, r0, &rows, &mut |g3| {
                let ta = transform3(g3, &x.a, p);
                let tb = transform3(g3, &x.b, p);
                for (i, xi) in xis.iter().enumerate() {
                    // [g·x, ξ] = α[Ã,ξ_A] + β[B̃,ξ_A] + γ[Ã,ξ_B] + δ[B̃,ξ_B]
                    let al = pair_forms(&ta, &xi.a, p);
                    let be = pair_forms(&tb, &xi.a, p);
                    let ga = pair_forms(&ta, &xi.b, p);
                    let de = pair_forms(&tb, &xi.b, p);
                    let slice = table.slice(al, be, ga, de);
                    let dst = &mut local[i * pu..(i + 1) * pu];
                    for (d, s) in dst.iter_mut().zip(slice) {
                        *d += s;
                    }
                }
            });
            local
        })
        .reduce(
            || vec![0i64; nxi * pu],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
                a
            },
        );
    let stab = record(label, p, nr).stabilizer.eval(p);
    let stab64 = i64::try_from(stab).expect("stabilizer fits i64 for p <= 7");
    let mut out = Vec::with_capacity(nxi);
    for i in 0..nxi {
        let mut counts = vec![0i64; pu];
        for r in 0..pu {
            let c = group_hist[i * pu + r];
            assert_eq!(c % stab64, 0, "orbit sum histogram must be stabilizer-divisible");
            counts[r] = c / stab64;
        }
        out.push(CycInt::from_counts(counts, p));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::smallest_nonresidue;

    #[test]
    fn partition_identity() {
        // Σ orbit sizes = p^12 for p in {5,7,11,13}
        for p in [5i64, 7, 11, 13] {
            let nr = smallest_nonresidue(p);
            let total: i128 = orbit_table(p, &nr).iter().map(|r| r.size.eval(p)).sum();
            assert_eq!(total, (p as i128).pow(12), "p={}", p);
        }
    }

    #[test]
    fn orbit_stabilizer_products() {
        for p in [5i64, 7, 11, 13] {
            let nr = smallest_nonresidue(p);
            for r in orbit_table(p, &nr) {
                assert_eq!(
                    r.size.eval(p) * r.stabilizer.eval(p),
                    group_order(p),
                    "row {}",
                    r.label.name()
                );
            }
        }
    }

    #[test]
    fn smallest_cubic_p5() {
        // cubes are a bijection mod 5, so X³+c always has a root; the first
        // irreducible in scan order is X³ + X + 1
        assert_eq!(smallest_irreducible_cubic(5), (0, 1, 1));
    }

    #[test]
    fn quartic_has_no_roots_or_quadratic_factors() {
        for p in [5i64, 7] {
            let (a, b, c, d) = smallest_irreducible_quartic(p);
            for x in 0..p {
                assert_ne!(md((((x + a) * x + b) * x + c) * x + d, p), 0);
            }
            // brute check against all quadratic factorizations
            for s in 0..p {
                for t in 0..p {
                    for u in 0..p {
                        for v in 0..p {
                            let q = [
                                md(s + u - a, p),
                                md(t + v + s * u - b, p),
                                md(s * v + t * u - c, p),
                                md(t * v - d, p),
                            ];
                            assert_ne!(q, [0, 0, 0, 0], "quartic factors at p={}", p);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stabilizer_counts_p5_spot_checks() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        // zero orbit: the whole group
        assert_eq!(
            brute_stabilizer_count(&representative(Orbit::O0, p, &nr), p).unwrap(),
            714_240_000
        );
        // 1⁴: s(2,2,0,0) = (p-1)²p² = 400
        assert_eq!(
            brute_stabilizer_count(&representative(Orbit::O1e4, p, &nr), p).unwrap(),
            400
        );
        // 1111: 24(p-1) = 96
        assert_eq!(
            brute_stabilizer_count(&representative(Orbit::O1111, p, &nr), p).unwrap(),
            96
        );
    }

    #[test]
    fn orbital_sum_at_zero_frequency_is_orbit_size() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        let table = Gl2SumTable::new(p);
        for label in [Orbit::OD1s, Orbit::O1s1s] {
            let s = modp_orbital_sum(label, &FormPair::zero(), p, &nr, &table).unwrap();
            assert_eq!(
                i128::from(s.as_integer().unwrap()),
                record(label, p, &nr).size.eval(p)
            );
        }
    }

    #[test]
    fn orbital_sums_total_to_zero() {
        // Σ over all 20 orbits of the orbital sum at a fixed nonzero frequency
        // is the full-space character sum, which vanishes.
        let p = 5;
        let nr = smallest_nonresidue(p);
        let table = Gl2SumTable::new(p);
        let xi = representative(Orbit::OD11, p, &nr);
        let mut total = CycInt::zero(p);
        for label in ALL_ORBITS {
            total.add_assign(&modp_orbital_sum(label, &xi, p, &nr, &table).unwrap());
        }
        assert_eq!(total.as_integer().unwrap(), 0);
    }

    #[test]
    fn orbital_sum_invariant_on_frequency_orbit() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        let table = Gl2SumTable::new(p);
        let xi = representative(Orbit::OD1s, p, &nr);
        let base = modp_orbital_sum(Orbit::O1e4, &xi, p, &nr, &table).unwrap();
        let g = crate::forms::GroupElement {
            g3: [[1, 2, 0], [0, 1, 3], [4, 0, 2]],
            g2: [[2, 1], [1, 1]],
        };
        let moved = crate::forms::act(&g, &xi, p);
        let s = modp_orbital_sum(Orbit::O1e4, &moved, p, &nr, &table).unwrap();
        assert!(base.canon_eq(&s));
    }
}
