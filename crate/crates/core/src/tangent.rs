//! Annihilator subspaces V_x (the p-adic tangent spaces of orbits) and their
//! orthogonal complements, with the tabulated spans for the standard
//! representatives.

use serde::Serialize;

use crate::forms::{act, FormPair, GroupElement};
use crate::linalg::{Subspace, DIM};
use crate::orbits::{representative, Orbit, DENSITY_ONE_ORBITS};
use crate::ring::{md, NonResidue};

/// The annihilator subspace of x: the span over F_p of
/// ((I + pE)·x̃ - x̃)/p for E over the 13 elementary directions of M₃⊕M₂,
/// computed over Z/p² on the integer lift of x.
pub fn annihilator_space(x: &FormPair, p: i64) -> Subspace {
    let m = p * p;
    let x = x.reduce(m);
    let mut gens: Vec<[i64; DIM]> = Vec::with_capacity(13);
    let mut push_dir = |g: GroupElement| {
        let moved = act(&g, &x, m);
        let mut v = [0i64; DIM];
        let mf = moved.flat();
        let xf = x.flat();
        for i in 0..DIM {
            let d = md(mf[i] - xf[i], m);
            debug_assert_eq!(d % p, 0, "tangent direction must be divisible by p");
            v[i] = md(d / p, p);
        }
        gens.push(v);
    };
    for i in 0..3 {
        for j in 0..3 {
            let mut g = GroupElement::identity();
            g.g3[i][j] = md(g.g3[i][j] + p, m);
            push_dir(g);
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            let mut g = GroupElement::identity();
            g.g2[i][j] = md(g.g2[i][j] + p, m);
            push_dir(g);
        }
    }
    Subspace::from_spanning(p, gens)
}

/// {y : [y, s] = 0 for all s in S}.
pub fn orthogonal_complement(s: &Subspace) -> Subspace {
    s.orthogonal_complement()
}

/// One tabulated span: a list of spanning vectors in (A-coeffs, B-coeffs)
/// layout. Shared parameters across the two forms appear as single vectors.
struct TangentPattern {
    orbit: Orbit,
    rep: fn(i64, i64) -> FormPair,
    /// spanning vectors as 12-coordinate rows, ℓ-dependent
    span: fn(i64, i64) -> Vec<[i64; DIM]>,
}

fn v(a: [i64; 6], b: [i64; 6]) -> [i64; DIM] {
    FormPair::new(a, b).flat()
}

fn unit(i: usize) -> [i64; DIM] {
    let mut r = [0i64; DIM];
    r[i] = 1;
    r
}

/// The spans for the 14 non-open nonzero orbits. The representative for B11
/// is (v², w²), the pair order used by the tabulated span.
fn patterns() -> Vec<TangentPattern> {
    vec![
        TangentPattern {
            orbit: Orbit::OD1s,
            rep: |_, _| FormPair::new([0; 6], [0, 0, 0, 0, 0, 1]),
            // A: f free; B: c, e, f free
            span: |_, _| vec![unit(5), unit(8), unit(10), unit(11)],
        },
        TangentPattern {
            orbit: Orbit::OD11,
            rep: |_, _| FormPair::new([0; 6], [0, 0, 0, 0, 1, 0]),
            // A: e free; B: b..f free
            span: |_, _| vec![unit(4), unit(7), unit(8), unit(9), unit(10), unit(11)],
        },
        TangentPattern {
            orbit: Orbit::OD2,
            rep: |_, l| FormPair::new([0; 6], [0, 0, 0, 1, 0, -l]),
            // A constrained to z·(v² - ℓw²); B: b..f free
            span: |_, l| {
                let mut s = vec![v([0, 0, 0, 1, 0, -l], [0; 6])];
                s.extend([unit(7), unit(8), unit(9), unit(10), unit(11)]);
                s
            },
        },
        TangentPattern {
            orbit: Orbit::ODns,
            rep: |_, _| FormPair::new([0; 6], [1, 0, 0, 0, -1, 0]),
            // A constrained to z·(u² - vw); B full
            span: |_, _| {
                let mut s = vec![v([1, 0, 0, 0, -1, 0], [0; 6])];
                s.extend((6..12).map(unit));
                s
            },
        },
        TangentPattern {
            orbit: Orbit::OCs,
            rep: |_, _| FormPair::new([0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 0]),
            // shared z: A.c = 2z with B.b = z; plus A.e, A.f and B.c, B.d, B.e, B.f
            span: |_, _| {
                let mut s = vec![v([0, 0, 2, 0, 0, 0], [0, 1, 0, 0, 0, 0])];
                s.extend([unit(4), unit(5), unit(8), unit(9), unit(10), unit(11)]);
                s
            },
        },
        TangentPattern {
            orbit: Orbit::OCns,
            rep: |_, _| FormPair::new([0, 0, 0, 0, 1, 0], [0, 0, 1, 0, 0, 0]),
            // z: A.b = B.a; y: A.d = B.b; free: A.c, A.e, A.f, B.c, B.e, B.f
            span: |_, _| {
                vec![
                    v([0, 1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0]),
                    v([0, 0, 0, 1, 0, 0], [0, 1, 0, 0, 0, 0]),
                    unit(2),
                    unit(4),
                    unit(5),
                    unit(8),
                    unit(10),
                    unit(11),
                ]
            },
        },
        TangentPattern {
            orbit: Orbit::OB11,
            rep: |_, _| FormPair::new([0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1]),
            // A: b, d, e, f; B: c, d, e, f
            span: |_, _| {
                vec![
                    unit(1),
                    unit(3),
                    unit(4),
                    unit(5),
                    unit(8),
                    unit(9),
                    unit(10),
                    unit(11),
                ]
            },
        },
        TangentPattern {
            orbit: Orbit::OB2,
            rep: |_, l| FormPair::new([0, 0, 0, 0, 1, 0], [0, 0, 0, 1, 0, l]),
            // z: A.b = z, B.c = 2ℓz; y: A.c = y, B.b = 2y; free d,e,f on both
            span: |_, l| {
                vec![
                    v([0, 1, 0, 0, 0, 0], [0, 0, 2 * l, 0, 0, 0]),
                    v([0, 0, 1, 0, 0, 0], [0, 2, 0, 0, 0, 0]),
                    unit(3),
                    unit(4),
                    unit(5),
                    unit(9),
                    unit(10),
                    unit(11),
                ]
            },
        },
        TangentPattern {
            orbit: Orbit::O1e4,
            rep: |_, _| FormPair::new([0, 0, 0, 0, 0, 1], [0, 0, 1, 1, 0, 0]),
            // y: A.c = 2y with B.a = y; z: A.c = z with A.d = z; free A.e, A.f, B.b..B.f
            span: |_, _| {
                let mut s = vec![
                    v([0, 0, 2, 0, 0, 0], [1, 0, 0, 0, 0, 0]),
                    v([0, 0, 1, 1, 0, 0], [0; 6]),
                ];
                s.extend([unit(4), unit(5)]);
                s.extend((7..12).map(unit));
                s
            },
        },
        TangentPattern {
            orbit: Orbit::O1e31,
            rep: |_, _| FormPair::new([0, 0, 0, 0, 1, 0], [0, 0, 1, 1, 0, 0]),
            // z: A.b = B.a; plus A.c..A.f and B.b..B.f
            span: |_, _| {
                let mut s = vec![v([0, 1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0])];
                s.extend((2..6).map(unit));
                s.extend((7..12).map(unit));
                s
            },
        },
        TangentPattern {
            orbit: Orbit::O1s1s,
            rep: |_, _| FormPair::new([0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0]),
            // A: a = d = 0; B full
            span: |_, _| {
                let mut s = vec![unit(1), unit(2), unit(4), unit(5)];
                s.extend((6..12).map(unit));
                s
            },
        },
        TangentPattern {
            orbit: Orbit::O2s,
            rep: |_, l| FormPair::new([0, 0, 0, 0, 0, 1], [1, 0, 0, -l, 0, 0]),
            // z: A.a = z, A.d = -ℓz; A.b = 0; free A.c, A.e, A.f; B full
            span: |_, l| {
                let mut s = vec![v([1, 0, 0, -l, 0, 0], [0; 6])];
                s.extend([unit(2), unit(4), unit(5)]);
                s.extend((6..12).map(unit));
                s
            },
        },
        TangentPattern {
            orbit: Orbit::O1s11,
            rep: |_, _| FormPair::new([0, 0, 0, 1, 0, -1], [0, 0, 1, 0, 0, 0]),
            // A: a = 0; B full
            span: |_, _| (1..12).map(unit).collect(),
        },
        TangentPattern {
            orbit: Orbit::O1s2,
            rep: |_, l| FormPair::new([0, 0, 0, 1, 0, -l], [0, 0, 1, 0, 0, 0]),
            span: |_, _| (1..12).map(unit).collect(),
        },
    ]
}

#[derive(Serialize, Clone, Debug)]
pub struct TangentRow {
    pub orbit: String,
    pub p: i64,
    pub expected_dim: usize,
    pub computed_dim: usize,
    pub equal: bool,
}

/// Compare the computed annihilator spans against the tabulated spans for the
/// 14 listed orbits, and check the five full-density orbits have V_x = V.
pub fn verify_tangent_table(p: i64, nr: &NonResidue) -> Vec<TangentRow> {
    let mut rows = Vec::new();
    for pat in patterns() {
        let rep = (pat.rep)(p, nr.ell).reduce(p);
        let computed = annihilator_space(&rep, p);
        let expected = Subspace::from_spanning(p, (pat.span)(p, nr.ell));
        rows.push(TangentRow {
            orbit: pat.orbit.name().to_string(),
            p,
            expected_dim: expected.dim(),
            computed_dim: computed.dim(),
            equal: computed.equals(&expected),
        });
    }
    for label in DENSITY_ONE_ORBITS {
        let rep = representative(label, p, nr);
        let computed = annihilator_space(&rep, p);
        rows.push(TangentRow {
            orbit: label.name().to_string(),
            p,
            expected_dim: DIM,
            computed_dim: computed.dim(),
            equal: computed.dim() == DIM,
        });
    }
    rows
}

/// V_x for an orbit's standard representative (the B11 span row uses the
/// swapped representative (v², w²); every other row matches `representative`).
pub fn annihilator_of_label(label: Orbit, p: i64, nr: &NonResidue) -> Subspace {
    let rep = if label == Orbit::OB11 {
        FormPair::new([0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1])
    } else {
        representative(label, p, nr)
    };
    annihilator_space(&rep, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::pair;
    use crate::ring::smallest_nonresidue;

    #[test]
    fn zero_form_has_zero_tangent() {
        assert_eq!(annihilator_space(&FormPair::zero(), 5).dim(), 0);
    }

    #[test]
    fn d1s_tangent_is_4_dimensional() {
        let p = 5;
        let x = FormPair::new([0; 6], [0, 0, 0, 0, 0, 1]);
        let s = annihilator_space(&x, p);
        assert_eq!(s.dim(), 4);
    }

    #[test]
    fn s1s11_tangent_is_11_dimensional() {
        let p = 7;
        let x = FormPair::new([0, 0, 0, 1, 0, -1], [0, 0, 1, 0, 0, 0]);
        let s = annihilator_space(&x, p);
        assert_eq!(s.dim(), 11);
        // A misses only the u² coordinate
        assert!(!s.contains(&{
            let mut v = [0i64; DIM];
            v[0] = 1;
            v
        }));
    }

    #[test]
    fn table_matches_at_all_primes() {
        for p in [5i64, 7, 11, 13] {
            let nr = smallest_nonresidue(p);
            for row in verify_tangent_table(p, &nr) {
                assert!(row.equal, "p={} orbit {}", p, row.orbit);
            }
        }
    }

    #[test]
    fn tangent_depends_only_on_residue() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        for label in crate::orbits::ALL_ORBITS {
            let x = representative(label, p, &nr);
            let mut shifted = x;
            shifted.a[2] += p * 3;
            shifted.b[4] += p * 2;
            assert!(annihilator_space(&x, p).equals(&annihilator_space(&shifted, p)));
        }
    }

    #[test]
    fn complement_of_1e4_tangent() {
        // V_{1⁴}^⊥ is spanned by u², 2uv and (v² - 2uw, 2u²)
        let p = 7;
        let nr = smallest_nonresidue(p);
        let s = annihilator_of_label(Orbit::O1e4, p, &nr);
        let c = orthogonal_complement(&s);
        let expected = Subspace::from_spanning(
            p,
            vec![
                FormPair::new([1, 0, 0, 0, 0, 0], [0; 6]).flat(),
                FormPair::new([0, 2, 0, 0, 0, 0], [0; 6]).flat(),
                FormPair::new([0, 0, -2, 1, 0, 0], [2, 0, 0, 0, 0, 0]).flat(),
            ],
        );
        assert!(c.equals(&expected));
        // double complement
        assert!(orthogonal_complement(&c).equals(&s));
        // vectors in the complement really annihilate under the pairing
        let xflat = s.basis.clone();
        for cv in &c.basis {
            for sv in &xflat {
                let cf = FormPair::from_flat(cv);
                let sf = FormPair::from_flat(sv);
                assert_eq!(pair(&cf, &sf, p), 0);
            }
        }
    }
}
