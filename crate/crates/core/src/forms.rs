//! The space V(R) = 2⊗Sym²(R³) of pairs of ternary quadratic forms, its inner
//! product and the GL₃×GL₂ action, over R = Z/p or Z/p².
//!
//! A form a·u² + b·uv + c·uw + d·v² + e·vw + f·w² is stored as the integer
//! coefficient vector (a,b,c,d,e,f); the half-entries of the symmetric matrix
//! picture only ever appear inside the pairing, through the inverse of 2.

use crate::ring::{inv_mod, md};

/// Coefficients (a,b,c,d,e,f) of a ternary quadratic form.
pub type Coeffs = [i64; 6];

/// A pair (A, B) of ternary quadratic forms with a common modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FormPair {
    pub a: Coeffs,
    pub b: Coeffs,
}

pub const ZERO_FORM: Coeffs = [0; 6];

impl FormPair {
    pub const fn new(a: Coeffs, b: Coeffs) -> Self {
        FormPair { a, b }
    }

    pub const fn zero() -> Self {
        FormPair::new(ZERO_FORM, ZERO_FORM)
    }

    pub fn reduce(&self, m: i64) -> FormPair {
        let r = |c: &Coeffs| {
            let mut out = [0i64; 6];
            for i in 0..6 {
                out[i] = md(c[i], m);
            }
            out
        };
        FormPair::new(r(&self.a), r(&self.b))
    }

    pub fn is_zero_mod(&self, m: i64) -> bool {
        self.a.iter().chain(&self.b).all(|&c| md(c, m) == 0)
    }

    /// The 12 coordinates (a₁..f₁, a₂..f₂) used by serialization and linear
    /// algebra.
    pub fn flat(&self) -> [i64; 12] {
        let mut v = [0i64; 12];
        v[..6].copy_from_slice(&self.a);
        v[6..].copy_from_slice(&self.b);
        v
    }

    pub fn from_flat(v: &[i64; 12]) -> FormPair {
        let mut a = [0i64; 6];
        let mut b = [0i64; 6];
        a.copy_from_slice(&v[..6]);
        b.copy_from_slice(&v[6..]);
        FormPair::new(a, b)
    }
}

/// A group element (g₃, g₂) with unit determinants mod p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GroupElement {
    pub g3: [[i64; 3]; 3],
    pub g2: [[i64; 2]; 2],
}

impl GroupElement {
    pub const fn identity() -> Self {
        GroupElement {
            g3: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            g2: [[1, 0], [0, 1]],
        }
    }
}

#[inline]
pub fn det3(g: &[[i64; 3]; 3], m: i64) -> i64 {
    md(
        g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]),
        m,
    )
}

#[inline]
pub fn det2(g: &[[i64; 2]; 2], m: i64) -> i64 {
    md(g[0][0] * g[1][1] - g[0][1] * g[1][0], m)
}

pub fn mat3_mul(a: &[[i64; 3]; 3], b: &[[i64; 3]; 3], m: i64) -> [[i64; 3]; 3] {
    let mut c = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = md(
                a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j],
                m,
            );
        }
    }
    c
}

pub fn mat2_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2], m: i64) -> [[i64; 2]; 2] {
    let mut c = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = md(a[i][0] * b[0][j] + a[i][1] * b[1][j], m);
        }
    }
    c
}

pub fn mat3_transpose(g: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut t = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = g[j][i];
        }
    }
    t
}

pub fn mat2_transpose(g: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [[g[0][0], g[1][0]], [g[0][1], g[1][1]]]
}

pub fn mat3_inv(g: &[[i64; 3]; 3], m: i64) -> [[i64; 3]; 3] {
    let d = det3(g, m);
    let di = inv_mod(d, m);
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
        md(g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0], m)
    };
    // adjugate transpose
    let adj = [
        [cof(1, 2, 1, 2), md(-cof(0, 2, 1, 2), m), cof(0, 1, 1, 2)],
        [md(-cof(1, 2, 0, 2), m), cof(0, 2, 0, 2), md(-cof(0, 1, 0, 2), m)],
        [cof(1, 2, 0, 1), md(-cof(0, 2, 0, 1), m), cof(0, 1, 0, 1)],
    ];
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = md(adj[i][j] * di, m);
        }
    }
    out
}

pub fn mat2_inv(g: &[[i64; 2]; 2], m: i64) -> [[i64; 2]; 2] {
    let di = inv_mod(det2(g, m), m);
    [
        [md(g[1][1] * di, m), md(-g[0][1] * di, m)],
        [md(-g[1][0] * di, m), md(g[0][0] * di, m)],
    ]
}

pub fn group_mul(g: &GroupElement, h: &GroupElement, m: i64) -> GroupElement {
    GroupElement {
        g3: mat3_mul(&g.g3, &h.g3, m),
        g2: mat2_mul(&g.g2, &h.g2, m),
    }
}

/// ((g₃⁻¹)ᵗ, (g₂⁻¹)ᵗ); pairing against the image of this element undoes g.
pub fn transpose_inverse(g: &GroupElement, m: i64) -> GroupElement {
    GroupElement {
        g3: mat3_transpose(&mat3_inv(&g.g3, m)),
        g2: mat2_transpose(&mat2_inv(&g.g2, m)),
    }
}

pub fn group_transpose(g: &GroupElement) -> GroupElement {
    GroupElement {
        g3: mat3_transpose(&g.g3),
        g2: mat2_transpose(&g.g2),
    }
}

/// Value of the form at a row vector r. A single reduction at the end; with
/// inputs below m ≤ 169 the accumulator stays far from overflow.
#[inline(always)]
fn qval(f: &Coeffs, r: &[i64; 3], m: i64) -> i64 {
    md(
        f[0] * (r[0] * r[0])
            + f[1] * (r[0] * r[1])
            + f[2] * (r[0] * r[2])
            + f[3] * (r[1] * r[1])
            + f[4] * (r[1] * r[2])
            + f[5] * (r[2] * r[2]),
        m,
    )
}

/// Polarized bilinear value 2·B(r, s) of the form at rows r, s.
#[inline(always)]
fn bval(f: &Coeffs, r: &[i64; 3], s: &[i64; 3], m: i64) -> i64 {
    md(
        2 * f[0] * (r[0] * s[0])
            + f[1] * (r[0] * s[1] + r[1] * s[0])
            + f[2] * (r[0] * s[2] + r[2] * s[0])
            + 2 * f[3] * (r[1] * s[1])
            + f[4] * (r[1] * s[2] + r[2] * s[1])
            + 2 * f[5] * (r[2] * s[2]),
        m,
    )
}

/// The congruence transform g·A·gᵗ on coefficient vectors, kept integral.
#[inline]
pub fn transform3(g: &[[i64; 3]; 3], f: &Coeffs, m: i64) -> Coeffs {
    let (r0, r1, r2) = (&g[0], &g[1], &g[2]);
    [
        qval(f, r0, m),
        bval(f, r0, r1, m),
        bval(f, r0, r2, m),
        qval(f, r1, m),
        bval(f, r1, r2, m),
        qval(f, r2, m),
    ]
}

/// The full action of Eq-style (g₃, g₂): the GL₃ factor transforms each form,
/// the GL₂ factor takes linear combinations.
pub fn act(g: &GroupElement, x: &FormPair, m: i64) -> FormPair {
    let ta = transform3(&g.g3, &x.a, m);
    let tb = transform3(&g.g3, &x.b, m);
    let mut a = [0i64; 6];
    let mut b = [0i64; 6];
    for i in 0..6 {
        a[i] = md(g.g2[0][0] * ta[i] + g.g2[0][1] * tb[i], m);
        b[i] = md(g.g2[1][0] * ta[i] + g.g2[1][1] * tb[i], m);
    }
    FormPair::new(a, b)
}

/// The inner product [A,A'] = aa' + bb'/2 + cc'/2 + dd' + ee'/2 + ff' of two
/// single forms. Computed as half the doubled (integral) pairing; for odd m
/// the inverse of 2 is (m+1)/2.
#[inline]
pub fn pair_forms(x: &Coeffs, y: &Coeffs, m: i64) -> i64 {
    let doubled = 2 * x[0] * y[0]
        + x[1] * y[1]
        + x[2] * y[2]
        + 2 * x[3] * y[3]
        + x[4] * y[4]
        + 2 * x[5] * y[5];
    md(md(doubled, m) * ((m + 1) / 2), m)
}

/// [(A,B),(A',B')] = [A,A'] + [B,B'].
#[inline]
pub fn pair(x: &FormPair, y: &FormPair, m: i64) -> i64 {
    md(pair_forms(&x.a, &y.a, m) + pair_forms(&x.b, &y.b, m), m)
}

/// All invertible 2x2 matrices mod p, in row-lexicographic order.
pub fn gl2_elements(p: i64) -> Vec<[[i64; 2]; 2]> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if md(a * d - b * c, p) != 0 {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

/// Visit every invertible 3x3 matrix mod p once, in row-lexicographic order
/// with rank-guided pruning. The closure observes rows (r0, r1, r2).
pub fn for_each_gl3<F: FnMut(&[[i64; 3]; 3])>(p: i64, mut f: F) {
    let rows = row_space(p);
    for r0 in &rows {
        for_each_gl3_with_first_row(p, r0, &rows, &mut f);
    }
}

/// The nonzero row vectors of F_p^3 in lexicographic order; the outer loop of
/// the GL₃ scans is parallelized over this list.
pub fn row_space(p: i64) -> Vec<[i64; 3]> {
    let mut rows = Vec::with_capacity((p * p * p - 1) as usize);
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                if x != 0 || y != 0 || z != 0 {
                    rows.push([x, y, z]);
                }
            }
        }
    }
    rows
}

pub fn for_each_gl3_with_first_row<F: FnMut(&[[i64; 3]; 3])>(
    p: i64,
    r0: &[i64; 3],
    rows: &[[i64; 3]],
    f: &mut F,
) {
    for r1 in rows {
        // r1 outside the span of r0: some 2x2 minor is nonzero
        let m01 = md(r0[0] * r1[1] - r0[1] * r1[0], p);
        let m02 = md(r0[0] * r1[2] - r0[2] * r1[0], p);
        let m12 = md(r0[1] * r1[2] - r0[2] * r1[1], p);
        if m01 == 0 && m02 == 0 && m12 == 0 {
            continue;
        }
        // det = cross(r0, r1) · r2
        let cx = md(r0[1] * r1[2] - r0[2] * r1[1], p);
        let cy = md(r0[2] * r1[0] - r0[0] * r1[2], p);
        let cz = md(r0[0] * r1[1] - r0[1] * r1[0], p);
        let mut g = [[r0[0], r0[1], r0[2]], [r1[0], r1[1], r1[2]], [0, 0, 0]];
        for r2 in rows.iter() {
            if md(cx * r2[0] + cy * r2[1] + cz * r2[2], p) != 0 {
                g[2] = *r2;
                f(&g);
            }
        }
    }
}

/// |GL_n(F_p)| = Π_i (p^n - p^i).
pub fn gl_order(n: u32, p: i64) -> i128 {
    let pn = (p as i128).pow(n);
    (0..n).map(|i| pn - (p as i128).pow(i)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: i64 = 5;

    fn sample_pair() -> FormPair {
        FormPair::new([1, 2, 3, 4, 0, 1], [0, 1, 4, 2, 3, 1])
    }

    #[test]
    fn identity_acts_trivially() {
        let x = sample_pair();
        assert_eq!(act(&GroupElement::identity(), &x, P), x.reduce(P));
    }

    #[test]
    fn swap_exchanges_forms() {
        let x = sample_pair();
        let g = GroupElement {
            g3: GroupElement::identity().g3,
            g2: [[0, 1], [1, 0]],
        };
        let y = act(&g, &x, P);
        assert_eq!(y.a, x.reduce(P).b);
        assert_eq!(y.b, x.reduce(P).a);
    }

    #[test]
    fn action_is_homomorphism() {
        let x = sample_pair();
        let g = GroupElement {
            g3: [[1, 2, 0], [0, 1, 3], [4, 0, 2]],
            g2: [[2, 1], [1, 1]],
        };
        let h = GroupElement {
            g3: [[0, 1, 0], [1, 0, 2], [3, 1, 2]],
            g2: [[1, 3], [0, 2]],
        };
        for m in [P, P * P] {
            assert_eq!(det3(&g.g3, m) % P != 0, true);
            let gh = group_mul(&g, &h, m);
            assert_eq!(act(&gh, &x, m), act(&g, &act(&h, &x, m), m));
        }
    }

    #[test]
    fn reduction_commutes_with_action() {
        let x = sample_pair();
        let g = GroupElement {
            g3: [[1, 2, 0], [0, 1, 3], [4, 0, 2]],
            g2: [[2, 1], [1, 1]],
        };
        let over_p2 = act(&g, &x, P * P);
        assert_eq!(over_p2.reduce(P), act(&g, &x, P));
    }

    #[test]
    fn pairing_on_unit_vectors() {
        // [(0,w²),(0,w²)] = 1: only the ff' term survives.
        let w2 = FormPair::new(ZERO_FORM, [0, 0, 0, 0, 0, 1]);
        assert_eq!(pair(&w2, &w2, P), 1);
        assert_eq!(pair(&w2, &FormPair::zero(), P), 0);
    }

    #[test]
    fn eq7_invariance_random() {
        let x = sample_pair();
        let y = FormPair::new([2, 0, 1, 1, 4, 3], [1, 1, 0, 0, 2, 4]);
        let g = GroupElement {
            g3: [[1, 2, 0], [0, 1, 3], [4, 0, 2]],
            g2: [[2, 1], [1, 1]],
        };
        for m in [P, P * P] {
            let gti = transpose_inverse(&g, m);
            assert_eq!(pair(&act(&g, &x, m), &act(&gti, &y, m), m), pair(&x, &y, m));
        }
    }

    #[test]
    fn transpose_inverse_diagonal() {
        let g = GroupElement {
            g3: [[2, 0, 0], [0, 3, 0], [0, 0, 4]],
            g2: [[1, 0], [0, 1]],
        };
        let ti = transpose_inverse(&g, P);
        assert_eq!(
            ti.g3,
            [[inv_mod(2, P), 0, 0], [0, inv_mod(3, P), 0], [0, 0, inv_mod(4, P)]]
        );
        assert_eq!(
            transpose_inverse(&GroupElement::identity(), P),
            GroupElement::identity()
        );
    }

    #[test]
    fn gl_counts() {
        assert_eq!(gl2_elements(5).len() as i128, gl_order(2, 5));
        assert_eq!(gl_order(2, 5), 480);
        assert_eq!(gl_order(3, 5), 1_488_000);
        let mut n = 0u64;
        for_each_gl3(5, |_| n += 1);
        assert_eq!(n as i128, gl_order(3, 5));
    }

    #[test]
    fn gram_matrix_invertible() {
        // the pairing is nondegenerate on V(F_p): the 12x12 Gram matrix in the
        // coefficient basis is diagonal with unit entries
        let i2 = inv_mod(2, P);
        let weights = [1, i2, i2, 1, i2, 1];
        for w in weights {
            assert_ne!(w % P, 0);
        }
    }
}
