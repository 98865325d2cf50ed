//! Action sets G_{x,ξ} = {g : gᵗ·ξ ∈ V_x^⊥ mod p}: cardinalities by a factored
//! per-g₃ linear solve, the explicit parameterizations used by the sum
//! evaluations, and the scan for non-empty orbit pairings.

use rayon::prelude::*;
use serde::Serialize;

use crate::forms::{
    act, for_each_gl3_with_first_row, group_transpose, row_space, transform3, Coeffs,
    FormPair, GroupElement,
};
use crate::linalg::Subspace;
use crate::orbits::{representative, Orbit, MIXED_ORBITS, ALL_ORBITS};
use crate::ring::{inv_mod, legendre_i64, md, NonResidue};
use crate::tangent::annihilator_of_label;
use crate::Error;

fn guard_scan_prime(p: i64) -> Result<(), Error> {
    if p == 5 || p == 7 {
        Ok(())
    } else {
        Err(Error::ResourceGuard {
            what: "action set scan",
            p,
        })
    }
}

/// For fixed g₃, membership of (g₃,g₂) in G_{x,ξ}ᵗ (equivalently of the
/// transpose in G_{x,ξ}) is a homogeneous linear condition on the four g₂
/// entries: with Ã = g₃·ξ_A·g₃ᵗ, B̃ = g₃·ξ_B·g₃ᵗ the element g·ξ =
/// (αÃ+βB̃, γÃ+δB̃) must pair to zero with every basis vector of V_x.
///
/// The V_x basis vectors enter only through the pairing, so they are stored
/// pre-multiplied by the Gram weights; each constraint coefficient is then a
/// plain dot product.
struct MembershipSolver {
    p: i64,
    /// Gram-weighted (A-part, B-part) of each V_x basis vector, doubled to
    /// stay integral; the common factor 2⁻¹ drops out of a homogeneous system
    wbasis: Vec<(Coeffs, Coeffs)>,
    xi: FormPair,
    /// echelonized B-part projection of V_x^⊥
    pib: EchelonSmall,
}

#[inline(always)]
fn wdot(w: &Coeffs, t: &Coeffs, p: i64) -> i64 {
    md(
        w[0] * t[0] + w[1] * t[1] + w[2] * t[2] + w[3] * t[3] + w[4] * t[4] + w[5] * t[5],
        p,
    )
}

impl MembershipSolver {
    fn new(p: i64, vx: &Subspace, xi: &FormPair) -> Self {
        // doubled Gram weights (2, 1, 1, 2, 1, 2) per form
        let weigh = |c: &Coeffs| {
            [
                md(2 * c[0], p),
                c[1],
                c[2],
                md(2 * c[3], p),
                c[4],
                md(2 * c[5], p),
            ]
        };
        let wbasis: Vec<(Coeffs, Coeffs)> = vx
            .basis
            .iter()
            .map(|v| {
                let f = FormPair::from_flat(v);
                (weigh(&f.a), weigh(&f.b))
            })
            .collect();
        // B-part projection of V_x^⊥, for the cheap necessary test: the
        // second transformed form must land in it
        let perp = vx.orthogonal_complement();
        let mut pib = EchelonSmall::new(p);
        for v in &perp.basis {
            let f = FormPair::from_flat(v);
            pib.insert(f.b);
        }
        MembershipSolver {
            p,
            wbasis,
            xi: xi.reduce(p),
            pib,
        }
    }

    fn with_transforms(&self, ta: &Coeffs, tb: &Coeffs) -> i64 {
        let p = self.p;
        // necessary: some nonzero (γ,δ) with γÃ+δB̃ in the B-projection of
        // V_x^⊥, i.e. the residues of Ã and B̃ mod that projection are
        // linearly dependent
        if self.pib.rows.is_empty() {
            if !dependent6(ta, tb, p) {
                return 0;
            }
        } else {
            let ra = self.pib.reduce(ta);
            let rb = self.pib.reduce(tb);
            if !dependent6(&ra, &rb, p) {
                return 0;
            }
        }
        let mut rows = [[0i64; 4]; 12];
        let mut nrows = 0;
        for (wa, wb) in &self.wbasis {
            let row = [
                wdot(wa, ta, p),
                wdot(wa, tb, p),
                wdot(wb, ta, p),
                wdot(wb, tb, p),
            ];
            if row != [0, 0, 0, 0] {
                rows[nrows] = row;
                nrows += 1;
            }
        }
        let mut kernel = [[0i64; 4]; 4];
        let k = kernel4(p, &mut rows[..nrows], &mut kernel);
        count_invertible_in_span(p, &kernel[..k])
    }

    /// Number of invertible g₂ in the kernel at g₃.
    fn count_invertible(&self, g3: &[[i64; 3]; 3]) -> i64 {
        let p = self.p;
        let ta = transform3(g3, &self.xi.a, p);
        let tb = transform3(g3, &self.xi.b, p);
        self.with_transforms(&ta, &tb)
    }
}

/// A tiny echelon basis over the 6 coordinates of a single form.
struct EchelonSmall {
    p: i64,
    rows: Vec<Coeffs>,
    pivots: Vec<usize>,
}

impl EchelonSmall {
    fn new(p: i64) -> Self {
        EchelonSmall {
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, v: &Coeffs) -> Coeffs {
        let mut r = *v;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = md(r[piv], self.p);
            if c != 0 {
                for j in 0..6 {
                    r[j] = md(r[j] - c * row[j], self.p);
                }
            } else {
                r[piv] = 0;
            }
        }
        for x in r.iter_mut() {
            *x = md(*x, self.p);
        }
        r
    }

    fn insert(&mut self, v: Coeffs) {
        let r = self.reduce(&v);
        if let Some(piv) = r.iter().position(|&c| c != 0) {
            let inv = crate::ring::inv_mod(r[piv], self.p);
            let mut row = [0i64; 6];
            for j in 0..6 {
                row[j] = md(r[j] * inv, self.p);
            }
            self.rows.push(row);
            self.pivots.push(piv);
        }
    }
}

/// Linear dependence of two 6-vectors over F_p (zero vectors included).
#[inline]
fn dependent6(a: &Coeffs, b: &Coeffs, p: i64) -> bool {
    for i in 0..6 {
        for j in (i + 1)..6 {
            if md(a[i] * b[j] - a[j] * b[i], p) != 0 {
                return false;
            }
        }
    }
    true
}

/// Kernel of a homogeneous system in 4 unknowns over F_p; returns the
/// dimension, writing a basis into `out`.
fn kernel4(p: i64, rows: &mut [[i64; 4]], out: &mut [[i64; 4]; 4]) -> usize {
    let mut pivots = [usize::MAX; 4];
    let mut rank = 0usize;
    for col in 0..4 {
        let Some(sel) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = crate::ring::inv_mod(rows[rank][col], p);
        for j in 0..4 {
            rows[rank][j] = md(rows[rank][j] * inv, p);
        }
        for r in 0..rows.len() {
            if r != rank {
                let c = rows[r][col];
                if c != 0 {
                    for j in 0..4 {
                        rows[r][j] = md(rows[r][j] - c * rows[rank][j], p);
                    }
                }
            }
        }
        pivots[rank] = col;
        rank += 1;
        if rank == rows.len() || rank == 4 {
            break;
        }
    }
    let mut k = 0usize;
    for free in 0..4 {
        if pivots[..rank].contains(&free) {
            continue;
        }
        let mut v = [0i64; 4];
        v[free] = 1;
        for (r, &piv) in pivots[..rank].iter().enumerate() {
            v[piv] = md(-rows[r][free], p);
        }
        out[k] = v;
        k += 1;
    }
    k
}

fn count_invertible_in_span(p: i64, kernel: &[[i64; 4]]) -> i64 {
    match kernel.len() {
        0 => 0,
        1 => {
            let b = &kernel[0];
            if md(b[0] * b[3] - b[1] * b[2], p) != 0 {
                p - 1
            } else {
                0
            }
        }
        k => {
            let mut n = 0i64;
            let total = (p as usize).pow(k as u32);
            for idx in 0..total {
                let mut t = idx;
                let mut g = [0i64; 4];
                for basis in kernel {
                    let c = (t % p as usize) as i64;
                    t /= p as usize;
                    g[0] += c * basis[0];
                    g[1] += c * basis[1];
                    g[2] += c * basis[2];
                    g[3] += c * basis[3];
                }
                if md(g[0] * g[3] - g[1] * g[2], p) != 0 {
                    n += 1;
                }
            }
            n
        }
    }
}

/// |G_{x,ξ}| by scanning GL₃ and counting invertible g₂ solutions per g₃.
pub fn action_set_count(
    x_label: Orbit,
    xi: &FormPair,
    p: i64,
    nr: &NonResidue,
) -> Result<i128, Error> {
    guard_scan_prime(p)?;
    let vx = annihilator_of_label(x_label, p, nr);
    let solver = MembershipSolver::new(p, &vx, xi);
    let rows = row_space(p);
    let total: i128 = rows
        .par_iter()
        .map(|r0| {
            let mut local = 0i128;
            for_each_gl3_with_first_row(p, r0, &rows, &mut |g3| {
                local += solver.count_invertible(g3) as i128;
            });
            local
        })
        .sum();
    Ok(total)
}

/// Is the action set empty? Early-exits on the first member.
pub fn action_set_nonempty(
    x_label: Orbit,
    xi: &FormPair,
    p: i64,
    nr: &NonResidue,
) -> Result<bool, Error> {
    guard_scan_prime(p)?;
    let vx = annihilator_of_label(x_label, p, nr);
    let solver = MembershipSolver::new(p, &vx, xi);
    let rows = row_space(p);
    let found = rows.par_iter().any(|r0| {
        let mut hit = false;
        for_each_gl3_with_first_row(p, r0, &rows, &mut |g3| {
            if !hit && solver.count_invertible(g3) > 0 {
                hit = true;
            }
        });
        hit
    });
    Ok(found)
}

/// Which of the mixed x-orbits pair with a fixed frequency ξ: one GL₃ pass
/// shared by all six membership solvers.
fn nonempty_against_all(xi: &FormPair, p: i64, nr: &NonResidue) -> [bool; 6] {
    let solvers: Vec<MembershipSolver> = MIXED_ORBITS
        .iter()
        .map(|&x| MembershipSolver::new(p, &annihilator_of_label(x, p, nr), xi))
        .collect();
    let xi = xi.reduce(p);
    let rows = row_space(p);
    let found = rows
        .par_iter()
        .map(|r0| {
            let mut hit = [false; 6];
            for_each_gl3_with_first_row(p, r0, &rows, &mut |g3| {
                if hit.iter().all(|&h| h) {
                    return;
                }
                let ta = transform3(g3, &xi.a, p);
                let tb = transform3(g3, &xi.b, p);
                for (i, s) in solvers.iter().enumerate() {
                    if !hit[i] && s.with_transforms(&ta, &tb) > 0 {
                        hit[i] = true;
                    }
                }
            });
            hit
        })
        .reduce(
            || [false; 6],
            |mut a, b| {
                for i in 0..6 {
                    a[i] |= b[i];
                }
                a
            },
        );
    found
}

/// The two membership conditions of the symmetry lemma, evaluated directly:
/// (g·x ∈ V_ξ^⊥, gᵗ·ξ ∈ V_x^⊥). The lemma asserts these are equal.
pub fn symmetric_membership_check(
    g: &GroupElement,
    x: &FormPair,
    xi: &FormPair,
    p: i64,
) -> (bool, bool) {
    let vx = annihilator_space_for(x, p);
    let vxi = annihilator_space_for(xi, p);
    let gx = act(g, x, p);
    let gtxi = act(&group_transpose(g), xi, p);
    (
        in_perp(&gx, &vxi, p),
        in_perp(&gtxi, &vx, p),
    )
}

fn annihilator_space_for(x: &FormPair, p: i64) -> Subspace {
    crate::tangent::annihilator_space(x, p)
}

fn in_perp(y: &FormPair, space: &Subspace, p: i64) -> bool {
    space
        .basis
        .iter()
        .all(|s| crate::forms::pair(y, &FormPair::from_flat(s), p) == 0)
}

/// Membership of a single element in G_{x,ξ}ᵗ: g·ξ ∈ V_x^⊥.
pub fn is_in_transposed_action_set(
    g: &GroupElement,
    vx: &Subspace,
    xi: &FormPair,
    p: i64,
) -> bool {
    in_perp(&act(g, xi, p), vx, p)
}

/// The twelve orbit pairings with non-empty action sets; the scan over all
/// mixed x-labels times nonzero ξ-labels must return exactly these.
pub fn expected_pairs() -> Vec<(Orbit, Orbit)> {
    use Orbit::*;
    vec![
        (O1e4, OD1s),
        (O1e4, OD11),
        (O1e4, O1e4),
        (O1e31, OD1s),
        (O1e31, OCs),
        (O1s1s, OD1s),
        (O1s1s, OD11),
        (O1s1s, OD2),
        (O2s, OD11),
        (O2s, OD2),
        (O1s11, OD1s),
        (O1s2, OD1s),
    ]
}

/// Scan all (mixed x-orbit, nonzero ξ-orbit) pairs for non-empty action
/// sets; one GL₃ pass per frequency orbit.
pub fn nonempty_pair_scan(p: i64, nr: &NonResidue) -> Result<Vec<(Orbit, Orbit)>, Error> {
    guard_scan_prime(p)?;
    let mut out = Vec::new();
    for xi_label in ALL_ORBITS.iter().copied().filter(|&o| o != Orbit::O0) {
        let xi = representative(xi_label, p, nr);
        let hits = nonempty_against_all(&xi, p, nr);
        for (i, &x_label) in MIXED_ORBITS.iter().enumerate() {
            if hits[i] {
                out.push((x_label, xi_label));
            }
        }
    }
    // order by x-label blocks, matching the tabulated pair list
    out.sort_by_key(|(x, xi)| {
        (
            MIXED_ORBITS.iter().position(|o| o == x).unwrap(),
            ALL_ORBITS.iter().position(|o| o == xi).unwrap(),
        )
    });
    Ok(out)
}

/// Identifier for the 12 tabulated pairings, in table order.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum PairingId {
    S1s11D1s,
    S1s2D1s,
    S2sD11,
    S2sD2,
    S1s1sD1s,
    S1s1sD11,
    S1s1sD2,
    S1e31D1s,
    S1e31Cs,
    S1e4D1s,
    S1e4D11,
    S1e4S1e4,
}

pub const ALL_PAIRINGS: [PairingId; 12] = [
    PairingId::S1s11D1s,
    PairingId::S1s2D1s,
    PairingId::S2sD11,
    PairingId::S2sD2,
    PairingId::S1s1sD1s,
    PairingId::S1s1sD11,
    PairingId::S1s1sD2,
    PairingId::S1e31D1s,
    PairingId::S1e31Cs,
    PairingId::S1e4D1s,
    PairingId::S1e4D11,
    PairingId::S1e4S1e4,
];

impl PairingId {
    pub fn labels(&self) -> (Orbit, Orbit) {
        use Orbit::*;
        match self {
            PairingId::S1s11D1s => (O1s11, OD1s),
            PairingId::S1s2D1s => (O1s2, OD1s),
            PairingId::S2sD11 => (O2s, OD11),
            PairingId::S2sD2 => (O2s, OD2),
            PairingId::S1s1sD1s => (O1s1s, OD1s),
            PairingId::S1s1sD11 => (O1s1s, OD11),
            PairingId::S1s1sD2 => (O1s1s, OD2),
            PairingId::S1e31D1s => (O1e31, OD1s),
            PairingId::S1e31Cs => (O1e31, OCs),
            PairingId::S1e4D1s => (O1e4, OD1s),
            PairingId::S1e4D11 => (O1e4, OD11),
            PairingId::S1e4S1e4 => (O1e4, O1e4),
        }
    }

    pub fn name(&self) -> String {
        let (x, xi) = self.labels();
        format!("{}:{}", x.name(), xi.name())
    }

    pub fn from_name(s: &str) -> Option<PairingId> {
        ALL_PAIRINGS.iter().copied().find(|p| p.name() == s)
    }

    /// Expected |G_{x,ξ}|.
    pub fn expected_count(&self, p: i64) -> i128 {
        let p = p as i128;
        match self {
            PairingId::S1s11D1s
            | PairingId::S1s2D1s
            | PairingId::S1e31D1s
            | PairingId::S1e4D1s => (p - 1).pow(5) * p.pow(4) * (p + 1),
            PairingId::S2sD11 | PairingId::S1s1sD2 => (p - 1).pow(5) * p.pow(3) * (p + 1),
            PairingId::S2sD2 => (p - 1).pow(4) * p.pow(3) * (p + 1).pow(2),
            PairingId::S1s1sD1s => 2 * (p - 1).pow(5) * p.pow(4) * (p + 1),
            PairingId::S1s1sD11 => (p - 1).pow(6) * p.pow(3),
            PairingId::S1e31Cs => (p - 1).pow(4) * p.pow(4),
            PairingId::S1e4D11 => 2 * (p - 1).pow(5) * p.pow(4),
            PairingId::S1e4S1e4 => (p - 1).pow(3) * p.pow(4),
        }
    }

    pub fn expected_count_display(&self) -> &'static str {
        match self {
            PairingId::S1s11D1s
            | PairingId::S1s2D1s
            | PairingId::S1e31D1s
            | PairingId::S1e4D1s => "(p-1)^5 p^4 (p+1)",
            PairingId::S2sD11 | PairingId::S1s1sD2 => "(p-1)^5 p^3 (p+1)",
            PairingId::S2sD2 => "(p-1)^4 p^3 (p+1)^2",
            PairingId::S1s1sD1s => "2 (p-1)^5 p^4 (p+1)",
            PairingId::S1s1sD11 => "(p-1)^6 p^3",
            PairingId::S1e31Cs => "(p-1)^4 p^4",
            PairingId::S1e4D11 => "2 (p-1)^5 p^4",
            PairingId::S1e4S1e4 => "(p-1)^3 p^4",
        }
    }
}

/// Standard representatives (x₀, ξ₀) of the pairing, as used by the sum
/// tables. ξ₀ for 2²:D2 carries the parameter β making ℓu² + 2βuv + v²
/// irreducible; β is the least such value.
pub fn pairing_reps(id: PairingId, p: i64, nr: &NonResidue) -> (FormPair, FormPair) {
    let l = nr.ell;
    let f = |a: Coeffs, b: Coeffs| FormPair::new(a, b).reduce(p);
    match id {
        PairingId::S1s11D1s => (
            f([0, 0, 0, 1, 0, -1], [0, 0, 1, 0, 0, 0]),
            f([1, 0, 0, 0, 0, 0], [0; 6]),
        ),
        PairingId::S1s2D1s => (
            f([0, 0, 0, 1, 0, -l], [0, 0, 1, 0, 0, 0]),
            f([1, 0, 0, 0, 0, 0], [0; 6]),
        ),
        PairingId::S2sD11 => (
            f([0, 0, 0, 0, 0, 1], [1, 0, 0, -l, 0, 0]),
            f([0, 1, 0, 0, 0, 0], [0; 6]),
        ),
        PairingId::S2sD2 => {
            let beta = least_beta(p, l);
            (
                f([0, 0, 0, 0, 0, 1], [1, 0, 0, -l, 0, 0]),
                f([l, 2 * beta, 0, 1, 0, 0], [0; 6]),
            )
        }
        PairingId::S1s1sD1s => (
            f([0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0]),
            f([1, 0, 0, 0, 0, 0], [0; 6]),
        ),
        PairingId::S1s1sD11 => (
            f([0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0]),
            f([1, 0, 0, -1, 0, 0], [0; 6]),
        ),
        PairingId::S1s1sD2 => (
            f([0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0]),
            f([-l, 0, 0, 1, 0, 0], [0; 6]),
        ),
        PairingId::S1e31D1s => (
            f([0, 0, 0, 0, 1, 0], [0, 0, 1, 1, 0, 0]),
            f([1, 0, 0, 0, 0, 0], [0; 6]),
        ),
        PairingId::S1e31Cs => (
            f([0, 0, 0, 0, 1, 0], [0, 0, 1, 1, 0, 0]),
            f([0, -2, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0]),
        ),
        PairingId::S1e4D1s => (
            f([0, 0, 0, 0, 0, 1], [0, 0, 1, 1, 0, 0]),
            f([1, 0, 0, 0, 0, 0], [0; 6]),
        ),
        PairingId::S1e4D11 => (
            f([0, 0, 0, 0, 0, 1], [0, 0, 1, 1, 0, 0]),
            f([0, 1, 0, 0, 0, 0], [0; 6]),
        ),
        PairingId::S1e4S1e4 => (
            f([0, 0, 0, 0, 0, 1], [0, 0, 1, 1, 0, 0]),
            f([0, 0, -2, 1, 0, 0], [2, 0, 0, 0, 0, 0]),
        ),
    }
}

/// Least β with ℓu² + 2βuv + v² irreducible, i.e. β² - ℓ a non-square.
pub fn least_beta(p: i64, l: i64) -> i64 {
    (0..p)
        .find(|&b| legendre_i64(b * b - l, p) == -1)
        .expect("an irreducible of this shape exists")
}

/// Least k in F_p^× with ℓ - 4k² a nonzero square (the D2 b-branch rows).
pub fn least_k_d2(p: i64, l: i64) -> i64 {
    (1..p)
        .find(|&k| legendre_i64(l - 4 * k * k, p) == 1)
        .expect("a b-branch k exists when -1 is a non-square")
}

/// Least k in F_p^× with 1 - 4ℓk² a non-square (the D1² row-23 b-branch).
pub fn least_k_d1s(p: i64, l: i64) -> i64 {
    (1..p)
        .find(|&k| legendre_i64(1 - 4 * l * k * k, p) == -1)
        .expect("a b-branch k exists when -1 is a non-square")
}

/// The g₂ part attached to one GL₃ part of a template: either the standard
/// upper-triangular family shared by the product-type templates, or an
/// explicit (g₃-dependent) list for the coupled templates.
pub enum G2Part<'a> {
    Upper,
    Custom(&'a [[[i64; 2]; 2]]),
}

/// The upper-triangular g₂ family with unit diagonal entries.
pub fn upper_triangular_g2(p: i64) -> Vec<[[i64; 2]; 2]> {
    let mut v = Vec::new();
    for b11 in 1..p {
        for b12 in 0..p {
            for b22 in 1..p {
                v.push([[b11, b12], [0, b22]]);
            }
        }
    }
    v
}

/// Visit the GL₃ parts of the tabulated parameterization of G_{x,ξ}ᵗ, with
/// the admissible g₂ family per part. The union over (g₃, g₂) is exactly the
/// transposed action set.
pub fn visit_template<F: FnMut(&[[i64; 3]; 3], G2Part)>(
    id: PairingId,
    p: i64,
    nr: &NonResidue,
    mut f: F,
) {
    let l = nr.ell;
    let block_first = |f: &mut F| {
        // g₃ = [[a11,a12,a13],[0,a,b],[0,c,d]] with a11 and the block units
        for a11 in 1..p {
            for a12 in 0..p {
                for a13 in 0..p {
                    for a in 0..p {
                        for b in 0..p {
                            for c in 0..p {
                                for d in 0..p {
                                    if md(a * d - b * c, p) == 0 {
                                        continue;
                                    }
                                    f(&[[a11, a12, a13], [0, a, b], [0, c, d]], G2Part::Upper);
                                }
                            }
                        }
                    }
                }
            }
        }
    };
    match id {
        PairingId::S1s11D1s | PairingId::S1s2D1s | PairingId::S1e31D1s | PairingId::S1e4D1s => {
            block_first(&mut f)
        }
        PairingId::S1s1sD1s => {
            block_first(&mut f);
            // second component: first column (0, a21, 0)
            for a21 in 1..p {
                for a22 in 0..p {
                    for a23 in 0..p {
                        for a in 0..p {
                            for b in 0..p {
                                for c in 0..p {
                                    for d in 0..p {
                                        if md(a * d - b * c, p) == 0 {
                                            continue;
                                        }
                                        f(
                                            &[[0, a, b], [a21, a22, a23], [0, c, d]],
                                            G2Part::Upper,
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        PairingId::S2sD11 => {
            // g₃ = [[a, cλℓ, *],[c, aλ, *],[0,0,a33]]
            for lam in 1..p {
                for a in 0..p {
                    for c in 0..p {
                        if a == 0 && c == 0 {
                            continue;
                        }
                        for a13 in 0..p {
                            for a23 in 0..p {
                                for a33 in 1..p {
                                    f(
                                        &[
                                            [a, md(c * lam * l, p), a13],
                                            [c, md(a * lam, p), a23],
                                            [0, 0, a33],
                                        ],
                                        G2Part::Upper,
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        PairingId::S1s1sD2 => {
            // g₃ = [[a, cℓ, *],[cλ, aλ, *],[0,0,a33]]
            for lam in 1..p {
                for a in 0..p {
                    for c in 0..p {
                        if a == 0 && c == 0 {
                            continue;
                        }
                        for a13 in 0..p {
                            for a23 in 0..p {
                                for a33 in 1..p {
                                    f(
                                        &[
                                            [a, md(c * l, p), a13],
                                            [md(c * lam, p), md(a * lam, p), a23],
                                            [0, 0, a33],
                                        ],
                                        G2Part::Upper,
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        PairingId::S2sD2 => {
            let beta = least_beta(p, l);
            // upper-left blocks keeping ℓu²+2βuv+v² orthogonal to u²-ℓv²
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        for d in 0..p {
                            if md(a * d - b * c, p) == 0 {
                                continue;
                            }
                            let t11 = md(l * a * a + 2 * beta * a * b + b * b, p);
                            let t22 = md(l * c * c + 2 * beta * c * d + d * d, p);
                            if md(t11 - l * t22, p) != 0 {
                                continue;
                            }
                            for a13 in 0..p {
                                for a23 in 0..p {
                                    for a33 in 1..p {
                                        f(
                                            &[[a, b, a13], [c, d, a23], [0, 0, a33]],
                                            G2Part::Upper,
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        PairingId::S1s1sD11 => {
            // block sends u+v -> αu+βv and u-v -> λ(αu-βv)
            let i2 = inv_mod(2, p);
            for al in 1..p {
                for be in 1..p {
                    for lam in 1..p {
                        let m11 = md(al * (1 + lam) * i2, p);
                        let m12 = md(al * (1 - lam) * i2, p);
                        let m21 = md(be * (1 - lam) * i2, p);
                        let m22 = md(be * (1 + lam) * i2, p);
                        for a13 in 0..p {
                            for a23 in 0..p {
                                for a33 in 1..p {
                                    f(
                                        &[[m11, m12, a13], [m21, m22, a23], [0, 0, a33]],
                                        G2Part::Upper,
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        PairingId::S1e31Cs => {
            // g₃ upper triangular diag (a,b,a33); g₂ = [[c, b12],[0, bc/a]]
            for a in 1..p {
                let ai = inv_mod(a, p);
                for b in 1..p {
                    let mut g2s = Vec::with_capacity(((p - 1) * p) as usize);
                    for c in 1..p {
                        let d = md(b * c % p * ai, p);
                        for b12 in 0..p {
                            g2s.push([[c, b12], [0, d]]);
                        }
                    }
                    for a12 in 0..p {
                        for a13 in 0..p {
                            for a23 in 0..p {
                                for a33 in 1..p {
                                    f(
                                        &[[a, a12, a13], [0, b, a23], [0, 0, a33]],
                                        G2Part::Custom(&g2s),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        PairingId::S1e4D11 => {
            // upper triangular, or (2,2) entry zero with the antidiagonal units
            for a11 in 1..p {
                for a22 in 1..p {
                    for a33 in 1..p {
                        for a12 in 0..p {
                            for a13 in 0..p {
                                for a23 in 0..p {
                                    f(
                                        &[[a11, a12, a13], [0, a22, a23], [0, 0, a33]],
                                        G2Part::Upper,
                                    );
                                }
                            }
                        }
                    }
                }
            }
            for a12 in 1..p {
                for a21 in 1..p {
                    for a33 in 1..p {
                        for a11 in 0..p {
                            for a13 in 0..p {
                                for a23 in 0..p {
                                    f(
                                        &[[a11, a12, a13], [a21, 0, a23], [0, 0, a33]],
                                        G2Part::Upper,
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        PairingId::S1e4S1e4 => {
            // g₃ upper triangular diag (a,b,c) with b² = ac; g₂ = (d, b12; 0, e)
            // with cd = ae
            for a in 1..p {
                let ai = inv_mod(a, p);
                for b in 1..p {
                    let c = md(b * b % p * ai, p);
                    let mut g2s = Vec::with_capacity(((p - 1) * p) as usize);
                    for d in 1..p {
                        let e = md(c * d % p * ai, p);
                        for b12 in 0..p {
                            g2s.push([[d, b12], [0, e]]);
                        }
                    }
                    for a12 in 0..p {
                        for a13 in 0..p {
                            for a23 in 0..p {
                                f(&[[a, a12, a13], [0, b, a23], [0, 0, c]], G2Part::Custom(&g2s));
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Visit every element of G_{x,ξ}ᵗ once, through the explicit tabulated
/// parameterization.
pub fn for_each_template_element<F: FnMut(&[[i64; 3]; 3], &[[i64; 2]; 2])>(
    id: PairingId,
    p: i64,
    nr: &NonResidue,
    mut f: F,
) {
    let upper = upper_triangular_g2(p);
    visit_template(id, p, nr, |g3, part| match part {
        G2Part::Upper => {
            for g2 in &upper {
                f(g3, g2);
            }
        }
        G2Part::Custom(g2s) => {
            for g2 in g2s {
                f(g3, g2);
            }
        }
    });
}

/// The raw oracle: filter all of G(F_p) for the membership condition, with
/// no factored solve. Hours-scale beyond p = 5, so guarded there.
pub fn action_set_count_slow(
    x_label: Orbit,
    xi: &FormPair,
    p: i64,
    nr: &NonResidue,
) -> Result<i128, Error> {
    if p != 5 {
        return Err(Error::ResourceGuard {
            what: "raw full-group action set filter",
            p,
        });
    }
    let vx = annihilator_of_label(x_label, p, nr);
    let xi = xi.reduce(p);
    let g2s = crate::forms::gl2_elements(p);
    let rows = row_space(p);
    let wbasis: Vec<(Coeffs, Coeffs)> = vx
        .basis
        .iter()
        .map(|v| {
            let f = FormPair::from_flat(v);
            let weigh = |c: &Coeffs| {
                [
                    md(2 * c[0], p),
                    c[1],
                    c[2],
                    md(2 * c[3], p),
                    c[4],
                    md(2 * c[5], p),
                ]
            };
            (weigh(&f.a), weigh(&f.b))
        })
        .collect();
    let total: i128 = rows
        .par_iter()
        .map(|r0| {
            let mut n: i128 = 0;
            for_each_gl3_with_first_row(p, r0, &rows, &mut |g3| {
                let ta = transform3(g3, &xi.a, p);
                let tb = transform3(g3, &xi.b, p);
                'g2: for g2 in &g2s {
                    // g·ξ = (αÃ+βB̃, γÃ+δB̃) must pair to zero with V_x
                    let (al, be, ga, de) = (g2[0][0], g2[0][1], g2[1][0], g2[1][1]);
                    for (wa, wb) in &wbasis {
                        let c = al * wdot(wa, &ta, p)
                            + be * wdot(wa, &tb, p)
                            + ga * wdot(wb, &ta, p)
                            + de * wdot(wb, &tb, p);
                        if md(c, p) != 0 {
                            continue 'g2;
                        }
                    }
                    n += 1;
                }
            });
            n
        })
        .sum();
    Ok(total)
}

#[derive(Serialize, Clone, Debug)]
pub struct ActionSetRow {
    pub x_label: String,
    pub xi_label: String,
    pub p: i64,
    pub expected_count: String,
    pub computed_count: String,
    pub pass: bool,
}

/// Cardinality check for all 12 pairings: factored brute count vs the
/// tabulated polynomial vs the explicit template.
pub fn verify_action_set_counts(p: i64, nr: &NonResidue) -> Result<Vec<ActionSetRow>, Error> {
    guard_scan_prime(p)?;
    let mut rows = Vec::new();
    for id in ALL_PAIRINGS {
        let (x_label, xi_label) = id.labels();
        let (_, xi0) = pairing_reps(id, p, nr);
        let brute = action_set_count(x_label, &xi0, p, nr)?;
        let expected = id.expected_count(p);
        let mut template_count: i128 = 0;
        for_each_template_element(id, p, nr, |_, _| template_count += 1);
        let pass = brute == expected && template_count == expected;
        rows.push(ActionSetRow {
            x_label: x_label.name().to_string(),
            xi_label: xi_label.name().to_string(),
            p,
            expected_count: format!("{} = {}", id.expected_count_display(), expected),
            computed_count: format!("brute {} / template {}", brute, template_count),
            pass,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::det2;
    use crate::ring::smallest_nonresidue;

    #[test]
    fn zero_frequency_gives_full_group() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        let n = action_set_count(Orbit::O1s11, &FormPair::zero(), p, &nr).unwrap();
        assert_eq!(n, crate::orbits::group_order(p));
    }

    #[test]
    fn s1s11_d1s_count_p5() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        let (_, xi0) = pairing_reps(PairingId::S1s11D1s, p, &nr);
        assert_eq!(
            action_set_count(Orbit::O1s11, &xi0, p, &nr).unwrap(),
            3_840_000
        );
    }

    #[test]
    fn templates_have_expected_counts_p5() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        for id in ALL_PAIRINGS {
            let mut n: i128 = 0;
            for_each_template_element(id, p, &nr, |_, _| n += 1);
            assert_eq!(n, id.expected_count(p), "{:?}", id);
        }
    }

    #[test]
    fn template_elements_are_members_p5() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        for id in ALL_PAIRINGS {
            let (x_label, _) = id.labels();
            let (_, xi0) = pairing_reps(id, p, &nr);
            let vx = annihilator_of_label(x_label, p, &nr);
            let mut k = 0u64;
            for_each_template_element(id, p, &nr, |g3, g2| {
                // sample every 97th element to keep the test quick
                if k % 97 == 0 {
                    let g = GroupElement { g3: *g3, g2: *g2 };
                    assert_ne!(crate::forms::det3(g3, p), 0);
                    assert_ne!(det2(g2, p), 0);
                    assert!(
                        is_in_transposed_action_set(&g, &vx, &xi0, p),
                        "{:?}",
                        id
                    );
                }
                k += 1;
            });
        }
    }

    #[test]
    fn membership_symmetry_random() {
        let p = 5;
        let nr = smallest_nonresidue(p);
        let x = representative(Orbit::O1s11, p, &nr);
        let xi = representative(Orbit::OD1s, p, &nr);
        let (m1, m2) = symmetric_membership_check(&GroupElement::identity(), &x, &xi, p);
        assert_eq!(m1, m2);
        let (z1, z2) =
            symmetric_membership_check(&GroupElement::identity(), &x, &FormPair::zero(), p);
        assert!(z1 && z2);
    }
}
