//! Exact arithmetic over Z/p and Z/p², Legendre symbols, and the ring Z[ζ_p]
//! used to accumulate exponential sums without floating point.
//!
//! All counters fit in 64 bits: the largest histogram count that can occur is
//! the full group order |G(F_7)| < 2^40, which `Modulus::new` asserts.

use std::collections::BTreeMap;
use std::fmt;

use crate::Error;

/// Largest prime accepted anywhere in the crate. The group scans are only run
/// for p in {5, 7}; linear-algebra checks go up to 13.
pub const MAX_P: i64 = 13;

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The modulus p^k with p an odd prime > 3 and k in {1, 2}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Modulus {
    pub p: i64,
    pub k: u8,
}

impl Modulus {
    pub fn new(p: i64, k: u8) -> Result<Self, Error> {
        if !is_prime(p) || p <= 3 || p > MAX_P {
            return Err(Error::BadPrime(p));
        }
        if k != 1 && k != 2 {
            return Err(Error::BadExponent(k));
        }
        // 64-bit accumulator headroom: the group scans are bounded by p <= 7
        // and the largest histogram count is |G(F_7)| < 2^40.
        debug_assert!(crate::orbits::s_poly(5, 4, 2, 2).eval(7) < (1i128 << 40));
        Ok(Modulus { p, k })
    }

    pub fn modulus(&self) -> i64 {
        if self.k == 1 {
            self.p
        } else {
            self.p * self.p
        }
    }
}

/// An element of Z/p^k, kept reduced to [0, p^k).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RingElem {
    pub value: i64,
    pub modulus: Modulus,
}

impl RingElem {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        let m = modulus.modulus();
        RingElem {
            value: value.rem_euclid(m),
            modulus,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.value % self.modulus.p != 0
    }
}

/// Reduce into [0, m).
#[inline(always)]
pub fn md(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

/// Inverse mod m via extended Euclid on the lift. Panics on non-units; callers
/// guard with unit checks.
pub fn inv_mod(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert!(r0 == 1, "inv_mod of non-unit {} mod {}", a, m);
    t0.rem_euclid(m)
}

/// Legendre symbol (a/p) in {-1, 0, 1}; requires a mod-p argument.
pub fn legendre_i64(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    // Euler criterion by repeated squaring; p is tiny so this is plenty.
    let mut result = 1i64;
    let mut base = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == p - 1 {
        -1
    } else {
        result
    }
}

/// Legendre symbol on ring elements; the contract requires k = 1.
pub fn legendre(a: &RingElem) -> Result<i64, Error> {
    if a.modulus.k != 1 {
        return Err(Error::Contract("legendre requires a mod-p argument"));
    }
    Ok(legendre_i64(a.value, a.modulus.p))
}

/// A fixed quadratic non-residue mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonResidue {
    pub ell: i64,
    pub p: i64,
}

/// The least positive non-residue mod p.
pub fn smallest_nonresidue(p: i64) -> NonResidue {
    for ell in 2..p {
        if legendre_i64(ell, p) == -1 {
            return NonResidue { ell, p };
        }
    }
    unreachable!("every prime > 2 has a non-residue")
}

/// Validate a user-supplied non-residue override.
pub fn nonresidue_checked(p: i64, ell: i64) -> Result<NonResidue, Error> {
    if legendre_i64(ell, p) == -1 {
        Ok(NonResidue {
            ell: ell.rem_euclid(p),
            p,
        })
    } else {
        Err(Error::NotANonResidue { ell, p })
    }
}

/// The least primitive root mod p.
pub fn primitive_root(p: i64) -> i64 {
    'g: for g in 2..p {
        let mut x = 1i64;
        for _ in 0..p - 2 {
            x = x * g % p;
            if x == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!()
}

/// An element of Z[ζ_p] stored as an exponent histogram F_p -> Z, representing
/// Σ_r counts[r]·ζ^r. The canonical form has counts[p-1] = 0, reached by
/// subtracting counts[p-1] from every entry via 1 + ζ + ... + ζ^{p-1} = 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycInt {
    pub p: i64,
    pub counts: Vec<i64>,
}

impl CycInt {
    pub fn zero(p: i64) -> Self {
        CycInt {
            p,
            counts: vec![0; p as usize],
        }
    }

    pub fn from_exponent(r: i64, p: i64) -> Self {
        let mut c = CycInt::zero(p);
        c.counts[md(r, p) as usize] = 1;
        c
    }

    pub fn from_integer(n: i64, p: i64) -> Self {
        let mut c = CycInt::zero(p);
        c.counts[0] = n;
        c
    }

    pub fn from_counts(counts: Vec<i64>, p: i64) -> Self {
        assert_eq!(counts.len(), p as usize);
        CycInt { p, counts }
    }

    fn check_same_p(&self, other: &CycInt) {
        assert_eq!(self.p, other.p, "mixing Z[zeta_p] for distinct p");
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        self.check_same_p(other);
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a + b)
            .collect();
        CycInt { p: self.p, counts }
    }

    pub fn add_assign(&mut self, other: &CycInt) {
        self.check_same_p(other);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn scale(&self, n: i64) -> CycInt {
        CycInt {
            p: self.p,
            counts: self.counts.iter().map(|a| a * n).collect(),
        }
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        self.check_same_p(other);
        let p = self.p as usize;
        let mut counts = vec![0i64; p];
        for (i, a) in self.counts.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.counts.iter().enumerate() {
                if *b != 0 {
                    counts[(i + j) % p] += a * b;
                }
            }
        }
        CycInt { p: self.p, counts }
    }

    /// Exponent negation r -> -r, the complex conjugate on Z[ζ_p].
    pub fn conjugate(&self) -> CycInt {
        let p = self.p as usize;
        let mut counts = vec![0i64; p];
        for (i, a) in self.counts.iter().enumerate() {
            counts[(p - i) % p] += a;
        }
        CycInt { p: self.p, counts }
    }

    /// Canonical representative with counts[p-1] = 0.
    pub fn canonical(&self) -> CycInt {
        let last = self.counts[self.p as usize - 1];
        CycInt {
            p: self.p,
            counts: self.counts.iter().map(|a| a - last).collect(),
        }
    }

    pub fn canon_eq(&self, other: &CycInt) -> bool {
        self.canonical() == other.canonical()
    }

    /// The rational integer this value represents, if it is one.
    pub fn as_integer(&self) -> Result<i64, Error> {
        let c = self.canonical();
        if c.counts[1..].iter().any(|&a| a != 0) {
            return Err(Error::NotRational);
        }
        Ok(c.counts[0])
    }

    pub fn is_zero(&self) -> bool {
        self.as_integer() == Ok(0)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        let terms: BTreeMap<usize, i64> = c
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| (i, a))
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = terms
            .iter()
            .map(|(i, a)| match i {
                0 => format!("{}", a),
                1 => format!("{}*z", a),
                _ => format!("{}*z^{}", a, i),
            })
            .collect();
        write!(f, "{}", s.join(" + "))
    }
}

/// The quadratic Gauss sum τ = Σ_{n in F_p} e_p(n²) as a cyclotomic integer.
pub fn gauss_tau(p: i64) -> CycInt {
    let mut t = CycInt::zero(p);
    for n in 0..p {
        t.counts[(n * n % p) as usize] += 1;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_basics() {
        assert_eq!(legendre_i64(0, 5), 0);
        assert_eq!(legendre_i64(4, 5), 1);
        // squares mod 5 are {1, 4}
        assert_eq!(legendre_i64(2, 5), -1);
    }

    #[test]
    fn legendre_rejects_mod_p2() {
        let m = Modulus::new(5, 2).unwrap();
        assert!(legendre(&RingElem::new(3, m)).is_err());
    }

    #[test]
    fn legendre_multiplicative_and_balanced() {
        for p in [5, 7, 11, 13] {
            for a in 1..p {
                for b in 1..p {
                    assert_eq!(
                        legendre_i64(a * b, p),
                        legendre_i64(a, p) * legendre_i64(b, p)
                    );
                }
            }
            let total: i64 = (0..p).map(|a| legendre_i64(a, p)).sum();
            assert_eq!(total, 0);
        }
    }

    #[test]
    fn smallest_nonresidues() {
        assert_eq!(smallest_nonresidue(5).ell, 2);
        assert_eq!(smallest_nonresidue(7).ell, 3);
        assert_eq!(smallest_nonresidue(11).ell, 2);
    }

    #[test]
    fn inverses_mod_p2() {
        for p in [5i64, 7] {
            let m = p * p;
            for a in 1..m {
                if a % p == 0 {
                    continue;
                }
                assert_eq!(a * inv_mod(a, m) % m, 1);
            }
        }
    }

    #[test]
    fn cyc_from_exponent_zero_is_one() {
        let c = CycInt::from_exponent(0, 5);
        assert_eq!(c.as_integer().unwrap(), 1);
    }

    #[test]
    fn full_character_sum_vanishes() {
        for p in [5, 7, 11] {
            let mut s = CycInt::zero(p);
            for r in 0..p {
                s.add_assign(&CycInt::from_exponent(r, p));
            }
            assert_eq!(s.as_integer().unwrap(), 0);
            // and for every nonzero a, the histogram of a*n is uniform
            for a in 1..p {
                let mut t = CycInt::zero(p);
                for n in 0..p {
                    t.add_assign(&CycInt::from_exponent(a * n, p));
                }
                assert_eq!(t.as_integer().unwrap(), 0);
            }
        }
    }

    #[test]
    fn zeta_powers_sum_to_minus_one() {
        let mut s = CycInt::zero(5);
        for r in 1..5 {
            s.add_assign(&CycInt::from_exponent(r, 5));
        }
        assert_eq!(s.as_integer().unwrap(), -1);
    }

    #[test]
    fn tau_histogram_p5() {
        let t = gauss_tau(5);
        assert_eq!(t.counts, vec![1, 2, 0, 0, 2]);
        assert!(t.as_integer().is_err());
    }

    #[test]
    fn tau_squared_is_minus_one_symbol_times_p() {
        for p in [5, 7, 11] {
            let t = gauss_tau(p);
            let sq = t.mul(&t);
            assert_eq!(sq.as_integer().unwrap(), legendre_i64(p - 1, p) * p);
            // |tau|^2 = p
            assert_eq!(t.mul(&t.conjugate()).as_integer().unwrap(), p);
        }
    }

    #[test]
    fn scaled_square_sum_twists_by_legendre() {
        // Σ_n e_p(a n²) = (a/p)·τ for a a unit, checked at a = ell, p = 5.
        let p = 5;
        let ell = smallest_nonresidue(p).ell;
        let mut s = CycInt::zero(p);
        for n in 0..p {
            s.add_assign(&CycInt::from_exponent(ell * n * n, p));
        }
        let expect = gauss_tau(p).scale(legendre_i64(ell, p));
        assert!(s.canon_eq(&expect));
    }

    #[test]
    fn canonicalization_idempotent_and_congruent() {
        let a = CycInt::from_counts(vec![3, 1, 4, 1, 5], 5);
        let b = CycInt::from_counts(vec![2, 0, 3, 0, 4], 5);
        assert!(a.canon_eq(&b));
        assert_eq!(a.canonical().canonical(), a.canonical());
        let c = CycInt::from_exponent(3, 5);
        assert!(a.add(&c).canon_eq(&b.add(&c)));
        assert!(a.mul(&c).canon_eq(&b.mul(&c)));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
    }
}
