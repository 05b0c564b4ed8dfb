//! Exact arithmetic in the cyclotomic field Q(z) where z is a primitive
//! 24th root of unity.
//!
//! Elements are stored densely as rational polynomials of degree < 8 in z,
//! reduced modulo the 24th cyclotomic polynomial x^8 - x^4 + 1.  This field
//! contains every root of unity of order dividing 24, the square roots of 2
//! and -2, and therefore all character values and Weil numbers that the
//! verification suite manipulates.  All operations are exact; equality is
//! literal coefficient equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Which square root of -2 is meant by `(-2)^(1/2)`.
///
/// The two candidates are `z^3 + z^9` and its negative; pinning one makes a
/// whole chain of downstream conventions (eta, sqrt(q), half-integral powers
/// of -2) deterministic.  Sweeping both choices is how the suite checks that
/// no verdict depends on the convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SqrtChoice {
    #[default]
    First,
    Second,
}

impl SqrtChoice {
    pub fn all() -> [SqrtChoice; 2] {
        [SqrtChoice::First, SqrtChoice::Second]
    }
}

/// An element of Q(z), z = primitive 24th root of unity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc {
    /// Coefficients of 1, z, z^2, ..., z^7.
    coeffs: [BigRational; 8],
}

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Cyc {
    pub fn zero() -> Cyc {
        Cyc {
            coeffs: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    pub fn one() -> Cyc {
        Cyc::from_int(1)
    }

    pub fn from_int(n: i64) -> Cyc {
        let mut c = Cyc::zero();
        c.coeffs[0] = rat_int(n);
        c
    }

    pub fn from_rational(r: BigRational) -> Cyc {
        let mut c = Cyc::zero();
        c.coeffs[0] = r;
        c
    }

    pub fn from_ratio(num: i64, den: i64) -> Cyc {
        assert!(den != 0, "zero denominator");
        Cyc::from_rational(rat_int(num) / rat_int(den))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when the element lies in Q (no z-component).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// The integer value, if the element is a rational integer.
    pub fn as_int(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// z^e for any integer exponent e (z has order 24).
    pub fn zeta24_pow(e: i64) -> Cyc {
        let e = e.rem_euclid(24) as usize;
        // Powers below 8 are basis monomials; higher ones reduce by repeated
        // application of x^8 = x^4 - 1.
        let mut coeffs = [0i64; 24];
        coeffs[e] = 1;
        for k in (8..24).rev() {
            if coeffs[k] != 0 {
                let v = coeffs[k];
                coeffs[k] = 0;
                coeffs[k - 4] += v;
                coeffs[k - 8] -= v;
            }
        }
        let mut c = Cyc::zero();
        for i in 0..8 {
            c.coeffs[i] = rat_int(coeffs[i]);
        }
        c
    }

    /// A primitive nth root of unity for n dividing 24: zeta(n, k) = z^(24k/n).
    pub fn zeta(n: i64, k: i64) -> Cyc {
        assert!(n > 0 && 24 % n == 0, "order {n} does not divide 24");
        Cyc::zeta24_pow(24 / n * k)
    }

    /// i = zeta(4, 1).
    pub fn i() -> Cyc {
        Cyc::zeta(4, 1)
    }

    /// The pinned square root of -2: z^3 + z^9 (or its negative).
    pub fn sqrt_minus_two(choice: SqrtChoice) -> Cyc {
        let v = Cyc::zeta24_pow(3) + Cyc::zeta24_pow(9);
        match choice {
            SqrtChoice::First => v,
            SqrtChoice::Second => -v,
        }
    }

    /// The pinned square root of 2: z^3 + z^(-3).  This one is canonical
    /// (it is the positive real root under the standard embedding) and is
    /// not subject to a convention sweep.
    pub fn sqrt_two() -> Cyc {
        Cyc::zeta24_pow(3) + Cyc::zeta24_pow(-3)
    }

    /// sqrt(q) for q = 2^f, defined as sqrt(2)^f.
    pub fn sqrt_q(f: u32) -> Cyc {
        Cyc::sqrt_two().pow(f as i64)
    }

    /// (-2)^(e/2) for an integer e, using the pinned sqrt(-2) when e is odd.
    pub fn minus_two_half_pow(e: i64, choice: SqrtChoice) -> Cyc {
        let whole = Cyc::from_int(-2).pow(e.div_euclid(2));
        if e.rem_euclid(2) == 1 {
            whole * Cyc::sqrt_minus_two(choice)
        } else {
            whole
        }
    }

    /// The ordered pair (eta, eta') of roots of x^2 + (-2)^((f+1)/2) x + q,
    /// for odd f.  The pinned root uses `+ sqrt(-2) * sqrt(2)^f` in the
    /// quadratic formula; the companion uses the minus sign.
    pub fn eta_pair(f: u32, choice: SqrtChoice) -> (Cyc, Cyc) {
        assert!(f % 2 == 1, "eta is defined for odd f only");
        let b = Cyc::minus_two_half_pow((f + 1) as i64, choice);
        // The discriminant b^2 - 4q equals -2^(f+1); its pinned square root
        // is sqrt(-2) * sqrt(2)^f.
        let root = Cyc::sqrt_minus_two(choice) * Cyc::sqrt_two().pow(f as i64);
        let half = Cyc::from_ratio(1, 2);
        let eta = (-b.clone() + root.clone()) * half.clone();
        let eta_bar = (-b - root) * half;
        (eta, eta_bar)
    }

    /// Galois conjugation z -> z^(-1) (complex conjugation under the
    /// standard embedding).
    pub fn conj(&self) -> Cyc {
        let mut out = Cyc::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut term = Cyc::zeta24_pow(-(i as i64));
                for t in term.coeffs.iter_mut() {
                    *t *= c;
                }
                out += term;
            }
        }
        out
    }

    /// Integer powers, with negative exponents going through the inverse.
    pub fn pow(&self, e: i64) -> Cyc {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = Cyc::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse.  Panics on zero.
    pub fn inv(&self) -> Cyc {
        assert!(!self.is_zero(), "inverse of zero in Q(zeta24)");
        // Solve a * x = 1 as an 8x8 rational linear system: the columns of
        // the matrix are a * z^j expressed on the power basis.
        let mut m: Vec<Vec<BigRational>> = Vec::with_capacity(8);
        for j in 0..8 {
            let col = self.clone() * Cyc::zeta24_pow(j);
            m.push(col.coeffs.to_vec());
        }
        // Augmented elimination on the transpose (rows = basis coordinates).
        let mut a: Vec<Vec<BigRational>> = (0..8)
            .map(|r| (0..8).map(|c| m[c][r].clone()).collect())
            .collect();
        let mut rhs: Vec<BigRational> = (0..8)
            .map(|r| if r == 0 { BigRational::one() } else { BigRational::zero() })
            .collect();
        for col in 0..8 {
            let pivot = (col..8)
                .find(|&r| !a[r][col].is_zero())
                .expect("singular multiplication matrix for nonzero element");
            a.swap(col, pivot);
            rhs.swap(col, pivot);
            let p = a[col][col].clone();
            for c in col..8 {
                a[col][c] /= p.clone();
            }
            rhs[col] /= p;
            for r in 0..8 {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in col..8 {
                        let v = a[col][c].clone() * factor.clone();
                        a[r][c] -= v;
                    }
                    let v = rhs[col].clone() * factor;
                    rhs[r] -= v;
                }
            }
        }
        let mut out = Cyc::zero();
        for i in 0..8 {
            out.coeffs[i] = rhs[i].clone();
        }
        out
    }

    /// Canonical report string: "a0 + a1*z + ... + a7*z^7" with rational
    /// coefficients "p/q"; zero terms elided, the zero element printed "0".
    pub fn canonical_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_integer() {
                c.to_integer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            };
            let part = match i {
                0 => coeff,
                1 => format!("{coeff}*z"),
                _ => format!("{coeff}*z^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Coefficient access for property tests.
    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    /// Sum of a * conj(a) with itself... actually |a|^2 = a * conj(a); this
    /// is rational and non-negative for any element, a handy sanity probe.
    pub fn norm_to_conj(&self) -> Cyc {
        self.clone() * self.conj()
    }

    /// True if the element is a root of unity in mu_24, and its exponent.
    pub fn as_mu24(&self) -> Option<i64> {
        (0..24).find(|&e| *self == Cyc::zeta24_pow(e))
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({})", self.canonical_string())
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl Add for Cyc {
    type Output = Cyc;
    fn add(mut self, rhs: Cyc) -> Cyc {
        self += rhs;
        self
    }
}

impl AddAssign for Cyc {
    fn add_assign(&mut self, rhs: Cyc) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for Cyc {
    type Output = Cyc;
    fn sub(mut self, rhs: Cyc) -> Cyc {
        self -= rhs;
        self
    }
}

impl SubAssign for Cyc {
    fn sub_assign(&mut self, rhs: Cyc) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(mut self) -> Cyc {
        for c in self.coeffs.iter_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, rhs: Cyc) -> Cyc {
        let mut prod: Vec<BigRational> = vec![BigRational::zero(); 15];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // Fold down with x^8 = x^4 - 1.
        for k in (8..15).rev() {
            if !prod[k].is_zero() {
                let v = prod[k].clone();
                prod[k] = BigRational::zero();
                prod[k - 4] += v.clone();
                prod[k - 8] -= v;
            }
        }
        let mut out = Cyc::zero();
        for i in 0..8 {
            out.coeffs[i] = prod[i].clone();
        }
        out
    }
}

impl MulAssign for Cyc {
    fn mul_assign(&mut self, rhs: Cyc) {
        *self = self.clone() * rhs;
    }
}

impl Div for Cyc {
    type Output = Cyc;
    fn div(self, rhs: Cyc) -> Cyc {
        self * rhs.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta24_has_order_24() {
        let z = Cyc::zeta24_pow(1);
        let mut p = Cyc::one();
        for k in 1..=24 {
            p = p * z.clone();
            if k < 24 {
                assert_ne!(p, Cyc::one(), "z^{k} should not be 1");
            }
        }
        assert_eq!(p, Cyc::one());
    }

    #[test]
    fn cyclotomic_relation_holds() {
        // z^8 - z^4 + 1 = 0.
        let v = Cyc::zeta24_pow(8) - Cyc::zeta24_pow(4) + Cyc::one();
        assert!(v.is_zero());
    }

    #[test]
    fn primitive_roots_of_each_order() {
        for &n in &[1i64, 2, 3, 4, 6, 8, 12, 24] {
            let w = Cyc::zeta(n, 1);
            assert_eq!(w.pow(n), Cyc::one());
            for d in 1..n {
                if n % d == 0 {
                    assert_ne!(w.pow(d), Cyc::one(), "zeta({n},1)^{d} = 1");
                }
            }
        }
        assert_eq!(Cyc::zeta(2, 1), Cyc::from_int(-1));
        assert_eq!(Cyc::i() * Cyc::i(), Cyc::from_int(-1));
    }

    #[test]
    fn pinned_square_roots() {
        for choice in SqrtChoice::all() {
            let s = Cyc::sqrt_minus_two(choice);
            assert_eq!(s.clone() * s, Cyc::from_int(-2));
        }
        assert_eq!(
            Cyc::sqrt_minus_two(SqrtChoice::Second),
            -Cyc::sqrt_minus_two(SqrtChoice::First)
        );
        let t = Cyc::sqrt_two();
        assert_eq!(t.clone() * t, Cyc::from_int(2));
        // sqrt(-2) = i * sqrt(2) for the first choice.
        assert_eq!(
            Cyc::sqrt_minus_two(SqrtChoice::First),
            Cyc::i() * Cyc::sqrt_two()
        );
    }

    #[test]
    fn sqrt_q_squares_to_q() {
        for f in 1..=13u32 {
            let s = Cyc::sqrt_q(f);
            assert_eq!(s.clone() * s, Cyc::from_int(1i64 << f));
        }
    }

    #[test]
    fn eta_satisfies_its_quadratic() {
        for f in [1u32, 3, 5, 7, 9, 11, 13] {
            for choice in SqrtChoice::all() {
                let q = Cyc::from_int(1i64 << f);
                let b = Cyc::minus_two_half_pow((f + 1) as i64, choice);
                let (eta, eta_bar) = Cyc::eta_pair(f, choice);
                for r in [eta.clone(), eta_bar.clone()] {
                    let v = r.clone() * r.clone() + b.clone() * r + q.clone();
                    assert!(v.is_zero(), "f={f}: root fails quadratic");
                }
                // Vieta: sum and product of the pair.
                assert_eq!(eta.clone() + eta_bar.clone(), -b);
                assert_eq!(eta.clone() * eta_bar, q.clone());
                // eta^4 = -q^2.
                assert_eq!(eta.pow(4), -(q.clone() * q));
            }
        }
    }

    #[test]
    fn eta_f1_is_one_plus_i() {
        let (eta, eta_bar) = Cyc::eta_pair(1, SqrtChoice::First);
        assert_eq!(eta, Cyc::one() + Cyc::i());
        assert_eq!(eta_bar, Cyc::one() - Cyc::i());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Cyc::zeta24_pow(5) + Cyc::from_int(3) * Cyc::zeta24_pow(2) - Cyc::from_ratio(7, 2);
        let inv = a.inv();
        assert_eq!(a * inv, Cyc::one());
    }

    #[test]
    fn conjugation_is_an_involution_and_ring_map() {
        let a = Cyc::zeta24_pow(1) + Cyc::from_int(2) * Cyc::zeta24_pow(6);
        let b = Cyc::zeta24_pow(11) - Cyc::from_int(5);
        assert_eq!(a.conj().conj(), a);
        assert_eq!((a.clone() * b.clone()).conj(), a.clone().conj() * b.clone().conj());
        assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
        // conj(z) * z = 1.
        let z = Cyc::zeta24_pow(1);
        assert_eq!(z.clone().conj() * z, Cyc::one());
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Cyc::zero().canonical_string(), "0");
        assert_eq!(Cyc::from_ratio(-1, 2).canonical_string(), "-1/2");
        // z^(-3) = z^21 reduces to z - z^5 on the power basis.
        assert_eq!(Cyc::sqrt_two().canonical_string(), "1*z + 1*z^3 + -1*z^5");
    }
}
