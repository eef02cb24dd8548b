//! Ground-field arithmetic: rationals, explicit number fields, and the
//! rational function fields built on top of them.

pub mod modgcd;
pub mod numfield;
pub mod ratfunc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used everywhere in this crate.
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational p/q. Panics if q = 0.
pub fn rat_frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let num_root = num_integer::Roots::sqrt(r.numer());
    let den_root = num_integer::Roots::sqrt(r.denom());
    if &(&num_root * &num_root) == r.numer() && &(&den_root * &den_root) == r.denom() {
        Some(Rat::new(num_root, den_root))
    } else {
        None
    }
}

/// Write r = k * s^2 with k a squarefree integer and s rational, and return
/// (k, s). Factoring is by trial division; returns None when a huge
/// unfactored part remains whose squarefree-ness cannot be certified.
pub fn squarefree_kernel(r: &Rat) -> Option<(BigInt, Rat)> {
    if r.is_zero() {
        return None;
    }
    // r = p/q = (p*q)/q^2, so the kernel of r equals the kernel of the
    // integer p*q.
    let n = r.numer() * r.denom();
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    let mut kernel = sign;
    let mut square = BigInt::one();
    let mut p = BigInt::from(2);
    let bound = BigInt::from(1_000_000u32);
    while &(&p * &p) <= &m && p <= bound {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            if e % 2 == 1 {
                kernel *= &p;
            }
            square *= p.pow(e / 2);
        }
        p += 1;
    }
    if !m.is_one() {
        // Leftover part: either a prime (squarefree), a prime square, or too
        // large to classify.
        let root = num_integer::Roots::sqrt(&m);
        if &(&root * &root) == &m {
            square *= root;
        } else if &p * &p > m {
            // Fully trial-divided below the bound, so the leftover is prime.
            kernel *= &m;
        } else {
            return None;
        }
    }
    let s = Rat::new(square, r.denom().clone());
    Some((kernel, s))
}

pub use modgcd::nf_poly_gcd;
