//! Polynomial gcd over a number field by modular reduction.
//!
//! Euclidean remainder sequences over ℚ(α) suffer severe coefficient growth:
//! intermediate remainders carry rationals far larger than either the inputs
//! or the answer. Reducing the whole computation mod a word-sized prime p
//! turns every coefficient operation into u64 arithmetic; the gcd is then
//! rebuilt from several primes by CRT and rational reconstruction. A
//! candidate is only returned after it exactly divides both inputs, so a
//! badly-behaved prime can never produce a wrong answer, merely a retry.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::numfield::NfElem;
use super::Rat;
use crate::poly::{RingElem, UniPoly};

// ---------------------------------------------------------------------------
// Arithmetic mod a u64 prime (products taken through u128).

fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse mod p for prime p (Fermat); zero has no inverse.
fn invm(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        None
    } else {
        Some(powm(a, p - 2, p))
    }
}

/// Deterministic Miller–Rabin for u64.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// The residue ring R = F_p[y] / (modulus), elements as coordinate vectors of
// length e = deg(modulus). R needn't be a field when the modulus factors mod
// p; inverses report failure and the caller discards the prime.

struct PrimeCtx {
    p: u64,
    e: usize,
    /// Monic modulus coordinates below the leading 1, reduced mod p.
    modulus: Vec<u64>,
}

type RElem = Vec<u64>;

impl PrimeCtx {
    fn zero(&self) -> RElem {
        vec![0; self.e]
    }

    #[cfg(test)]
    fn one(&self) -> RElem {
        let mut v = vec![0; self.e];
        v[0] = 1;
        v
    }

    fn is_zero(&self, a: &RElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn sub(&self, a: &RElem, b: &RElem) -> RElem {
        (0..self.e).map(|i| subm(a[i], b[i], self.p)).collect()
    }

    fn mul(&self, a: &RElem, b: &RElem) -> RElem {
        // Convolution followed by reduction by the monic modulus:
        // y^e = -(modulus below the lead).
        let mut conv = vec![0u64; 2 * self.e - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                conv[i + j] = addm(conv[i + j], mulm(x, y, self.p), self.p);
            }
        }
        for k in (self.e..conv.len()).rev() {
            let c = conv[k];
            if c == 0 {
                continue;
            }
            conv[k] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = k - self.e + i;
                conv[idx] = subm(conv[idx], mulm(c, m, self.p), self.p);
            }
        }
        conv.truncate(self.e);
        conv
    }

    /// Inverse in R via extended Euclid against the modulus in F_p[y];
    /// None when the element is zero or a zero divisor.
    fn inv(&self, a: &RElem) -> Option<RElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.e == 1 {
            return invm(a[0], self.p).map(|x| vec![x]);
        }
        // r0 = modulus (monic, degree e), r1 = a; track u with u·a ≡ r (mod m).
        let mut r0: Vec<u64> = self.modulus.iter().copied().chain(core::iter::once(1)).collect();
        let mut r1 = a.clone();
        trim(&mut r1);
        let mut u0 = vec![0u64];
        let mut u1 = vec![1u64];
        while !r1.is_empty() {
            let (q, r) = fp_divrem(&r0, &r1, self.p)?;
            let u2 = fp_sub(&u0, &fp_mul(&q, &u1, self.p), self.p);
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u2;
        }
        // r0 is the gcd; a unit only if degree 0.
        if r0.len() != 1 {
            return None;
        }
        let c = invm(r0[0], self.p)?;
        let mut out = vec![0u64; self.e];
        for (i, &x) in u0.iter().enumerate() {
            if i < self.e {
                out[i] = mulm(x, c, self.p);
            }
        }
        Some(out)
    }
}

// Dense F_p[y] helpers on trimmed Vec<u64> (empty = zero).

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = subm(x, y, p);
    }
    trim(&mut out);
    out
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> Option<(Vec<u64>, Vec<u64>)> {
    if b.is_empty() {
        return None;
    }
    let lb = *b.last().unwrap();
    let lb_inv = invm(lb, p)?;
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return Some((Vec::new(), r));
    }
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let c = mulm(*r.last().unwrap(), lb_inv, p);
        let shift = r.len() - b.len();
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = subm(r[shift + i], mulm(c, bc, p), p);
        }
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    trim(&mut q);
    Some((q, r))
}

// ---------------------------------------------------------------------------
// Reduction of number-field data mod p.

fn rat_mod(c: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = c.denom().mod_floor(&pb).to_u64()?;
    let den_inv = invm(den, p)?;
    let num = c.numer().mod_floor(&pb).to_u64()?;
    Some(mulm(num, den_inv, p))
}

fn nf_mod(c: &NfElem, ctx: &PrimeCtx) -> Option<RElem> {
    let mut out = ctx.zero();
    for (i, q) in c.rep().coeffs().iter().enumerate() {
        out[i] = rat_mod(q, ctx.p)?;
    }
    Some(out)
}

/// Reduce a polynomial coefficientwise; fails if any denominator hits p or if
/// the leading coefficient vanishes (the prime would change the degree).
fn poly_mod(f: &UniPoly<NfElem>, ctx: &PrimeCtx) -> Option<Vec<RElem>> {
    let out: Option<Vec<RElem>> = f.coeffs().iter().map(|c| nf_mod(c, ctx)).collect();
    let out = out?;
    if let Some(last) = out.last() {
        if ctx.is_zero(last) {
            return None;
        }
    }
    Some(out)
}

/// Monic Euclidean gcd of polynomials over R; None when a needed leading
/// coefficient is a zero divisor.
fn rpoly_gcd(ctx: &PrimeCtx, mut f: Vec<RElem>, mut g: Vec<RElem>) -> Option<Vec<RElem>> {
    let rtrim = |v: &mut Vec<RElem>| {
        while v.last().map(|c| ctx.is_zero(c)).unwrap_or(false) {
            v.pop();
        }
    };
    rtrim(&mut f);
    rtrim(&mut g);
    while !g.is_empty() {
        // Reduce f by monic-scaled g.
        let lg_inv = ctx.inv(g.last().unwrap())?;
        let gm: Vec<RElem> = g.iter().map(|c| ctx.mul(c, &lg_inv)).collect();
        while f.len() >= gm.len() {
            let lead = f.last().unwrap().clone();
            let shift = f.len() - gm.len();
            for (i, c) in gm.iter().enumerate() {
                let s = ctx.mul(&lead, c);
                f[shift + i] = ctx.sub(&f[shift + i], &s);
            }
            rtrim(&mut f);
            if f.is_empty() {
                break;
            }
        }
        core::mem::swap(&mut f, &mut g);
        rtrim(&mut g);
    }
    let lf_inv = ctx.inv(f.last().unwrap())?;
    Some(f.iter().map(|c| ctx.mul(c, &lf_inv)).collect())
}

// ---------------------------------------------------------------------------
// CRT and rational reconstruction.

/// Merge residue r_p mod p into an accumulated residue r mod m.
fn crt_merge(r: &BigInt, m: &BigInt, rp: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let m_mod_p = m.mod_floor(&pb).to_u64().expect("p fits u64");
    let m_inv = invm(m_mod_p, p).expect("moduli are distinct primes");
    let r_mod_p = r.mod_floor(&pb).to_u64().expect("p fits u64");
    let diff = subm(rp, r_mod_p, p);
    r + m * BigInt::from(mulm(diff, m_inv, p))
}

/// Find n/d with n ≡ r·d (mod m) and |n|, d ≤ √(m/2), by the half-extended
/// Euclid on (m, r). The caller re-verifies, so failure just means more
/// primes are needed.
fn rat_reconstruct(r: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = num_integer::Roots::sqrt(&(m / BigInt::from(2)));
    let mut r0 = m.clone();
    let mut r1 = r.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() {
        return None;
    }
    let (n, d) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if d.is_zero() || d > bound || !n.gcd(&d).is_one() {
        return None;
    }
    Some(Rat::new(n, d))
}

// ---------------------------------------------------------------------------
// The driver.

struct Accumulator {
    /// Per coefficient, per field coordinate: residue and the running modulus.
    residues: Vec<Vec<BigInt>>,
    modulus: BigInt,
    degree: usize,
}

/// Monic gcd over the number field. Primes that misbehave (divide a
/// denominator, drop a degree, hit a zero divisor, or report a too-large
/// modular gcd) are discarded; the result is only accepted once it divides
/// both inputs exactly. Falls back to the generic Euclidean gcd if an
/// unreasonable number of primes fails to settle it.
pub fn nf_poly_gcd(a: &UniPoly<NfElem>, b: &UniPoly<NfElem>) -> UniPoly<NfElem> {
    if a.is_zero() {
        return if b.is_zero() { UniPoly::zero() } else { b.monic().expect("nonzero") };
    }
    if b.is_zero() {
        return a.monic().expect("nonzero");
    }
    let lc = a.lc().expect("nonzero");
    let field = lc.field().clone();
    let e = field.degree();
    let one = || UniPoly::constant(lc.one_like());
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return one();
    }
    let mut acc: Option<Accumulator> = None;
    let mut candidate_prime = 0x7fff_ffffu64; // descending from 2^31 - 1
    let mut attempts = 0;
    while attempts < 64 {
        let p = loop {
            if is_prime(candidate_prime) {
                let p = candidate_prime;
                candidate_prime -= 2;
                break p;
            }
            candidate_prime -= 2;
        };
        attempts += 1;
        let modulus: Option<Vec<u64>> =
            (0..e).map(|i| rat_mod(&field.modulus().coeffs()[i], p)).collect();
        let Some(modulus) = modulus else { continue };
        let ctx = PrimeCtx { p, e, modulus };
        let (Some(fa), Some(fb)) = (poly_mod(a, &ctx), poly_mod(b, &ctx)) else { continue };
        let Some(g) = rpoly_gcd(&ctx, fa, fb) else { continue };
        let d = g.len() - 1;
        if d == 0 {
            // The true gcd divides the modular one, so it is constant: done.
            return one();
        }
        // A smaller modular degree supersedes everything gathered so far;
        // larger ones come from bad primes.
        match &acc {
            Some(st) if d > st.degree => continue,
            Some(st) if d == st.degree => {}
            _ => {
                acc = Some(Accumulator {
                    residues: g.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect(),
                    modulus: BigInt::from(p),
                    degree: d,
                });
                // A single prime may already determine a tiny gcd; fall
                // through to the reconstruction attempt below.
                if let Some(found) = try_reconstruct(acc.as_ref().unwrap(), a, b, &field) {
                    return found;
                }
                continue;
            }
        }
        let st = acc.as_mut().unwrap();
        for (ri, gi) in st.residues.iter_mut().zip(g.iter()) {
            for (rij, &gij) in ri.iter_mut().zip(gi.iter()) {
                *rij = crt_merge(rij, &st.modulus, gij, p);
            }
        }
        st.modulus *= BigInt::from(p);
        if let Some(found) = try_reconstruct(st, a, b, &field) {
            return found;
        }
    }
    // Essentially unreachable; the Euclidean gcd is slow but always right.
    UniPoly::gcd(a, b)
}

fn try_reconstruct(
    st: &Accumulator,
    a: &UniPoly<NfElem>,
    b: &UniPoly<NfElem>,
    field: &alloc::sync::Arc<super::numfield::NumberField>,
) -> Option<UniPoly<NfElem>> {
    let gen = field.generator();
    let mut coeffs = Vec::with_capacity(st.residues.len());
    for coord in &st.residues {
        let mut c = field.zero();
        for (i, r) in coord.iter().enumerate() {
            let q = rat_reconstruct(r, &st.modulus)?;
            if q.is_zero() {
                continue;
            }
            c = c.add(&field.from_rat(q).mul(&gen.pow(i)));
        }
        coeffs.push(c);
    }
    let g = UniPoly::new(coeffs);
    if g.degree() != Some(st.degree) {
        return None;
    }
    if a.exact_div_poly(&g).is_none() || b.exact_div_poly(&g).is_none() {
        return None;
    }
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::super::numfield::NumberField;
    use super::super::rat_frac;
    use super::*;

    #[test]
    fn primality_and_modular_scalars() {
        assert!(is_prime(0x7fff_ffff));
        assert!(!is_prime(0x7fff_fffd));
        assert!(is_prime(2));
        assert!(!is_prime(1));
        let p = 101;
        assert_eq!(mulm(invm(7, p).unwrap(), 7, p), 1);
        assert_eq!(rat_mod(&rat_frac(1, 2), 11), Some(6));
        assert_eq!(rat_mod(&rat_frac(-1, 3), 11), invm(3, 11).map(|i| subm(0, i, 11)));
    }

    #[test]
    fn residue_ring_inverse() {
        // F_p[y]/(y^2 + y + 1) with p ≡ 1 mod 3 splits; p = 5 stays a field.
        let ctx = PrimeCtx { p: 5, e: 2, modulus: vec![1, 1] };
        let a = vec![2u64, 3];
        let inv = ctx.inv(&a).unwrap();
        assert_eq!(ctx.mul(&a, &inv), ctx.one());
        assert!(ctx.inv(&ctx.zero()).is_none());
    }

    #[test]
    fn reconstruction_round_trip() {
        let m = BigInt::from(0x7fff_ffffu64) * BigInt::from(0x7fff_fffbu64);
        let v = rat_frac(-22, 7);
        // Residue of -22/7 mod m.
        let inv7 = {
            let mut t = BigInt::one();
            // tiny exhaustive-free inverse via extended Euclid on BigInt
            let e = num_integer::Integer::extended_gcd(&BigInt::from(7), &m);
            t *= e.x;
            t.mod_floor(&m)
        };
        let r = (BigInt::from(-22) * inv7).mod_floor(&m);
        assert_eq!(rat_reconstruct(&r, &m), Some(v));
    }

    #[test]
    fn agrees_with_euclid_over_quadratic_field() {
        let field = NumberField::cyclotomic(3).unwrap();
        let poly = |cs: &[i64]| -> UniPoly<NfElem> {
            UniPoly::new(cs.iter().map(|&n| field.from_int(n)).collect())
        };
        let mut state = 0xdeadbeefcafef00du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 11) as i64 - 5
        };
        for _ in 0..30 {
            let a: alloc::vec::Vec<i64> = (0..5).map(|_| next()).collect();
            let b: alloc::vec::Vec<i64> = (0..4).map(|_| next()).collect();
            let c: alloc::vec::Vec<i64> = (0..3).map(|_| next()).collect();
            let (a, b, c) = (poly(&a), poly(&b), poly(&c));
            let f = a.mul(&c);
            let g = b.mul(&c);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            assert_eq!(nf_poly_gcd(&f, &g), UniPoly::gcd(&f, &g));
        }
    }
}
