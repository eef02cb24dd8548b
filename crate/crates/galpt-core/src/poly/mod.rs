//! Dense univariate polynomials over an abstract coefficient ring or field.
//!
//! Coefficients are stored ascending by degree with no trailing zeros, so the
//! zero polynomial is the empty vector and needs no field context. All
//! algorithms are exact; nothing here rounds.
//!
//! The traits are instance-based: `zero_like`/`one_like` manufacture constants
//! from an existing element, which is what lets elements of `Q[z]/(m)` carry
//! their field handle around without a global registry.

pub mod algebra;
pub mod resultant;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{CoreError, CoreResult};
use crate::Rat;

/// Element of a commutative ring with exact division.
///
/// `exact_div` returns `None` when the divisor is zero or does not divide
/// self; fraction-free elimination relies on divisions that are exact by
/// construction.
pub trait RingElem: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn elem_is_zero(&self) -> bool;
    fn elem_is_one(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    /// Whether the Display form can be embedded in a product without
    /// parentheses (it is not a top-level sum). Used by polynomial rendering.
    fn is_display_atomic(&self) -> bool {
        false
    }
}

/// Element of a field: every nonzero element is invertible.
pub trait FieldElem: RingElem {
    /// Multiplicative inverse. Errors on zero.
    fn inverted(&self) -> CoreResult<Self>;
}

impl RingElem for Rat {
    fn zero_like(&self) -> Self {
        <Rat as num_traits::Zero>::zero()
    }
    fn one_like(&self) -> Self {
        <Rat as num_traits::One>::one()
    }
    fn elem_is_zero(&self) -> bool {
        <Rat as num_traits::Zero>::is_zero(self)
    }
    fn elem_is_one(&self) -> bool {
        <Rat as num_traits::One>::is_one(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if <Rat as num_traits::Zero>::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn is_display_atomic(&self) -> bool {
        true
    }
}

impl FieldElem for Rat {
    fn inverted(&self) -> CoreResult<Self> {
        if <Rat as num_traits::Zero>::is_zero(self) {
            Err(CoreError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// Univariate polynomial, coefficients ascending, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: RingElem> UniPoly<F> {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map(|c| c.elem_is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn one_like(sample: &F) -> Self {
        UniPoly::constant(sample.one_like())
    }

    /// The monomial c * X^k.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.elem_is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        UniPoly { coeffs }
    }

    /// The variable X itself.
    pub fn var_like(sample: &F) -> Self {
        UniPoly::monomial(sample.one_like(), 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&F> {
        self.coeffs.get(k)
    }

    /// Coefficient of X^k, materialized as zero when absent.
    pub fn coeff_or_zero(&self, k: usize, sample: &F) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(|| sample.zero_like())
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Some(c) for a nonzero constant polynomial c, None otherwise.
    pub fn constant_value(&self) -> Option<&F> {
        if self.coeffs.len() == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let c = match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.negated()).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.elem_is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        UniPoly::new(out)
    }

    pub fn mul_scalar(&self, c: &F) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn pow(&self, mut e: usize) -> Self {
        if e == 0 {
            let sample = self.coeffs.first().expect("cannot raise the zero polynomial to the 0th power without a context");
            return UniPoly::one_like(sample);
        }
        let mut base = self.clone();
        let mut acc: Option<UniPoly<F>> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(&base),
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    /// Horner evaluation at a point.
    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        // The 1 needed for the integer multipliers is manufactured from a
        // nonzero coefficient; zero coefficients carry no context to build it
        // from (and don't need it).
        let one = self
            .coeffs
            .iter()
            .find(|c| !c.elem_is_zero())
            .map(|c| c.one_like())
            .expect("nonzero polynomial has a nonzero coefficient");
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        let mut k_elem = one.clone();
        for c in self.coeffs.iter().skip(1) {
            if c.elem_is_zero() {
                out.push(c.zero_like());
            } else {
                out.push(c.times(&k_elem));
            }
            k_elem = k_elem.plus(&one);
        }
        UniPoly::new(out)
    }

    /// Map coefficients into another ring (used for field embeddings).
    pub fn map_coeffs<G: RingElem>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Render with an explicit variable name; `{}` uses `x`.
    pub fn display<'a>(&'a self, var: &'a str) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, var }
    }
}

impl<F: FieldElem> UniPoly<F> {
    pub fn div_scalar(&self, c: &F) -> CoreResult<Self> {
        let inv = c.inverted()?;
        Ok(self.mul_scalar(&inv))
    }

    /// Quotient and remainder with deg r < deg rhs. Errors on division by the
    /// zero polynomial.
    pub fn divrem(&self, rhs: &Self) -> CoreResult<(Self, Self)> {
        let d = rhs.degree().ok_or(CoreError::DivisionByZero)?;
        if self.degree().map(|n| n < d).unwrap_or(true) {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let lc_inv = rhs.lc().unwrap().inverted()?;
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len() - 1;
        let mut quot = vec![self.coeffs[0].zero_like(); n - d + 1];
        for k in (d..=n).rev() {
            if rem[k].elem_is_zero() {
                continue;
            }
            let q = rem[k].times(&lc_inv);
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k - d + j] = rem[k - d + j].minus(&q.times(b));
            }
            quot[k - d] = q;
        }
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Exact quotient, or None when the division leaves a remainder.
    pub fn exact_div_poly(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = self.divrem(rhs).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Scale to leading coefficient 1. Errors on zero.
    pub fn monic(&self) -> CoreResult<Self> {
        let lc = self.lc().ok_or(CoreError::ZeroPolynomial)?;
        self.div_scalar(lc)
    }

    /// Monic gcd; gcd(0, 0) = 0. Each remainder is rescaled to monic so
    /// coefficient sizes stay additive along the chain instead of compounding.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.divrem(&y).expect("divisor checked nonzero");
            x = y;
            y = if r.is_zero() { r } else { r.monic().expect("nonzero") };
        }
        if x.is_zero() {
            x
        } else {
            x.monic().expect("nonzero")
        }
    }

    pub fn lcm(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return UniPoly::zero();
        }
        let g = UniPoly::gcd(a, b);
        a.mul(b).exact_div_poly(&g).expect("gcd divides the product").monic().expect("nonzero")
    }

    /// Extended gcd: returns monic g and u, v with u*a + v*b = g.
    pub fn xgcd(a: &Self, b: &Self) -> CoreResult<(Self, Self, Self)> {
        if a.is_zero() && b.is_zero() {
            return Err(CoreError::XgcdBothZero);
        }
        let sample = a.coeffs.first().or(b.coeffs.first()).unwrap();
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        let mut u0 = UniPoly::one_like(sample);
        let mut u1 = UniPoly::zero();
        let mut v0 = UniPoly::zero();
        let mut v1 = UniPoly::one_like(sample);
        while !r1.is_zero() {
            let (q, mut r) = r0.divrem(&r1)?;
            let mut u = u0.sub(&q.mul(&u1));
            let mut v = v0.sub(&q.mul(&v1));
            // Rescale the whole row to keep u*a + v*b = r while holding
            // coefficient growth down.
            if !r.is_zero() {
                let inv = r.lc().unwrap().inverted()?;
                r = r.mul_scalar(&inv);
                u = u.mul_scalar(&inv);
                v = v.mul_scalar(&inv);
            }
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        let lc_inv = r0.lc().unwrap().inverted()?;
        Ok((r0.mul_scalar(&lc_inv), u0.mul_scalar(&lc_inv), v0.mul_scalar(&lc_inv)))
    }

    /// f / gcd(f, f'): same roots as f, each once. Constant input gives 1.
    /// Errors on zero.
    pub fn squarefree_part(&self) -> CoreResult<Self> {
        let d = self.degree().ok_or(CoreError::ZeroPolynomial)?;
        if d == 0 {
            return Ok(UniPoly::one_like(&self.coeffs[0]));
        }
        let g = UniPoly::gcd(self, &self.derivative());
        Ok(self.exact_div_poly(&g).expect("gcd divides"))
    }

    /// Squarefree decomposition (Yun): returns pairwise-coprime squarefree
    /// monic factors with their multiplicities, so that the input equals
    /// lc * prod a_i^i. Errors on zero; a constant decomposes into nothing.
    pub fn squarefree_decomposition(&self) -> CoreResult<Vec<(Self, u32)>> {
        let d = self.degree().ok_or(CoreError::ZeroPolynomial)?;
        let mut out = Vec::new();
        if d == 0 {
            return Ok(out);
        }
        let f = self.monic()?;
        let fp = f.derivative();
        let a0 = UniPoly::gcd(&f, &fp);
        let mut b = f.exact_div_poly(&a0).expect("gcd divides");
        let c = fp.exact_div_poly(&a0).expect("gcd divides");
        let mut d_poly = c.sub(&b.derivative());
        let mut i = 1u32;
        while b.degree() != Some(0) {
            let a = UniPoly::gcd(&b, &d_poly);
            if a.degree().map(|k| k > 0).unwrap_or(false) {
                out.push((a.clone(), i));
            }
            b = b.exact_div_poly(&a).expect("gcd divides");
            let c_next = d_poly.exact_div_poly(&a).expect("gcd divides");
            d_poly = c_next.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    /// Exact square root of a monic polynomial, if one exists (the root is
    /// taken monic). Returns None for non-monic input.
    pub fn exact_sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        if !self.lc().unwrap().elem_is_one() {
            return None;
        }
        let d = self.degree().unwrap();
        if d % 2 != 0 {
            return None;
        }
        let m = d / 2;
        let one = self.coeffs[0].one_like();
        let two_inv = one.plus(&one).inverted().expect("characteristic zero");
        let mut u = vec![one.zero_like(); m + 1];
        u[m] = one.clone();
        // Solve for u[m-k] from the coefficient of X^(2m-k); only indices
        // above m-k can appear there, so the system is triangular.
        for k in 1..=m {
            let mut s = self.coeff_or_zero(2 * m - k, &one);
            for i in (m - k + 1)..=m {
                let jj = 2 * m - k - i;
                if jj > m || jj <= m - k || jj < i {
                    continue;
                }
                let prod = u[i].times(&u[jj]);
                let contrib = if i == jj { prod } else { prod.plus(&prod) };
                s = s.minus(&contrib);
            }
            u[m - k] = s.times(&two_inv);
        }
        let root = UniPoly::new(u);
        if root.mul(&root) == *self {
            Some(root)
        } else {
            None
        }
    }
}

impl<F: FieldElem> RingElem for UniPoly<F> {
    fn zero_like(&self) -> Self {
        UniPoly::zero()
    }
    fn one_like(&self) -> Self {
        let sample = self
            .coeffs
            .first()
            .expect("cannot manufacture 1 from the zero polynomial without a context");
        UniPoly::one_like(sample)
    }
    fn elem_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn elem_is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].elem_is_one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.exact_div_poly(rhs)
    }
    fn is_display_atomic(&self) -> bool {
        // A zero or single-term polynomial renders as one product term.
        self.coeffs.iter().filter(|c| !c.elem_is_zero()).count() <= 1
    }
}

pub struct PolyDisplay<'a, F> {
    poly: &'a UniPoly<F>,
    var: &'a str,
}

impl<F: RingElem> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use alloc::format;
        use alloc::string::String;
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.elem_is_zero() {
                continue;
            }
            let atomic = c.is_display_atomic();
            let neg_one = k > 0 && c.negated().elem_is_one();
            let term: String = match (k, c.elem_is_one() || neg_one, atomic) {
                (0, _, true) => format!("{c}"),
                (0, _, false) => format!("({c})"),
                (1, true, _) => format!("{}{}", if neg_one { "-" } else { "" }, self.var),
                (1, false, true) => format!("{c}*{}", self.var),
                (1, false, false) => format!("({c})*{}", self.var),
                (_, true, _) => format!("{}{}^{}", if neg_one { "-" } else { "" }, self.var, k),
                (_, false, true) => format!("{c}*{}^{}", self.var, k),
                (_, false, false) => format!("({c})*{}^{}", self.var, k),
            };
            if first {
                write!(f, "{term}")?;
            } else if let Some(tail) = term.strip_prefix('-') {
                write!(f, " - {tail}")?;
            } else {
                write!(f, " + {term}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl<F: RingElem> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

/// Convenience: polynomial over Q from integer coefficients, ascending.
pub fn qpoly(coeffs: &[i64]) -> UniPoly<Rat> {
    UniPoly::new(coeffs.iter().map(|&n| crate::arith::rat_int(n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    #[test]
    fn trims_trailing_zeros() {
        let p = qpoly(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(qpoly(&[0, 0]).is_zero());
        assert_eq!(qpoly(&[]).degree(), None);
    }

    #[test]
    fn divrem_reconstructs() {
        let f = qpoly(&[2, 0, -3, 1, 4]);
        let g = qpoly(&[1, 1, 2]);
        let (q, r) = f.divrem(&g).expect("nonzero divisor");
        assert_eq!(g.mul(&q).add(&r), f);
        assert!(r.degree().unwrap() < g.degree().unwrap());
    }

    #[test]
    fn xgcd_bezout_identity() {
        // gcd(X^2 - 1, X^2 - 2X + 1) = X - 1
        let a = qpoly(&[-1, 0, 1]);
        let b = qpoly(&[1, -2, 1]);
        let (g, u, v) = UniPoly::xgcd(&a, &b).expect("not both zero");
        assert_eq!(g, qpoly(&[-1, 1]));
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn xgcd_of_coprime_gives_unit() {
        let a = qpoly(&[1, 0, 1]); // X^2 + 1
        let b = qpoly(&[-1, 1]); // X - 1
        let (g, u, v) = UniPoly::xgcd(&a, &b).expect("not both zero");
        assert_eq!(g, qpoly(&[1]));
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        assert!(UniPoly::<Rat>::xgcd(&UniPoly::zero(), &UniPoly::zero()).is_err());
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        // (X^2+1)^2 (X-1) = X^5 - X^4 + 2X^3 - 2X^2 + X - 1
        let f = qpoly(&[1, 0, 1]).pow(2).mul(&qpoly(&[-1, 1]));
        let sf = f.squarefree_part().expect("nonzero");
        assert_eq!(sf, qpoly(&[1, 0, 1]).mul(&qpoly(&[-1, 1])));
        assert_eq!(qpoly(&[7]).squarefree_part().expect("constant"), qpoly(&[1]));
    }

    #[test]
    fn yun_decomposition_multiplicities() {
        // X^2 (X-1)^3 (X^2+1)
        let f = qpoly(&[0, 0, 1]).mul(&qpoly(&[-1, 1]).pow(3)).mul(&qpoly(&[1, 0, 1]));
        let dec = f.squarefree_decomposition().expect("nonzero");
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (qpoly(&[1, 0, 1]), 1));
        assert_eq!(dec[1], (qpoly(&[0, 1]), 2));
        assert_eq!(dec[2], (qpoly(&[-1, 1]), 3));
    }

    #[test]
    fn exact_sqrt_finds_root() {
        let u = qpoly(&[3, -1, 1]);
        assert_eq!(u.mul(&u).exact_sqrt(), Some(u));
        assert_eq!(qpoly(&[0, 1]).exact_sqrt(), None); // odd degree
        assert_eq!(qpoly(&[2, 0, 1]).exact_sqrt(), None); // X^2 + 2 is not a square
        assert_eq!(qpoly(&[1]).exact_sqrt(), Some(qpoly(&[1])));
    }

    #[test]
    fn compose_substitutes() {
        // f = X^2 + 1, g = X - 2 => f(g) = X^2 - 4X + 5
        let f = qpoly(&[1, 0, 1]);
        let g = qpoly(&[-2, 1]);
        assert_eq!(f.compose(&g), qpoly(&[5, -4, 1]));
    }

    #[test]
    fn display_is_canonical() {
        let f = qpoly(&[-2, 0, 1]); // X^2 - 2
        assert_eq!(alloc::format!("{}", f.display("X")), "X^2 - 2");
        let g = qpoly(&[0, -3]).div_scalar(&rat_int(2)).unwrap(); // -3/2 X
        assert_eq!(alloc::format!("{}", g.display("X")), "-3/2*X");
        assert_eq!(alloc::format!("{}", UniPoly::<Rat>::zero().display("X")), "0");
    }
}
