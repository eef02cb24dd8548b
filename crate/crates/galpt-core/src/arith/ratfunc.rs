//! The rational function field k'(t): canonical fractions of polynomials in
//! the pencil parameter t with number-field coefficients.
//!
//! Invariants: the denominator is monic and nonzero, numerator and denominator
//! are coprime, and zero is 0/1. Keeping the denominator nonzero means every
//! value carries a usable field handle even when it is zero.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::numfield::{NfElem, NumberField};
use crate::error::{CoreError, CoreResult};
use crate::poly::{FieldElem, RingElem, UniPoly};

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: UniPoly<NfElem>,
    den: UniPoly<NfElem>,
}

impl RatFunc {
    /// Canonical fraction num/den. Errors when den = 0.
    pub fn new(num: UniPoly<NfElem>, den: UniPoly<NfElem>) -> CoreResult<Self> {
        if den.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        if num.is_zero() {
            let one = UniPoly::constant(den.lc().unwrap().one_like());
            return Ok(RatFunc { num, den: one });
        }
        let g = super::nf_poly_gcd(&num, &den);
        let num = num.exact_div_poly(&g).expect("gcd divides");
        let den = den.exact_div_poly(&g).expect("gcd divides");
        let lc_inv = den.lc().unwrap().inverted()?;
        Ok(RatFunc { num: num.mul_scalar(&lc_inv), den: den.mul_scalar(&lc_inv) })
    }

    pub fn from_poly(num: UniPoly<NfElem>, field: &Arc<NumberField>) -> Self {
        RatFunc { num, den: UniPoly::constant(field.one()) }
    }

    pub fn constant(c: NfElem) -> Self {
        let field = Arc::clone(c.field());
        RatFunc::from_poly(UniPoly::constant(c), &field)
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        RatFunc::from_poly(UniPoly::zero(), field)
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        RatFunc::from_poly(UniPoly::constant(field.one()), field)
    }

    pub fn from_int(n: i64, field: &Arc<NumberField>) -> Self {
        RatFunc::constant(field.from_int(n))
    }

    /// The parameter t itself.
    pub fn var_t(field: &Arc<NumberField>) -> Self {
        RatFunc::from_poly(UniPoly::var_like(&field.one()), field)
    }

    pub fn num(&self) -> &UniPoly<NfElem> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<NfElem> {
        &self.den
    }

    /// The coefficient field handle, recovered from the denominator (which is
    /// never the zero polynomial).
    pub fn field(&self) -> Arc<NumberField> {
        Arc::clone(self.den.lc().expect("den nonzero").field())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.elem_is_one() && self.num.elem_is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.elem_is_one()
    }

    /// Some(c) when the value is a constant of the coefficient field.
    pub fn as_constant(&self) -> Option<NfElem> {
        if !self.den.elem_is_one() {
            return None;
        }
        match self.num.degree() {
            None => Some(self.field().zero()),
            Some(0) => Some(self.num.coeffs()[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Split off g = gcd(d₁, d₂) first: with coprime reduced denominators
        // t₁, t₂ the sum n₁t₂ + n₂t₁ over the lcm can only share factors with
        // g, so the final normalization is a gcd against g alone instead of
        // against the full product d₁d₂.
        let g = if self.den == rhs.den {
            self.den.clone()
        } else {
            super::nf_poly_gcd(&self.den, &rhs.den)
        };
        if g.elem_is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            if num.is_zero() {
                return RatFunc::zero(&self.field());
            }
            return RatFunc { num, den: self.den.mul(&rhs.den) };
        }
        let t1 = self.den.exact_div_poly(&g).expect("gcd divides");
        let t2 = rhs.den.exact_div_poly(&g).expect("gcd divides");
        let num = self.num.mul(&t2).add(&rhs.num.mul(&t1));
        if num.is_zero() {
            return RatFunc::zero(&self.field());
        }
        let den = self.den.mul(&t2);
        let g2 = super::nf_poly_gcd(&num, &g);
        if g2.elem_is_one() {
            return RatFunc { num, den };
        }
        RatFunc {
            num: num.exact_div_poly(&g2).expect("gcd divides"),
            den: den.exact_div_poly(&g2).expect("gcd divides"),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(&self.field());
        }
        // Cancel across the pairs (n₁, d₂) and (n₂, d₁) before multiplying:
        // the inputs are already in lowest terms, so the remaining factors are
        // pairwise coprime and the product needs no further reduction. The
        // gcds run on half-degree operands, before any coefficient growth.
        let g1 = super::nf_poly_gcd(&self.num, &rhs.den);
        let g2 = super::nf_poly_gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div_poly(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div_poly(&g2).expect("gcd divides");
        let d1 = self.den.exact_div_poly(&g2).expect("gcd divides");
        let d2 = rhs.den.exact_div_poly(&g1).expect("gcd divides");
        RatFunc { num: n1.mul(&n2), den: d1.mul(&d2) }
    }

    pub fn mul_scalar(&self, c: &NfElem) -> Self {
        if c.is_zero() {
            return RatFunc::zero(&self.field());
        }
        RatFunc { num: self.num.mul_scalar(c), den: self.den.clone() }
    }

    pub fn inverse(&self) -> CoreResult<Self> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        // Already coprime; only the new denominator needs its leading
        // coefficient scaled away.
        let lc_inv = self.num.lc().expect("nonzero").inverted()?;
        Ok(RatFunc {
            num: self.den.mul_scalar(&lc_inv),
            den: self.num.mul_scalar(&lc_inv),
        })
    }

    pub fn div(&self, rhs: &Self) -> CoreResult<Self> {
        Ok(self.mul(&rhs.inverse()?))
    }

    pub fn pow(&self, e: usize) -> Self {
        let field = self.field();
        if e == 0 {
            return RatFunc::one(&field);
        }
        let mut acc = RatFunc::one(&field);
        let mut base = self.clone();
        let mut k = e;
        loop {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc
    }

    /// Move every coefficient into another number field.
    pub fn embed(&self, target: &Arc<NumberField>) -> CoreResult<Self> {
        let map = |p: &UniPoly<NfElem>| -> CoreResult<UniPoly<NfElem>> {
            let mut coeffs = Vec::with_capacity(p.coeffs().len());
            for c in p.coeffs() {
                coeffs.push(c.embed(target)?);
            }
            Ok(UniPoly::new(coeffs))
        };
        Ok(RatFunc { num: map(&self.num)?, den: map(&self.den)? })
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        // Both sides are canonical, so compare componentwise.
        self.num == other.num && self.den == other.den
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.elem_is_one() {
            write!(f, "{}", self.num.display("t"))
        } else {
            write!(f, "({})/({})", self.num.display("t"), self.den.display("t"))
        }
    }
}

impl RingElem for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(&self.field())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(&self.field())
    }
    fn elem_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn elem_is_one(&self) -> bool {
        self.is_one()
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
        self.div(rhs).ok()
    }
    fn is_display_atomic(&self) -> bool {
        if self.den.elem_is_one() {
            self.num.is_display_atomic()
        } else {
            // Renders as (num)/(den): a product-shaped chain, safe to embed.
            true
        }
    }
}

impl FieldElem for RatFunc {
    fn inverted(&self) -> CoreResult<Self> {
        self.inverse()
    }
}

impl core::ops::Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: Self) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl core::ops::Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: Self) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl core::ops::Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: Self) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

impl core::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    /// t-polynomial over Q from ascending integer coefficients.
    fn tp(coeffs: &[i64]) -> UniPoly<NfElem> {
        let f = q();
        UniPoly::new(coeffs.iter().map(|&n| f.from_int(n)).collect())
    }

    #[test]
    fn fractions_reduce_to_lowest_terms() {
        // (t^2 - 1)/(t - 1) = t + 1
        let r = RatFunc::new(tp(&[-1, 0, 1]), tp(&[-1, 1])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &tp(&[1, 1]));
        // t / (2 t^2) = (1/2)/t
        let s = RatFunc::new(tp(&[0, 1]), tp(&[0, 0, 2])).unwrap();
        assert_eq!(s.den(), &tp(&[0, 1]));
        assert_eq!(s.num().constant_value().unwrap().as_rational(), Some(crate::arith::rat_frac(1, 2)));
    }

    #[test]
    fn denominator_zero_is_rejected() {
        assert!(matches!(
            RatFunc::new(tp(&[1]), tp(&[])),
            Err(CoreError::ZeroDenominator)
        ));
    }

    #[test]
    fn field_arithmetic() {
        let f = q();
        let t = RatFunc::var_t(&f);
        let inv_t = t.inverse().unwrap();
        // 1/t + t = (t^2 + 1)/t
        let s = &inv_t + &t;
        assert_eq!(s, RatFunc::new(tp(&[1, 0, 1]), tp(&[0, 1])).unwrap());
        assert!(s.mul(&t).is_polynomial());
        assert_eq!(t.mul(&inv_t), RatFunc::one(&f));
        assert!(RatFunc::zero(&f).inverse().is_err());
        assert_eq!(t.pow(3).num(), &tp(&[0, 0, 0, 1]));
    }

    #[test]
    fn display_forms() {
        let f = q();
        let t = RatFunc::var_t(&f);
        assert_eq!(format!("{}", t), "t");
        let r = RatFunc::new(tp(&[1, 0, 1]), tp(&[0, 1])).unwrap();
        assert_eq!(format!("{}", r), "(t^2 + 1)/(t)");
        assert_eq!(format!("{}", RatFunc::zero(&f)), "0");
        assert_eq!(format!("{}", RatFunc::from_int(-2, &f)), "-2");
    }

    #[test]
    fn constants_are_recognized() {
        let f = q();
        let c = RatFunc::from_int(7, &f);
        assert_eq!(c.as_constant(), Some(f.from_int(7)));
        assert_eq!(RatFunc::zero(&f).as_constant(), Some(f.zero()));
        assert_eq!(RatFunc::var_t(&f).as_constant(), None);
    }
}
