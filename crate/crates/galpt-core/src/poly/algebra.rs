//! The quotient algebra A = K[X]/(h) for a monic modulus h.
//!
//! When h is irreducible this is the function field of the fiber; when it is
//! merely squarefree it is a product of fields, which is still enough for the
//! inversions we attempt — a failed inversion surfaces a proper factor of h
//! instead of an answer, and that factor is reported, not swallowed.

use alloc::format;
use alloc::sync::Arc;

use super::{FieldElem, UniPoly};
use crate::error::{CoreError, CoreResult};

/// Shared context: the monic modulus defining the algebra.
#[derive(Debug)]
pub struct QuotientCtx<F: FieldElem> {
    modulus: UniPoly<F>,
}

impl<F: FieldElem> QuotientCtx<F> {
    /// Normalizes the modulus to monic form; degree must be at least 1.
    pub fn new(modulus: UniPoly<F>) -> CoreResult<Arc<Self>> {
        match modulus.degree() {
            None => Err(CoreError::ZeroPolynomial),
            Some(0) => Err(CoreError::ConstantPolynomial),
            Some(_) => Ok(Arc::new(QuotientCtx { modulus: modulus.monic()? })),
        }
    }

    pub fn modulus(&self) -> &UniPoly<F> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// The residue class of X.
    pub fn generator(self: &Arc<Self>) -> QuotientElem<F> {
        let sample = self.modulus.lc().unwrap();
        QuotientElem::reduce(UniPoly::var_like(sample), self)
    }

    pub fn scalar(self: &Arc<Self>, c: F) -> QuotientElem<F> {
        QuotientElem::reduce(UniPoly::constant(c), self)
    }

    pub fn from_poly(self: &Arc<Self>, p: UniPoly<F>) -> QuotientElem<F> {
        QuotientElem::reduce(p, self)
    }

    pub fn zero(self: &Arc<Self>) -> QuotientElem<F> {
        QuotientElem { rep: UniPoly::zero(), ctx: Arc::clone(self) }
    }

    pub fn one(self: &Arc<Self>) -> QuotientElem<F> {
        let sample = self.modulus.lc().unwrap();
        QuotientElem { rep: UniPoly::one_like(sample), ctx: Arc::clone(self) }
    }
}

/// Residue class, stored as the canonical representative of degree < deg h.
#[derive(Clone, Debug)]
pub struct QuotientElem<F: FieldElem> {
    rep: UniPoly<F>,
    ctx: Arc<QuotientCtx<F>>,
}

impl<F: FieldElem> QuotientElem<F> {
    fn reduce(p: UniPoly<F>, ctx: &Arc<QuotientCtx<F>>) -> Self {
        let (_, rep) = p.divrem(ctx.modulus()).expect("modulus is nonzero");
        QuotientElem { rep, ctx: Arc::clone(ctx) }
    }

    pub fn rep(&self) -> &UniPoly<F> {
        &self.rep
    }

    pub fn ctx(&self) -> &Arc<QuotientCtx<F>> {
        &self.ctx
    }

    fn assert_same_ctx(&self, rhs: &Self) {
        assert!(
            self.ctx.modulus() == rhs.ctx.modulus(),
            "mixed elements of different quotient algebras"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_ctx(rhs);
        QuotientElem { rep: self.rep.add(&rhs.rep), ctx: Arc::clone(&self.ctx) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_ctx(rhs);
        QuotientElem { rep: self.rep.sub(&rhs.rep), ctx: Arc::clone(&self.ctx) }
    }

    pub fn neg(&self) -> Self {
        QuotientElem { rep: self.rep.neg(), ctx: Arc::clone(&self.ctx) }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_ctx(rhs);
        QuotientElem::reduce(self.rep.mul(&rhs.rep), &self.ctx)
    }

    pub fn mul_scalar(&self, c: &F) -> Self {
        QuotientElem { rep: self.rep.mul_scalar(c), ctx: Arc::clone(&self.ctx) }
    }

    pub fn pow(&self, e: usize) -> Self {
        if e == 0 {
            return self.ctx.one();
        }
        let mut acc = self.ctx.one();
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

    /// Inverse modulo h. When the representative shares a factor with h the
    /// algebra is not a field along that factor; the factor is returned in the
    /// error so callers can see why.
    pub fn inverse(&self) -> CoreResult<Self> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let (g, u, _) = UniPoly::xgcd(&self.rep, self.ctx.modulus())?;
        if g.degree() != Some(0) {
            return Err(CoreError::ReducibleModulus {
                factor: format!("{}", g.display("X")),
            });
        }
        // g is monic of degree 0, i.e. exactly 1, so u * rep = 1 mod h.
        Ok(QuotientElem::reduce(u, &self.ctx))
    }

    pub fn div(&self, rhs: &Self) -> CoreResult<Self> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// Evaluate a polynomial at this element (Horner in the algebra).
    pub fn substitute_into(&self, p: &UniPoly<F>) -> Self {
        let mut acc = self.ctx.zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&self.ctx.scalar(c.clone()));
        }
        acc
    }
}

impl<F: FieldElem> PartialEq for QuotientElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.modulus() == other.ctx.modulus() && self.rep == other.rep
    }
}
