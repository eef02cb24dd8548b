//! Fractional-linear (Moebius) transformations over k'(t), stored as 2x2
//! matrices in a canonical projective scale: denominators cleared, the common
//! polynomial factor of the four entries divided out, and the first nonzero
//! entry (row-major) made monic. Entries of a canonical matrix are therefore
//! always polynomials, projective equality is plain equality, the identity
//! test is exact — and degrees stay additive under composition instead of
//! compounding through leftover denominators.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use crate::arith::numfield::{NfElem, NumberField};
use crate::arith::ratfunc::RatFunc;
use crate::error::{CoreError, CoreResult};
use crate::poly::algebra::QuotientElem;
use crate::poly::UniPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct Moebius {
    entries: [[RatFunc; 2]; 2],
}

impl Moebius {
    /// Canonicalizes the scale and rejects singular matrices.
    pub fn new(entries: [[RatFunc; 2]; 2]) -> CoreResult<Self> {
        let det = det2(&entries);
        if det.is_zero() {
            return Err(CoreError::SingularMatrix);
        }
        Ok(Moebius { entries: canonical_scale(entries) })
    }

    pub fn identity(field: &Arc<NumberField>) -> Self {
        let zero = RatFunc::zero(field);
        let one = RatFunc::one(field);
        Moebius { entries: [[one.clone(), zero.clone()], [zero, one]] }
    }

    pub fn entries(&self) -> &[[RatFunc; 2]; 2] {
        &self.entries
    }

    pub fn field(&self) -> Arc<NumberField> {
        self.entries[0][0].field()
    }

    pub fn det(&self) -> RatFunc {
        det2(&self.entries)
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        let e = &self.entries;
        let g = &rhs.entries;
        let mul_row = |i: usize, j: usize| -> RatFunc {
            e[i][0].mul(&g[0][j]).add(&e[i][1].mul(&g[1][j]))
        };
        Moebius {
            entries: canonical_scale([
                [mul_row(0, 0), mul_row(0, 1)],
                [mul_row(1, 0), mul_row(1, 1)],
            ]),
        }
    }

    pub fn inverse(&self) -> Self {
        let e = &self.entries;
        Moebius {
            entries: canonical_scale([
                [e[1][1].clone(), e[0][1].neg()],
                [e[1][0].neg(), e[0][0].clone()],
            ]),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Moebius::identity(&self.field());
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    /// Conjugation c M c^-1.
    pub fn conjugate_by(&self, c: &Self) -> Self {
        c.compose(self).compose(&c.inverse())
    }

    /// Conjugation by [[0,1],[1,0]], i.e. the chart change swapping the fiber
    /// coordinate for its reciprocal: [[a,b],[c,d]] -> [[d,c],[b,a]].
    pub fn flip_chart(&self) -> Self {
        let e = &self.entries;
        Moebius {
            entries: canonical_scale([
                [e[1][1].clone(), e[1][0].clone()],
                [e[0][1].clone(), e[0][0].clone()],
            ]),
        }
    }

    /// Because of the canonical scale, projective identity is exact identity.
    pub fn is_identity(&self) -> bool {
        self.entries[0][0].is_one()
            && self.entries[0][1].is_zero()
            && self.entries[1][0].is_zero()
            && self.entries[1][1].is_one()
    }

    /// Smallest k in 1..=cap with M^k projectively trivial.
    pub fn projective_order(&self, cap: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    /// Apply to an element of the fiber algebra A = K[X]/(h):
    /// x -> (a x + b) / (c x + d). Fails when cx + d is a zero divisor.
    pub fn apply_algebra(&self, x: &QuotientElem<RatFunc>) -> CoreResult<QuotientElem<RatFunc>> {
        let ctx = x.ctx();
        let e = &self.entries;
        let num = x.mul_scalar(&e[0][0]).add(&ctx.scalar(e[0][1].clone()));
        let den = x.mul_scalar(&e[1][0]).add(&ctx.scalar(e[1][1].clone()));
        num.div(&den)
    }

    /// The four entries rendered as strings, row-major.
    pub fn entry_strings(&self) -> [String; 4] {
        [
            format!("{}", self.entries[0][0]),
            format!("{}", self.entries[0][1]),
            format!("{}", self.entries[1][0]),
            format!("{}", self.entries[1][1]),
        ]
    }
}

fn det2(e: &[[RatFunc; 2]; 2]) -> RatFunc {
    e[0][0].mul(&e[1][1]).sub(&e[0][1].mul(&e[1][0]))
}

fn canonical_scale(e: [[RatFunc; 2]; 2]) -> [[RatFunc; 2]; 2] {
    let field = e[0][0].field();
    let mut l = UniPoly::constant(field.one());
    for row in &e {
        for x in row {
            l = UniPoly::lcm(&l, x.den());
        }
    }
    let clear = |i: usize, j: usize| -> UniPoly<NfElem> {
        let cofactor = l.exact_div_poly(e[i][j].den()).expect("denominator divides the lcm");
        e[i][j].num().mul(&cofactor)
    };
    let mut nums = [[clear(0, 0), clear(0, 1)], [clear(1, 0), clear(1, 1)]];
    let mut g = UniPoly::zero();
    for row in &nums {
        for x in row {
            g = crate::arith::nf_poly_gcd(&g, x);
        }
    }
    if g.degree().map(|d| d > 0).unwrap_or(false) {
        for row in &mut nums {
            for x in row.iter_mut() {
                *x = x.exact_div_poly(&g).expect("common factor divides");
            }
        }
    }
    let pivot_lc = nums.iter().flatten().find(|x| !x.is_zero()).map(|x| x.lc().unwrap().clone());
    if let Some(c) = pivot_lc {
        let inv = c.inverse().expect("nonzero");
        for row in &mut nums {
            for x in row.iter_mut() {
                *x = x.mul_scalar(&inv);
            }
        }
    }
    nums.map(|row| row.map(|p| RatFunc::from_poly(p, &field)))
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::algebra::QuotientCtx;
    use crate::poly::UniPoly;
    use alloc::vec;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn mb(field: &Arc<NumberField>, rows: [[i64; 2]; 2]) -> Moebius {
        Moebius::new(rows.map(|r| r.map(|n| RatFunc::from_int(n, field)))).unwrap()
    }

    #[test]
    fn canonical_form_is_polynomial_with_monic_pivot() {
        let f = q();
        let t = RatFunc::var_t(&f);
        let two_t = t.mul_scalar(&f.from_int(2));
        let m = Moebius::new([
            [two_t.clone(), RatFunc::zero(&f)],
            [RatFunc::zero(&f), RatFunc::from_int(2, &f)],
        ])
        .unwrap();
        assert_eq!(m.entries()[0][0], t);
        assert!(m.entries()[1][1].is_one());
        // Denominators are cleared rather than spread over the other entries.
        let n = Moebius::new([
            [t.inverse().unwrap(), RatFunc::zero(&f)],
            [RatFunc::zero(&f), RatFunc::one(&f)],
        ])
        .unwrap();
        assert!(n.entries()[0][0].is_one());
        assert_eq!(n.entries()[1][1], t);
        // A common polynomial factor is divided out.
        let p = Moebius::new([
            [t.pow(2).mul_scalar(&f.from_int(2)), RatFunc::zero(&f)],
            [RatFunc::zero(&f), two_t.mul_scalar(&f.from_int(2))],
        ])
        .unwrap();
        assert_eq!(p.entries()[0][0], t);
        assert_eq!(p.entries()[1][1], RatFunc::from_int(2, &f));
    }

    #[test]
    fn singular_matrices_are_rejected() {
        let f = q();
        let t = RatFunc::var_t(&f);
        let res = Moebius::new([
            [t.clone(), t.clone()],
            [RatFunc::one(&f), RatFunc::one(&f)],
        ]);
        assert!(matches!(res, Err(CoreError::SingularMatrix)));
    }

    #[test]
    fn group_operations() {
        let f = q();
        let m = mb(&f, [[1, 2], [3, 4]]);
        assert!(m.compose(&m.inverse()).is_identity());
        assert!(m.inverse().compose(&m).is_identity());
        assert!(Moebius::identity(&f).is_identity());
    }

    #[test]
    fn order_three_element() {
        // x -> 1/(-x - 1) generates a cyclic group of order 3.
        let f = q();
        let m = mb(&f, [[0, 1], [-1, -1]]);
        assert_eq!(m.projective_order(8), Some(3));
        assert!(m.pow(3).is_identity());
        assert!(!m.pow(2).is_identity());
        // An infinite-order element times out.
        let shift = mb(&f, [[1, 1], [0, 1]]);
        assert_eq!(shift.projective_order(8), None);
    }

    #[test]
    fn chart_flip_swaps_entries() {
        let f = q();
        let m = mb(&f, [[1, 2], [3, 4]]);
        let flipped = m.flip_chart();
        let frac = |p, q| RatFunc::constant(crate::arith::numfield::nf_frac(&f, p, q));
        // [[a,b],[c,d]] -> [[d,c],[b,a]], then rescaled by 1/4.
        assert_eq!(flipped.entries()[0][0], RatFunc::one(&f));
        assert_eq!(flipped.entries()[0][1], frac(3, 4));
        assert_eq!(flipped.entries()[1][0], frac(2, 4));
        assert_eq!(flipped.entries()[1][1], frac(1, 4));
        // Flipping twice is the identity operation.
        assert_eq!(flipped.flip_chart(), m);
    }

    #[test]
    fn algebra_action() {
        // A = Q(t)[X]/(X^3 - t); M = [[1,0],[0,t]] sends x to x/t.
        let f = q();
        let t = RatFunc::var_t(&f);
        let modulus = UniPoly::new(vec![
            t.neg(),
            RatFunc::zero(&f),
            RatFunc::zero(&f),
            RatFunc::one(&f),
        ]);
        let ctx = QuotientCtx::new(modulus).unwrap();
        let x = ctx.generator();
        let m = Moebius::new([
            [RatFunc::one(&f), RatFunc::zero(&f)],
            [RatFunc::zero(&f), t.clone()],
        ])
        .unwrap();
        let y = m.apply_algebra(&x).unwrap();
        assert_eq!(y, x.mul_scalar(&t.inverse().unwrap()));
        // x^3 = t in the algebra, so (x/t)^3 = 1/t^2.
        let cube = y.pow(3);
        assert_eq!(
            cube,
            ctx.scalar(t.pow(2).inverse().unwrap())
        );
    }

    #[test]
    fn display_form() {
        let f = q();
        let m = mb(&f, [[1, 2], [3, 4]]);
        assert_eq!(alloc::format!("{}", m), "[[1, 2], [3, 4]]");
    }
}
