//! Number fields Q(z) presented as Q[z]/(m) for a monic irreducible m.
//!
//! The two fields that actually arise downstream are small: Q itself and a
//! cyclotomic or quadratic extension supplying a root of unity or a square
//! root. Everything is exact; elements carry an `Arc` handle to their field so
//! constants can be manufactured from any element without global state.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{rat_frac, rat_int, rational_sqrt, Rat};
use crate::error::{CoreError, CoreResult};
use crate::poly::{FieldElem, RingElem, UniPoly};

/// A number field, i.e. Q[z]/(m) with m monic irreducible. Degree 1 is Q
/// itself (modulus z).
#[derive(Debug)]
pub struct NumberField {
    modulus: UniPoly<Rat>,
    /// If the generator z is a primitive n-th root of unity, n.
    generator_order: Option<u32>,
    /// Short name used in diagnostics ("Q", "Q(z: z^2 + z + 1)", ...).
    label: String,
}

/// The n-th cyclotomic polynomial, computed by dividing z^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.
fn cyclotomic_poly(n: u32) -> UniPoly<Rat> {
    let mut known: Vec<(u32, UniPoly<Rat>)> = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        // z^d - 1
        let mut coeffs = alloc::vec![rat_int(-1)];
        for _ in 1..d {
            coeffs.push(rat_int(0));
        }
        coeffs.push(rat_int(1));
        let mut phi = UniPoly::new(coeffs);
        for (e, p) in &known {
            if d % e == 0 {
                phi = phi.exact_div_poly(p).expect("cyclotomic factors divide z^d - 1");
            }
        }
        known.push((d, phi));
    }
    known.pop().expect("n >= 1").1
}

impl NumberField {
    /// The rational field Q, presented with modulus z (so z = 0).
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            modulus: UniPoly::new(alloc::vec![rat_int(0), rat_int(1)]),
            generator_order: None,
            label: String::from("Q"),
        })
    }

    /// Q(zeta_n) for a primitive n-th root of unity zeta_n.
    pub fn cyclotomic(n: u32) -> CoreResult<Arc<Self>> {
        if n == 0 {
            return Err(CoreError::MissingRootOfUnity { n });
        }
        let modulus = cyclotomic_poly(n);
        Ok(Arc::new(NumberField {
            label: format!("Q(z: {})", modulus.display("z")),
            modulus,
            generator_order: Some(n),
        }))
    }

    /// Q(sqrt(r)) for a rational non-square r, presented as Q[z]/(z^2 - r).
    pub fn quadratic_sqrt(r: Rat) -> CoreResult<Arc<Self>> {
        if r.is_zero() {
            return Err(CoreError::DegenerateRadicalElement);
        }
        if rational_sqrt(&r).is_some() {
            return Err(CoreError::ReducibleModulus {
                factor: format!("z - ({})", rational_sqrt(&r).unwrap()),
            });
        }
        let modulus = UniPoly::new(alloc::vec![-r, rat_int(0), rat_int(1)]);
        Ok(Arc::new(NumberField {
            label: format!("Q(z: {})", modulus.display("z")),
            modulus,
            generator_order: None,
        }))
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn modulus(&self) -> &UniPoly<Rat> {
        &self.modulus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generator_order(&self) -> Option<u32> {
        self.generator_order
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn zero(self: &Arc<Self>) -> NfElem {
        NfElem { rep: UniPoly::zero(), field: Arc::clone(self) }
    }

    pub fn one(self: &Arc<Self>) -> NfElem {
        NfElem { rep: UniPoly::constant(rat_int(1)), field: Arc::clone(self) }
    }

    pub fn from_rat(self: &Arc<Self>, c: Rat) -> NfElem {
        NfElem { rep: UniPoly::constant(c), field: Arc::clone(self) }
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> NfElem {
        self.from_rat(rat_int(n))
    }

    /// The residue class of z.
    pub fn generator(self: &Arc<Self>) -> NfElem {
        NfElem::reduce(UniPoly::var_like(&rat_int(0)), self)
    }

    /// A primitive n-th root of unity in this field, if it contains one that
    /// can be written down from the generator: 1 and -1 always exist, and
    /// z^(m/n) works when z has order m divisible by n.
    pub fn primitive_root_of_unity(self: &Arc<Self>, n: u32) -> CoreResult<NfElem> {
        match n {
            0 => Err(CoreError::MissingRootOfUnity { n }),
            1 => Ok(self.one()),
            2 => Ok(self.from_int(-1)),
            _ => match self.generator_order {
                Some(m) if m % n == 0 => Ok(self.generator().pow((m / n) as usize)),
                _ => Err(CoreError::MissingRootOfUnity { n }),
            },
        }
    }

    pub fn same_field(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a.modulus == b.modulus
    }
}

/// Element of a number field: a residue class with its field handle.
#[derive(Clone, Debug)]
pub struct NfElem {
    rep: UniPoly<Rat>,
    field: Arc<NumberField>,
}

impl NfElem {
    fn reduce(p: UniPoly<Rat>, field: &Arc<NumberField>) -> Self {
        let (_, rep) = p.divrem(field.modulus()).expect("modulus is nonzero");
        NfElem { rep, field: Arc::clone(field) }
    }

    pub fn rep(&self) -> &UniPoly<Rat> {
        &self.rep
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    fn assert_same_field(&self, rhs: &Self) {
        assert!(
            NumberField::same_field(&self.field, &rhs.field),
            "mixed elements of different number fields: {} vs {}",
            self.field.label(),
            rhs.field.label()
        );
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Some(c) when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.rep.degree() {
            None => Some(rat_int(0)),
            Some(0) => Some(self.rep.coeffs()[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        NfElem { rep: self.rep.add(&rhs.rep), field: Arc::clone(&self.field) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        NfElem { rep: self.rep.sub(&rhs.rep), field: Arc::clone(&self.field) }
    }

    pub fn neg(&self) -> Self {
        NfElem { rep: self.rep.neg(), field: Arc::clone(&self.field) }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        NfElem::reduce(self.rep.mul(&rhs.rep), &self.field)
    }

    pub fn mul_rat(&self, c: &Rat) -> Self {
        NfElem { rep: self.rep.mul_scalar(c), field: Arc::clone(&self.field) }
    }

    pub fn pow(&self, e: usize) -> Self {
        if e == 0 {
            return self.field.one();
        }
        let mut acc = self.field.one();
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

    pub fn inverse(&self) -> CoreResult<Self> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let (g, u, _) = UniPoly::xgcd(&self.rep, self.field.modulus())?;
        if g.degree() != Some(0) {
            return Err(CoreError::ReducibleModulus { factor: format!("{}", g.display("z")) });
        }
        Ok(NfElem::reduce(u, &self.field))
    }

    pub fn div(&self, rhs: &Self) -> CoreResult<Self> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// Move this element into another field. Works when the fields agree, the
    /// element is rational, or both are cyclotomic with compatible orders.
    pub fn embed(&self, target: &Arc<NumberField>) -> CoreResult<Self> {
        if NumberField::same_field(&self.field, target) {
            return Ok(NfElem { rep: self.rep.clone(), field: Arc::clone(target) });
        }
        if let Some(c) = self.as_rational() {
            return Ok(target.from_rat(c));
        }
        if let (Some(k), Some(m)) = (self.field.generator_order, target.generator_order) {
            if m % k == 0 {
                let image = target.generator().pow((m / k) as usize);
                return Ok(image.substitute_rep(&self.rep));
            }
        }
        Err(CoreError::Internal(format!(
            "no embedding of {} into {}",
            self.field.label(),
            target.label()
        )))
    }

    /// Evaluate a rational-coefficient polynomial at this element.
    pub fn substitute_rep(&self, p: &UniPoly<Rat>) -> Self {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&self.field.from_rat(c.clone()));
        }
        acc
    }

    /// Square root within the field, if one exists there. Handles rational
    /// squares in any field and the general element in a degree-2 field; in
    /// fields of higher degree only the rational case is attempted.
    ///
    /// The sign is normalized so the lowest nonzero coefficient is positive.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = self.as_rational() {
            if let Some(r) = rational_sqrt(&c) {
                return Some(normalize_sign(self.field.from_rat(r)));
            }
            if self.field.degree() != 2 {
                return None;
            }
        } else if self.field.degree() != 2 {
            return None;
        }
        // Degree-2 field with modulus z^2 + beta z + gamma.
        let modulus = self.field.modulus();
        let beta = modulus.coeff_or_zero(1, &rat_int(0));
        let gamma = modulus.coeff_or_zero(0, &rat_int(0));
        let a = self.rep.coeff_or_zero(0, &rat_int(0));
        let b = self.rep.coeff_or_zero(1, &rat_int(0));
        // (u + v z)^2 = (u^2 - gamma v^2) + (2uv - beta v^2) z
        let candidates: Vec<(Rat, Rat)> = if b.is_zero() {
            let mut cands = Vec::new();
            if let Some(u) = rational_sqrt(&a) {
                cands.push((u, rat_int(0)));
            }
            // 2u = beta v branch: v^2 = a / (beta^2/4 - gamma)
            let denom = &beta * &beta / rat_int(4) - &gamma;
            if !denom.is_zero() {
                let w0 = &a / &denom;
                if let Some(v) = rational_sqrt(&w0) {
                    let u = &beta * &v / rat_int(2);
                    cands.push((u, v));
                }
            }
            cands
        } else {
            // v != 0; with w = v^2:
            // (beta^2 - 4 gamma) w^2 + (2 b beta - 4 a) w + b^2 = 0
            let qa = &beta * &beta - rat_int(4) * &gamma;
            let qb = rat_int(2) * &b * &beta - rat_int(4) * &a;
            let qc = &b * &b;
            let mut cands = Vec::new();
            for w in rational_quadratic_roots(&qa, &qb, &qc) {
                if let Some(v) = rational_sqrt(&w) {
                    if v.is_zero() {
                        continue;
                    }
                    let u = (&b + &beta * &w) / (rat_int(2) * &v);
                    cands.push((u, v));
                }
            }
            cands
        };
        for (u, v) in candidates {
            let root = NfElem::reduce(UniPoly::new(alloc::vec![u, v]), &self.field);
            if root.mul(&root) == *self {
                return Some(normalize_sign(root));
            }
        }
        None
    }
}

/// Rational roots of qa w^2 + qb w + qc = 0 (qa may be zero).
fn rational_quadratic_roots(qa: &Rat, qb: &Rat, qc: &Rat) -> Vec<Rat> {
    let mut out = Vec::new();
    if qa.is_zero() {
        if !qb.is_zero() {
            out.push(-qc / qb);
        }
        return out;
    }
    let disc = qb * qb - rat_int(4) * qa * qc;
    if let Some(s) = rational_sqrt(&disc) {
        let two_a = rat_int(2) * qa;
        out.push((-qb + &s) / &two_a);
        if !s.is_zero() {
            out.push((-qb - &s) / &two_a);
        }
    }
    out
}

fn normalize_sign(x: NfElem) -> NfElem {
    let first = x.rep.coeffs().iter().find(|c| !c.is_zero());
    match first {
        Some(c) if c < &rat_int(0) => x.neg(),
        _ => x,
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        NumberField::same_field(&self.field, &other.field) && self.rep == other.rep
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep.display("z"))
    }
}

impl RingElem for NfElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
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
        self.rep.is_display_atomic()
    }
}

impl FieldElem for NfElem {
    fn inverted(&self) -> CoreResult<Self> {
        self.inverse()
    }
}

impl core::ops::Add for &NfElem {
    type Output = NfElem;
    fn add(self, rhs: Self) -> NfElem {
        NfElem::add(self, rhs)
    }
}

impl core::ops::Sub for &NfElem {
    type Output = NfElem;
    fn sub(self, rhs: Self) -> NfElem {
        NfElem::sub(self, rhs)
    }
}

impl core::ops::Mul for &NfElem {
    type Output = NfElem;
    fn mul(self, rhs: Self) -> NfElem {
        NfElem::mul(self, rhs)
    }
}

impl core::ops::Neg for &NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem::neg(self)
    }
}

/// Convenience half-fraction constructor used all over the tests.
pub fn nf_frac(field: &Arc<NumberField>, p: i64, q: i64) -> NfElem {
    field.from_rat(rat_frac(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        assert_eq!(cyclotomic_poly(1), UniPoly::new(alloc::vec![rat_int(-1), rat_int(1)]));
        assert_eq!(
            cyclotomic_poly(3),
            UniPoly::new(alloc::vec![rat_int(1), rat_int(1), rat_int(1)])
        );
        assert_eq!(
            cyclotomic_poly(4),
            UniPoly::new(alloc::vec![rat_int(1), rat_int(0), rat_int(1)])
        );
        assert_eq!(
            cyclotomic_poly(6),
            UniPoly::new(alloc::vec![rat_int(1), rat_int(-1), rat_int(1)])
        );
        // phi(12) = 4: z^4 - z^2 + 1
        assert_eq!(
            cyclotomic_poly(12),
            UniPoly::new(alloc::vec![rat_int(1), rat_int(0), rat_int(-1), rat_int(0), rat_int(1)])
        );
    }

    #[test]
    fn cube_root_of_unity_relations() {
        let f = NumberField::cyclotomic(3).unwrap();
        let w = f.generator();
        assert_eq!(w.pow(3), f.one());
        // 1 + w + w^2 = 0
        assert!(f.one().add(&w).add(&w.pow(2)).is_zero());
        assert_eq!(w.inverse().unwrap(), w.pow(2));
    }

    #[test]
    fn fourth_root_of_unity_relations() {
        let f = NumberField::cyclotomic(4).unwrap();
        let i = f.generator();
        assert_eq!(i.mul(&i), f.from_int(-1));
        assert_eq!(i.pow(4), f.one());
        assert_eq!(f.primitive_root_of_unity(4).unwrap(), i);
        assert_eq!(f.primitive_root_of_unity(2).unwrap(), f.from_int(-1));
        assert!(f.primitive_root_of_unity(3).is_err());
    }

    #[test]
    fn roots_of_unity_inside_higher_cyclotomic() {
        let f = NumberField::cyclotomic(12).unwrap();
        let w = f.primitive_root_of_unity(3).unwrap();
        assert_eq!(w.pow(3), f.one());
        assert!(!w.is_one());
        assert!(f.one().add(&w).add(&w.pow(2)).is_zero());
    }

    #[test]
    fn rationals_collapse_generator() {
        let q = NumberField::rationals();
        assert!(q.generator().is_zero());
        assert_eq!(q.from_rat(rat_frac(3, 2)).as_rational(), Some(rat_frac(3, 2)));
        assert_eq!(q.primitive_root_of_unity(2).unwrap(), q.from_int(-1));
    }

    #[test]
    fn sqrt_of_minus_three_in_third_cyclotomic() {
        let f = NumberField::cyclotomic(3).unwrap();
        let s = f.from_int(-3).sqrt().expect("sqrt(-3) = 1 + 2w");
        let w = f.generator();
        assert_eq!(s, f.one().add(&w.mul_rat(&rat_int(2))));
        assert_eq!(s.mul(&s), f.from_int(-3));
    }

    #[test]
    fn sqrt_of_minus_one_is_the_generator() {
        let f = NumberField::cyclotomic(4).unwrap();
        let s = f.from_int(-1).sqrt().expect("sqrt(-1) = i");
        assert_eq!(s, f.generator());
    }

    #[test]
    fn sqrt_of_general_quadratic_element() {
        // In Q(sqrt 2): (1 + z)^2 = 3 + 2z.
        let f = NumberField::quadratic_sqrt(rat_int(2)).unwrap();
        let target = f.from_int(3).add(&f.generator().mul_rat(&rat_int(2)));
        let s = target.sqrt().expect("3 + 2 sqrt2 is a square");
        assert_eq!(s, f.one().add(&f.generator()));
        // 2 itself: sqrt is z.
        assert_eq!(f.from_int(2).sqrt().unwrap(), f.generator());
        // A non-square stays a non-square.
        assert!(f.from_int(3).sqrt().is_none());
    }

    #[test]
    fn sqrt_rejects_non_squares_over_q() {
        let q = NumberField::rationals();
        assert!(q.from_int(2).sqrt().is_none());
        assert!(q.from_int(-1).sqrt().is_none());
        assert_eq!(q.from_rat(rat_frac(9, 4)).sqrt().unwrap(), q.from_rat(rat_frac(3, 2)));
    }

    #[test]
    fn embedding_rationals_and_cyclotomics() {
        let q = NumberField::rationals();
        let f3 = NumberField::cyclotomic(3).unwrap();
        let f12 = NumberField::cyclotomic(12).unwrap();
        let c = q.from_rat(rat_frac(5, 7));
        assert_eq!(c.embed(&f3).unwrap().as_rational(), Some(rat_frac(5, 7)));
        let w = f3.generator();
        let w12 = w.embed(&f12).unwrap();
        assert_eq!(w12, f12.generator().pow(4));
        assert!(w12.pow(3).is_one());
        // No embedding of Q(i) into Q(w).
        let f4 = NumberField::cyclotomic(4).unwrap();
        assert!(f4.generator().embed(&f3).is_err());
    }

    #[test]
    fn quadratic_sqrt_rejects_squares() {
        assert!(NumberField::quadratic_sqrt(rat_int(4)).is_err());
        assert!(NumberField::quadratic_sqrt(rat_int(0)).is_err());
        assert!(NumberField::quadratic_sqrt(rat_int(-3)).is_ok());
    }

    #[test]
    fn display_forms() {
        let f3 = NumberField::cyclotomic(3).unwrap();
        let w = f3.generator();
        assert_eq!(format!("{}", w), "z");
        assert_eq!(format!("{}", w.pow(2)), "-z - 1");
        assert_eq!(format!("{}", f3.from_rat(rat_frac(-1, 2))), "-1/2");
        assert_eq!(format!("{}", f3.zero()), "0");
    }
}
