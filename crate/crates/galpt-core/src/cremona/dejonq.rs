//! Plane Cremona transformations of de Jonquières type, centered at the
//! point o = (0:0:1) and written in the normal form
//!
//! ```text
//!   (x0 : x1 : x2)  ->  (q x0 : q x1 : f),
//!   f = a(x0,x1) x2 + b(x0,x1),   q = c(x0,x1) x2 + d(x0,x1),
//! ```
//!
//! where a, b, c, d are binary forms of degrees e, e+1, e-1, e and
//! a d - b c != 0. Such a map has degree e+1, fixes lines through o as a
//! pencil, and acts on the fiber coordinate u = x2/x0 as the fractional-linear
//! map with matrix [[a(1,t), b(1,t)], [c(1,t), d(1,t)]] over k'(t), t = x1/x0.
//!
//! Everything is kept in a canonical shape: the four forms are made coprime by
//! stripping their common binary factor, and the first nonzero coefficient in
//! the scan order a, b, c, d (coefficients by ascending x1-exponent) is scaled
//! to 1. Composition is then the literal 2x2 matrix product followed by
//! re-canonicalization, which makes identity checks and order computations
//! exact.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::numfield::{NfElem, NumberField};
use crate::arith::ratfunc::RatFunc;
use crate::curve::{Mat3, TernaryForm};
use crate::error::{CoreError, CoreResult};
use crate::poly::UniPoly;

use super::moebius::Moebius;

/// Homogeneous polynomial in (x0, x1) with an explicit formal degree; the
/// coefficient of x0^(deg-j) x1^j sits at index j. A form may be zero while
/// still carrying a degree, which keeps the bookkeeping for the four slots of
/// a de Jonquières map honest.
#[derive(Clone, Debug)]
pub struct BinaryForm {
    coeffs: Vec<NfElem>,
    degree: u32,
    field: Arc<NumberField>,
}

impl PartialEq for BinaryForm {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs == other.coeffs
    }
}

impl BinaryForm {
    pub fn zero(field: &Arc<NumberField>, degree: u32) -> Self {
        BinaryForm {
            coeffs: vec![field.zero(); degree as usize + 1],
            degree,
            field: Arc::clone(field),
        }
    }

    /// Homogenize p(T) to the given degree via T = x1/x0, i.e. the
    /// coefficient of T^j becomes the coefficient of x0^(degree-j) x1^j.
    pub fn from_univariate(
        p: &UniPoly<NfElem>,
        degree: u32,
        field: &Arc<NumberField>,
    ) -> CoreResult<Self> {
        if let Some(d) = p.degree() {
            if d as u32 > degree {
                return Err(CoreError::Internal(alloc::format!(
                    "cannot homogenize a degree-{d} polynomial to formal degree {degree}"
                )));
            }
        }
        let zero = field.zero();
        let coeffs = (0..=degree as usize).map(|j| p.coeff_or_zero(j, &zero)).collect();
        Ok(BinaryForm { coeffs, degree, field: Arc::clone(field) })
    }

    pub fn constant(c: NfElem) -> Self {
        let field = Arc::clone(c.field());
        BinaryForm { coeffs: vec![c], degree: 0, field }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn formal_degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[NfElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Dehomogenization at (1, T); inverse of `from_univariate` up to the
    /// power of x0 recorded only in the formal degree.
    pub fn univariate(&self) -> UniPoly<NfElem> {
        UniPoly::new(self.coeffs.clone())
    }

    /// Exponent of x0 dividing the form (the formal degree for zero forms).
    fn x0_slack(&self) -> u32 {
        match self.univariate().degree() {
            Some(d) => self.degree - d as u32,
            None => self.degree,
        }
    }

    /// Zero operands are absorbed regardless of their formal degree; otherwise
    /// the degrees must agree.
    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, rhs.degree, "binary form degree mismatch in add");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(x, y)| x.add(y))
            .collect();
        BinaryForm { coeffs, degree: self.degree, field: Arc::clone(&self.field) }
    }

    pub fn neg(&self) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            degree: self.degree,
            field: Arc::clone(&self.field),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let degree = self.degree + rhs.degree;
        let mut coeffs = vec![self.field.zero(); degree as usize + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&x.mul(y));
            }
        }
        BinaryForm { coeffs, degree, field: Arc::clone(&self.field) }
    }

    pub fn mul_scalar(&self, c: &NfElem) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
            degree: self.degree,
            field: Arc::clone(&self.field),
        }
    }

    /// Greatest common binary factor of the nonzero inputs: the x0-power they
    /// all carry times the monic gcd of their dehomogenizations. `None` when
    /// every input is zero.
    pub fn gcd4(forms: [&BinaryForm; 4]) -> Option<BinaryForm> {
        let nonzero: Vec<&BinaryForm> = forms.into_iter().filter(|f| !f.is_zero()).collect();
        let first = nonzero.first()?;
        let field = Arc::clone(&first.field);
        let slack = nonzero.iter().map(|f| f.x0_slack()).min().unwrap();
        let mut g = UniPoly::zero();
        for f in &nonzero {
            g = UniPoly::gcd(&g, &f.univariate());
        }
        let degree = slack + g.degree().unwrap_or(0) as u32;
        Some(BinaryForm::from_univariate(&g, degree, &field).expect("gcd fits its degree"))
    }

    /// Exact quotient by a nonzero form, or `None` when it does not divide.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            let degree = self.degree.checked_sub(rhs.degree)?;
            return Some(BinaryForm::zero(&self.field, degree));
        }
        if self.x0_slack() < rhs.x0_slack() || self.degree < rhs.degree {
            return None;
        }
        let q = self.univariate().exact_div_poly(&rhs.univariate())?;
        Some(
            BinaryForm::from_univariate(&q, self.degree - rhs.degree, &self.field)
                .expect("quotient fits its degree"),
        )
    }

    /// The same polynomial as a form in (x0, x1, x2) with no x2.
    pub fn to_ternary(&self) -> TernaryForm {
        let terms = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| {
            ((self.degree - j as u32, j as u32, 0), c.clone())
        });
        TernaryForm::from_terms(&self.field, self.degree, terms)
            .expect("exponents sum to the formal degree")
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ternary())
    }
}

/// A de Jonquières transformation in the centered normal form described in the
/// module docs, stored through its four binary forms at level e. The map
/// itself has degree e + 1.
#[derive(Clone, Debug)]
pub struct DeJonquieresMap {
    a: BinaryForm,
    b: BinaryForm,
    c: BinaryForm,
    d: BinaryForm,
    level: u32,
}

impl PartialEq for DeJonquieresMap {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
            && self.a == other.a
            && self.b == other.b
            && self.c == other.c
            && self.d == other.d
    }
}

impl DeJonquieresMap {
    /// Validates the degree pattern (e, e+1, e-1, e), rejects vanishing
    /// determinant, and canonicalizes.
    pub fn new(
        level: u32,
        a: BinaryForm,
        b: BinaryForm,
        c: BinaryForm,
        d: BinaryForm,
    ) -> CoreResult<Self> {
        let slots: [(&BinaryForm, u32, &str); 4] = [
            (&a, level, "a"),
            (&b, level + 1, "b"),
            (&c, level.saturating_sub(1), "c"),
            (&d, level, "d"),
        ];
        for (form, want, name) in slots {
            if !form.is_zero() && form.formal_degree() != want {
                return Err(CoreError::MalformedMap(alloc::format!(
                    "slot {name} must be a form of degree {want}, got degree {}",
                    form.formal_degree()
                )));
            }
        }
        if level == 0 && !c.is_zero() {
            return Err(CoreError::MalformedMap(
                "slot c must vanish for a linear map".into(),
            ));
        }
        let det = a.mul(&d).sub(&b.mul(&c));
        if det.is_zero() {
            return Err(CoreError::SingularMatrix);
        }
        Ok(Self::canonical(level, a, b, c, d))
    }

    /// Strip the common binary factor of the four slots, then rescale so the
    /// first nonzero coefficient in scan order a, b, c, d is 1. Precondition:
    /// nonvanishing determinant.
    fn canonical(level: u32, a: BinaryForm, b: BinaryForm, c: BinaryForm, d: BinaryForm) -> Self {
        let field = Arc::clone(&a.field);
        let h = BinaryForm::gcd4([&a, &b, &c, &d]).expect("det != 0 rules out the zero map");
        let level = level - h.formal_degree();
        let quot = |f: &BinaryForm| -> UniPoly<NfElem> {
            if f.is_zero() {
                UniPoly::zero()
            } else {
                f.univariate()
                    .exact_div_poly(&h.univariate())
                    .expect("gcd divides every slot")
            }
        };
        let mut parts = [quot(&a), quot(&b), quot(&c), quot(&d)];
        let lead = parts
            .iter()
            .flat_map(|p| p.coeffs().iter())
            .find(|x| !x.is_zero())
            .expect("det != 0 rules out the zero map")
            .clone();
        let inv = lead.inverse().expect("nonzero");
        for p in parts.iter_mut() {
            *p = p.mul_scalar(&inv);
        }
        let [pa, pb, pc, pd] = parts;
        let build = |p: UniPoly<NfElem>, deg: u32| {
            BinaryForm::from_univariate(&p, deg, &field).expect("slack is preserved by division")
        };
        DeJonquieresMap {
            a: build(pa, level),
            b: build(pb, level + 1),
            c: build(pc, level.saturating_sub(1)),
            d: build(pd, level),
            level,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Degree of the map as a Cremona transformation.
    pub fn degree(&self) -> u32 {
        self.level + 1
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.a.field
    }

    pub fn a(&self) -> &BinaryForm {
        &self.a
    }

    pub fn b(&self) -> &BinaryForm {
        &self.b
    }

    pub fn c(&self) -> &BinaryForm {
        &self.c
    }

    pub fn d(&self) -> &BinaryForm {
        &self.d
    }

    pub fn det_form(&self) -> BinaryForm {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    /// The three homogeneous components (q x0 : q x1 : a x2 + b).
    pub fn components(&self) -> [TernaryForm; 3] {
        let field = self.field();
        let x2 = TernaryForm::from_terms(field, 1, [((0, 0, 1), field.one())])
            .expect("monomial");
        let q = self.c.to_ternary().mul(&x2).add(&self.d.to_ternary()).expect("degrees match");
        let x0 = TernaryForm::from_terms(field, 1, [((1, 0, 0), field.one())])
            .expect("monomial");
        let x1 = TernaryForm::from_terms(field, 1, [((0, 1, 0), field.one())])
            .expect("monomial");
        let f = self.a.to_ternary().mul(&x2).add(&self.b.to_ternary()).expect("degrees match");
        [q.mul(&x0), q.mul(&x1), f]
    }

    /// self ∘ rhs, via the 2x2 matrix product over binary forms.
    pub fn compose(&self, rhs: &Self) -> Self {
        let level = self.level + rhs.level;
        let a = self.a.mul(&rhs.a).add(&self.b.mul(&rhs.c));
        let b = self.a.mul(&rhs.b).add(&self.b.mul(&rhs.d));
        let c = self.c.mul(&rhs.a).add(&self.d.mul(&rhs.c));
        let d = self.c.mul(&rhs.b).add(&self.d.mul(&rhs.d));
        Self::canonical(level, a, b, c, d)
    }

    /// The inverse transformation; the adjugate matrix at the same level.
    pub fn inverse(&self) -> Self {
        Self::canonical(
            self.level,
            self.d.clone(),
            self.b.neg(),
            self.c.neg(),
            self.a.clone(),
        )
    }

    /// Because of canonicalization, projective identity is literal identity.
    pub fn is_identity(&self) -> bool {
        self.level == 0
            && self.b.is_zero()
            && self.c.is_zero()
            && self.a.coeffs[0].is_one()
            && self.d.coeffs[0].is_one()
    }

    /// Smallest k in 1..=cap with the k-fold composite trivial.
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

    /// The fractional-linear action on the fiber coordinate u = x2/x0, with
    /// entries dehomogenized at (1, t).
    pub fn induced_moebius(&self) -> CoreResult<Moebius> {
        let field = self.field();
        let lift = |f: &BinaryForm| RatFunc::from_poly(f.univariate(), field);
        Moebius::new([
            [lift(&self.a), lift(&self.b)],
            [lift(&self.c), lift(&self.d)],
        ])
    }

    /// Total transform of a form under this map: substitute the components.
    pub fn pullback(&self, form: &TernaryForm) -> CoreResult<TernaryForm> {
        compose_forms(form, &self.components())
    }

    /// Whether the zero locus of `form` is carried into itself, i.e. whether
    /// the pullback of `form` is divisible by it.
    pub fn preserves_curve(&self, form: &TernaryForm) -> CoreResult<bool> {
        let pulled = self.pullback(form)?;
        let (_, rem) = pulled.divrem_single(form)?;
        Ok(rem.is_zero())
    }
}

impl fmt::Display for DeJonquieresMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2] = self.components();
        write!(f, "({c0} : {c1} : {c2})")
    }
}

/// Lift a fractional-linear transformation of the fiber coordinate u = x2/x0
/// to a de Jonquières transformation of the plane: clear denominators in t,
/// strip the common polynomial factor, and homogenize the four entries to the
/// degree pattern (e, e+1, e-1, e).
pub fn dejonquieres_lift(m: &Moebius) -> CoreResult<DeJonquieresMap> {
    let field = m.field();
    let e = m.entries();
    let flat = [&e[0][0], &e[0][1], &e[1][0], &e[1][1]];
    let mut ell = UniPoly::constant(field.one());
    for r in flat {
        ell = UniPoly::lcm(&ell, r.den());
    }
    let mut parts: Vec<UniPoly<NfElem>> = flat
        .iter()
        .map(|r| {
            let scale = ell.exact_div_poly(r.den()).expect("lcm is divisible by each part");
            r.num().mul(&scale)
        })
        .collect();
    let mut g = UniPoly::zero();
    for p in &parts {
        g = UniPoly::gcd(&g, p);
    }
    if g.degree().unwrap_or(0) >= 1 {
        for p in parts.iter_mut() {
            *p = p.exact_div_poly(&g).expect("gcd divides");
        }
    }
    let deg = |p: &UniPoly<NfElem>| p.degree().map(|d| d as i64);
    let mut level: i64 = 0;
    if let Some(d) = deg(&parts[0]) {
        level = level.max(d);
    }
    if let Some(d) = deg(&parts[1]) {
        level = level.max(d - 1);
    }
    if let Some(d) = deg(&parts[2]) {
        level = level.max(d + 1);
    }
    if let Some(d) = deg(&parts[3]) {
        level = level.max(d);
    }
    let level = level as u32;
    let a = BinaryForm::from_univariate(&parts[0], level, &field)?;
    let b = BinaryForm::from_univariate(&parts[1], level + 1, &field)?;
    let c = if level == 0 {
        BinaryForm::zero(&field, 0)
    } else {
        BinaryForm::from_univariate(&parts[2], level - 1, &field)?
    };
    let d = BinaryForm::from_univariate(&parts[3], level, &field)?;
    DeJonquieresMap::new(level, a, b, c, d)
}

/// Substitute the three images into `outer`, producing the form
/// outer(images[0], images[1], images[2]).
pub fn compose_forms(outer: &TernaryForm, images: &[TernaryForm; 3]) -> CoreResult<TernaryForm> {
    let field = outer.field();
    let inner_degree = images[0].degree();
    if images.iter().any(|f| f.degree() != inner_degree) {
        return Err(CoreError::MalformedMap(
            "components must share a common degree".into(),
        ));
    }
    let mut max_exp = [0u32; 3];
    for (&(i, j, k), _) in outer.terms() {
        max_exp[0] = max_exp[0].max(i);
        max_exp[1] = max_exp[1].max(j);
        max_exp[2] = max_exp[2].max(k);
    }
    let one = TernaryForm::from_terms(field, 0, [((0, 0, 0), field.one())])?;
    let ladder = |img: &TernaryForm, up_to: u32| -> Vec<TernaryForm> {
        let mut v = Vec::with_capacity(up_to as usize + 1);
        v.push(one.clone());
        for k in 1..=up_to {
            let next = v[k as usize - 1].mul(img);
            v.push(next);
        }
        v
    };
    let pows = [
        ladder(&images[0], max_exp[0]),
        ladder(&images[1], max_exp[1]),
        ladder(&images[2], max_exp[2]),
    ];
    let mut acc = TernaryForm::zero(field, outer.degree() * inner_degree);
    for (&(i, j, k), coeff) in outer.terms() {
        let term = pows[0][i as usize]
            .mul(&pows[1][j as usize])
            .mul(&pows[2][k as usize])
            .mul_scalar(coeff);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Whether the map with the given components fixes every line through
/// o = (0:0:1), i.e. acts trivially on the pencil x1/x0 — the kernel condition
/// for the restriction to the base of the projection.
pub fn rho_restriction_trivial(components: &[TernaryForm; 3]) -> bool {
    let field = components[0].field();
    let x0 = TernaryForm::from_terms(field, 1, [((1, 0, 0), field.one())]).expect("monomial");
    let x1 = TernaryForm::from_terms(field, 1, [((0, 1, 0), field.one())]).expect("monomial");
    let cross = components[0]
        .mul(&x1)
        .sub(&components[1].mul(&x0))
        .expect("degrees match");
    cross.is_zero()
}

/// The components of the projective-linear map given by a 3x3 matrix.
pub fn linear_map_components(m: &Mat3) -> [TernaryForm; 3] {
    let field = m.field();
    let vars = [(1u32, 0u32, 0u32), (0, 1, 0), (0, 0, 1)];
    let row = |i: usize| {
        let terms = (0..3)
            .filter(|&j| !m.entries()[i][j].is_zero())
            .map(|j| (vars[j], m.entries()[i][j].clone()));
        TernaryForm::from_terms(field, 1, terms).expect("linear monomials")
    };
    [row(0), row(1), row(2)]
}

/// Projective equality of component triples: all 2x2 cross products agree.
pub fn maps_projectively_equal(lhs: &[TernaryForm; 3], rhs: &[TernaryForm; 3]) -> bool {
    for i in 0..3 {
        for j in (i + 1)..3 {
            let cross = lhs[i].mul(&rhs[j]).sub(&lhs[j].mul(&rhs[i]));
            match cross {
                Ok(c) if c.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn mb(field: &Arc<NumberField>, rows: [[i64; 2]; 2]) -> Moebius {
        Moebius::new(rows.map(|r| r.map(|n| RatFunc::from_int(n, field)))).unwrap()
    }

    fn form(field: &Arc<NumberField>, degree: u32, terms: &[((u32, u32, u32), i64)]) -> TernaryForm {
        TernaryForm::from_terms(
            field,
            degree,
            terms.iter().map(|&(e, c)| (e, field.from_int(c))),
        )
        .unwrap()
    }

    #[test]
    fn binary_form_arithmetic() {
        let f = q();
        // p = 1 + 2T homogenized to degree 2: x0^2 + 2 x0 x1.
        let p = UniPoly::new(vec![f.from_int(1), f.from_int(2)]);
        let g = BinaryForm::from_univariate(&p, 2, &f).unwrap();
        assert_eq!(g.x0_slack(), 1);
        let sq = g.mul(&g);
        assert_eq!(sq.formal_degree(), 4);
        // (x0^2 + 2 x0 x1)^2 = x0^4 + 4 x0^3 x1 + 4 x0^2 x1^2.
        assert_eq!(sq.univariate(), UniPoly::new(vec![f.from_int(1), f.from_int(4), f.from_int(4)]));
        assert!(sq.div_exact(&g).unwrap() == g);
        // A zero form is absorbed by add regardless of its formal degree.
        let z = BinaryForm::zero(&f, 7);
        assert_eq!(z.add(&g), g);
        assert_eq!(g.add(&z), g);
        // Degree obstruction: x0 g does not divide g.
        let x0g = BinaryForm::from_univariate(&p, 3, &f).unwrap();
        assert!(g.div_exact(&x0g).is_none());
    }

    #[test]
    fn gcd4_tracks_x0_power_and_content() {
        let f = q();
        let one = UniPoly::constant(f.one());
        let t = UniPoly::new(vec![f.zero(), f.one()]);
        // x0^2, x0 x1, x0 (x0 + x1): common factor exactly x0.
        let a = BinaryForm::from_univariate(&one, 2, &f).unwrap();
        let b = BinaryForm::from_univariate(&t, 2, &f).unwrap();
        let c = BinaryForm::from_univariate(&UniPoly::new(vec![f.from_int(1), f.from_int(1)]), 2, &f)
            .unwrap();
        let z = BinaryForm::zero(&f, 3);
        let h = BinaryForm::gcd4([&a, &b, &c, &z]).unwrap();
        assert_eq!(h.formal_degree(), 1);
        assert_eq!(h.univariate(), one);
    }

    #[test]
    fn lift_of_diagonal_scaling() {
        // u -> u/t lifts to (x0 x1 : x1^2 : x0 x2).
        let f = q();
        let t = RatFunc::var_t(&f);
        let m = Moebius::new([
            [RatFunc::one(&f), RatFunc::zero(&f)],
            [RatFunc::zero(&f), t],
        ])
        .unwrap();
        let dj = dejonquieres_lift(&m).unwrap();
        assert_eq!(dj.degree(), 2);
        let [c0, c1, c2] = dj.components();
        assert_eq!(c0, form(&f, 2, &[((1, 1, 0), 1)]));
        assert_eq!(c1, form(&f, 2, &[((0, 2, 0), 1)]));
        assert_eq!(c2, form(&f, 2, &[((1, 0, 1), 1)]));
        assert!(rho_restriction_trivial(&dj.components()));
        assert!(!dj.det_form().is_zero());
        // The four slots are coprime after canonicalization.
        let h = BinaryForm::gcd4([dj.a(), dj.b(), dj.c(), dj.d()]).unwrap();
        assert_eq!(h.formal_degree(), 0);
        // Round trip back to the fractional-linear action.
        assert_eq!(dj.induced_moebius().unwrap(), m);
    }

    #[test]
    fn lift_of_order_three_element() {
        // u -> 1/(-u - 1) has order 3; its lift is a quadratic map with the
        // canonical slots (0, x0^2, -1, -x0).
        let f = q();
        let m = mb(&f, [[0, 1], [-1, -1]]);
        let dj = dejonquieres_lift(&m).unwrap();
        assert_eq!(dj.degree(), 2);
        assert!(dj.a().is_zero());
        assert_eq!(dj.b().univariate(), UniPoly::constant(f.one()));
        assert_eq!(dj.b().formal_degree(), 2);
        assert_eq!(dj.c().univariate(), UniPoly::constant(f.from_int(-1)));
        assert_eq!(dj.d().univariate(), UniPoly::constant(f.from_int(-1)));
        assert_eq!(dj.d().formal_degree(), 1);
        assert_eq!(dj.projective_order(6), Some(3));
        assert!(dj.compose(&dj).compose(&dj).is_identity());
        assert!(!dj.compose(&dj).is_identity());
    }

    #[test]
    fn lift_respects_composition() {
        let f = q();
        let t = RatFunc::var_t(&f);
        let m = Moebius::new([
            [RatFunc::one(&f), RatFunc::zero(&f)],
            [RatFunc::zero(&f), t.clone()],
        ])
        .unwrap();
        let n = mb(&f, [[0, 1], [-1, -1]]);
        let lhs = dejonquieres_lift(&m.compose(&n)).unwrap();
        let rhs = dejonquieres_lift(&m).unwrap().compose(&dejonquieres_lift(&n).unwrap());
        assert_eq!(lhs, rhs);
        // And a case with a genuine denominator: u -> t u + 1/t.
        let shear = Moebius::new([
            [t.clone(), t.inverse().unwrap()],
            [RatFunc::zero(&f), RatFunc::one(&f)],
        ])
        .unwrap();
        let lhs = dejonquieres_lift(&shear.compose(&n)).unwrap();
        let rhs = dejonquieres_lift(&shear).unwrap().compose(&dejonquieres_lift(&n).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_round_trip() {
        let f = q();
        let t = RatFunc::var_t(&f);
        let m = Moebius::new([
            [t.clone(), t.inverse().unwrap()],
            [RatFunc::zero(&f), RatFunc::one(&f)],
        ])
        .unwrap();
        let dj = dejonquieres_lift(&m).unwrap();
        assert!(dj.compose(&dj.inverse()).is_identity());
        assert!(dj.inverse().compose(&dj).is_identity());
        assert_eq!(dj.inverse(), dejonquieres_lift(&m.inverse()).unwrap());
    }

    #[test]
    fn scalar_normalization_of_linear_lift() {
        // u -> 2u is the linear map (x0 : x1 : 2 x2); the canonical slots come
        // out as (1, 0, 0, 1/2).
        let f = q();
        let m = mb(&f, [[2, 0], [0, 1]]);
        let dj = dejonquieres_lift(&m).unwrap();
        assert_eq!(dj.degree(), 1);
        assert!(!dj.is_identity());
        assert_eq!(dj.projective_order(10), None);
        assert_eq!(dj.a().univariate(), UniPoly::constant(f.one()));
        assert!(dj.b().is_zero() && dj.c().is_zero());
        assert_eq!(dj.d().univariate(), UniPoly::constant(nf_half(&f)));
        // Same map as the matrix diag(1, 1, 2), and not as diag(2, 1, 1).
        let lin = Mat3::from_ints(&f, [[1, 0, 0], [0, 1, 0], [0, 0, 2]]);
        assert!(maps_projectively_equal(&dj.components(), &linear_map_components(&lin)));
        let other = Mat3::from_ints(&f, [[2, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(!maps_projectively_equal(&dj.components(), &linear_map_components(&other)));
    }

    fn nf_half(f: &Arc<NumberField>) -> NfElem {
        crate::arith::numfield::nf_frac(f, 1, 2)
    }

    #[test]
    fn pullback_and_preservation() {
        let f = q();
        let t = RatFunc::var_t(&f);
        let m = Moebius::new([
            [RatFunc::one(&f), RatFunc::zero(&f)],
            [RatFunc::zero(&f), t],
        ])
        .unwrap();
        let dj = dejonquieres_lift(&m).unwrap();
        // The line x2 = 0 is preserved: its pullback is x0 x2.
        let line = form(&f, 1, &[((0, 0, 1), 1)]);
        assert_eq!(dj.pullback(&line).unwrap(), form(&f, 2, &[((1, 0, 1), 1)]));
        assert!(dj.preserves_curve(&line).unwrap());
        // The conic x1 x2 - x0^2 is not.
        let conic = form(&f, 2, &[((0, 1, 1), 1), ((2, 0, 0), -1)]);
        assert!(!dj.preserves_curve(&conic).unwrap());
    }

    #[test]
    fn malformed_slots_are_rejected() {
        let f = q();
        let one = BinaryForm::constant(f.one());
        // b must have degree level + 1.
        let err = DeJonquieresMap::new(0, one.clone(), one.clone(), BinaryForm::zero(&f, 0), one.clone());
        assert!(matches!(err, Err(CoreError::MalformedMap(_))));
        // Vanishing determinant.
        let x0 = BinaryForm::from_univariate(&UniPoly::constant(f.one()), 1, &f).unwrap();
        let err = DeJonquieresMap::new(
            1,
            x0.clone(),
            BinaryForm::zero(&f, 2),
            BinaryForm::zero(&f, 0),
            BinaryForm::zero(&f, 1),
        );
        assert!(matches!(err, Err(CoreError::SingularMatrix)));
        let _ = format!("{one}");
    }
}
