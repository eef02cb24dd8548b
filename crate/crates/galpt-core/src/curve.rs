//! Plane curves, base points, chart normalization, and fiber polynomials.
//!
//! Conventions, used consistently everywhere downstream:
//!
//! * homogeneous coordinates (X : Y : Z), affine chart x = X/Z, y = Y/Z;
//! * a marked base point is always moved to the origin o = (0 : 0 : 1) by a
//!   deterministic change of coordinates (a transposition followed by a
//!   shear), and the pencil of lines y = t x through o carries the pencil
//!   parameter t;
//! * restricting the curve to the line y = t x and stripping the x^m factor
//!   from the base point of multiplicity m leaves the fiber polynomial
//!   h(X) in k'(t)[X], monic after dividing by its leading coefficient.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::numfield::{NfElem, NumberField};
use crate::arith::ratfunc::RatFunc;
use crate::error::{CoreError, CoreResult};
use crate::poly::resultant::resultant;
use crate::poly::{RingElem, UniPoly};

/// Sparse bivariate polynomial in the affine chart coordinates (x, y).
#[derive(Clone, Debug)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), NfElem>,
    field: Arc<NumberField>,
}

impl BivarPoly {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        BivarPoly { terms: BTreeMap::new(), field: Arc::clone(field) }
    }

    pub fn constant(c: NfElem) -> Self {
        let field = Arc::clone(c.field());
        let mut p = BivarPoly::zero(&field);
        p.add_term(0, 0, c);
        p
    }

    /// x^a y^b with coefficient c.
    pub fn term(a: u32, b: u32, c: NfElem) -> Self {
        let field = Arc::clone(c.field());
        let mut p = BivarPoly::zero(&field);
        p.add_term(a, b, c);
        p
    }

    pub fn var_x(field: &Arc<NumberField>) -> Self {
        BivarPoly::term(1, 0, field.one())
    }

    pub fn var_y(field: &Arc<NumberField>) -> Self {
        BivarPoly::term(0, 1, field.one())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &NfElem)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: NfElem) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(|| c.zero_like());
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    /// Multiplicity of the curve at the origin: the smallest total degree of
    /// a monomial (0 for a polynomial with a constant term).
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).min()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BivarPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, c.neg())).collect(),
            field: Arc::clone(&self.field),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = BivarPoly::zero(&self.field);
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1.mul(c2));
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &NfElem) -> Self {
        if c.is_zero() {
            return BivarPoly::zero(&self.field);
        }
        BivarPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v.mul(c))).collect(),
            field: Arc::clone(&self.field),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BivarPoly::constant(self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluate with x, y in any ring, lifting coefficients through `lift`.
    pub fn eval_with<T: RingElem>(&self, x: &T, y: &T, lift: impl Fn(&NfElem) -> T) -> T {
        let mut acc = x.zero_like();
        for (&(a, b), c) in &self.terms {
            let mut term = lift(c);
            for _ in 0..a {
                term = term.times(x);
            }
            for _ in 0..b {
                term = term.times(y);
            }
            acc = acc.plus(&term);
        }
        acc
    }

    /// The homogeneous component of total degree j.
    pub fn homogeneous_component(&self, j: u32) -> Self {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b), _)| a + b == j)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
            field: Arc::clone(&self.field),
        }
    }

    /// Substitute x = 1, y = t: turns a homogeneous component f_j into the
    /// univariate polynomial f_j(1, t).
    pub fn at_one_t(&self) -> UniPoly<NfElem> {
        let mut coeffs: Vec<NfElem> = Vec::new();
        for (&(_, b), c) in &self.terms {
            let b = b as usize;
            while coeffs.len() <= b {
                coeffs.push(self.field.zero());
            }
            coeffs[b] = coeffs[b].add(c);
        }
        UniPoly::new(coeffs)
    }

    /// Z^d * f(X/Z, Y/Z) for d the total degree.
    pub fn homogenize(&self) -> CoreResult<TernaryForm> {
        let d = self.total_degree().ok_or(CoreError::ZeroPolynomial)?;
        let mut terms = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            terms.insert((a, b, d - a - b), c.clone());
        }
        Ok(TernaryForm { terms, degree: d, field: Arc::clone(&self.field) })
    }
}

impl PartialEq for BivarPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Descending by total degree, then by x-exponent.
        let mut keys: Vec<(u32, u32)> = self.terms.keys().cloned().collect();
        keys.sort_by(|&(a1, b1), &(a2, b2)| (a2 + b2, a2).cmp(&(a1 + b1, a1)));
        let mut first = true;
        for (a, b) in keys {
            let c = &self.terms[&(a, b)];
            let term = monomial_string(c, &[("x", a), ("y", b)]);
            write_term(f, &term, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Render c * v1^e1 * v2^e2 * ... with the usual 1/-1 elisions.
fn monomial_string(c: &NfElem, vars: &[(&str, u32)]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for &(v, e) in vars {
        match e {
            0 => {}
            1 => parts.push(String::from(v)),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    let vars_part = parts.join("*");
    if vars_part.is_empty() {
        return if c.is_display_atomic() { format!("{c}") } else { format!("({c})") };
    }
    if c.is_one() {
        vars_part
    } else if c.neg().is_one() {
        format!("-{vars_part}")
    } else if c.is_display_atomic() {
        format!("{c}*{vars_part}")
    } else {
        format!("({c})*{vars_part}")
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, term: &str, first: bool) -> fmt::Result {
    if first {
        write!(f, "{term}")
    } else if let Some(tail) = term.strip_prefix('-') {
        write!(f, " - {tail}")
    } else {
        write!(f, " + {term}")
    }
}

/// Homogeneous form in (X : Y : Z). Every monomial has the same total degree.
#[derive(Clone, Debug)]
pub struct TernaryForm {
    terms: BTreeMap<(u32, u32, u32), NfElem>,
    degree: u32,
    field: Arc<NumberField>,
}

impl TernaryForm {
    pub fn zero(field: &Arc<NumberField>, degree: u32) -> Self {
        TernaryForm { terms: BTreeMap::new(), degree, field: Arc::clone(field) }
    }

    /// Build from monomials; all exponent triples must sum to `degree`.
    pub fn from_terms(
        field: &Arc<NumberField>,
        degree: u32,
        terms: impl IntoIterator<Item = ((u32, u32, u32), NfElem)>,
    ) -> CoreResult<Self> {
        let mut out = TernaryForm::zero(field, degree);
        for ((a, b, c), coeff) in terms {
            if a + b + c != degree {
                return Err(CoreError::Internal(format!(
                    "monomial X^{a} Y^{b} Z^{c} is not of degree {degree}"
                )));
            }
            out.add_term(a, b, c, coeff);
        }
        Ok(out)
    }

    fn add_term(&mut self, a: u32, b: u32, c: u32, coeff: NfElem) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b, c)).or_insert_with(|| coeff.zero_like());
        *slot = slot.add(&coeff);
        if slot.is_zero() {
            self.terms.remove(&(a, b, c));
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &NfElem)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &Self) -> CoreResult<Self> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != rhs.degree {
            return Err(CoreError::Internal(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, rhs.degree
            )));
        }
        let mut out = self.clone();
        for (&(a, b, c), coeff) in &rhs.terms {
            out.add_term(a, b, c, coeff.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TernaryForm {
            terms: self.terms.iter().map(|(&k, c)| (k, c.neg())).collect(),
            degree: self.degree,
            field: Arc::clone(&self.field),
        }
    }

    pub fn sub(&self, rhs: &Self) -> CoreResult<Self> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = TernaryForm::zero(&self.field, self.degree + rhs.degree);
        for (&(a1, b1, c1), x) in &self.terms {
            for (&(a2, b2, c2), y) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 + c2, x.mul(y));
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &NfElem) -> Self {
        if c.is_zero() {
            return TernaryForm::zero(&self.field, self.degree);
        }
        TernaryForm {
            terms: self.terms.iter().map(|(&k, v)| (k, v.mul(c))).collect(),
            degree: self.degree,
            field: Arc::clone(&self.field),
        }
    }

    pub fn eval(&self, p: &ProjPoint) -> NfElem {
        let mut acc = self.field.zero();
        for (&(a, b, c), coeff) in &self.terms {
            let term = coeff
                .mul(&p.coords[0].pow(a as usize))
                .mul(&p.coords[1].pow(b as usize))
                .mul(&p.coords[2].pow(c as usize));
            acc = acc.add(&term);
        }
        acc
    }

    /// Composition with a linear map: returns the form X -> Phi(M X).
    pub fn substitute(&self, m: &Mat3) -> Self {
        // Linear forms L_i = sum_j M[i][j] X_j, raised to cached powers.
        let lin: Vec<TernaryForm> = (0..3)
            .map(|i| {
                let mut l = TernaryForm::zero(&self.field, 1);
                l.add_term(1, 0, 0, m.entries[i][0].clone());
                l.add_term(0, 1, 0, m.entries[i][1].clone());
                l.add_term(0, 0, 1, m.entries[i][2].clone());
                l
            })
            .collect();
        let one_form = {
            let mut o = TernaryForm::zero(&self.field, 0);
            o.add_term(0, 0, 0, self.field.one());
            o
        };
        let mut powers: Vec<Vec<TernaryForm>> = vec![vec![one_form.clone()]; 3];
        for i in 0..3 {
            let maxe = self.terms.keys().map(|k| [k.0, k.1, k.2][i]).max().unwrap_or(0);
            for e in 1..=maxe {
                let next = powers[i][(e - 1) as usize].mul(&lin[i]);
                powers[i].push(next);
            }
        }
        let mut out = TernaryForm::zero(&self.field, self.degree);
        for (&(a, b, c), coeff) in &self.terms {
            let term = powers[0][a as usize]
                .mul(&powers[1][b as usize])
                .mul(&powers[2][c as usize])
                .mul_scalar(coeff);
            out = out.add(&term).expect("degrees agree");
        }
        out
    }

    /// Set Z = 1.
    pub fn dehomogenize(&self) -> BivarPoly {
        let mut out = BivarPoly::zero(&self.field);
        for (&(a, b, _), c) in &self.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    /// Equality up to a nonzero scalar factor.
    pub fn projectively_equal(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() == other.is_zero();
        }
        if self.degree != other.degree || self.terms.len() != other.terms.len() {
            return false;
        }
        let (k0, c0) = self.terms.iter().next().unwrap();
        let Some(d0) = other.terms.get(k0) else {
            return false;
        };
        // ratio = d0 / c0; check other = ratio * self.
        let Ok(ratio) = d0.div(c0) else {
            return false;
        };
        self.terms.iter().all(|(k, c)| other.terms.get(k) == Some(&c.mul(&ratio)))
    }

    /// Division with remainder by a single divisor, using the lexicographic
    /// monomial order on (X, Y, Z) exponents. The remainder is zero exactly
    /// when the divisor divides this form.
    pub fn divrem_single(&self, divisor: &Self) -> CoreResult<(Self, Self)> {
        if divisor.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let (&dlead, dcoeff) = divisor.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = TernaryForm::zero(
            &self.field,
            self.degree.saturating_sub(divisor.degree),
        );
        let mut stuck = TernaryForm::zero(&self.field, self.degree);
        while let Some((&lead, coeff)) = rem.terms.iter().next_back() {
            let divisible = lead.0 >= dlead.0 && lead.1 >= dlead.1 && lead.2 >= dlead.2;
            if divisible {
                let q_exp = (lead.0 - dlead.0, lead.1 - dlead.1, lead.2 - dlead.2);
                let q_coeff = coeff.div(dcoeff)?;
                let mut q_term = TernaryForm::zero(&self.field, quot.degree);
                q_term.add_term(q_exp.0, q_exp.1, q_exp.2, q_coeff);
                rem = rem.sub(&q_term.mul(divisor))?;
                quot = quot.add(&q_term)?;
            } else {
                // Move the stuck term out of the working remainder.
                let mut t = TernaryForm::zero(&self.field, self.degree);
                t.add_term(lead.0, lead.1, lead.2, coeff.clone());
                stuck = stuck.add(&t)?;
                rem = rem.sub(&t)?;
            }
        }
        Ok((quot, stuck))
    }
}

impl PartialEq for TernaryForm {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32, u32)> = self.terms.keys().cloned().collect();
        keys.sort_by(|k1, k2| k2.cmp(k1));
        let mut first = true;
        for (a, b, c) in keys {
            let coeff = &self.terms[&(a, b, c)];
            let term = monomial_string(coeff, &[("X", a), ("Y", b), ("Z", c)]);
            write_term(f, &term, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Point of the projective plane; at least one coordinate nonzero.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: [NfElem; 3],
}

impl ProjPoint {
    pub fn new(coords: [NfElem; 3]) -> CoreResult<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(CoreError::ZeroProjectivePoint);
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(field: &Arc<NumberField>, a: i64, b: i64, c: i64) -> CoreResult<Self> {
        ProjPoint::new([field.from_int(a), field.from_int(b), field.from_int(c)])
    }

    pub fn coords(&self) -> &[NfElem; 3] {
        &self.coords
    }

    pub fn projectively_equal(&self, other: &Self) -> bool {
        // All 2x2 minors of the coordinate pair must vanish.
        for i in 0..3 {
            for j in (i + 1)..3 {
                let minor = self.coords[i]
                    .mul(&other.coords[j])
                    .sub(&self.coords[j].mul(&other.coords[i]));
                if !minor.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// 3x3 matrix over the coefficient field, acting on column coordinate
/// vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat3 {
    entries: [[NfElem; 3]; 3],
}

impl Mat3 {
    pub fn new(entries: [[NfElem; 3]; 3]) -> Self {
        Mat3 { entries }
    }

    pub fn from_ints(field: &Arc<NumberField>, rows: [[i64; 3]; 3]) -> Self {
        Mat3 {
            entries: rows.map(|r| r.map(|n| field.from_int(n))),
        }
    }

    pub fn identity(field: &Arc<NumberField>) -> Self {
        Mat3::from_ints(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn entries(&self) -> &[[NfElem; 3]; 3] {
        &self.entries
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.entries[0][0].field()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let f = self.field();
        let mut out = Mat3::identity(f);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = f.zero();
                for k in 0..3 {
                    acc = acc.add(&self.entries[i][k].mul(&rhs.entries[k][j]));
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn apply(&self, p: &ProjPoint) -> CoreResult<ProjPoint> {
        let f = self.field();
        let mut coords = [f.zero(), f.zero(), f.zero()];
        for i in 0..3 {
            for k in 0..3 {
                coords[i] = coords[i].add(&self.entries[i][k].mul(&p.coords()[k]));
            }
        }
        ProjPoint::new(coords)
    }

    pub fn det(&self) -> NfElem {
        let e = &self.entries;
        let m = |i: usize, j: usize| &e[i][j];
        let t1 = m(0, 0).mul(&m(1, 1).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 1))));
        let t2 = m(0, 1).mul(&m(1, 0).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 0))));
        let t3 = m(0, 2).mul(&m(1, 0).mul(m(2, 1)).sub(&m(1, 1).mul(m(2, 0))));
        t1.sub(&t2).add(&t3)
    }

    pub fn inverse(&self) -> CoreResult<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(CoreError::SingularMatrix);
        }
        let det_inv = det.inverse()?;
        let e = &self.entries;
        let cof = |i: usize, j: usize| -> NfElem {
            let (r1, r2) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c1, c2) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = e[r1][c1].mul(&e[r2][c2]).sub(&e[r1][c2].mul(&e[r2][c1]));
            if (i + j) % 2 == 1 {
                minor.neg()
            } else {
                minor
            }
        };
        let mut out = Mat3::identity(self.field());
        for i in 0..3 {
            for j in 0..3 {
                // Adjugate: transposed cofactors.
                out.entries[i][j] = cof(j, i).mul(&det_inv);
            }
        }
        Ok(out)
    }

    /// Some(lambda) when the matrix is lambda * I with lambda nonzero.
    pub fn as_scalar(&self) -> Option<&NfElem> {
        let d = &self.entries[0][0];
        if d.is_zero() {
            return None;
        }
        for i in 0..3 {
            for j in 0..3 {
                let ok = if i == j { self.entries[i][j] == *d } else { self.entries[i][j].is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(d)
    }

    /// Smallest k in 1..=cap with M^k scalar, if any.
    pub fn projective_order(&self, cap: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.as_scalar().is_some() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.entries;
        write!(
            f,
            "[[{}, {}, {}], [{}, {}, {}], [{}, {}, {}]]",
            r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2]
        )
    }
}

/// Whether the defining polynomial is known to be irreducible over the
/// algebraic closure of the base, or merely assumed reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Certified,
    Unverified,
}

/// A reduced plane curve: a squarefree homogeneous form of degree >= 1.
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    form: TernaryForm,
    affine: BivarPoly,
    irreducibility: Irreducibility,
}

impl PlaneCurve {
    /// Validates that the defining polynomial is squarefree; rejects zero and
    /// constants.
    pub fn from_affine(affine: BivarPoly) -> CoreResult<Self> {
        let d = affine.total_degree().ok_or(CoreError::ZeroPolynomial)?;
        if d == 0 {
            return Err(CoreError::ConstantPolynomial);
        }
        if !bivariate_squarefree(&affine)? {
            return Err(CoreError::NotSquarefree);
        }
        let form = affine.homogenize()?;
        Ok(PlaneCurve { form, affine, irreducibility: Irreducibility::Unverified })
    }

    /// Build from the homogeneous form (the affine part is its Z = 1 chart).
    /// The form must not be divisible by Z (i.e. degree must be preserved on
    /// dehomogenizing), and must be squarefree.
    pub fn from_form(form: TernaryForm) -> CoreResult<Self> {
        let affine = form.dehomogenize();
        let d = affine.total_degree().ok_or(CoreError::ZeroPolynomial)?;
        if d != form.degree() {
            return Err(CoreError::ChartDegenerate(String::from(
                "the line Z = 0 is a component of the curve",
            )));
        }
        if !bivariate_squarefree(&affine)? {
            return Err(CoreError::NotSquarefree);
        }
        Ok(PlaneCurve { form, affine, irreducibility: Irreducibility::Unverified })
    }

    pub fn certify_irreducible(mut self) -> Self {
        self.irreducibility = Irreducibility::Certified;
        self
    }

    pub fn form(&self) -> &TernaryForm {
        &self.form
    }

    pub fn affine(&self) -> &BivarPoly {
        &self.affine
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.form.field()
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.form.eval(p).is_zero()
    }

    pub fn projectively_equal(&self, other: &Self) -> bool {
        self.form.projectively_equal(&other.form)
    }
}

/// Exact repeated-factor test for a nonconstant polynomial whose coefficients
/// live in k'[s], by deciding whether Res(p, p') vanishes — without ever
/// forming that resultant. Specializing s at a point where both leading
/// coefficients survive commutes with Res, so a single nonzero scalar
/// resultant settles the common case; the resultant's s-degree and the two
/// leading coefficients' root counts bound how many integer points can fail,
/// so exhausting that budget certifies the resultant is identically zero.
fn repeated_factor_over_poly_coeffs(p: &UniPoly<UniPoly<NfElem>>) -> CoreResult<bool> {
    let dp = p.degree().ok_or(CoreError::ZeroPolynomial)?;
    let q = p.derivative();
    let Some(dq) = q.degree() else {
        return Ok(dp > 0);
    };
    let field = p.lc().unwrap().lc().unwrap().field().clone();
    let sdeg =
        |f: &UniPoly<UniPoly<NfElem>>| f.coeffs().iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let budget = sdeg(p) * dq
        + sdeg(&q) * dp
        + p.lc().unwrap().degree().unwrap()
        + q.lc().unwrap().degree().unwrap()
        + 1;
    let eval_at = |f: &UniPoly<UniPoly<NfElem>>, a: &NfElem| {
        UniPoly::new(f.coeffs().iter().map(|c| c.eval(a)).collect())
    };
    for k in 0..budget {
        // 0, 1, -1, 2, -2, … are pairwise distinct in characteristic zero.
        let a = if k % 2 == 0 { (k as i64 + 1) / 2 } else { -((k as i64 + 1) / 2) };
        let a = field.from_int(a);
        let pe = eval_at(p, &a);
        let qe = eval_at(&q, &a);
        if pe.degree() != Some(dp) || qe.degree() != Some(dq) {
            continue;
        }
        if !resultant(&pe, &qe)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Squarefree test for a bivariate polynomial, done with univariate tools:
/// split off the content in k'[x], test it, then test the primitive part as a
/// polynomial in y over k'(x).
fn bivariate_squarefree(f: &BivarPoly) -> CoreResult<bool> {
    // Collect y-coefficients g_k(x) in k'[x].
    let deg_y = f.terms().map(|(&(_, b), _)| b).max().ok_or(CoreError::ZeroPolynomial)?;
    let mut ycoeffs: Vec<UniPoly<NfElem>> = vec![UniPoly::zero(); (deg_y + 1) as usize];
    for (&(a, b), c) in f.terms() {
        let mono = UniPoly::monomial(c.clone(), a as usize);
        ycoeffs[b as usize] = ycoeffs[b as usize].add(&mono);
    }
    // Content in k'[x].
    let mut content = UniPoly::zero();
    for g in &ycoeffs {
        content = crate::arith::nf_poly_gcd(&content, g);
    }
    let content_sf = crate::arith::nf_poly_gcd(&content, &content.derivative());
    if content_sf.degree().map(|d| d > 0).unwrap_or(false) {
        return Ok(false);
    }
    if deg_y == 0 {
        return Ok(true);
    }
    // Primitive part as a y-polynomial over k'[x]: a repeated y-factor shows
    // up as a vanishing y-resultant with the derivative.
    let prim: Vec<UniPoly<NfElem>> = ycoeffs
        .iter()
        .map(|g| g.exact_div_poly(&content).expect("content divides"))
        .collect();
    let p = UniPoly::new(prim);
    Ok(!repeated_factor_over_poly_coeffs(&p)?)
}

/// Deterministic coordinate change moving `p` to the origin (0 : 0 : 1):
/// first the transposition swapping the largest nonzero coordinate into the
/// last slot, then a shear. Returns T with T(p) ~ (0 : 0 : 1).
pub fn normalize_chart(p: &ProjPoint) -> Mat3 {
    let field = p.coords()[0].field();
    let j = (0..3).rev().find(|&i| !p.coords()[i].is_zero()).expect("point is nonzero");
    let perm = match j {
        0 => Mat3::from_ints(field, [[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
        1 => Mat3::from_ints(field, [[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
        _ => Mat3::identity(field),
    };
    let moved = perm.apply(p).expect("permutation preserves nonzero");
    let last_inv = moved.coords()[2].inverse().expect("last coordinate nonzero");
    let a = moved.coords()[0].mul(&last_inv);
    let b = moved.coords()[1].mul(&last_inv);
    let shear = Mat3::new([
        [field.one(), field.zero(), a.neg()],
        [field.zero(), field.one(), b.neg()],
        [field.zero(), field.zero(), field.one()],
    ]);
    shear.mul(&perm)
}

/// A curve with a marked base point, moved into the standard chart.
#[derive(Clone, Debug)]
pub struct PointedCurve {
    curve: PlaneCurve,
    point: ProjPoint,
    transform: Mat3,
    transform_inv: Mat3,
    /// The curve in the new coordinates (base point at the origin).
    chart_curve: PlaneCurve,
    multiplicity: u32,
    projection_degree: u32,
}

impl PointedCurve {
    pub fn new(curve: PlaneCurve, point: ProjPoint) -> CoreResult<Self> {
        let transform = normalize_chart(&point);
        let transform_inv = transform.inverse()?;
        let moved_form = curve.form().substitute(&transform_inv);
        let affine = moved_form.dehomogenize();
        let m = affine.min_total_degree().ok_or(CoreError::ZeroPolynomial)?;
        let d = curve.degree();
        if m > d {
            return Err(CoreError::Internal(String::from("multiplicity exceeds degree")));
        }
        let chart_curve = PlaneCurve {
            affine,
            form: moved_form,
            irreducibility: curve.irreducibility(),
        };
        Ok(PointedCurve {
            projection_degree: d - m,
            multiplicity: m,
            curve,
            point,
            transform,
            transform_inv,
            chart_curve,
        })
    }

    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    pub fn point(&self) -> &ProjPoint {
        &self.point
    }

    pub fn transform(&self) -> &Mat3 {
        &self.transform
    }

    pub fn transform_inv(&self) -> &Mat3 {
        &self.transform_inv
    }

    /// The curve in the normalized chart, base point at the origin.
    pub fn chart_curve(&self) -> &PlaneCurve {
        &self.chart_curve
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// Degree of the projection from the base point: deg C - mult.
    pub fn projection_degree(&self) -> u32 {
        self.projection_degree
    }

    pub fn is_inner(&self) -> bool {
        self.multiplicity > 0
    }
}

/// The fiber polynomial of the projection from the origin, monic in X over
/// k'(t), together with the leading coefficient it was divided by.
#[derive(Clone, Debug)]
pub struct FiberPolynomial {
    poly: UniPoly<RatFunc>,
    degree: u32,
    leading: UniPoly<NfElem>,
}

impl FiberPolynomial {
    pub fn poly(&self) -> &UniPoly<RatFunc> {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The original leading coefficient f_d(1, t) in k'[t].
    pub fn leading(&self) -> &UniPoly<NfElem> {
        &self.leading
    }
}

/// Restrict the chart curve to the pencil line y = t x and strip x^m: the
/// coefficient of X^(j-m) is the degree-j homogeneous component evaluated at
/// (1, t). Errors when the pencil is degenerate (x divides the curve), the
/// projection has degree < 2, or the fiber is inseparable.
pub fn fiber_polynomial(pc: &PointedCurve) -> CoreResult<FiberPolynomial> {
    let f = pc.chart_curve().affine();
    let field = f.field();
    // x | f would mean the line x = 0 through the base point is a component.
    let x_divides = f.terms().all(|(&(a, _), _)| a >= 1);
    if x_divides {
        return Err(CoreError::ChartDegenerate(String::from(
            "the coordinate line x = 0 through the base point lies on the curve",
        )));
    }
    let m = pc.multiplicity();
    let d = pc.curve().degree();
    let n = pc.projection_degree();
    if n < 2 {
        return Err(CoreError::DegreeTooSmall { got: n });
    }
    let mut coeffs: Vec<UniPoly<NfElem>> = Vec::with_capacity((n + 1) as usize);
    for j in m..=d {
        coeffs.push(f.homogeneous_component(j).at_one_t());
    }
    let leading = coeffs.last().unwrap().clone();
    debug_assert!(!leading.is_zero());
    let leading_rf = RatFunc::from_poly(leading.clone(), field);
    let leading_inv = leading_rf.inverse()?;
    let monic: Vec<RatFunc> = coeffs
        .iter()
        .map(|c| RatFunc::from_poly(c.clone(), field).mul(&leading_inv))
        .collect();
    let poly = UniPoly::new(monic);
    debug_assert_eq!(poly.degree(), Some(n as usize));
    // A repeated factor over k'(t) would mean the projection is inseparable
    // along the whole pencil; squarefree curves cannot do this, but the check
    // is cheap when run on the cleared coefficients in k'[t] (the monic and
    // the cleared polynomial have the same roots).
    let raw = UniPoly::new(coeffs.clone());
    if repeated_factor_over_poly_coeffs(&raw)? {
        return Err(CoreError::InseparableFiber);
    }
    Ok(FiberPolynomial { poly, degree: n, leading })
}

/// Rebuild a plane curve from a fiber polynomial: clear denominators with the
/// monic lcm L(t), then map the coefficient of t^j in the coefficient of X^i
/// to y^j x^(i-j+E), with E the smallest shift making all x-exponents
/// nonnegative. Returns the curve and E.
pub fn curve_from_fiber(h: &UniPoly<RatFunc>) -> CoreResult<(PlaneCurve, u32)> {
    if h.is_zero() {
        return Err(CoreError::ZeroPolynomial);
    }
    let field = h.lc().unwrap().field();
    let mut lcm = UniPoly::constant(field.one());
    for c in h.coeffs() {
        lcm = UniPoly::lcm(&lcm, c.den());
    }
    // Cleared coefficients g_i(t) in k'[t].
    let lcm_rf = RatFunc::from_poly(lcm, &field);
    let mut cleared: Vec<UniPoly<NfElem>> = Vec::with_capacity(h.coeffs().len());
    for c in h.coeffs() {
        let g = c.mul(&lcm_rf);
        debug_assert!(g.is_polynomial());
        cleared.push(g.num().clone());
    }
    let mut shift = 0i64;
    for (i, g) in cleared.iter().enumerate() {
        for (j, c) in g.coeffs().iter().enumerate() {
            if !c.elem_is_zero() {
                shift = shift.max(j as i64 - i as i64);
            }
        }
    }
    let e = shift.max(0) as u32;
    let mut affine = BivarPoly::zero(&field);
    for (i, g) in cleared.iter().enumerate() {
        for (j, c) in g.coeffs().iter().enumerate() {
            if c.elem_is_zero() {
                continue;
            }
            let xexp = (i as i64 - j as i64 + e as i64) as u32;
            affine.add_term(xexp, j as u32, c.clone());
        }
    }
    Ok((PlaneCurve::from_affine(affine)?, e))
}
