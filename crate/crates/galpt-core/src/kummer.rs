//! Radical (Kummer) presentations of fiber generators: elements
//!
//! ```text
//!   x = c₀ + c₁ w + ... + c_{n-1} w^{n-1},        wⁿ = q ∈ K,  σ(w) = ζ w,
//! ```
//!
//! with q and the cᵢ in K = k'(t) and ζ a primitive n-th root of unity in k'.
//! From such a presentation one reads off the minimal polynomial of x by a
//! resultant, certifies irreducibility of Yⁿ - q from the multiplicity
//! profile of q, and — when the coefficients form a geometric progression —
//! writes the deck transformation x ↦ σ(x) as an explicit fractional-linear
//! map in three factored pieces.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::arith::numfield::{NfElem, NumberField};
use crate::arith::ratfunc::RatFunc;
use crate::cremona::Moebius;
use crate::error::{CoreError, CoreResult};
use crate::poly::algebra::{QuotientCtx, QuotientElem};
use crate::poly::resultant::resultant;
use crate::poly::UniPoly;

#[derive(Clone, Debug)]
pub struct KummerPresentation {
    n: u32,
    q: RatFunc,
    coeffs: Vec<RatFunc>,
    zeta: NfElem,
}

impl PartialEq for KummerPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.q == other.q
            && self.coeffs == other.coeffs
            && self.zeta == other.zeta
    }
}

impl KummerPresentation {
    /// Validates n ≥ 2, q ≠ 0 and passing the irreducibility certificate for
    /// Yⁿ - q, ζ primitive of order n, and that some coefficient above c₀ is
    /// nonzero (otherwise x lies in the base). Fewer than n coefficients are
    /// padded with zeros.
    pub fn new(n: u32, q: RatFunc, coeffs: Vec<RatFunc>, zeta: NfElem) -> CoreResult<Self> {
        if n < 2 {
            return Err(CoreError::UnsupportedDegree {
                got: n,
                wanted: "a radical of degree at least 2",
            });
        }
        if q.is_zero() {
            return Err(CoreError::DegenerateRadicalElement);
        }
        let profile = valuation_profile(&q)?;
        for p in prime_divisors(n) {
            if !profile.iter().any(|&m| m % p as i64 != 0) {
                return Err(CoreError::RadicandIsPower { p });
            }
        }
        let field = q.field();
        if !NumberField::same_field(&field, zeta.field()) {
            return Err(CoreError::Internal(
                "root of unity and radicand live in different fields".into(),
            ));
        }
        if coeffs.len() > n as usize {
            return Err(CoreError::Internal(format!(
                "{} coefficients given for a degree-{n} radical",
                coeffs.len()
            )));
        }
        if !is_primitive_root(&zeta, n) {
            return Err(CoreError::MissingRootOfUnity { n });
        }
        let mut coeffs = coeffs;
        coeffs.resize(n as usize, RatFunc::zero(&field));
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            return Err(CoreError::DegenerateRadicalElement);
        }
        Ok(KummerPresentation { n, q, coeffs, zeta })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn radicand(&self) -> &RatFunc {
        &self.q
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn zeta(&self) -> &NfElem {
        &self.zeta
    }

    pub fn field(&self) -> Arc<NumberField> {
        self.q.field()
    }

    /// g = gcd(n, {i ≥ 1 : cᵢ ≠ 0}). The element generates the full radical
    /// extension exactly when g = 1; otherwise it lives in K(w^g).
    pub fn generation_index(&self) -> u32 {
        let mut g = self.n;
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if !c.is_zero() {
                g = g.gcd(&(i as u32));
            }
        }
        g
    }

    /// The presentation of the same element through w^g, which it does
    /// generate: degree n/g, the same radicand, and ζ^g.
    pub fn reduce(&self) -> CoreResult<Self> {
        let g = self.generation_index();
        if g == 1 {
            return Ok(self.clone());
        }
        let m = self.n / g;
        let coeffs = (0..m as usize).map(|j| self.coeffs[j * g as usize].clone()).collect();
        KummerPresentation::new(m, self.q.clone(), coeffs, self.zeta.pow(g as usize))
    }

    /// For a cubic presentation with c₁ = 0 and c₂ ≠ 0, re-present the same
    /// element through w' = w²: then w'³ = q², σ(w') = ζ² w', and the new
    /// linear coefficient is c₂.
    fn rewrite_quadratic_slot(&self) -> CoreResult<Self> {
        debug_assert!(self.n == 3 && self.coeffs[1].is_zero() && !self.coeffs[2].is_zero());
        KummerPresentation::new(
            3,
            self.q.pow(2),
            vec![self.coeffs[0].clone(), self.coeffs[2].clone()],
            self.zeta.pow(2),
        )
    }

    /// The algebra K[Y]/(Yⁿ - q) with the radical w, the presented element
    /// x = Σ cᵢ wⁱ, and its conjugate σ(x) = Σ cᵢ ζⁱ wⁱ.
    pub fn elements(
        &self,
    ) -> CoreResult<(
        Arc<QuotientCtx<RatFunc>>,
        QuotientElem<RatFunc>,
        QuotientElem<RatFunc>,
        QuotientElem<RatFunc>,
    )> {
        let field = self.field();
        let mut modulus = vec![self.q.neg()];
        modulus.extend((1..self.n as usize).map(|_| RatFunc::zero(&field)));
        modulus.push(RatFunc::one(&field));
        let ctx = QuotientCtx::new(UniPoly::new(modulus))?;
        let w = ctx.generator();
        let x = ctx.from_poly(UniPoly::new(self.coeffs.clone()));
        let twisted: Vec<RatFunc> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul_scalar(&self.zeta.pow(i)))
            .collect();
        let sigma_x = ctx.from_poly(UniPoly::new(twisted));
        Ok((ctx, w, x, sigma_x))
    }
}

fn is_primitive_root(zeta: &NfElem, n: u32) -> bool {
    if !zeta.pow(n as usize).is_one() {
        return false;
    }
    for p in prime_divisors(n) {
        if zeta.pow((n / p) as usize).is_one() {
            return false;
        }
    }
    true
}

fn prime_divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// The minimal polynomial of the presented element over K, computed as the
/// resultant Res_Y(Yᵐ - q, X - Σ cᵢ Yⁱ) after first reducing to the subfield
/// the element actually generates (degree m = n / g). Minimality relies on
/// Yᵐ - q being irreducible; otherwise this is still the characteristic
/// polynomial of the presentation.
pub fn kummer_minimal_polynomial(pres: &KummerPresentation) -> CoreResult<UniPoly<RatFunc>> {
    let pres = pres.reduce()?;
    let field = pres.field();
    let n = pres.n as usize;
    let scalar = |r: &RatFunc| UniPoly::constant(r.clone());
    // A(Y) = Yⁿ - q over R = K[X].
    let mut a_coeffs = vec![scalar(&pres.q.neg())];
    a_coeffs.extend((1..n).map(|_| UniPoly::zero()));
    a_coeffs.push(scalar(&RatFunc::one(&field)));
    let a: UniPoly<UniPoly<RatFunc>> = UniPoly::new(a_coeffs);
    // B(Y) = X - Σ cᵢ Yⁱ: the constant Y-coefficient is X - c₀.
    let mut b_coeffs = vec![UniPoly::new(vec![pres.coeffs[0].neg(), RatFunc::one(&field)])];
    b_coeffs.extend(pres.coeffs.iter().skip(1).map(|c| scalar(&c.neg())));
    let b: UniPoly<UniPoly<RatFunc>> = UniPoly::new(b_coeffs);
    resultant(&a, &b)
}

/// Signed valuation multiplicities of q at its finite zeros (positive), its
/// finite poles (negative), and the place at infinity (degree drop, when
/// nonzero) — everything an irreducibility certificate for Yⁿ - q needs.
pub fn valuation_profile(q: &RatFunc) -> CoreResult<Vec<i64>> {
    if q.is_zero() {
        return Err(CoreError::DegenerateRadicalElement);
    }
    let mut profile = Vec::new();
    for (factor, mult) in q.num().squarefree_decomposition()? {
        if factor.degree().unwrap_or(0) >= 1 {
            profile.push(mult as i64);
        }
    }
    for (factor, mult) in q.den().squarefree_decomposition()? {
        if factor.degree().unwrap_or(0) >= 1 {
            profile.push(-(mult as i64));
        }
    }
    let drop = q.num().degree().unwrap_or(0) as i64 - q.den().degree().unwrap_or(0) as i64;
    if drop != 0 {
        profile.push(drop);
    }
    Ok(profile)
}

/// Sufficient irreducibility test for Yⁿ - q over K: if for every prime p
/// dividing n some valuation of q is not divisible by p, then q is not a p-th
/// power for any such p (and in particular not of the shape -4·(fourth
/// power)), so Yⁿ - q is irreducible. `false` means "not certified", not
/// "reducible".
pub fn radical_irreducibility_certified(n: u32, q: &RatFunc) -> CoreResult<bool> {
    let profile = valuation_profile(q)?;
    Ok(prime_divisors(n)
        .into_iter()
        .all(|p| profile.iter().any(|&m| m % p as i64 != 0)))
}

/// Whether the coefficients continue geometrically from c₁: c₁ ≠ 0 and
/// c_{i+1} c₁ = c₂ cᵢ for 1 ≤ i ≤ n-2.
pub fn geometric_check(coeffs: &[RatFunc]) -> bool {
    if coeffs.len() < 2 || coeffs[1].is_zero() {
        return false;
    }
    for i in 1..coeffs.len() - 1 {
        if coeffs[i + 1].mul(&coeffs[1]) != coeffs[2].mul(&coeffs[i]) {
            return false;
        }
    }
    true
}

/// The deck transformation of a geometric presentation, written as explicit
/// fractional-linear maps over K and checked inside the radical algebra.
pub struct Prop2Witness {
    /// The presentation the matrices refer to (the rewritten one when the
    /// quadratic-slot route was taken).
    pub presentation: KummerPresentation,
    /// w ↦ σ(x).
    pub sigma_in_radical: Moebius,
    /// x ↦ w.
    pub radical_in_x: Moebius,
    /// x ↦ σ(x); the product of the two pieces.
    pub composite: Moebius,
    /// Whether the c₁ = 0, c₂ ≠ 0 cubic rewrite was applied first.
    pub rewritten: bool,
}

/// For x = c₀ + c₁w + ... + c_{n-1}w^{n-1} with geometrically continuing
/// coefficients, σ(x) is a fractional-linear function of w, and w in turn of
/// x; both matrices have polynomial entries in the cᵢ, ζ, q:
///
/// ```text
///   σ(x) = M_σ(w),    M_σ = [ (c₁ⁿ⁻¹ - c₀c₁ⁿ⁻³c₂) ζ   c₀c₁ⁿ⁻² - c₂ⁿ⁻¹ q ]
///                           [      -c₁ⁿ⁻³c₂ ζ              c₁ⁿ⁻²        ]
///
///   w = M_inv(x),     M_inv = [   c₁ⁿ⁻²     -c₀c₁ⁿ⁻² + c₂ⁿ⁻¹ q  ]
///                             [  c₁ⁿ⁻³c₂   c₁ⁿ⁻¹ - c₀c₁ⁿ⁻³c₂   ]
/// ```
///
/// A cubic with c₁ = 0 but c₂ ≠ 0 is first re-presented through w² so the
/// formulas apply; all three matrices are verified in K[Y]/(Yⁿ - q).
pub fn proposition2_moebius(pres: &KummerPresentation) -> CoreResult<Prop2Witness> {
    let mut rewritten = false;
    let mut pres = pres.clone();
    if pres.n == 3 && pres.coeffs[1].is_zero() && !pres.coeffs[2].is_zero() {
        pres = pres.rewrite_quadratic_slot()?;
        rewritten = true;
    }
    if pres.n < 3 {
        return Err(CoreError::UnsupportedDegree {
            got: pres.n,
            wanted: "a radical of degree at least 3",
        });
    }
    if pres.coeffs[1].is_zero() {
        return Err(CoreError::LinearCoefficientZero { n: pres.n });
    }
    if !geometric_check(&pres.coeffs) {
        return Err(CoreError::NotGeometric);
    }
    let n = pres.n as usize;
    let zeta = RatFunc::constant(pres.zeta.clone());
    let c0 = pres.coeffs[0].clone();
    let c1 = pres.coeffs[1].clone();
    let c2 = pres.coeffs[2].clone();
    let c1_3 = c1.pow(n - 3);
    let c1_2 = c1.pow(n - 2);
    let c1_1 = c1.pow(n - 1);
    let corner = c1_1.sub(&c0.mul(&c1_3).mul(&c2));
    let sigma_in_radical = Moebius::new([
        [
            corner.mul(&zeta),
            c0.mul(&c1_2).sub(&c2.pow(n - 1).mul(&pres.q)),
        ],
        [c1_3.mul(&c2).mul(&zeta).neg(), c1_2.clone()],
    ])?;
    let radical_in_x = Moebius::new([
        [c1_2.clone(), c0.mul(&c1_2).neg().add(&c2.pow(n - 1).mul(&pres.q))],
        [c1_3.mul(&c2), corner],
    ])?;
    let composite = sigma_in_radical.compose(&radical_in_x);
    let (_, w, x, sigma_x) = pres.elements()?;
    if sigma_in_radical.apply_algebra(&w)? != sigma_x {
        return Err(CoreError::Internal("σ(x) is not the stated function of w".into()));
    }
    if radical_in_x.apply_algebra(&x)? != w {
        return Err(CoreError::Internal("w is not the stated function of x".into()));
    }
    if composite.apply_algebra(&x)? != sigma_x {
        return Err(CoreError::Internal("composite does not carry x to σ(x)".into()));
    }
    Ok(Prop2Witness { presentation: pres, sigma_in_radical, radical_in_x, composite, rewritten })
}
