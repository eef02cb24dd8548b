//! Detecting when the degree-3 fiber of a projection is cyclic over the base,
//! and making the action explicit when it is.
//!
//! Throughout, ĥ ∈ K[X] is the monic separable cubic cut out on a general
//! fiber, K = k'(t). The field extension K[X]/(ĥ) over K is cyclic of order 3
//! exactly when disc ĥ is a square in the geometric sense: its numerator and
//! denominator are squares in k'[t] up to the constant in front. Writing the
//! square root down — and with it the generator σ of the deck group — needs
//! that constant to have a square root in k', and expressing σ through a
//! radical needs a cube root of unity; both show up as typed errors so a
//! caller can enlarge k' and retry.

use alloc::format;
use alloc::vec::Vec;

use crate::arith::numfield::NfElem;
use crate::arith::ratfunc::RatFunc;
use crate::cremona::Moebius;
use crate::error::{CoreError, CoreResult};
use crate::linalg::{kernel_basis, solve_square};
use crate::poly::algebra::{QuotientCtx, QuotientElem};
use crate::poly::resultant::discriminant;
use crate::poly::{RingElem, UniPoly};

/// Discriminant split into the pieces the square tests look at:
/// disc = lead · N / D with N, D monic coprime polynomials in k'[t].
struct SplitDiscriminant {
    value: RatFunc,
    lead: NfElem,
    num_monic: UniPoly<NfElem>,
    den: UniPoly<NfElem>,
}

fn split_discriminant(h: &UniPoly<RatFunc>) -> CoreResult<SplitDiscriminant> {
    let disc = discriminant(h)?;
    if disc.is_zero() {
        return Err(CoreError::NotSquarefree);
    }
    let lead = disc.num().lc().unwrap().clone();
    let num_monic = disc.num().monic()?;
    Ok(SplitDiscriminant { den: disc.den().clone(), value: disc, lead, num_monic })
}

fn expect_monic_cubic(h: &UniPoly<RatFunc>) -> CoreResult<()> {
    match h.degree() {
        Some(3) => {}
        Some(d) => {
            return Err(CoreError::UnsupportedDegree { got: d as u32, wanted: "a cubic fiber" })
        }
        None => return Err(CoreError::ZeroPolynomial),
    }
    if !h.lc().unwrap().is_one() {
        return Err(CoreError::Internal("fiber polynomial must be monic".into()));
    }
    Ok(())
}

/// Whether the splitting of the separable cubic ĥ is cyclic of degree 3 over
/// an algebraically closed constant field — equivalently, whether disc ĥ is a
/// square up to a constant factor. Nonsquare constants are deliberately
/// ignored here: they obstruct writing the square root over the current k',
/// not the geometry.
pub fn galois_test_cubic(h: &UniPoly<RatFunc>) -> CoreResult<bool> {
    expect_monic_cubic(h)?;
    let split = split_discriminant(h)?;
    Ok(split.num_monic.exact_sqrt().is_some() && split.den.exact_sqrt().is_some())
}

/// A square root of disc ĥ in K, available once the constant in front has a
/// square root in k'.
fn discriminant_sqrt(h: &UniPoly<RatFunc>) -> CoreResult<RatFunc> {
    let split = split_discriminant(h)?;
    let (Some(u), Some(v)) = (split.num_monic.exact_sqrt(), split.den.exact_sqrt()) else {
        return Err(CoreError::NotGalois);
    };
    let Some(root) = split.lead.sqrt() else {
        return Err(CoreError::FieldExtensionNeeded { radicand: format!("{}", split.lead) });
    };
    RatFunc::new(u.mul_scalar(&root), v)
}

/// The fiber algebra A = K[X]/(ĥ) together with its generator.
pub fn fiber_algebra(
    h: &UniPoly<RatFunc>,
) -> CoreResult<(alloc::sync::Arc<QuotientCtx<RatFunc>>, QuotientElem<RatFunc>)> {
    let ctx = QuotientCtx::new(h.clone())?;
    let x = ctx.generator();
    Ok((ctx, x))
}

/// The generator σ of the deck group of a cyclic cubic fiber, given through
/// the image σ(x) of the algebra generator:
///
/// ```text
///   σ(x) = ( (e₁ - x) + s / ĥ'(x) ) / 2,        s² = disc ĥ,
/// ```
///
/// which is one of the two conjugate roots; the other sign picks σ². The
/// result is verified to be a root of ĥ distinct from x.
pub fn sigma_from_roots(h: &UniPoly<RatFunc>) -> CoreResult<QuotientElem<RatFunc>> {
    expect_monic_cubic(h)?;
    let s = discriminant_sqrt(h)?;
    let field = s.field();
    let (ctx, x) = fiber_algebra(h)?;
    let e1 = h.coeff(2).map(|c| c.neg()).unwrap_or_else(|| RatFunc::zero(&field));
    let hp = x.substitute_into(&h.derivative());
    let hp_inv = hp.inverse().map_err(|_| CoreError::InseparableFiber)?;
    let half = RatFunc::constant(crate::arith::numfield::nf_frac(&field, 1, 2));
    let sigma_x = ctx
        .scalar(e1)
        .sub(&x)
        .add(&hp_inv.mul_scalar(&s))
        .mul_scalar(&half);
    if !sigma_x.substitute_into(h).is_zero() {
        return Err(CoreError::Internal("conjugate root fails its equation".into()));
    }
    if sigma_x == x {
        return Err(CoreError::Internal("conjugate root collapsed onto x".into()));
    }
    Ok(sigma_x)
}

/// Apply the automorphism determined by x ↦ σ(x) to an arbitrary element.
pub fn apply_sigma(
    sigma_x: &QuotientElem<RatFunc>,
    elem: &QuotientElem<RatFunc>,
) -> QuotientElem<RatFunc> {
    sigma_x.substitute_into(elem.rep())
}

/// Power-basis coordinates of an element of A, padded to the full degree.
fn power_coords(elem: &QuotientElem<RatFunc>) -> Vec<RatFunc> {
    let n = elem.ctx().degree();
    let zero = elem.ctx().modulus().lc().unwrap().zero_like();
    (0..n).map(|i| elem.rep().coeff_or_zero(i, &zero)).collect()
}

/// Radical data extracted from a cyclic cubic by a Lagrange resolvent
/// r = x + ζ²σ(x) + ζσ²(x): it scales by ζ under σ, its cube lies in K, and
/// x is recovered from the coordinate vector c as c₀ + c₁ r + c₂ r².
pub struct CubicResolvent {
    /// The root of unity with σ(r) = ζ r.
    pub zeta: NfElem,
    /// r itself, inside the fiber algebra.
    pub resolvent: QuotientElem<RatFunc>,
    /// q = r³ ∈ K.
    pub radicand: RatFunc,
    /// Coordinates of x in the basis (1, r, r²).
    pub coords: [RatFunc; 3],
    /// Whether the ζ ↔ ζ² fallback was taken because the first resolvent
    /// vanished.
    pub swapped: bool,
}

pub fn resolvent_kummer_generator(
    x: &QuotientElem<RatFunc>,
    sigma_x: &QuotientElem<RatFunc>,
) -> CoreResult<CubicResolvent> {
    let field = sigma_x.ctx().modulus().lc().unwrap().field();
    let omega = field.primitive_root_of_unity(3)?;
    let sigma2_x = apply_sigma(sigma_x, sigma_x);
    let build = |zeta: &NfElem| -> QuotientElem<RatFunc> {
        let z2 = zeta.mul(zeta);
        x.add(&sigma_x.mul_scalar(&RatFunc::constant(z2)))
            .add(&sigma2_x.mul_scalar(&RatFunc::constant(zeta.clone())))
    };
    let omega2 = omega.mul(&omega);
    let (zeta, r, swapped) = {
        let r = build(&omega);
        if r.is_zero() {
            (omega2.clone(), build(&omega2), true)
        } else {
            (omega.clone(), r, false)
        }
    };
    if r.is_zero() {
        return Err(CoreError::DegenerateRadicalElement);
    }
    // σ scales r by ζ; anything else means σ was not an automorphism.
    let scaled = r.mul_scalar(&RatFunc::constant(zeta.clone()));
    if apply_sigma(sigma_x, &r) != scaled {
        return Err(CoreError::Internal("resolvent is not a σ-eigenvector".into()));
    }
    let r3 = r.pow(3);
    let radicand = match r3.rep().degree() {
        None => RatFunc::zero(&field),
        Some(0) => r3.rep().coeffs()[0].clone(),
        Some(_) => return Err(CoreError::Internal("resolvent cube escaped the base".into())),
    };
    // Express x in the basis (1, r, r²).
    let powers = [r.ctx().one(), r.clone(), r.mul(&r)];
    let cols: Vec<Vec<RatFunc>> = powers.iter().map(power_coords).collect();
    let n = x.ctx().degree();
    let matrix: Vec<Vec<RatFunc>> =
        (0..n).map(|i| (0..3).map(|j| cols[j][i].clone()).collect()).collect();
    let sol = solve_square(&matrix, &power_coords(x))?;
    let coords = [sol[0].clone(), sol[1].clone(), sol[2].clone()];
    Ok(CubicResolvent { zeta, resolvent: r, radicand, coords, swapped })
}

/// A fractional-linear description of x ↦ σ(x): a matrix M over K with
/// M(x) = σ(x) inside the fiber algebra, found as a kernel vector of the
/// linear condition σ(x)(γx + δ) = αx + β, plus the dimension of that kernel.
pub struct MoebiusRep {
    pub matrix: Moebius,
    pub kernel_dim: usize,
}

pub fn moebius_representation(
    x: &QuotientElem<RatFunc>,
    sigma_x: &QuotientElem<RatFunc>,
) -> CoreResult<MoebiusRep> {
    let field = x.ctx().modulus().lc().unwrap().field();
    let cols = [
        x.neg(),
        x.ctx().one().neg(),
        x.mul(sigma_x),
        sigma_x.clone(),
    ];
    let coord_cols: Vec<Vec<RatFunc>> = cols.iter().map(power_coords).collect();
    let n = x.ctx().degree();
    let matrix: Vec<Vec<RatFunc>> =
        (0..n).map(|i| (0..4).map(|j| coord_cols[j][i].clone()).collect()).collect();
    let kernel = kernel_basis(&matrix, 4, &RatFunc::zero(&field));
    let kernel_dim = kernel.len();
    let Some(v) = kernel.first() else {
        return Err(CoreError::NoMoebiusRepresentation);
    };
    let moebius = Moebius::new([
        [v[0].clone(), v[1].clone()],
        [v[2].clone(), v[3].clone()],
    ])
    .map_err(|_| CoreError::NoMoebiusRepresentation)?;
    if moebius.apply_algebra(x)? != *sigma_x {
        return Err(CoreError::Internal("matrix does not reproduce σ(x)".into()));
    }
    Ok(MoebiusRep { matrix: moebius, kernel_dim })
}

/// Everything the cyclic case yields: the automorphism, its matrix form, and
/// the radical presentation via the resolvent.
pub struct CyclicCubicData {
    pub x: QuotientElem<RatFunc>,
    pub sigma_x: QuotientElem<RatFunc>,
    pub moebius: MoebiusRep,
    pub resolvent: CubicResolvent,
}

pub enum GaloisOutcome {
    Cyclic(CyclicCubicData),
    NotGalois { discriminant: RatFunc },
}

/// Full analysis of a monic separable cubic fiber polynomial. Errors of type
/// `FieldExtensionNeeded` and `MissingRootOfUnity` signal that k' is too small
/// to write the answer down and say how to enlarge it.
pub fn analyze_cubic_fiber(h: &UniPoly<RatFunc>) -> CoreResult<GaloisOutcome> {
    expect_monic_cubic(h)?;
    if !galois_test_cubic(h)? {
        let split = split_discriminant(h)?;
        return Ok(GaloisOutcome::NotGalois { discriminant: split.value });
    }
    let sigma_x = sigma_from_roots(h)?;
    let x = sigma_x.ctx().generator();
    let moebius = moebius_representation(&x, &sigma_x)?;
    let resolvent = resolvent_kummer_generator(&x, &sigma_x)?;
    Ok(GaloisOutcome::Cyclic(CyclicCubicData { x, sigma_x, moebius, resolvent }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numfield::NumberField;
    use alloc::sync::Arc;
    use alloc::vec;

    /// X³ + a₂X² + a₁X + a₀ from integer-polynomial coefficients in t, each
    /// given by ascending t-coefficients.
    fn cubic(field: &Arc<NumberField>, a0: &[i64], a1: &[i64], a2: &[i64]) -> UniPoly<RatFunc> {
        let part = |cs: &[i64]| {
            RatFunc::from_poly(
                UniPoly::new(cs.iter().map(|&n| field.from_int(n)).collect()),
                field,
            )
        };
        UniPoly::new(vec![part(a0), part(a1), part(a2), RatFunc::one(field)])
    }

    #[test]
    fn square_discriminant_detection() {
        let f = NumberField::rationals();
        // X³ - 3t X - (t² + t): disc = -27 t² (t-1)², a square up to -27.
        let twisted = cubic(&f, &[0, -1, -1], &[0, -3], &[]);
        assert!(galois_test_cubic(&twisted).unwrap());
        // X³ - t: disc = -27 t².
        let pure = cubic(&f, &[0, -1], &[], &[]);
        assert!(galois_test_cubic(&pure).unwrap());
        // X³ - X - t: disc = 4 - 27t², squarefree of degree 2.
        let generic = cubic(&f, &[0, -1], &[-1], &[]);
        assert!(!galois_test_cubic(&generic).unwrap());
        // Denominators: X³ + (3/t)X² + (3/t²)X + (1-t)/t³ has disc -27/t⁴.
        let t = RatFunc::var_t(&f);
        let shifted = UniPoly::new(vec![
            RatFunc::from_poly(
                UniPoly::new(vec![f.from_int(1), f.from_int(-1)]),
                &f,
            )
            .div(&t.pow(3))
            .unwrap(),
            RatFunc::from_int(3, &f).div(&t.pow(2)).unwrap(),
            RatFunc::from_int(3, &f).div(&t).unwrap(),
            RatFunc::one(&f),
        ]);
        assert!(galois_test_cubic(&shifted).unwrap());
        let disc = discriminant(&shifted).unwrap();
        assert_eq!(disc, RatFunc::from_int(-27, &f).div(&t.pow(4)).unwrap());
    }

    #[test]
    fn depressed_cubic_discriminant_oracle() {
        // disc(X³ + pX + q) = -4p³ - 27q² for p = -3t, q = -(t²+t).
        let f = NumberField::rationals();
        let h = cubic(&f, &[0, -1, -1], &[0, -3], &[]);
        let p = RatFunc::from_poly(UniPoly::new(vec![f.zero(), f.from_int(-3)]), &f);
        let q = RatFunc::from_poly(UniPoly::new(vec![f.zero(), f.from_int(-1), f.from_int(-1)]), &f);
        let expect = p
            .pow(3)
            .mul_scalar(&f.from_int(-4))
            .sub(&q.pow(2).mul_scalar(&f.from_int(27)));
        assert_eq!(discriminant(&h).unwrap(), expect);
    }

    #[test]
    fn sigma_on_pure_cube_root() {
        // Over Q(ω), the conjugate of the class of X in K[X]/(X³ - t) is ωX.
        let f = NumberField::cyclotomic(3).unwrap();
        let omega = f.generator();
        let h = cubic(&f, &[0, -1], &[], &[]);
        let sigma_x = sigma_from_roots(&h).unwrap();
        assert_eq!(
            sigma_x.rep(),
            &UniPoly::new(vec![RatFunc::zero(&f), RatFunc::constant(omega.clone())])
        );
        // σ has order three: applying it thrice returns the generator.
        let x = sigma_x.ctx().generator();
        let twice = apply_sigma(&sigma_x, &sigma_x);
        assert_eq!(apply_sigma(&sigma_x, &twice), x);
    }

    #[test]
    fn sigma_needs_square_root_of_lead() {
        // The same cubic over Q: disc = -27 t² and √-27 is not rational.
        let f = NumberField::rationals();
        let h = cubic(&f, &[0, -1], &[], &[]);
        match sigma_from_roots(&h) {
            Err(CoreError::FieldExtensionNeeded { radicand }) => {
                assert_eq!(radicand, "-27");
            }
            other => panic!("expected a field-extension request, got {other:?}"),
        }
    }

    #[test]
    fn sigma_on_twisted_cubic() {
        // X³ - 3tX - (t² + t) is the minimal polynomial of w + w², w³ = t.
        let f = NumberField::cyclotomic(3).unwrap();
        let h = cubic(&f, &[0, -1, -1], &[0, -3], &[]);
        let sigma_x = sigma_from_roots(&h).unwrap();
        let x = sigma_x.ctx().generator();
        let sigma2_x = apply_sigma(&sigma_x, &sigma_x);
        assert_eq!(apply_sigma(&sigma_x, &sigma2_x), x);
        assert_ne!(sigma_x, x);
        // Trace and norm of x: e₁ = 0 and x σ(x) σ²(x) = t² + t.
        let trace = x.add(&sigma_x).add(&sigma2_x);
        assert!(trace.is_zero());
        let norm = x.mul(&sigma_x).mul(&sigma2_x);
        let t = RatFunc::var_t(&f);
        assert_eq!(norm, x.ctx().scalar(t.add(&t.pow(2))));
    }

    #[test]
    fn resolvent_recovers_radical_data() {
        let f = NumberField::cyclotomic(3).unwrap();
        let omega = f.generator();
        let h = cubic(&f, &[0, -1], &[], &[]);
        let sigma_x = sigma_from_roots(&h).unwrap();
        let x = sigma_x.ctx().generator();
        let res = resolvent_kummer_generator(&x, &sigma_x).unwrap();
        assert!(!res.swapped);
        assert_eq!(res.zeta, omega);
        // r = 3x, so r³ = 27t and x = r/3.
        assert_eq!(res.resolvent, x.mul_scalar(&RatFunc::from_int(3, &f)));
        let t = RatFunc::var_t(&f);
        assert_eq!(res.radicand, t.mul_scalar(&f.from_int(27)));
        assert_eq!(res.coords[0], RatFunc::zero(&f));
        assert_eq!(res.coords[1], RatFunc::constant(crate::arith::numfield::nf_frac(&f, 1, 3)));
        assert_eq!(res.coords[2], RatFunc::zero(&f));
    }

    #[test]
    fn resolvent_swaps_when_first_eigenvector_vanishes() {
        // For X³ + t the formula picks σ(x) = ω²x, so the ζ = ω resolvent
        // vanishes and the fallback must fire.
        let f = NumberField::cyclotomic(3).unwrap();
        let omega = f.generator();
        let h = cubic(&f, &[0, 1], &[], &[]);
        let sigma_x = sigma_from_roots(&h).unwrap();
        let x = sigma_x.ctx().generator();
        assert_eq!(
            sigma_x,
            x.mul_scalar(&RatFunc::constant(omega.mul(&omega)))
        );
        let res = resolvent_kummer_generator(&x, &sigma_x).unwrap();
        assert!(res.swapped);
        assert_eq!(res.zeta, omega.mul(&omega));
        let t = RatFunc::var_t(&f);
        assert_eq!(res.radicand, t.mul_scalar(&f.from_int(-27)));
    }

    #[test]
    fn moebius_rep_of_the_diagonal_action() {
        let f = NumberField::cyclotomic(3).unwrap();
        let omega = f.generator();
        let h = cubic(&f, &[0, -1], &[], &[]);
        let sigma_x = sigma_from_roots(&h).unwrap();
        let x = sigma_x.ctx().generator();
        let rep = moebius_representation(&x, &sigma_x).unwrap();
        assert_eq!(rep.kernel_dim, 1);
        let expect = Moebius::new([
            [RatFunc::constant(omega), RatFunc::zero(&f)],
            [RatFunc::zero(&f), RatFunc::one(&f)],
        ])
        .unwrap();
        assert_eq!(rep.matrix, expect);
        assert_eq!(rep.matrix.projective_order(4), Some(3));
    }

    #[test]
    fn moebius_rep_of_the_twisted_action() {
        let f = NumberField::cyclotomic(3).unwrap();
        let h = cubic(&f, &[0, -1, -1], &[0, -3], &[]);
        let sigma_x = sigma_from_roots(&h).unwrap();
        let x = sigma_x.ctx().generator();
        let rep = moebius_representation(&x, &sigma_x).unwrap();
        assert_eq!(rep.kernel_dim, 1);
        assert_eq!(rep.matrix.projective_order(4), Some(3));
        // The same matrix must transport x to σ(x) — rechecked here through
        // the public entry point rather than the internal assertion.
        assert_eq!(rep.matrix.apply_algebra(&x).unwrap(), sigma_x);
    }

    #[test]
    fn full_analysis_outcomes() {
        let f = NumberField::cyclotomic(3).unwrap();
        let h = cubic(&f, &[0, -1, -1], &[0, -3], &[]);
        match analyze_cubic_fiber(&h).unwrap() {
            GaloisOutcome::Cyclic(data) => {
                assert_eq!(data.moebius.kernel_dim, 1);
                assert!(!data.resolvent.radicand.is_zero());
                assert_eq!(apply_sigma(&data.sigma_x, &data.sigma_x.ctx().generator()), data.sigma_x);
            }
            GaloisOutcome::NotGalois { .. } => panic!("cyclic fiber misclassified"),
        }
        let generic = cubic(&f, &[0, -1], &[-1], &[]);
        match analyze_cubic_fiber(&generic).unwrap() {
            GaloisOutcome::NotGalois { discriminant } => {
                let t = RatFunc::var_t(&f);
                let expect = RatFunc::from_int(4, &f).sub(&t.pow(2).mul_scalar(&f.from_int(27)));
                assert_eq!(discriminant, expect);
            }
            GaloisOutcome::Cyclic(_) => panic!("generic fiber misclassified"),
        }
        // Over plain Q the cyclic case asks for a bigger field.
        let q = NumberField::rationals();
        let hq = cubic(&q, &[0, -1, -1], &[0, -3], &[]);
        assert!(matches!(
            analyze_cubic_fiber(&hq),
            Err(CoreError::FieldExtensionNeeded { .. })
        ));
    }
}
