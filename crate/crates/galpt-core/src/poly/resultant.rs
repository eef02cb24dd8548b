//! Resultants and discriminants via fraction-free elimination.
//!
//! The Sylvester matrix lives over any [`RingElem`]; Bareiss's algorithm keeps
//! every intermediate entry a minor of the original matrix, so the interior
//! divisions are exact and no fractions appear. That is what makes
//! `Res_Y(f, g)` usable with coefficients in K[X] directly.

use alloc::vec;
use alloc::vec::Vec;

use super::{FieldElem, RingElem, UniPoly};
use crate::error::{CoreError, CoreResult};

/// Determinant of a square matrix by Bareiss elimination. Division-free for
/// the caller: all interior divisions are exact in an integral domain.
pub fn bareiss_determinant<R: RingElem>(mut m: Vec<Vec<R>>, sample: &R) -> R {
    let n = m.len();
    if n == 0 {
        return sample.one_like();
    }
    let mut sign_flip = false;
    let mut prev = sample.one_like();
    for k in 0..n - 1 {
        if m[k][k].elem_is_zero() {
            let pivot = (k + 1..n).find(|&r| !m[r][k].elem_is_zero());
            match pivot {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return sample.zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].times(&m[i][j]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss interior division is exact over an integral domain");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.negated()
    } else {
        det
    }
}

/// Resultant of two polynomials as the determinant of their Sylvester matrix.
///
/// Conventions: Res(f, g) with deg f = n, deg g = m is the (n+m) x (n+m)
/// determinant with m rows of f's coefficients above n rows of g's. A zero
/// polynomial gives resultant 0; two nonzero constants give 1; a nonzero
/// constant c against g gives c^(deg g).
pub fn resultant<R: RingElem>(f: &UniPoly<R>, g: &UniPoly<R>) -> CoreResult<R> {
    // The sample must be nonzero so that 1 can be manufactured from it even
    // when the coefficients are themselves polynomials: leading coefficients
    // are never zero.
    let sample = f.lc().or_else(|| g.lc()).ok_or(CoreError::ZeroPolynomial)?;
    if f.is_zero() || g.is_zero() {
        return Ok(sample.zero_like());
    }
    let n = f.degree().unwrap();
    let m = g.degree().unwrap();
    if n == 0 && m == 0 {
        return Ok(sample.one_like());
    }
    if n == 0 {
        return Ok(pow_elem(f.lc().unwrap(), m));
    }
    if m == 0 {
        return Ok(pow_elem(g.lc().unwrap(), n));
    }
    let size = n + m;
    let zero = sample.zero_like();
    let mut mat = vec![vec![zero; size]; size];
    // f's coefficients descending, shifted right once per row.
    for row in 0..m {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..n {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            mat[m + row][row + k] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat, sample))
}

fn pow_elem<R: RingElem>(base: &R, mut e: usize) -> R {
    let mut acc = base.one_like();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.times(&b);
        }
        b = b.times(&b);
        e >>= 1;
    }
    acc
}

/// Discriminant of f: (-1)^(d(d-1)/2) * Res(f, f') / lc(f).
///
/// Requires deg f >= 1; the coefficients must form a field so the leading
/// coefficient can be divided out exactly even when Res(f, f') is 0.
pub fn discriminant<F: FieldElem>(f: &UniPoly<F>) -> CoreResult<F> {
    let d = f.degree().ok_or(CoreError::ZeroPolynomial)?;
    if d == 0 {
        return Err(CoreError::ConstantPolynomial);
    }
    let fp = f.derivative();
    let r = if fp.is_zero() {
        f.lc().unwrap().zero_like()
    } else {
        resultant(f, &fp)?
    };
    let scaled = r.times(&f.lc().unwrap().inverted()?);
    if (d * (d - 1) / 2) % 2 == 1 {
        Ok(scaled.negated())
    } else {
        Ok(scaled)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::poly::qpoly;
    use crate::Rat;

    fn qp(coeffs: &[i64]) -> UniPoly<Rat> {
        qpoly(coeffs)
    }

    #[test]
    fn resultant_of_linear_pair() {
        // Res(X - a, X - b) = a - b: det [[1, -a], [1, -b]] = a - b.
        // Freeze the convention on a = 2, b = 5.
        let f = qp(&[-2, 1]);
        let g = qp(&[-5, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), rat_int(-3));
    }

    #[test]
    fn resultant_detects_common_root() {
        let f = qp(&[-1, 0, 1]); // (X-1)(X+1)
        let g = qp(&[-2, 1, 1]); // (X-1)(X+2)
        assert_eq!(resultant(&f, &g).unwrap(), rat_int(0));
    }

    #[test]
    fn resultant_constant_cases() {
        assert_eq!(resultant(&qp(&[3]), &qp(&[0, 0, 1])).unwrap(), rat_int(9));
        assert_eq!(resultant(&qp(&[0, 0, 1]), &qp(&[3])).unwrap(), rat_int(9));
        assert_eq!(resultant(&qp(&[5]), &qp(&[7])).unwrap(), rat_int(1));
        assert_eq!(resultant(&qp(&[]), &qp(&[1, 1])).unwrap(), rat_int(0));
        assert!(resultant(&qp(&[]), &qp(&[])).is_err());
    }

    #[test]
    fn discriminant_quadratic_is_b2_minus_4c() {
        // X^2 + bX + c with b = 3, c = 1: disc = 5
        let f = qp(&[1, 3, 1]);
        assert_eq!(discriminant(&f).unwrap(), rat_int(5));
    }

    #[test]
    fn discriminant_depressed_cubic() {
        // X^3 + pX + q: disc = -4p^3 - 27q^2; p = -1, q = 1 -> 4 - 27 = -23
        let f = qp(&[1, -1, 0, 1]);
        assert_eq!(discriminant(&f).unwrap(), rat_int(-23));
        // Repeated root: (X-1)^2 (X+2) = X^3 - 3X + 2 -> disc 0
        let g = qp(&[2, -3, 0, 1]);
        assert_eq!(discriminant(&g).unwrap(), rat_int(0));
    }

    #[test]
    fn discriminant_scales_with_leading_coefficient() {
        // disc(a f) = a^(2d-2) disc(f) for degree d
        let f = qp(&[1, -1, 0, 1]);
        let af = f.mul_scalar(&rat_int(3));
        let d = 3usize;
        let expected = discriminant(&f).unwrap() * rat_int(3i64.pow(2 * d as u32 - 2));
        assert_eq!(discriminant(&af).unwrap(), expected);
    }

    #[test]
    fn resultant_multiplicative_in_second_argument() {
        let f = qp(&[2, 0, 1]);
        let g = qp(&[-1, 1]);
        let h = qp(&[1, 1, 1]);
        let lhs = resultant(&f, &g.mul(&h)).unwrap();
        let rhs = resultant(&f, &g).unwrap() * resultant(&f, &h).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_over_polynomial_coefficients() {
        // Res_Y(Y^2 - t, Y) = -t, computed with coefficients in Q[t].
        let t = qp(&[0, 1]);
        let one = qp(&[1]);
        let f = UniPoly::new(vec![t.neg(), UniPoly::zero(), one.clone()]);
        let g = UniPoly::new(vec![UniPoly::zero(), one]);
        assert_eq!(resultant(&f, &g).unwrap(), t.neg());
    }
}
