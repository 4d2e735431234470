//! Implicitization of rational parametrizations of curves on P1 x P1.

use super::BiForm;
use crate::error::Error;
use crate::exact::bipoly::{biv_squarefree_part, BiPoly};
use crate::exact::field::{AlgScalar, Field, Rat};
use crate::exact::unipoly::UniPoly;

/// A rational map P1 -> P1 x P1 given by two coprime polynomial pairs.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub phi1: (UniPoly, UniPoly),
    pub phi2: (UniPoly, UniPoly),
}

impl Parametrization {
    pub fn new(phi1: (UniPoly, UniPoly), phi2: (UniPoly, UniPoly)) -> Parametrization {
        for pair in [&phi1, &phi2] {
            assert!(!pair.0.is_zero() || !pair.1.is_zero());
            if !pair.0.is_zero() && !pair.1.is_zero() {
                let g = crate::exact::unipoly::gcd_univ(&pair.0, &pair.1).unwrap();
                assert!(
                    g.degree() == Some(0),
                    "parametrization pair not coprime: gcd = {}",
                    g
                );
            }
        }
        Parametrization { phi1, phi2 }
    }

    pub fn field(&self) -> &Field {
        self.phi1.0.field()
    }

    fn pair_degree(pair: &(UniPoly, UniPoly)) -> usize {
        pair.0
            .degree()
            .unwrap_or(0)
            .max(pair.1.degree().unwrap_or(0))
    }

    /// Evaluate at a parameter value, as a surface point.
    pub fn eval(&self, t: &AlgScalar) -> super::SurfacePoint {
        super::SurfacePoint::new(
            (self.phi1.0.eval(t), self.phi1.1.eval(t)),
            (self.phi2.0.eval(t), self.phi2.1.eval(t)),
        )
    }
}

/// Defining bihomogeneous form of the image curve: the resultant in t of
/// Y p1(t) - X q1(t) and W p2(t) - Z q2(t), with repeated factors removed.
pub fn implicitize(phi: &Parametrization) -> Result<BiForm, Error> {
    let field = phi.field().clone();
    let d1 = Parametrization::pair_degree(&phi.phi1);
    let d2 = Parametrization::pair_degree(&phi.phi2);
    if d1 == 0 || d2 == 0 {
        return Err(Error::DegenerateImage);
    }
    // The Sylvester determinant with formal t-degrees (d1, d2) is bihomogeneous
    // of bidegree (d2, d1); recover it from a grid of scalar determinants.
    let xs: Vec<AlgScalar> = (0..=d2).map(|k| field.from_rat(Rat::from_integer(k.into()))).collect();
    let zs: Vec<AlgScalar> = (0..=d1).map(|k| field.from_rat(Rat::from_integer(k.into()))).collect();
    let mut grid: Vec<Vec<AlgScalar>> = Vec::with_capacity(xs.len());
    for x0 in &xs {
        let mut row = Vec::with_capacity(zs.len());
        for z0 in &zs {
            row.push(sylvester_det_at(phi, d1, d2, x0, z0));
        }
        grid.push(row);
    }
    // 2-D interpolation: first along z for each x, then along x per z-coefficient
    let per_x: Vec<UniPoly> = grid
        .iter()
        .map(|row| crate::exact::unipoly::interpolate(&field, "z", &zs, row))
        .collect();
    let mut coeffs: Vec<Vec<AlgScalar>> = vec![vec![field.zero(); d1 + 1]; d2 + 1];
    for j in 0..=d1 {
        let vals: Vec<AlgScalar> = per_x.iter().map(|p| p.coeff(j)).collect();
        let in_x = crate::exact::unipoly::interpolate(&field, "x", &xs, &vals);
        for (i, c) in in_x.coeffs().iter().enumerate() {
            coeffs[i][j] = c.clone();
        }
    }
    let chart = BiPoly::new(&field, coeffs);
    if chart.is_zero() {
        return Err(Error::DegenerateImage);
    }
    // The resultant is c * G^(mapping degree) with G the irreducible image
    // form; reduce to G. Since G is irreducible and not a coordinate ruling,
    // its chart degrees are its true bidegree.
    let reduced = biv_squarefree_part(&chart);
    let dx = reduced.deg_x().unwrap();
    let dz = reduced.deg_z().unwrap();
    if dx == 0 || dz == 0 {
        return Err(Error::DegenerateImage);
    }
    Ok(BiForm::homogenize(&field, &reduced, dx, dz))
}

/// Scalar Sylvester determinant of (q1*x0 - p1 ... ) with formal degrees.
fn sylvester_det_at(
    phi: &Parametrization,
    d1: usize,
    d2: usize,
    x0: &AlgScalar,
    z0: &AlgScalar,
) -> AlgScalar {
    let field = phi.field().clone();
    // A(t) = p1(t) - x0 q1(t) (the chart Y = 1, X = x0), formal degree d1
    let mut a = vec![field.zero(); d1 + 1];
    for k in 0..=d1 {
        a[k] = phi.phi1.0.coeff(k).sub(&x0.mul(&phi.phi1.1.coeff(k)));
    }
    let mut b = vec![field.zero(); d2 + 1];
    for k in 0..=d2 {
        b[k] = phi.phi2.0.coeff(k).sub(&z0.mul(&phi.phi2.1.coeff(k)));
    }
    let size = d1 + d2;
    let mut mat = Vec::with_capacity(size);
    for r in 0..d2 {
        let mut row = vec![field.zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[r + j] = c.clone();
        }
        mat.push(row);
    }
    for r in 0..d1 {
        let mut row = vec![field.zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[r + j] = c.clone();
        }
        mat.push(row);
    }
    crate::exact::unipoly::det_in_place(&field, mat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(&q(), "t", cs)
    }

    #[test]
    fn diagonal() {
        // phi1 = (t : 1), phi2 = (t : 1) -> XW - YZ up to scalar
        let phi = Parametrization::new((poly(&[0, 1]), poly(&[1])), (poly(&[0, 1]), poly(&[1])));
        let f = implicitize(&phi).unwrap();
        assert_eq!(f.bidegree(), (1, 1));
        let expected = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 0), (-1, 0, 1)]);
        assert_eq!(f.normalize(), expected.normalize());
    }

    #[test]
    fn twisted_12() {
        // phi1 = (t^2 : 1), phi2 = (t : 1) -> XW^2 - YZ^2 up to scalar
        let phi = Parametrization::new(
            (poly(&[0, 0, 1]), poly(&[1])),
            (poly(&[0, 1]), poly(&[1])),
        );
        let f = implicitize(&phi).unwrap();
        assert_eq!(f.bidegree(), (1, 2));
        let expected = BiForm::from_int_terms(&q(), 1, 2, &[(1, 1, 0), (-1, 0, 2)]);
        assert_eq!(f.normalize(), expected.normalize());
    }

    #[test]
    fn vanishing_on_parametrization() {
        let phi = Parametrization::new(
            (poly(&[1, -3, 0, 3]), poly(&[0, 0, 1, -2])),
            (poly(&[1]), poly(&[0, 0, 1, 1])),
        );
        let f = implicitize(&phi).unwrap();
        for t in [-3i64, -1, 0, 1, 2, 5, 7] {
            let tv = q().int(t);
            let p = phi.eval(&tv);
            assert!(f.eval_point(&p).is_zero(), "not vanishing at t = {}", t);
        }
    }

    #[test]
    fn degenerate_inputs() {
        // constant first factor: image inside a ruling
        let phi = Parametrization {
            phi1: (poly(&[1]), poly(&[2])),
            phi2: (poly(&[0, 1]), poly(&[1])),
        };
        assert_eq!(implicitize(&phi).unwrap_err(), Error::DegenerateImage);
    }

    #[test]
    fn double_cover_reduces() {
        // phi1 = (t^2 : 1), phi2 = (t^2 : 1): 2:1 onto the diagonal; the
        // squarefree reduction must return the diagonal once
        let phi = Parametrization::new(
            (poly(&[0, 0, 1]), poly(&[1])),
            (poly(&[0, 0, 1]), poly(&[1])),
        );
        let f = implicitize(&phi).unwrap();
        assert_eq!(f.bidegree(), (1, 1));
        let expected = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 0), (-1, 0, 1)]);
        assert_eq!(f.normalize(), expected.normalize());
    }
}
