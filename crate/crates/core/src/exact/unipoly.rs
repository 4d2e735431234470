//! Dense univariate polynomials over an exact field, with the utilities the
//! rest of the crate leans on: gcd, squarefree decomposition, resultants,
//! evaluation and interpolation.

use std::fmt;


use super::field::{rat_int, AlgScalar, Field, Rat};
use crate::error::Error;

/// Univariate polynomial; coefficient 0 is the constant term. The zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub(crate) field: Field,
    pub(crate) var: String,
    pub(crate) coeffs: Vec<AlgScalar>,
}

impl UniPoly {
    pub fn new(field: &Field, var: &str, mut coeffs: Vec<AlgScalar>) -> UniPoly {
        for c in &coeffs {
            assert!(c.field() == field, "coefficient field mismatch");
        }
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn zero(field: &Field, var: &str) -> UniPoly {
        UniPoly::new(field, var, Vec::new())
    }

    pub fn constant(field: &Field, var: &str, c: AlgScalar) -> UniPoly {
        UniPoly::new(field, var, vec![c])
    }

    /// Polynomial from integer coefficients, constant term first.
    pub fn from_ints(field: &Field, var: &str, cs: &[i64]) -> UniPoly {
        UniPoly::new(field, var, cs.iter().map(|&n| field.int(n)).collect())
    }

    pub fn monomial(field: &Field, var: &str, c: AlgScalar, k: usize) -> UniPoly {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(field, var, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[AlgScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> AlgScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> AlgScalar {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        assert!(self.field == other.field);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        UniPoly::new(&self.field, &self.var, out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(
            &self.field,
            &self.var,
            self.coeffs.iter().map(|c| c.neg()).collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        assert!(self.field == other.field);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field, &self.var);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(&self.field, &self.var, out)
    }

    pub fn scale(&self, c: &AlgScalar) -> UniPoly {
        UniPoly::new(
            &self.field,
            &self.var,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn pow(&self, mut e: usize) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::constant(&self.field, &self.var, self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Division with remainder. Panics if `den` is zero.
    pub fn divrem(&self, den: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(self.field == den.field);
        assert!(!den.is_zero(), "division by zero polynomial");
        let dd = den.degree().unwrap();
        let lc_inv = den.leading_coeff().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(&self.field, &self.var), self.clone());
        }
        let mut quo = vec![self.field.zero(); rem.len() - dd];
        let mut top = rem.len();
        while top > dd {
            let dn = top - 1;
            if !rem[dn].is_zero() {
                let q = rem[dn].mul(&lc_inv);
                for j in 0..=dd {
                    let p = q.mul(&den.coeffs[j]);
                    rem[dn - dd + j] = rem[dn - dd + j].sub(&p);
                }
                quo[dn - dd] = q;
            }
            top -= 1;
        }
        (
            UniPoly::new(&self.field, &self.var, quo),
            UniPoly::new(&self.field, &self.var, rem),
        )
    }

    pub fn rem(&self, den: &UniPoly) -> UniPoly {
        self.divrem(den).1
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn exact_div(&self, den: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(den);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading_coeff().inv().unwrap();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.field, &self.var);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&self.field.from_rat(rat_int(k as i64))));
        }
        UniPoly::new(&self.field, &self.var, out)
    }

    pub fn eval(&self, x: &AlgScalar) -> AlgScalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Composition self(g(x)).
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(&self.field, &self.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(&self.field, &self.var, c.clone()));
        }
        acc
    }

    /// self(x + c), the Taylor shift.
    pub fn shift(&self, c: &AlgScalar) -> UniPoly {
        let x_plus_c = UniPoly::new(
            &self.field,
            &self.var,
            vec![c.clone(), self.field.one()],
        );
        self.compose(&x_plus_c)
    }

    /// Map coefficients into an extension field.
    pub fn embed(&self, target: &Field) -> UniPoly {
        UniPoly::new(
            target,
            &self.var,
            self.coeffs.iter().map(|c| target.embed(c)).collect(),
        )
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{}", c);
            let coeff = if cs.contains('+') || (cs.contains('-') && !cs.starts_with('-')) {
                format!("({})", cs)
            } else {
                cs
            };
            let t = match k {
                0 => coeff,
                1 => {
                    if coeff == "1" {
                        self.var.clone()
                    } else {
                        format!("{}*{}", coeff, self.var)
                    }
                }
                _ => {
                    if coeff == "1" {
                        format!("{}^{}", self.var, k)
                    } else {
                        format!("{}*{}^{}", coeff, self.var, k)
                    }
                }
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Monic greatest common divisor. Errors with `FieldMismatch` when the inputs
/// live in different fields; panics if both are zero.
pub fn gcd_univ(f: &UniPoly, g: &UniPoly) -> Result<UniPoly, Error> {
    if f.field != g.field {
        return Err(Error::FieldMismatch);
    }
    assert!(!(f.is_zero() && g.is_zero()), "gcd of two zero polynomials");
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let r = a.rem(&b);
        a = std::mem::replace(&mut b, r);
    }
    Ok(a.monic())
}

/// Yun squarefree decomposition: returns monic squarefree pairwise-coprime
/// parts with strictly increasing multiplicities so that
/// f = lc(f) * prod g_i^{m_i}.
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    let fm = f.monic();
    if fm.degree() == Some(0) {
        return Vec::new();
    }
    let df = fm.derivative();
    let a0 = gcd_univ(&fm, &df).unwrap();
    let mut b = fm.exact_div(&a0).unwrap();
    let mut c = df.exact_div(&a0).unwrap();
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    let mut mult = 1usize;
    loop {
        let d = c.sub(&b.derivative());
        if d.is_zero() {
            if b.degree().map_or(false, |d| d > 0) {
                out.push((b.monic(), mult));
            }
            break;
        }
        let g = gcd_univ(&b, &d).unwrap();
        if g.degree().map_or(false, |d| d > 0) {
            out.push((g.clone(), mult));
        }
        b = b.exact_div(&g).unwrap();
        c = d.exact_div(&g).unwrap();
        mult += 1;
        if b.is_constant() {
            break;
        }
    }
    out
}

/// Classical resultant via the Sylvester matrix (f-block rows above g-block
/// rows), evaluated by Gaussian elimination over the field. With this row
/// order Res(f, g) = lc(f)^deg(g) * prod over roots a of f of g(a); in
/// particular Res(x - a, x - b) = a - b.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> AlgScalar {
    assert!(f.field == g.field);
    assert!(!f.is_zero() && !g.is_zero(), "resultant of zero polynomial");
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    let k = &f.field;
    if m == 0 {
        return pow_scalar(&f.coeffs[0], n);
    }
    if n == 0 {
        return pow_scalar(&g.coeffs[0], m);
    }
    let size = m + n;
    let mut mat: Vec<Vec<AlgScalar>> = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![k.zero(); size];
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            row[r + j] = c.clone();
        }
        mat.push(row);
    }
    for r in 0..m {
        let mut row = vec![k.zero(); size];
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            row[r + j] = c.clone();
        }
        mat.push(row);
    }
    det_in_place(k, mat)
}

fn pow_scalar(c: &AlgScalar, e: usize) -> AlgScalar {
    let mut acc = c.field().one();
    for _ in 0..e {
        acc = acc.mul(c);
    }
    acc
}

/// Determinant by fraction-producing Gaussian elimination over a field.
pub fn det_in_place(k: &Field, mut m: Vec<Vec<AlgScalar>>) -> AlgScalar {
    let n = m.len();
    let mut det = k.one();
    for col in 0..n {
        let mut pivot = None;
        for row in col..n {
            if !m[row][col].is_zero() {
                pivot = Some(row);
                break;
            }
        }
        let Some(p) = pivot else {
            return k.zero();
        };
        if p != col {
            m.swap(p, col);
            det = det.neg();
        }
        let pv = m[col][col].clone();
        det = det.mul(&pv);
        let pv_inv = pv.inv().unwrap();
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].mul(&pv_inv);
            for c in col..n {
                let s = factor.mul(&m[col][c]);
                m[row][c] = m[row][c].sub(&s);
            }
        }
    }
    det
}

/// Lagrange interpolation through (points[i], values[i]); points must be
/// pairwise distinct.
pub fn interpolate(
    field: &Field,
    var: &str,
    points: &[AlgScalar],
    values: &[AlgScalar],
) -> UniPoly {
    assert_eq!(points.len(), values.len());
    let mut acc = UniPoly::zero(field, var);
    for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::constant(field, var, field.one());
        let mut denom = field.one();
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UniPoly::new(
                field,
                var,
                vec![xj.neg(), field.one()],
            ));
            denom = denom.mul(&xi.sub(xj));
        }
        acc = acc.add(&basis.scale(&yi.mul(&denom.inv().unwrap())));
    }
    acc
}

/// Rational evaluation points 0, 1, 2, ... embedded in the field.
pub fn sample_points(field: &Field, n: usize) -> Vec<AlgScalar> {
    (0..n).map(|i| field.from_rat(Rat::from_integer(i.into()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::rat;

    fn q() -> Field {
        Field::rationals()
    }

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(&q(), "x", cs)
    }

    #[test]
    fn gcd_examples() {
        // gcd(x^2-1, x-1) = x-1
        let g = gcd_univ(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!(g, p(&[-1, 1]));
        // gcd(x^2-2, x^3-2x) = x^2-2
        let g = gcd_univ(&p(&[-2, 0, 1]), &p(&[0, -2, 0, 1])).unwrap();
        assert_eq!(g, p(&[-2, 0, 1]));
    }

    #[test]
    fn gcd_over_quadratic_extension() {
        // gcd(x^2-2, x-s) over Q(s), s^2=2, is x-s
        let k = q().extend_unchecked(vec![q().int(-2), q().int(0)], "s").unwrap();
        let s = k.generator();
        let f = UniPoly::new(&k, "x", vec![k.int(-2), k.int(0), k.int(1)]);
        let g = UniPoly::new(&k, "x", vec![s.neg(), k.int(1)]);
        let d = gcd_univ(&f, &g).unwrap();
        assert_eq!(d, g.monic());
    }

    #[test]
    fn gcd_field_mismatch() {
        let k = q().extend_unchecked(vec![q().int(-2), q().int(0)], "s").unwrap();
        let f = p(&[1, 1]);
        let g = UniPoly::new(&k, "x", vec![k.int(1), k.int(1)]);
        assert_eq!(gcd_univ(&f, &g), Err(Error::FieldMismatch));
    }

    #[test]
    fn squarefree_examples() {
        // (x-1)^2 (x+1) -> [(x+1,1), (x-1,2)]
        let f = p(&[-1, 1]).pow(2).mul(&p(&[1, 1]));
        let d = squarefree_decomposition(&f);
        assert_eq!(d, vec![(p(&[1, 1]), 1), (p(&[-1, 1]), 2)]);
        // x^2 - 2 squarefree
        let d = squarefree_decomposition(&p(&[-2, 0, 1]));
        assert_eq!(d, vec![(p(&[-2, 0, 1]), 1)]);
        // x^6 -> [(x, 6)]
        let d = squarefree_decomposition(&p(&[0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(d, vec![(p(&[0, 1]), 6)]);
    }

    #[test]
    fn squarefree_multiplies_back() {
        let f = p(&[0, 1]).pow(3).mul(&p(&[5, 1]).pow(2)).mul(&p(&[-7, 2]));
        let d = squarefree_decomposition(&f);
        let mut back = UniPoly::constant(&q(), "x", f.leading_coeff());
        for (g, m) in &d {
            back = back.mul(&g.pow(*m));
        }
        assert_eq!(back, f);
    }

    #[test]
    fn resultant_convention() {
        // Res(x-a, x-b) = a-b under the documented f-block-above convention
        let f = p(&[-3, 1]); // x - 3
        let g = p(&[-5, 1]); // x - 5
        assert_eq!(resultant(&f, &g), q().int(-2)); // 3 - 5
        // Res(x^2-2, x^2-2) = 0
        assert!(resultant(&p(&[-2, 0, 1]), &p(&[-2, 0, 1])).is_zero());
        // Res(x^2+1, x-1) = 2 (checked against evaluating f at the root of g)
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-1, 1])), q().int(2));
    }

    #[test]
    fn resultant_zero_iff_common_root() {
        let f = p(&[-1, 0, 1]); // x^2-1
        let g = p(&[2, 1]); // x+2
        assert!(!resultant(&f, &g).is_zero());
        let h = p(&[1, 1]); // x+1
        assert!(resultant(&f, &h).is_zero());
        let d = gcd_univ(&f, &h).unwrap();
        assert_eq!(d.degree(), Some(1));
    }

    #[test]
    fn interpolation_round_trip() {
        let f = p(&[1, -4, 0, 2, 7]);
        let pts = sample_points(&q(), 5);
        let vals: Vec<_> = pts.iter().map(|x| f.eval(x)).collect();
        let g = interpolate(&q(), "x", &pts, &vals);
        assert_eq!(f, g);
    }

    #[test]
    fn shift_and_compose() {
        let f = p(&[0, 0, 1]); // x^2
        let s = f.shift(&q().from_rat(rat(1, 1))); // (x+1)^2
        assert_eq!(s, p(&[1, 2, 1]));
    }
}
