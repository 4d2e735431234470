//! Dense bivariate polynomials over an exact field, in affine variables
//! (x, z). Used for chart equations, local germs, and component splitting.

use std::fmt;

use super::field::{AlgScalar, Field};
use super::unipoly::{gcd_univ, UniPoly};

/// coeffs[i][j] multiplies x^i z^j; rows trimmed so the last row and the last
/// column contain a nonzero entry (zero polynomial = empty rows).
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    pub(crate) field: Field,
    pub(crate) coeffs: Vec<Vec<AlgScalar>>,
}

impl BiPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Vec<AlgScalar>>) -> BiPoly {
        // uniform row length, then trim
        let width = coeffs.iter().map(|r| r.len()).max().unwrap_or(0);
        for row in &mut coeffs {
            while row.len() < width {
                row.push(field.zero());
            }
        }
        let mut p = BiPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &Field) -> BiPoly {
        BiPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: &Field, c: AlgScalar) -> BiPoly {
        if c.is_zero() {
            BiPoly::zero(field)
        } else {
            BiPoly {
                field: field.clone(),
                coeffs: vec![vec![c]],
            }
        }
    }

    /// Monomial c * x^i z^j.
    pub fn monomial(field: &Field, c: AlgScalar, i: usize, j: usize) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero(field);
        }
        let mut coeffs = vec![vec![field.zero(); j + 1]; i + 1];
        coeffs[i][j] = c;
        BiPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &Field, terms: &[(i64, usize, usize)]) -> BiPoly {
        let mut acc = BiPoly::zero(field);
        for &(c, i, j) in terms {
            acc = acc.add(&BiPoly::monomial(field, field.int(c), i, j));
        }
        acc
    }

    fn trim(&mut self) {
        while self
            .coeffs
            .last()
            .map_or(false, |row| row.iter().all(|c| c.is_zero()))
        {
            self.coeffs.pop();
        }
        let width = self
            .coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .rposition(|c| !c.is_zero())
                    .map_or(0, |k| k + 1)
            })
            .max()
            .unwrap_or(0);
        for row in &mut self.coeffs {
            row.truncate(width.max(0));
            while row.len() < width {
                row.push(self.field.zero());
            }
        }
        if width == 0 {
            self.coeffs.clear();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg_z(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs[0].len() - 1)
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> AlgScalar {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Iterate the support with coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &AlgScalar)> {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        assert!(self.field == other.field);
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self
            .coeffs
            .first()
            .map_or(0, |r| r.len())
            .max(other.coeffs.first().map_or(0, |r| r.len()));
        let mut out = vec![vec![self.field.zero(); cols]; rows];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = self.coeff(i, j).add(&other.coeff(i, j));
            }
        }
        BiPoly::new(&self.field, out)
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| c.neg()).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        assert!(self.field == other.field);
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let rows = self.coeffs.len() + other.coeffs.len() - 1;
        let cols = self.coeffs[0].len() + other.coeffs[0].len() - 1;
        let mut out = vec![vec![self.field.zero(); cols]; rows];
        for (i1, r1) in self.coeffs.iter().enumerate() {
            for (j1, c1) in r1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (i2, r2) in other.coeffs.iter().enumerate() {
                    for (j2, c2) in r2.iter().enumerate() {
                        if c2.is_zero() {
                            continue;
                        }
                        let p = c1.mul(c2);
                        out[i1 + i2][j1 + j2] = out[i1 + i2][j1 + j2].add(&p);
                    }
                }
            }
        }
        BiPoly::new(&self.field, out)
    }

    pub fn scale(&self, c: &AlgScalar) -> BiPoly {
        BiPoly::new(
            &self.field,
            self.coeffs
                .iter()
                .map(|row| row.iter().map(|a| a.mul(c)).collect())
                .collect(),
        )
    }

    pub fn pow(&self, mut e: usize) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::constant(&self.field, self.field.one());
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

    pub fn derivative_x(&self) -> BiPoly {
        if self.coeffs.len() <= 1 {
            return BiPoly::zero(&self.field);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, row) in self.coeffs.iter().enumerate().skip(1) {
            out.push(
                row.iter()
                    .map(|c| c.mul(&self.field.int(i as i64)))
                    .collect(),
            );
        }
        BiPoly::new(&self.field, out)
    }

    pub fn derivative_z(&self) -> BiPoly {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for row in &self.coeffs {
            if row.len() <= 1 {
                out.push(vec![self.field.zero()]);
                continue;
            }
            out.push(
                row.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, c)| c.mul(&self.field.int(j as i64)))
                    .collect(),
            );
        }
        BiPoly::new(&self.field, out)
    }

    pub fn eval(&self, x: &AlgScalar, z: &AlgScalar) -> AlgScalar {
        let mut acc = self.field.zero();
        for row in self.coeffs.iter().rev() {
            let mut racc = self.field.zero();
            for c in row.iter().rev() {
                racc = racc.mul(z).add(c);
            }
            acc = acc.mul(x).add(&racc);
        }
        acc
    }

    /// Evaluate only x, leaving a univariate polynomial in z.
    pub fn eval_x(&self, x: &AlgScalar, var: &str) -> UniPoly {
        let cols = self.coeffs.first().map_or(0, |r| r.len());
        let mut out = vec![self.field.zero(); cols];
        let mut xp = self.field.one();
        for row in &self.coeffs {
            for (j, c) in row.iter().enumerate() {
                out[j] = out[j].add(&c.mul(&xp));
            }
            xp = xp.mul(x);
        }
        UniPoly::new(&self.field, var, out)
    }

    pub fn eval_z(&self, z: &AlgScalar, var: &str) -> UniPoly {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for row in &self.coeffs {
            let mut racc = self.field.zero();
            for c in row.iter().rev() {
                racc = racc.mul(z).add(c);
            }
            out.push(racc);
        }
        UniPoly::new(&self.field, var, out)
    }

    /// View as a polynomial in z with UniPoly-in-x coefficients.
    pub fn z_coeffs(&self, xvar: &str) -> Vec<UniPoly> {
        let cols = self.coeffs.first().map_or(0, |r| r.len());
        (0..cols)
            .map(|j| {
                UniPoly::new(
                    &self.field,
                    xvar,
                    self.coeffs.iter().map(|row| row[j].clone()).collect(),
                )
            })
            .collect()
    }

    /// Build from z-coefficients (polynomials in x).
    pub fn from_z_coeffs(field: &Field, zc: &[UniPoly]) -> BiPoly {
        let rows = zc.iter().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
        let mut coeffs = vec![vec![field.zero(); zc.len()]; rows.max(1)];
        for (j, p) in zc.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                coeffs[i][j] = c.clone();
            }
        }
        BiPoly::new(field, coeffs)
    }

    /// Substitute x -> p(x, z), z -> q(x, z).
    pub fn substitute(&self, p: &BiPoly, q: &BiPoly) -> BiPoly {
        let mut acc = BiPoly::zero(&self.field);
        // Horner over x rows, inner Horner over z
        for row in self.coeffs.iter().rev() {
            let mut racc = BiPoly::zero(&self.field);
            for c in row.iter().rev() {
                racc = racc.mul(q).add(&BiPoly::constant(&self.field, c.clone()));
            }
            acc = acc.mul(p).add(&racc);
        }
        acc
    }

    /// Total-degree order of vanishing at the origin (the multiplicity).
    pub fn order_at_origin(&self) -> Option<usize> {
        self.terms().map(|(i, j, _)| i + j).min()
    }

    /// The homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, d: usize) -> BiPoly {
        let mut acc = BiPoly::zero(&self.field);
        for (i, j, c) in self.terms() {
            if i + j == d {
                acc = acc.add(&BiPoly::monomial(&self.field, c.clone(), i, j));
            }
        }
        acc
    }

    /// Weighted order under weights (wx, wz).
    pub fn weighted_order(&self, wx: usize, wz: usize) -> Option<usize> {
        self.terms().map(|(i, j, _)| wx * i + wz * j).min()
    }

    pub fn weighted_part(&self, wx: usize, wz: usize, w: usize) -> BiPoly {
        let mut acc = BiPoly::zero(&self.field);
        for (i, j, c) in self.terms() {
            if wx * i + wz * j == w {
                acc = acc.add(&BiPoly::monomial(&self.field, c.clone(), i, j));
            }
        }
        acc
    }

    pub fn embed(&self, target: &Field) -> BiPoly {
        BiPoly::new(
            target,
            self.coeffs
                .iter()
                .map(|row| row.iter().map(|c| target.embed(c)).collect())
                .collect(),
        )
    }

    /// Exact division; `None` when not divisible. Divisor nonzero.
    pub fn exact_div(&self, den: &BiPoly) -> Option<BiPoly> {
        assert!(!den.is_zero());
        if self.is_zero() {
            return Some(BiPoly::zero(&self.field));
        }
        // long division on z-views over the rational function field is not
        // available; use recursive elimination on the leading x-term instead.
        let mut rem = self.clone();
        let mut quo = BiPoly::zero(&self.field);
        let (di, dj) = den.leading_term_lex();
        let dc = den.coeff(di, dj);
        let dc_inv = dc.inv().unwrap();
        loop {
            if rem.is_zero() {
                return Some(quo);
            }
            let (ri, rj) = rem.leading_term_lex();
            if ri < di || rj < dj {
                return None;
            }
            let c = rem.coeff(ri, rj).mul(&dc_inv);
            let m = BiPoly::monomial(&self.field, c, ri - di, rj - dj);
            quo = quo.add(&m);
            rem = rem.sub(&m.mul(den));
            // progress: the lex-leading term strictly decreases
        }
    }

    /// Leading term in (x, then z) lexicographic order.
    fn leading_term_lex(&self) -> (usize, usize) {
        let i = self.coeffs.len() - 1;
        let row = &self.coeffs[i];
        for j in (0..row.len()).rev() {
            if !row[j].is_zero() {
                return (i, j);
            }
        }
        // last row trimmed to contain a nonzero entry
        unreachable!("trimmed polynomial with zero leading row");
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, j, c) in self.terms() {
            let cs = format!("{}", c);
            let coeff = if cs.contains('+') || (cs.contains('-') && !cs.starts_with('-')) {
                format!("({})", cs)
            } else {
                cs
            };
            let mut t = String::new();
            if coeff != "1" || (i == 0 && j == 0) {
                t.push_str(&coeff);
            }
            for (var, e) in [("x", i), ("z", j)] {
                if e == 0 {
                    continue;
                }
                if !t.is_empty() {
                    t.push('*');
                }
                if e == 1 {
                    t.push_str(var);
                } else {
                    t.push_str(&format!("{}^{}", var, e));
                }
            }
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// gcd of two bivariate polynomials via the primitive PRS in z over K[x].
pub fn biv_gcd(f: &BiPoly, g: &BiPoly) -> BiPoly {
    assert!(f.field == g.field);
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let field = f.field.clone();
    // content in z direction: gcd of coefficient polynomials in x
    let fz = f.z_coeffs("x");
    let gz = g.z_coeffs("x");
    let cont_f = poly_list_gcd(&field, &fz);
    let cont_g = poly_list_gcd(&field, &gz);
    let cont = gcd_univ(&cont_f, &cont_g).unwrap();
    let fp = primitive_part_z(f);
    let gp = primitive_part_z(g);
    let prim_gcd = prs_gcd_z(&fp, &gp);
    let cont_bi = BiPoly::from_z_coeffs(&field, &[cont]);
    cont_bi.mul(&prim_gcd)
}

fn poly_list_gcd(field: &Field, ps: &[UniPoly]) -> UniPoly {
    let mut acc = UniPoly::zero(field, "x");
    for p in ps {
        if p.is_zero() {
            continue;
        }
        if acc.is_zero() {
            acc = p.monic();
        } else {
            acc = gcd_univ(&acc, p).unwrap();
        }
        if acc.degree() == Some(0) {
            break;
        }
    }
    if acc.is_zero() {
        UniPoly::constant(field, "x", field.one())
    } else {
        acc
    }
}

/// Divide out the z-content (gcd over z-coefficients as polynomials in x).
pub fn primitive_part_z(f: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return f.clone();
    }
    let zc = f.z_coeffs("x");
    let c = poly_list_gcd(&f.field, &zc);
    if c.degree() == Some(0) {
        return f.clone();
    }
    let divided: Vec<UniPoly> = zc
        .iter()
        .map(|p| {
            if p.is_zero() {
                p.clone()
            } else {
                p.exact_div(&c).expect("content divides")
            }
        })
        .collect();
    BiPoly::from_z_coeffs(&f.field, &divided)
}

/// Primitive PRS gcd of two z-primitive polynomials, monic-normalized in a
/// deterministic way (leading z-coefficient made monic in x).
fn prs_gcd_z(f: &BiPoly, g: &BiPoly) -> BiPoly {
    let (mut a, mut b) = if f.deg_z() >= g.deg_z() {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    loop {
        if b.is_zero() {
            // normalize: divide by content, scale leading coeff monic
            let mut r = primitive_part_z(&a);
            let zc = r.z_coeffs("x");
            if let Some(lead) = zc.last() {
                let lc = lead.leading_coeff();
                if !lc.is_zero() {
                    r = r.scale(&lc.inv().unwrap());
                }
            }
            return r;
        }
        let r = pseudo_rem_z(&a, &b);
        a = std::mem::replace(&mut b, primitive_part_z(&r));
    }
}

/// Pseudo-remainder of a by b with respect to z.
fn pseudo_rem_z(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let da = a.deg_z().unwrap();
    let db = b.deg_z().unwrap();
    if da < db {
        return a.clone();
    }
    let field = a.field.clone();
    let bz = b.z_coeffs("x");
    let lead_b = bz.last().unwrap().clone();
    let mut rem = a.z_coeffs("x");
    for dn in (db..=da).rev() {
        if rem.len() <= dn || rem[dn].is_zero() {
            continue;
        }
        // scale the whole remainder by lead_b, then subtract shifted b * rem[dn]
        let top = rem[dn].clone();
        for item in rem.iter_mut() {
            *item = item.mul(&lead_b);
        }
        for j in 0..=db {
            let s = bz[j].mul(&top);
            rem[dn - db + j] = rem[dn - db + j].sub(&s);
        }
        debug_assert!(rem[dn].is_zero());
    }
    rem.truncate(db);
    BiPoly::from_z_coeffs(&field, &rem)
}

/// Squarefree (reduced) part of a bivariate polynomial.
pub fn biv_squarefree_part(f: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return f.clone();
    }
    let g1 = biv_gcd(f, &f.derivative_x());
    let g = biv_gcd(&g1, &f.derivative_z());
    if g.deg_x() == Some(0) && g.deg_z() == Some(0) {
        return f.clone();
    }
    f.exact_div(&g).expect("gcd divides")
}

/// Resultant of f and g with respect to z: a polynomial in x, computed by
/// evaluation-interpolation with the formal z-degrees held fixed.
pub fn biv_resultant_z(f: &BiPoly, g: &BiPoly) -> UniPoly {
    assert!(!f.is_zero() && !g.is_zero());
    let field = f.field().clone();
    let df = f.deg_z().unwrap();
    let dg = g.deg_z().unwrap();
    if df == 0 {
        let base = f.z_coeffs("x").remove(0);
        let mut acc = UniPoly::constant(&field, "x", field.one());
        for _ in 0..dg {
            acc = acc.mul(&base);
        }
        return acc;
    }
    if dg == 0 {
        let base = g.z_coeffs("x").remove(0);
        let mut acc = UniPoly::constant(&field, "x", field.one());
        for _ in 0..df {
            acc = acc.mul(&base);
        }
        return acc;
    }
    let bound = f.deg_x().unwrap() * dg + g.deg_x().unwrap() * df;
    let pts = super::unipoly::sample_points(&field, bound + 1);
    let mut vals = Vec::with_capacity(pts.len());
    for x0 in &pts {
        // Sylvester determinant with formal degrees (df, dg)
        let fz = f.eval_x(x0, "z");
        let gz = g.eval_x(x0, "z");
        let size = df + dg;
        let mut mat = Vec::with_capacity(size);
        for r in 0..dg {
            let mut row = vec![field.zero(); size];
            for k in 0..=df {
                row[r + k] = fz.coeff(df - k);
            }
            mat.push(row);
        }
        for r in 0..df {
            let mut row = vec![field.zero(); size];
            for k in 0..=dg {
                row[r + k] = gz.coeff(dg - k);
            }
            mat.push(row);
        }
        vals.push(super::unipoly::det_in_place(&field, mat));
    }
    super::unipoly::interpolate(&field, "x", &pts, &vals)
}

/// True when f has a repeated factor.
pub fn biv_has_repeated_factor(f: &BiPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    let g1 = biv_gcd(f, &f.derivative_x());
    let g = biv_gcd(&g1, &f.derivative_z());
    !(g.deg_x() == Some(0) && g.deg_z() == Some(0))
}
