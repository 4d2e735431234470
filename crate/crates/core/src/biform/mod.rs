//! Bihomogeneous forms on P1 x P1 and the SL(2) x SL(2) semidirect Z/2
//! action: arithmetic, coordinate changes, rulings and restriction, local
//! expansion at a surface point, component splitting and implicitization.

pub mod components;
pub mod implicit;
pub mod rulings;

pub use components::irreducible_components;
pub use implicit::{implicitize, Parametrization};
pub use rulings::{restrict_to_ruling, ruling_factors, RulingFactor};

use std::fmt;

use crate::error::Error;
use crate::exact::bipoly::BiPoly;
use crate::exact::field::{AlgScalar, Field};
use crate::exact::unipoly::UniPoly;

/// Which P1 factor a ruling or linear datum belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorSide {
    /// Forms in (X, Y); rulings of class (1,0).
    First,
    /// Forms in (Z, W); rulings of class (0,1).
    Second,
}

/// A bihomogeneous form of bidegree (a, b): coeff c[i][j] multiplies
/// X^i Y^(a-i) Z^j W^(b-j).
#[derive(Clone, PartialEq, Eq)]
pub struct BiForm {
    field: Field,
    a: usize,
    b: usize,
    c: Vec<Vec<AlgScalar>>,
}

impl BiForm {
    pub fn new(field: &Field, a: usize, b: usize, c: Vec<Vec<AlgScalar>>) -> BiForm {
        assert_eq!(c.len(), a + 1, "coefficient array must be (a+1) x (b+1)");
        for row in &c {
            assert_eq!(row.len(), b + 1);
            for e in row {
                assert!(e.field() == field);
            }
        }
        BiForm {
            field: field.clone(),
            a,
            b,
            c,
        }
    }

    pub fn zero(field: &Field, a: usize, b: usize) -> BiForm {
        BiForm {
            field: field.clone(),
            a,
            b,
            c: vec![vec![field.zero(); b + 1]; a + 1],
        }
    }

    /// Monomial c * X^i Y^(a-i) Z^j W^(b-j).
    pub fn monomial(
        field: &Field,
        a: usize,
        b: usize,
        coeff: AlgScalar,
        i: usize,
        j: usize,
    ) -> BiForm {
        let mut f = BiForm::zero(field, a, b);
        f.c[i][j] = coeff;
        f
    }

    pub fn from_int_terms(field: &Field, a: usize, b: usize, terms: &[(i64, usize, usize)]) -> BiForm {
        let mut f = BiForm::zero(field, a, b);
        for &(n, i, j) in terms {
            f.c[i][j] = f.c[i][j].add(&field.int(n));
        }
        f
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn coeff(&self, i: usize, j: usize) -> &AlgScalar {
        &self.c[i][j]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, v: AlgScalar) {
        assert!(v.field() == &self.field);
        self.c[i][j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|row| row.iter().all(|e| e.is_zero()))
    }

    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut s = Vec::new();
        for i in 0..=self.a {
            for j in 0..=self.b {
                if !self.c[i][j].is_zero() {
                    s.push((i, j));
                }
            }
        }
        s
    }

    pub fn add(&self, other: &BiForm) -> BiForm {
        assert_eq!(self.bidegree(), other.bidegree());
        let mut out = self.clone();
        for i in 0..=self.a {
            for j in 0..=self.b {
                out.c[i][j] = out.c[i][j].add(&other.c[i][j]);
            }
        }
        out
    }

    pub fn neg(&self) -> BiForm {
        let mut out = self.clone();
        for row in &mut out.c {
            for e in row.iter_mut() {
                *e = e.neg();
            }
        }
        out
    }

    pub fn sub(&self, other: &BiForm) -> BiForm {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiForm) -> BiForm {
        assert!(self.field == other.field);
        let mut out = BiForm::zero(&self.field, self.a + other.a, self.b + other.b);
        for i1 in 0..=self.a {
            for j1 in 0..=self.b {
                if self.c[i1][j1].is_zero() {
                    continue;
                }
                for i2 in 0..=other.a {
                    for j2 in 0..=other.b {
                        if other.c[i2][j2].is_zero() {
                            continue;
                        }
                        let p = self.c[i1][j1].mul(&other.c[i2][j2]);
                        out.c[i1 + i2][j1 + j2] = out.c[i1 + i2][j1 + j2].add(&p);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &AlgScalar) -> BiForm {
        let mut out = self.clone();
        for row in &mut out.c {
            for e in row.iter_mut() {
                *e = e.mul(s);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> BiForm {
        let mut acc = BiForm::monomial(&self.field, 0, 0, self.field.one(), 0, 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluate at explicit homogeneous coordinates.
    pub fn eval4(&self, x: &AlgScalar, y: &AlgScalar, z: &AlgScalar, w: &AlgScalar) -> AlgScalar {
        let mut acc = self.field.zero();
        for i in 0..=self.a {
            for j in 0..=self.b {
                if self.c[i][j].is_zero() {
                    continue;
                }
                let mut t = self.c[i][j].clone();
                for _ in 0..i {
                    t = t.mul(x);
                }
                for _ in 0..(self.a - i) {
                    t = t.mul(y);
                }
                for _ in 0..j {
                    t = t.mul(z);
                }
                for _ in 0..(self.b - j) {
                    t = t.mul(w);
                }
                acc = acc.add(&t);
            }
        }
        acc
    }

    pub fn eval_point(&self, p: &SurfacePoint) -> AlgScalar {
        self.eval4(&p.p1.0, &p.p1.1, &p.p2.0, &p.p2.1)
    }

    /// Dehomogenize on the chart Y = W = 1: f(x, z) = F(x, 1, z, 1).
    pub fn dehomogenize(&self) -> BiPoly {
        BiPoly::new(&self.field, self.c.clone())
    }

    /// Bihomogenize a chart polynomial to the given bidegree.
    pub fn homogenize(field: &Field, p: &BiPoly, a: usize, b: usize) -> BiForm {
        let mut f = BiForm::zero(field, a, b);
        for (i, j, c) in p.terms() {
            assert!(i <= a && j <= b, "chart polynomial exceeds bidegree");
            f.c[i][j] = c.clone();
        }
        f
    }

    pub fn embed(&self, target: &Field) -> BiForm {
        BiForm {
            field: target.clone(),
            a: self.a,
            b: self.b,
            c: self
                .c
                .iter()
                .map(|row| row.iter().map(|e| target.embed(e)).collect())
                .collect(),
        }
    }

    /// Divide by a scalar multiple so some deterministic coefficient is 1
    /// (the lexicographically first nonzero entry).
    pub fn normalize(&self) -> BiForm {
        for i in 0..=self.a {
            for j in 0..=self.b {
                if !self.c[i][j].is_zero() {
                    return self.scale(&self.c[i][j].inv().unwrap());
                }
            }
        }
        self.clone()
    }

    /// Exact division by another form; `None` when not divisible.
    pub fn exact_div(&self, den: &BiForm) -> Option<BiForm> {
        if den.a > self.a || den.b > self.b {
            return None;
        }
        let q = self.dehomogenize().exact_div(&den.dehomogenize())?;
        // quotient chart polynomial must fit the complementary bidegree
        let (qa, qb) = (self.a - den.a, self.b - den.b);
        if q.deg_x().map_or(false, |d| d > qa) || q.deg_z().map_or(false, |d| d > qb) {
            return None;
        }
        let quo = BiForm::homogenize(&self.field, &q, qa, qb);
        if &quo.mul(den) == self {
            Some(quo)
        } else {
            None
        }
    }

    /// Partial derivative with respect to X (bidegree drops to (a-1, b)).
    pub fn d_dx(&self) -> BiForm {
        assert!(self.a >= 1);
        let mut out = BiForm::zero(&self.field, self.a - 1, self.b);
        for i in 1..=self.a {
            for j in 0..=self.b {
                out.c[i - 1][j] = self.c[i][j].mul(&self.field.int(i as i64));
            }
        }
        out
    }

    pub fn d_dy(&self) -> BiForm {
        assert!(self.a >= 1);
        let mut out = BiForm::zero(&self.field, self.a - 1, self.b);
        for i in 0..self.a {
            for j in 0..=self.b {
                out.c[i][j] = self.c[i][j].mul(&self.field.int((self.a - i) as i64));
            }
        }
        out
    }

    pub fn d_dz(&self) -> BiForm {
        assert!(self.b >= 1);
        let mut out = BiForm::zero(&self.field, self.a, self.b - 1);
        for i in 0..=self.a {
            for j in 1..=self.b {
                out.c[i][j - 1] = self.c[i][j].mul(&self.field.int(j as i64));
            }
        }
        out
    }

    pub fn d_dw(&self) -> BiForm {
        assert!(self.b >= 1);
        let mut out = BiForm::zero(&self.field, self.a, self.b - 1);
        for i in 0..=self.a {
            for j in 0..self.b {
                out.c[i][j] = self.c[i][j].mul(&self.field.int((self.b - j) as i64));
            }
        }
        out
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for i in (0..=self.a).rev() {
            for j in (0..=self.b).rev() {
                let c = &self.c[i][j];
                if c.is_zero() {
                    continue;
                }
                let cs = format!("{}", c);
                let coeff = if cs.contains('+') || (cs.contains('-') && !cs.starts_with('-')) {
                    format!("({})", cs)
                } else {
                    cs
                };
                let mut t = String::new();
                let mono = [
                    ("X", i),
                    ("Y", self.a - i),
                    ("Z", j),
                    ("W", self.b - j),
                ];
                if coeff != "1" || mono.iter().all(|&(_, e)| e == 0) {
                    t.push_str(&coeff);
                }
                for (var, e) in mono {
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
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// 2x2 invertible matrix over the field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub m: [[AlgScalar; 2]; 2],
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

impl Mat2 {
    pub fn new(m: [[AlgScalar; 2]; 2]) -> Mat2 {
        Mat2 { m }
    }

    pub fn identity(field: &Field) -> Mat2 {
        Mat2 {
            m: [
                [field.one(), field.zero()],
                [field.zero(), field.one()],
            ],
        }
    }

    pub fn from_ints(field: &Field, rows: [[i64; 2]; 2]) -> Mat2 {
        Mat2 {
            m: [
                [field.int(rows[0][0]), field.int(rows[0][1])],
                [field.int(rows[1][0]), field.int(rows[1][1])],
            ],
        }
    }

    pub fn det(&self) -> AlgScalar {
        self.m[0][0]
            .mul(&self.m[1][1])
            .sub(&self.m[0][1].mul(&self.m[1][0]))
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let f = |i: usize, j: usize| {
            self.m[i][0]
                .mul(&other.m[0][j])
                .add(&self.m[i][1].mul(&other.m[1][j]))
        };
        Mat2 {
            m: [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]],
        }
    }

    pub fn inverse(&self) -> Mat2 {
        let d = self.det().inv().expect("invertible matrix");
        Mat2 {
            m: [
                [self.m[1][1].mul(&d), self.m[0][1].neg().mul(&d)],
                [self.m[1][0].neg().mul(&d), self.m[0][0].mul(&d)],
            ],
        }
    }

    pub fn embed(&self, target: &Field) -> Mat2 {
        Mat2 {
            m: [
                [target.embed(&self.m[0][0]), target.embed(&self.m[0][1])],
                [target.embed(&self.m[1][0]), target.embed(&self.m[1][1])],
            ],
        }
    }
}

/// Element of SL(2) x SL(2) semidirect Z/2 (up to scalars; any invertible
/// matrices are accepted since weights ignore determinant normalization).
/// Acting on a form substitutes (X,Y) -> A(X,Y), (Z,W) -> B(Z,W), after
/// first exchanging the two coordinate pairs when `swap` is set.
#[derive(Clone)]
pub struct CoordChange {
    pub a: Mat2,
    pub b: Mat2,
    pub swap: bool,
}

impl fmt::Debug for CoordChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g(A=[[{},{}],[{},{}]], B=[[{},{}],[{},{}]], swap={})",
            self.a.m[0][0], self.a.m[0][1], self.a.m[1][0], self.a.m[1][1],
            self.b.m[0][0], self.b.m[0][1], self.b.m[1][0], self.b.m[1][1],
            self.swap
        )
    }
}

impl CoordChange {
    pub fn identity(field: &Field) -> CoordChange {
        CoordChange {
            a: Mat2::identity(field),
            b: Mat2::identity(field),
            swap: false,
        }
    }

    pub fn linear(a: Mat2, b: Mat2) -> CoordChange {
        CoordChange { a, b, swap: false }
    }

    pub fn swap_factors(field: &Field) -> CoordChange {
        CoordChange {
            a: Mat2::identity(field),
            b: Mat2::identity(field),
            swap: true,
        }
    }

    /// The composite "apply self, then apply other": substitution maps
    /// compose as S_composite = S_self o S_other, where
    /// S_g(v1, v2) = (A v1, B v2) without swap and (B v2, A v1) with swap.
    pub fn then(&self, other: &CoordChange) -> CoordChange {
        if !other.swap {
            CoordChange {
                a: self.a.mul(&other.a),
                b: self.b.mul(&other.b),
                swap: self.swap,
            }
        } else {
            CoordChange {
                a: self.b.mul(&other.a),
                b: self.a.mul(&other.b),
                swap: !self.swap,
            }
        }
    }

    pub fn inverse(&self) -> CoordChange {
        if !self.swap {
            CoordChange {
                a: self.a.inverse(),
                b: self.b.inverse(),
                swap: false,
            }
        } else {
            CoordChange {
                a: self.b.inverse(),
                b: self.a.inverse(),
                swap: true,
            }
        }
    }

    pub fn embed(&self, target: &Field) -> CoordChange {
        CoordChange {
            a: self.a.embed(target),
            b: self.b.embed(target),
            swap: self.swap,
        }
    }
}

/// Substitute a 2x2 matrix into a binary form of degree d given by
/// coefficients v[k] on U^k V^(d-k): returns coefficients of the form
/// v(M . (U, V)).
fn binary_substitute(field: &Field, v: &[AlgScalar], m: &Mat2) -> Vec<AlgScalar> {
    let d = v.len() - 1;
    // precompute (m00 U + m01 V)^k and (m10 U + m11 V)^(d-k) as coefficient vectors
    let lin1 = [m.m[0][0].clone(), m.m[0][1].clone()];
    let lin2 = [m.m[1][0].clone(), m.m[1][1].clone()];
    let pow = |lin: &[AlgScalar; 2], e: usize| -> Vec<AlgScalar> {
        let mut acc = vec![field.one()];
        for _ in 0..e {
            let mut next = vec![field.zero(); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                next[k + 1] = next[k + 1].add(&c.mul(&lin[0]));
                next[k] = next[k].add(&c.mul(&lin[1]));
            }
            acc = next;
        }
        acc
    };
    let mut out = vec![field.zero(); d + 1];
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let p1 = pow(&lin1, k);
        let p2 = pow(&lin2, d - k);
        // multiply the two expansions
        for (i, x) in p1.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in p2.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = c.mul(x).mul(y);
                out[i + j] = out[i + j].add(&t);
            }
        }
    }
    out
}

/// Apply a coordinate change to a form. Swap requires a symmetric bidegree.
pub fn apply_coord_change(f: &BiForm, g: &CoordChange) -> Result<BiForm, Error> {
    let field = f.field.clone();
    let mut work = f.clone();
    if g.swap {
        if f.a != f.b {
            return Err(Error::SwapOnAsymmetricBidegree);
        }
        // F(Z, W, X, Y): c'[i][j] = c[j][i]
        let mut c = vec![vec![field.zero(); f.b + 1]; f.a + 1];
        for (i, item) in c.iter_mut().enumerate() {
            for (j, e) in item.iter_mut().enumerate() {
                *e = work.c[j][i].clone();
            }
        }
        work = BiForm::new(&field, f.a, f.b, c);
    }
    // substitute A into the (X, Y) side: columns indexed by j
    let a_deg = work.a;
    let mut c1 = vec![vec![field.zero(); work.b + 1]; work.a + 1];
    for j in 0..=work.b {
        let col: Vec<AlgScalar> = (0..=a_deg).map(|i| work.c[i][j].clone()).collect();
        let sub = binary_substitute(&field, &col, &g.a);
        for (i, e) in sub.into_iter().enumerate() {
            c1[i][j] = e;
        }
    }
    // substitute B into the (Z, W) side: rows
    let mut c2 = vec![vec![field.zero(); work.b + 1]; work.a + 1];
    for (i, row) in c1.iter().enumerate() {
        let sub = binary_substitute(&field, row, &g.b);
        for (j, e) in sub.into_iter().enumerate() {
            c2[i][j] = e;
        }
    }
    Ok(BiForm::new(&field, work.a, work.b, c2))
}

/// A point of P1 x P1 with exact projective coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct SurfacePoint {
    pub p1: (AlgScalar, AlgScalar),
    pub p2: (AlgScalar, AlgScalar),
}

impl SurfacePoint {
    pub fn new(p1: (AlgScalar, AlgScalar), p2: (AlgScalar, AlgScalar)) -> SurfacePoint {
        assert!(
            !(p1.0.is_zero() && p1.1.is_zero()) && !(p2.0.is_zero() && p2.1.is_zero()),
            "projective pair (0:0)"
        );
        SurfacePoint { p1, p2 }
    }

    pub fn from_ints(field: &Field, p1: (i64, i64), p2: (i64, i64)) -> SurfacePoint {
        SurfacePoint::new(
            (field.int(p1.0), field.int(p1.1)),
            (field.int(p2.0), field.int(p2.1)),
        )
    }

    /// Scale each pair so its first nonzero coordinate is 1.
    pub fn canonical(&self) -> SurfacePoint {
        let norm = |p: &(AlgScalar, AlgScalar)| -> (AlgScalar, AlgScalar) {
            if !p.0.is_zero() {
                let inv = p.0.inv().unwrap();
                (p.0.mul(&inv), p.1.mul(&inv))
            } else {
                let inv = p.1.inv().unwrap();
                (p.0.mul(&inv), p.1.mul(&inv))
            }
        };
        SurfacePoint {
            p1: norm(&self.p1),
            p2: norm(&self.p2),
        }
    }

    pub fn embed(&self, target: &Field) -> SurfacePoint {
        SurfacePoint {
            p1: (target.embed(&self.p1.0), target.embed(&self.p1.1)),
            p2: (target.embed(&self.p2.0), target.embed(&self.p2.1)),
        }
    }
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        write!(
            f,
            "(({}:{}), ({}:{}))",
            c.p1.0, c.p1.1, c.p2.0, c.p2.1
        )
    }
}

impl fmt::Debug for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// The coordinate change moving p to ((0:1), (0:1)), so that the affine chart
/// x = X/Y, z = Z/W is centered at p. Deterministic: when a pair is at
/// infinity the corresponding matrix is the coordinate swap.
pub fn centering_change(p: &SurfacePoint) -> CoordChange {
    let field = p.p1.0.field().clone();
    let mk = |pair: &(AlgScalar, AlgScalar)| -> Mat2 {
        let (s, t) = (pair.0.clone(), pair.1.clone());
        if !s.is_zero() {
            Mat2::new([[field.zero(), s.clone()], [field.one(), t.clone()]])
        } else {
            Mat2::new([[field.one(), s.clone()], [field.zero(), t.clone()]])
        }
    };
    CoordChange {
        a: mk(&p.p1),
        b: mk(&p.p2),
        swap: false,
    }
}

/// Exact local equation of F in affine coordinates (x, z) centered at p.
pub fn local_expand(f: &BiForm, p: &SurfacePoint) -> BiPoly {
    let g = centering_change(p);
    let moved = apply_coord_change(f, &g).expect("no swap involved");
    moved.dehomogenize()
}

/// A binary form of degree d in one P1 factor's coordinates: coeffs[k]
/// multiplies T^k S^(d-k) where (T, S) = (Z, W) or (X, Y).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinForm {
    pub field: Field,
    pub degree: usize,
    pub coeffs: Vec<AlgScalar>,
}

impl BinForm {
    pub fn new(field: &Field, degree: usize, coeffs: Vec<AlgScalar>) -> BinForm {
        assert_eq!(coeffs.len(), degree + 1);
        BinForm {
            field: field.clone(),
            degree,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Dehomogenized core polynomial p(t) = sum coeffs[k] t^k and the
    /// multiplicity of the root at infinity (the S = 0 root is t=infinity...
    /// concretely: multiplicity of S | form equals degree - deg p).
    pub fn to_unipoly(&self, var: &str) -> UniPoly {
        UniPoly::new(&self.field, var, self.coeffs.clone())
    }

    /// Roots as projective pairs (t : s) with multiplicity, splitting over
    /// extensions as needed. Includes the root at infinity (1 : 0).
    pub fn projective_roots(
        &self,
    ) -> Result<(Field, Vec<((AlgScalar, AlgScalar), usize)>), Error> {
        assert!(!self.is_zero());
        let p = self.to_unipoly("t");
        let inf_mult = self.degree - p.degree().unwrap();
        let (field, roots) = crate::exact::factor::split_completely(&p)?;
        let mut out: Vec<((AlgScalar, AlgScalar), usize)> = roots
            .into_iter()
            .map(|(r, m)| ((r, field.one()), m))
            .collect();
        if inf_mult > 0 {
            out.push(((field.one(), field.zero()), inf_mult));
        }
        Ok((field, out))
    }

    /// Is this form a nonzero scalar times the cube of a linear form? Returns
    /// the root pair (t : s) of the repeated linear factor when so.
    pub fn perfect_cube_root(&self) -> Option<(AlgScalar, AlgScalar)> {
        if self.degree != 3 || self.is_zero() {
            return None;
        }
        let p = self.to_unipoly("t");
        match p.degree() {
            None => None,
            Some(0) => Some((self.field.one(), self.field.zero())), // c * S^3
            Some(3) => {
                // cube iff p = lc (t - r)^3 with rational r = -coeff2/(3 lc)
                let lc = p.leading_coeff();
                let r = p.coeff(2).div(&lc).div(&self.field.int(3)).neg();
                let lin = UniPoly::new(&self.field, "t", vec![r.neg(), self.field.one()]);
                let cube = lin.pow(3).scale(&lc);
                if cube == p {
                    Some((r, self.field.one()))
                } else {
                    None
                }
            }
            _ => None, // S divides with multiplicity 1 or 2: not a cube
        }
    }
}
