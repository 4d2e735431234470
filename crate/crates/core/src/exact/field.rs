//! Exact coefficient fields: the rationals and simple algebraic extensions.
//!
//! A `Field` is a tower of at most two extension steps over Q, each step given
//! by a monic irreducible minimal polynomial of degree at most 6 over the layer
//! below. Elements (`AlgScalar`) are dense coefficient vectors with respect to
//! the power basis of each layer, so equality is structural and exact.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Tower cap: at most two extension steps over Q.
pub const MAX_TOWER_DEPTH: usize = 2;
/// Per-step degree cap.
pub const MAX_STEP_DEGREE: usize = 6;

/// Raw element value, level-agnostic. A level-0 value is a rational; a level-k
/// value (k >= 1) is a full-length coefficient vector over level k-1 in the
/// power basis of the k-th generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Val {
    Q(Rat),
    E(Vec<Val>),
}

/// One extension step: minimal polynomial t^d + c_{d-1} t^{d-1} + ... + c_0,
/// stored by its non-leading coefficients (values of the layer below).
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct Step {
    pub(crate) min_poly: Vec<Val>,
    pub(crate) gen_name: String,
}

impl Step {
    pub(crate) fn degree(&self) -> usize {
        self.min_poly.len()
    }
}

#[derive(PartialEq, Eq)]
pub(crate) struct Tower {
    pub(crate) steps: Vec<Step>,
}

/// Descriptor of the coefficient field: Q, or Q with one or two adjoined roots.
#[derive(Clone)]
pub struct Field(pub(crate) Arc<Tower>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rationals() {
            write!(f, "Q")
        } else {
            write!(f, "Q(")?;
            let names = self.generator_names();
            write!(f, "{})", names.join(", "))
        }
    }
}

impl Field {
    /// The rational field Q (empty tower).
    pub fn rationals() -> Field {
        Field(Arc::new(Tower { steps: Vec::new() }))
    }

    pub fn depth(&self) -> usize {
        self.0.steps.len()
    }

    /// Total degree over Q.
    pub fn degree(&self) -> usize {
        self.0.steps.iter().map(|s| s.degree()).product()
    }

    pub fn is_rationals(&self) -> bool {
        self.0.steps.is_empty()
    }

    /// The field one step below the top of the tower.
    pub(crate) fn lower(&self) -> Field {
        assert!(!self.0.steps.is_empty());
        Field(Arc::new(Tower {
            steps: self.0.steps[..self.0.steps.len() - 1].to_vec(),
        }))
    }

    /// True when `self` is a prefix tower of `other`.
    pub fn is_prefix_of(&self, other: &Field) -> bool {
        let a = &self.0.steps;
        let b = &other.0.steps;
        a.len() <= b.len() && a[..] == b[..a.len()]
    }

    fn step(&self, level: usize) -> &Step {
        &self.0.steps[level - 1]
    }

    pub(crate) fn zero_val(&self, level: usize) -> Val {
        if level == 0 {
            Val::Q(Rat::zero())
        } else {
            let d = self.step(level).degree();
            Val::E(vec![self.zero_val(level - 1); d])
        }
    }

    fn lift_val(&self, level: usize, v: Val) -> Val {
        // v is a value at level-1; wrap it as the constant at `level`.
        let d = self.step(level).degree();
        let mut coords = Vec::with_capacity(d);
        coords.push(v);
        for _ in 1..d {
            coords.push(self.zero_val(level - 1));
        }
        Val::E(coords)
    }

    pub(crate) fn from_rat_val(&self, level: usize, r: Rat) -> Val {
        let mut v = Val::Q(r);
        for l in 1..=level {
            v = self.lift_val(l, v);
        }
        v
    }

    pub(crate) fn add_val(&self, level: usize, a: &Val, b: &Val) -> Val {
        match (a, b) {
            (Val::Q(x), Val::Q(y)) => Val::Q(x + y),
            (Val::E(xs), Val::E(ys)) => {
                debug_assert_eq!(xs.len(), ys.len());
                Val::E(
                    xs.iter()
                        .zip(ys)
                        .map(|(x, y)| self.add_val(level - 1, x, y))
                        .collect(),
                )
            }
            _ => unreachable!("level mismatch in add"),
        }
    }

    pub(crate) fn neg_val(&self, level: usize, a: &Val) -> Val {
        match a {
            Val::Q(x) => Val::Q(-x),
            Val::E(xs) => Val::E(xs.iter().map(|x| self.neg_val(level - 1, x)).collect()),
        }
    }

    pub(crate) fn sub_val(&self, level: usize, a: &Val, b: &Val) -> Val {
        self.add_val(level, a, &self.neg_val(level, b))
    }

    pub(crate) fn is_zero_val(&self, v: &Val) -> bool {
        match v {
            Val::Q(r) => r.is_zero(),
            Val::E(xs) => xs.iter().all(|x| self.is_zero_val(x)),
        }
    }

    pub(crate) fn mul_val(&self, level: usize, a: &Val, b: &Val) -> Val {
        match (a, b) {
            (Val::Q(x), Val::Q(y)) => Val::Q(x * y),
            (Val::E(xs), Val::E(ys)) => {
                let d = self.step(level).degree();
                debug_assert_eq!(xs.len(), d);
                debug_assert_eq!(ys.len(), d);
                // convolution, then reduction by the monic minimal polynomial
                let mut conv = vec![self.zero_val(level - 1); 2 * d - 1];
                for (i, x) in xs.iter().enumerate() {
                    if self.is_zero_val(x) {
                        continue;
                    }
                    for (j, y) in ys.iter().enumerate() {
                        if self.is_zero_val(y) {
                            continue;
                        }
                        let p = self.mul_val(level - 1, x, y);
                        conv[i + j] = self.add_val(level - 1, &conv[i + j], &p);
                    }
                }
                let m = &self.step(level).min_poly;
                for i in (d..conv.len()).rev() {
                    if self.is_zero_val(&conv[i]) {
                        continue;
                    }
                    let c = conv[i].clone();
                    // t^i = t^(i-d) * t^d = -t^(i-d) * (m_0 + ... + m_{d-1} t^{d-1})
                    for (j, mj) in m.iter().enumerate() {
                        if self.is_zero_val(mj) {
                            continue;
                        }
                        let p = self.mul_val(level - 1, &c, mj);
                        conv[i - d + j] = self.sub_val(level - 1, &conv[i - d + j], &p);
                    }
                    conv[i] = self.zero_val(level - 1);
                }
                conv.truncate(d);
                Val::E(conv)
            }
            _ => unreachable!("level mismatch in mul"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub(crate) fn inv_val(&self, level: usize, a: &Val) -> Option<Val> {
        if self.is_zero_val(a) {
            return None;
        }
        match a {
            Val::Q(x) => Some(Val::Q(x.recip())),
            Val::E(xs) => {
                // extended Euclid of a(t) against the minimal polynomial, over level-1
                let d = self.step(level).degree();
                let mut m: Vec<Val> = self.step(level).min_poly.clone();
                m.push(self.from_rat_val(level - 1, Rat::one()));
                let a_poly: Vec<Val> = xs.clone();
                let (g, _s, t) = self.poly_ext_gcd(level - 1, &m, &a_poly);
                // g must be a nonzero constant (minimal polynomial irreducible)
                debug_assert!(g.len() == 1, "minimal polynomial not irreducible?");
                let ginv = self
                    .inv_val(level - 1, &g[0])
                    .expect("gcd constant is nonzero");
                let mut inv: Vec<Val> = t
                    .iter()
                    .map(|c| self.mul_val(level - 1, c, &ginv))
                    .collect();
                // reduce mod m (defensive; t has degree < d already) and pad
                while inv.len() > d {
                    inv.pop();
                }
                while inv.len() < d {
                    inv.push(self.zero_val(level - 1));
                }
                Some(Val::E(inv))
            }
        }
    }

    /// Division with remainder for dense polynomials with level-`level` value
    /// coefficients (trailing zeros trimmed). Panics if `den` is zero.
    pub(crate) fn poly_divrem(
        &self,
        level: usize,
        num: &[Val],
        den: &[Val],
    ) -> (Vec<Val>, Vec<Val>) {
        let dd = poly_deg(self, den).expect("division by zero polynomial");
        let lc_inv = self
            .inv_val(level, &den[dd])
            .expect("leading coefficient invertible");
        let mut rem: Vec<Val> = num.to_vec();
        trim(self, &mut rem);
        if rem.len() <= dd {
            return (Vec::new(), rem);
        }
        let mut quo = vec![self.zero_val(level); rem.len() - dd];
        while let Some(dn) = poly_deg(self, &rem) {
            if dn < dd {
                break;
            }
            let q = self.mul_val(level, &rem[dn], &lc_inv);
            for j in 0..=dd {
                let p = self.mul_val(level, &q, &den[j]);
                rem[dn - dd + j] = self.sub_val(level, &rem[dn - dd + j], &p);
            }
            quo[dn - dd] = q;
            trim(self, &mut rem);
        }
        (quo, rem)
    }

    /// Extended gcd over the virtual field at `level`: returns (g, s, t) with
    /// s*a + t*b = g, g not normalized.
    fn poly_ext_gcd(&self, level: usize, a: &[Val], b: &[Val]) -> (Vec<Val>, Vec<Val>, Vec<Val>) {
        let one = vec![self.from_rat_val(level, Rat::one())];
        let zero: Vec<Val> = Vec::new();
        let mut r0: Vec<Val> = a.to_vec();
        let mut r1: Vec<Val> = b.to_vec();
        trim(self, &mut r0);
        trim(self, &mut r1);
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(level, &r0, &r1);
            let s = self.poly_sub(level, &s0, &self.poly_mul(level, &q, &s1));
            let t = self.poly_sub(level, &t0, &self.poly_mul(level, &q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    fn poly_mul(&self, level: usize, a: &[Val], b: &[Val]) -> Vec<Val> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero_val(level); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero_val(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let p = self.mul_val(level, x, y);
                out[i + j] = self.add_val(level, &out[i + j], &p);
            }
        }
        let mut out = out;
        trim(self, &mut out);
        out
    }

    fn poly_sub(&self, level: usize, a: &[Val], b: &[Val]) -> Vec<Val> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).cloned().unwrap_or_else(|| self.zero_val(level));
            let y = b.get(i).cloned().unwrap_or_else(|| self.zero_val(level));
            out.push(self.sub_val(level, &x, &y));
        }
        trim(self, &mut out);
        out
    }

    /// Deterministic total order on raw values (rationals ordered as usual,
    /// vectors lexicographically from the constant coordinate up).
    pub(crate) fn cmp_val(a: &Val, b: &Val) -> std::cmp::Ordering {
        match (a, b) {
            (Val::Q(x), Val::Q(y)) => x.cmp(y),
            (Val::E(xs), Val::E(ys)) => {
                for (x, y) in xs.iter().zip(ys) {
                    let c = Field::cmp_val(x, y);
                    if c != std::cmp::Ordering::Equal {
                        return c;
                    }
                }
                std::cmp::Ordering::Equal
            }
            _ => unreachable!("level mismatch in cmp"),
        }
    }

    // ---- public scalar constructors ----

    pub fn zero(&self) -> AlgScalar {
        AlgScalar {
            field: self.clone(),
            v: self.zero_val(self.depth()),
        }
    }

    pub fn one(&self) -> AlgScalar {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(&self, r: Rat) -> AlgScalar {
        AlgScalar {
            field: self.clone(),
            v: self.from_rat_val(self.depth(), r),
        }
    }

    pub fn int(&self, n: i64) -> AlgScalar {
        self.from_rat(rat_int(n))
    }

    /// The generator of the top extension step. Panics on Q.
    pub fn generator(&self) -> AlgScalar {
        let level = self.depth();
        assert!(level >= 1, "Q has no generator");
        let d = self.step(level).degree();
        let mut coords = vec![self.zero_val(level - 1); d];
        coords[1] = self.from_rat_val(level - 1, Rat::one());
        AlgScalar {
            field: self.clone(),
            v: Val::E(coords),
        }
    }

    /// Generator names from the bottom of the tower up.
    pub fn generator_names(&self) -> Vec<String> {
        self.0.steps.iter().map(|s| s.gen_name.clone()).collect()
    }

    /// Embed a scalar of a prefix field into this one.
    pub fn embed(&self, s: &AlgScalar) -> AlgScalar {
        assert!(
            s.field.is_prefix_of(self),
            "embed: source field is not a prefix of target"
        );
        let mut v = s.v.clone();
        for l in (s.field.depth() + 1)..=self.depth() {
            v = self.lift_val(l, v);
        }
        AlgScalar {
            field: self.clone(),
            v,
        }
    }

    /// Construct an extension of `self` by a monic minimal polynomial given by
    /// its non-leading coefficients (over `self`). Irreducibility is the
    /// caller's responsibility; `adjoin_root` is the checked entry point.
    pub(crate) fn extend_unchecked(&self, min_poly_tail: Vec<AlgScalar>, gen_name: &str) -> Result<Field, Error> {
        let deg = min_poly_tail.len();
        if self.depth() + 1 > MAX_TOWER_DEPTH || deg > MAX_STEP_DEGREE {
            return Err(Error::TowerTooDeep {
                degree: deg,
                depth: self.depth() + 1,
            });
        }
        assert!(deg >= 2, "degree-1 extensions collapse; do not extend");
        let mut steps = self.0.steps.clone();
        steps.push(Step {
            min_poly: min_poly_tail.into_iter().map(|s| s.v).collect(),
            gen_name: gen_name.to_string(),
        });
        Ok(Field(Arc::new(Tower { steps })))
    }
}

/// An exact element of a `Field`.
#[derive(Clone)]
pub struct AlgScalar {
    pub(crate) field: Field,
    pub(crate) v: Val,
}

impl PartialEq for AlgScalar {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.field == other.field, "field mismatch in scalar eq");
        self.v == other.v
    }
}
impl Eq for AlgScalar {}

impl AlgScalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero_val(&self.v)
    }

    pub fn is_one(&self) -> bool {
        self == &self.field.one()
    }

    pub fn add(&self, other: &AlgScalar) -> AlgScalar {
        self.binop(other, |f, l, a, b| f.add_val(l, a, b))
    }

    pub fn sub(&self, other: &AlgScalar) -> AlgScalar {
        self.binop(other, |f, l, a, b| f.sub_val(l, a, b))
    }

    pub fn mul(&self, other: &AlgScalar) -> AlgScalar {
        self.binop(other, |f, l, a, b| f.mul_val(l, a, b))
    }

    pub fn neg(&self) -> AlgScalar {
        AlgScalar {
            field: self.field.clone(),
            v: self.field.neg_val(self.field.depth(), &self.v),
        }
    }

    /// Multiplicative inverse; `None` on zero.
    pub fn inv(&self) -> Option<AlgScalar> {
        self.field
            .inv_val(self.field.depth(), &self.v)
            .map(|v| AlgScalar {
                field: self.field.clone(),
                v,
            })
    }

    pub fn div(&self, other: &AlgScalar) -> AlgScalar {
        self.mul(&other.inv().expect("division by zero"))
    }

    fn binop(
        &self,
        other: &AlgScalar,
        op: impl Fn(&Field, usize, &Val, &Val) -> Val,
    ) -> AlgScalar {
        assert!(self.field == other.field, "field mismatch in scalar op");
        AlgScalar {
            field: self.field.clone(),
            v: op(&self.field, self.field.depth(), &self.v, &other.v),
        }
    }

    /// Exact rational value when the element lies in Q, else `None`.
    pub fn as_rat(&self) -> Option<Rat> {
        fn walk(v: &Val) -> Option<Rat> {
            match v {
                Val::Q(r) => Some(r.clone()),
                Val::E(xs) => {
                    let head = walk(&xs[0])?;
                    for x in &xs[1..] {
                        if !x_is_zero(x) {
                            return None;
                        }
                    }
                    Some(head)
                }
            }
        }
        fn x_is_zero(v: &Val) -> bool {
            match v {
                Val::Q(r) => r.is_zero(),
                Val::E(xs) => xs.iter().all(x_is_zero),
            }
        }
        walk(&self.v)
    }

    /// Coordinates over the layer below the top of the tower. Panics on Q.
    pub fn coords(&self) -> Vec<AlgScalar> {
        match &self.v {
            Val::E(xs) => {
                let lower = self.field.lower();
                xs.iter()
                    .map(|x| AlgScalar {
                        field: lower.clone(),
                        v: x.clone(),
                    })
                    .collect()
            }
            Val::Q(_) => panic!("coords of a rational"),
        }
    }

    /// Deterministic total order (used for canonical factor selection).
    pub fn cmp_det(&self, other: &AlgScalar) -> std::cmp::Ordering {
        debug_assert!(self.field == other.field);
        Field::cmp_val(&self.v, &other.v)
    }
}

impl fmt::Debug for AlgScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for AlgScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn render(v: &Val, names: &[String], level: usize) -> String {
            match v {
                Val::Q(r) => fmt_rat(r),
                Val::E(xs) => {
                    let name = &names[level - 1];
                    let mut terms: Vec<String> = Vec::new();
                    for (k, x) in xs.iter().enumerate() {
                        if val_zero(x) {
                            continue;
                        }
                        let inner = render(x, names, level - 1);
                        let needs_paren = inner.contains('+') || inner.contains('-') && k > 0;
                        let coeff = if needs_paren && k > 0 {
                            format!("({})", inner)
                        } else {
                            inner
                        };
                        let term = match k {
                            0 => coeff,
                            1 => {
                                if coeff == "1" {
                                    name.clone()
                                } else {
                                    format!("{}*{}", coeff, name)
                                }
                            }
                            _ => {
                                if coeff == "1" {
                                    format!("{}^{}", name, k)
                                } else {
                                    format!("{}*{}^{}", coeff, name, k)
                                }
                            }
                        };
                        terms.push(term);
                    }
                    if terms.is_empty() {
                        "0".to_string()
                    } else {
                        terms.join(" + ")
                    }
                }
            }
        }
        fn val_zero(v: &Val) -> bool {
            match v {
                Val::Q(r) => r.is_zero(),
                Val::E(xs) => xs.iter().all(val_zero),
            }
        }
        let names = self.field.generator_names();
        write!(f, "{}", render(&self.v, &names, self.field.depth()))
    }
}

/// Sign helper for rational scalars.
pub fn rat_is_positive(r: &Rat) -> bool {
    r.is_positive()
}

pub(crate) fn poly_deg(f: &Field, p: &[Val]) -> Option<usize> {
    for (i, c) in p.iter().enumerate().rev() {
        if !f.is_zero_val(c) {
            return Some(i);
        }
    }
    None
}

pub(crate) fn trim(f: &Field, p: &mut Vec<Val>) {
    while let Some(last) = p.last() {
        if f.is_zero_val(last) {
            p.pop();
        } else {
            break;
        }
    }
}
