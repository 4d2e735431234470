//! Exact divisor-class arithmetic for the genus-4 moduli space: the small
//! Chow computation on P1 x P1 x P15, lambda and delta on the linear system,
//! the Picard basis (lambda, delta_0, delta_1, delta_2, P) with the Petri
//! class, test-family intersections, the pullback solver, discrepancy and
//! polarization thresholds, and the moving-slope certificate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exact::field::{rat_int, Rat};

/// Element of Q[H1, H2, H3] / (H1^2, H2^2, H3^16).
#[derive(Clone, PartialEq, Eq)]
pub struct ChowElt {
    /// coeff[e1][e2][e3], e1, e2 in {0,1}, e3 in 0..=15.
    pub c: Vec<Vec<Vec<Rat>>>,
}

impl ChowElt {
    pub fn zero() -> ChowElt {
        ChowElt {
            c: vec![vec![vec![Rat::zero(); 16]; 2]; 2],
        }
    }

    pub fn monomial(e1: usize, e2: usize, e3: usize, coeff: Rat) -> ChowElt {
        let mut z = ChowElt::zero();
        if e1 <= 1 && e2 <= 1 && e3 <= 15 {
            z.c[e1][e2][e3] = coeff;
        }
        z
    }

    pub fn h(i: usize) -> ChowElt {
        match i {
            1 => ChowElt::monomial(1, 0, 0, Rat::one()),
            2 => ChowElt::monomial(0, 1, 0, Rat::one()),
            3 => ChowElt::monomial(0, 0, 1, Rat::one()),
            _ => panic!("H1, H2, H3 only"),
        }
    }

    pub fn scalar(r: Rat) -> ChowElt {
        ChowElt::monomial(0, 0, 0, r)
    }

    pub fn int(n: i64) -> ChowElt {
        ChowElt::scalar(rat_int(n))
    }

    pub fn add(&self, other: &ChowElt) -> ChowElt {
        let mut out = ChowElt::zero();
        for e1 in 0..2 {
            for e2 in 0..2 {
                for e3 in 0..16 {
                    out.c[e1][e2][e3] = &self.c[e1][e2][e3] + &other.c[e1][e2][e3];
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &ChowElt) -> ChowElt {
        let mut out = ChowElt::zero();
        for a1 in 0..2 {
            for a2 in 0..2 {
                for a3 in 0..16 {
                    if self.c[a1][a2][a3].is_zero() {
                        continue;
                    }
                    for b1 in 0..2 {
                        for b2 in 0..2 {
                            for b3 in 0..16 {
                                if other.c[b1][b2][b3].is_zero() {
                                    continue;
                                }
                                let (e1, e2, e3) = (a1 + b1, a2 + b2, a3 + b3);
                                if e1 > 1 || e2 > 1 || e3 > 15 {
                                    continue; // the defining relations
                                }
                                let p = &self.c[a1][a2][a3] * &other.c[b1][b2][b3];
                                out.c[e1][e2][e3] = &out.c[e1][e2][e3] + &p;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> ChowElt {
        let mut acc = ChowElt::scalar(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Debug for ChowElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ChowElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for e1 in 0..2 {
            for e2 in 0..2 {
                for e3 in 0..16 {
                    let c = &self.c[e1][e2][e3];
                    if c.is_zero() {
                        continue;
                    }
                    let mut t = format!("{}", c);
                    for (sym, e) in [("H1", e1), ("H2", e2), ("H3", e3)] {
                        if e == 0 {
                            continue;
                        }
                        if e == 1 {
                            t.push_str(&format!("*{}", sym));
                        } else {
                            t.push_str(&format!("*{}^{}", sym, e));
                        }
                    }
                    terms.push(t);
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Integration over the two P1 factors: the H1*H2-coefficient, a polynomial
/// in H3 returned as its coefficient vector.
pub fn chow_pushforward(e: &ChowElt) -> Vec<Rat> {
    e.c[1][1].clone()
}

/// kappa = pushforward of (3H1 + 3H2 + H3)(H1 + H2 + H3)^2; the coefficient
/// of H3 in the result is 14.
pub fn kappa_on_v() -> Rat {
    let h1 = ChowElt::h(1);
    let h2 = ChowElt::h(2);
    let h3 = ChowElt::h(3);
    let omega = h1.mul(&ChowElt::int(3)).add(&h2.mul(&ChowElt::int(3))).add(&h3);
    let sum = h1.add(&h2).add(&h3);
    let prod = omega.mul(&sum.pow(2));
    let push = chow_pushforward(&prod);
    // the push is kappa * H3 (plus nothing else in this degree)
    push[1].clone()
}

/// (lambda-degree, delta-degree) on the linear system V = P15: lambda = 4
/// from the rank-4 pushforward of O(1,1,1); delta = 12*lambda - kappa.
pub fn lambda_delta_on_v() -> (Rat, Rat) {
    // c1 of the rank-(a+1)(b+1) bundle of relative sections twisted by H3:
    // rank * twist * H3 for O(a, b, 1) with a = b = 1
    let rank = rat_int(4);
    let lambda = rank * rat_int(1);
    let kappa = kappa_on_v();
    let delta = rat_int(12) * &lambda - kappa;
    (lambda, delta)
}

/// Exact vector in the ordered basis (lambda, delta_0, delta_1, delta_2, P).
#[derive(Clone, PartialEq, Eq)]
pub struct DivClass {
    pub c: [Rat; 5],
}

pub const BASIS_NAMES: [&str; 5] = ["lambda", "delta_0", "delta_1", "delta_2", "P"];

impl DivClass {
    pub fn zero() -> DivClass {
        DivClass {
            c: [
                Rat::zero(),
                Rat::zero(),
                Rat::zero(),
                Rat::zero(),
                Rat::zero(),
            ],
        }
    }

    pub fn from_ints(l: i64, d0: i64, d1: i64, d2: i64, p: i64) -> DivClass {
        DivClass {
            c: [rat_int(l), rat_int(d0), rat_int(d1), rat_int(d2), rat_int(p)],
        }
    }

    pub fn lambda() -> DivClass {
        DivClass::from_ints(1, 0, 0, 0, 0)
    }

    /// delta = delta_0 + delta_1 + delta_2.
    pub fn delta_total() -> DivClass {
        DivClass::from_ints(0, 1, 1, 1, 0)
    }

    pub fn add(&self, other: &DivClass) -> DivClass {
        let mut out = DivClass::zero();
        for i in 0..5 {
            out.c[i] = &self.c[i] + &other.c[i];
        }
        out
    }

    pub fn sub(&self, other: &DivClass) -> DivClass {
        let mut out = DivClass::zero();
        for i in 0..5 {
            out.c[i] = &self.c[i] - &other.c[i];
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> DivClass {
        let mut out = DivClass::zero();
        for i in 0..5 {
            out.c[i] = &self.c[i] * r;
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> DivClass {
        self.scale(&rat_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.is_zero())
    }

    /// Intersection number against a test family's vector.
    pub fn dot(&self, family: &TestFamily) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..5 {
            acc += &self.c[i] * &family.vector[i];
        }
        acc
    }

    /// Rewrite P through the Petri relation P = 17l - 2d0 - 7d1 - 9d2.
    pub fn expand_petri(&self) -> DivClass {
        let p = self.c[4].clone();
        let mut out = self.clone();
        out.c[4] = Rat::zero();
        out.add(&petri_class_in_ldd().scale(&p))
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if mag.is_one() {
                write!(f, "{}", BASIS_NAMES[i])?;
            } else {
                write!(f, "{}*{}", fmt_rat(&mag), BASIS_NAMES[i])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DivClass {
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

/// The Petri class 17*lambda - 2*delta_0 - 7*delta_1 - 9*delta_2, expressed
/// without the P-symbol.
pub fn petri_class_in_ldd() -> DivClass {
    DivClass::from_ints(17, -2, -7, -9, 0)
}

/// A test family with its intersection vector against the ordered basis.
#[derive(Clone)]
pub struct TestFamily {
    pub name: &'static str,
    pub vector: [Rat; 5],
}

/// T1: varying elliptic tails on a general pointed genus-3 curve.
pub fn t1() -> TestFamily {
    TestFamily {
        name: "T1",
        vector: [rat_int(1), rat_int(12), rat_int(-1), rat_int(0), rat_int(0)],
    }
}

/// T2: irreducible genus-2 tails attached at non-Weierstrass points.
pub fn t2() -> TestFamily {
    TestFamily {
        name: "T2",
        vector: [rat_int(3), rat_int(30), rat_int(0), rat_int(-1), rat_int(0)],
    }
}

/// T3: the Petri-special pencil on the quadric cone; P . T3 = 119 - 120 = -1
/// is derived from the Petri class and the other four numbers.
pub fn t3() -> TestFamily {
    let base = [rat_int(7), rat_int(60), rat_int(0), rat_int(0)];
    let petri = petri_class_in_ldd();
    let mut p_dot = Rat::zero();
    for i in 0..4 {
        p_dot += &petri.c[i] * &base[i];
    }
    TestFamily {
        name: "T3",
        vector: [
            base[0].clone(),
            base[1].clone(),
            base[2].clone(),
            base[3].clone(),
            p_dot,
        ],
    }
}

/// Solved pullbacks along the contraction: f*lambda and f*delta.
#[derive(Clone)]
pub struct Pullbacks {
    pub f_lambda: DivClass,
    pub f_delta: DivClass,
    /// The delta_2-coefficient of f*delta solved from T2; the value flags the
    /// known typo in the source text (which prints 10 where the linear
    /// system forces 30).
    pub b1_flagged: bool,
}

/// Solve f*lambda = lambda + a0 d1 + b0 d2 + c0 P and
/// f*delta = delta_0 + a1 d1 + b1 d2 + c1 P from the contraction conditions
/// f*D . Ti = 0.
pub fn solve_pullback_coeffs(families: &[TestFamily; 3]) -> Result<Pullbacks, Error> {
    // the unknown-coefficient columns are (delta_1, delta_2, P)
    let mut m = [[Rat::zero(), Rat::zero(), Rat::zero()], [Rat::zero(), Rat::zero(), Rat::zero()], [Rat::zero(), Rat::zero(), Rat::zero()]];
    for (r, fam) in families.iter().enumerate() {
        m[r][0] = fam.vector[2].clone();
        m[r][1] = fam.vector[3].clone();
        m[r][2] = fam.vector[4].clone();
    }
    let det = det3(&m);
    if det.is_zero() {
        return Err(Error::SingularSystem);
    }
    let solve_for = |base: DivClass| -> DivClass {
        // base . Ti + (a, b, c) . columns = 0
        let rhs: Vec<Rat> = families.iter().map(|f| -base.dot(f)).collect();
        let sol = solve3(&m, &rhs, &det);
        let mut out = base;
        out.c[2] = &out.c[2] + &sol[0];
        out.c[3] = &out.c[3] + &sol[1];
        out.c[4] = &out.c[4] + &sol[2];
        out
    };
    let f_lambda = solve_for(DivClass::lambda());
    let f_delta = solve_for(DivClass::delta_total());
    let b1_flagged = f_delta.c[3] == rat_int(30);
    Ok(Pullbacks {
        f_lambda,
        f_delta,
        b1_flagged,
    })
}

fn det3(m: &[[Rat; 3]; 3]) -> Rat {
    let a = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]);
    let b = &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0]);
    let c = &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    a - b + c
}

fn solve3(m: &[[Rat; 3]; 3], rhs: &[Rat], det: &Rat) -> [Rat; 3] {
    let mut out = [Rat::zero(), Rat::zero(), Rat::zero()];
    for (col, slot) in out.iter_mut().enumerate() {
        let mut mm = m.clone();
        for r in 0..3 {
            mm[r][col] = rhs[r].clone();
        }
        *slot = det3(&mm) / det;
    }
    out
}

/// The solved pullbacks for the standard test families.
pub fn standard_pullbacks() -> Pullbacks {
    solve_pullback_coeffs(&[t1(), t2(), t3()]).expect("standard families are independent")
}

/// (K + alpha delta) - f*f_*(K + alpha delta) in the basis, with K = 13l - 2d.
pub fn discrepancy(alpha: &Rat) -> DivClass {
    let pb = standard_pullbacks();
    let two_minus_alpha = rat_int(2) - alpha;
    // pushforward of K + alpha*delta is 13 lambda - (2 - alpha) delta; its
    // pullback is 13 f*lambda - (2 - alpha) f*delta
    let k_alpha = DivClass::lambda()
        .scale_int(13)
        .sub(&DivClass::delta_total().scale(&two_minus_alpha));
    let pulled = pb
        .f_lambda
        .scale_int(13)
        .sub(&pb.f_delta.scale(&two_minus_alpha));
    k_alpha.sub(&pulled)
}

/// All coefficients nonnegative?
pub fn is_effective(d: &DivClass) -> bool {
    d.c.iter().all(|r| !r.is_negative())
}

/// Degree of the model polarization: 34*alpha - 16; ample exactly when
/// positive, zero at alpha = 8/17.
pub fn model_polarization(alpha: &Rat) -> Rat {
    let (lambda, delta) = lambda_delta_on_v();
    // O(13*4 - (2 - alpha)*34) = O(34 alpha - 16)
    rat_int(13) * lambda - (rat_int(2) - alpha) * delta
}

/// The moving-slope certificate: the moving class f*(60 lambda - 7 delta),
/// the slope 60/7, and the three lower-bound inequalities.
pub struct MovingSlope {
    pub moving_class: DivClass,
    pub slope: Rat,
    /// Human-readable inequalities implied by D . Ti >= 0.
    pub inequalities: [String; 3],
}

pub fn moving_slope_certificate() -> MovingSlope {
    let pb = standard_pullbacks();
    let moving_class = pb
        .f_lambda
        .scale_int(60)
        .sub(&pb.f_delta.scale_int(7));
    MovingSlope {
        moving_class,
        slope: Rat::new(BigInt::from(60), BigInt::from(7)),
        inequalities: [
            "D.T3 >= 0  =>  7a - 60 b0 >= 0, i.e. a/b0 >= 60/7".to_string(),
            "D.T2 >= 0  =>  3a - 30 b0 + b2 >= 0".to_string(),
            "D.T1 >= 0  =>  a - 12 b0 + b1 >= 0".to_string(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::rat;

    #[test]
    fn kappa_is_14() {
        assert_eq!(kappa_on_v(), rat_int(14));
    }

    #[test]
    fn chow_pushforward_examples() {
        // H1 H2 H3 -> H3
        let e = ChowElt::h(1).mul(&ChowElt::h(2)).mul(&ChowElt::h(3));
        let p = chow_pushforward(&e);
        assert_eq!(p[1], rat_int(1));
        assert!(p[0].is_zero());
        // H1^2 * anything = 0
        let z = ChowElt::h(1).mul(&ChowElt::h(1));
        assert_eq!(z, ChowElt::zero());
    }

    #[test]
    fn lambda_delta_values() {
        let (l, d) = lambda_delta_on_v();
        assert_eq!(l, rat_int(4));
        assert_eq!(d, rat_int(34));
        // consistency: 12*4 - 14 = 34
        assert_eq!(rat_int(12) * rat_int(4) - rat_int(14), rat_int(34));
    }

    #[test]
    fn family_vectors_and_petri_consistency() {
        // P . T1 = 0 and P . T2 = 0 follow from the stored vectors
        let petri = petri_class_in_ldd();
        assert!(petri.dot(&t1()).is_zero());
        assert!(petri.dot(&t2()).is_zero());
        assert_eq!(t3().vector[4], rat_int(-1));
    }

    #[test]
    fn pullback_solution() {
        let pb = standard_pullbacks();
        assert_eq!(pb.f_lambda, DivClass::from_ints(1, 0, 1, 3, 7));
        assert_eq!(pb.f_delta, DivClass::from_ints(0, 1, 12, 30, 60));
        assert!(pb.b1_flagged);
        // round trip: solved classes annihilate every family
        for fam in [t1(), t2(), t3()] {
            assert!(pb.f_lambda.dot(&fam).is_zero());
            assert!(pb.f_delta.dot(&fam).is_zero());
        }
    }

    #[test]
    fn perturbed_families_singular_system() {
        let mut a = t1();
        a.vector = [rat_int(1), rat_int(12), rat_int(0), rat_int(0), rat_int(0)];
        let mut b = t2();
        b.vector = [rat_int(3), rat_int(30), rat_int(0), rat_int(0), rat_int(0)];
        let out = solve_pullback_coeffs(&[a, b, t3()]);
        assert!(matches!(out, Err(Error::SingularSystem)));
    }

    #[test]
    fn discrepancy_values() {
        // alpha = 29/60: P-coefficient 0, delta_2 299/60, delta_1 221/60
        let d = discrepancy(&rat(29, 60));
        assert!(d.c[0].is_zero() && d.c[1].is_zero());
        assert_eq!(d.c[4], rat(0, 1));
        assert_eq!(d.c[3], rat(299, 60));
        assert_eq!(d.c[2], rat(221, 60));
        assert!(is_effective(&d));
        // alpha = 1/2: P-coefficient -1
        let d = discrepancy(&rat(1, 2));
        assert_eq!(d.c[4], rat(-1, 1));
        assert!(!is_effective(&d));
        // alpha = 0: 29P + 19 d2 + 9 d1
        let d = discrepancy(&rat(0, 1));
        assert_eq!(d.c[4], rat_int(29));
        assert_eq!(d.c[3], rat_int(19));
        assert_eq!(d.c[2], rat_int(9));
    }

    #[test]
    fn discrepancy_affine_in_alpha() {
        // exact linearity check plus the exact threshold roots
        let d0 = discrepancy(&rat(0, 1));
        let d1 = discrepancy(&rat(1, 1));
        let mid = discrepancy(&rat(1, 2));
        let interp = d0.scale(&rat(1, 2)).add(&d1.scale(&rat(1, 2)));
        assert_eq!(mid.c, interp.c);
        assert!(discrepancy(&rat(29, 60)).c[4].is_zero());
    }

    #[test]
    fn polarization_thresholds() {
        assert_eq!(model_polarization(&rat(29, 60)), rat(13, 30));
        assert!(model_polarization(&rat(8, 17)).is_zero());
        assert!(model_polarization(&rat(2, 5)).is_negative());
    }

    #[test]
    fn moving_slope() {
        let ms = moving_slope_certificate();
        assert_eq!(ms.moving_class, DivClass::from_ints(60, -7, -24, -30, 0));
        assert_eq!(ms.slope, rat(60, 7));
        // the Petri cancellation: f*(17 lambda - 2 delta) = 0 after rewrite
        let pb = standard_pullbacks();
        let cls = pb.f_lambda.scale_int(17).sub(&pb.f_delta.scale_int(2));
        assert!(!cls.is_zero());
        assert!(cls.expand_petri().is_zero());
    }
}
