//! Closed-orbit limits of semistable curves, D-curve invariants, and the
//! cross-ratio of a double conic.

use super::{verdict, StabilityVerdict, Status, Witness};
use crate::biform::{centering_change, irreducible_components, BiForm};
use crate::error::Error;
use crate::exact::field::{AlgScalar, Field};
use crate::weights::{limit_under_1ps, max_degenerate_a5_curve, OneParamSubgroup};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClosedOrbitKind {
    StableOrbit,
    MaxDegenerateA5,
    DCurve,
    DoubleConic,
    TripleConic,
}

impl std::fmt::Display for ClosedOrbitKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosedOrbitKind::StableOrbit => write!(f, "stable orbit"),
            ClosedOrbitKind::MaxDegenerateA5 => write!(f, "maximally degenerate A5-curve"),
            ClosedOrbitKind::DCurve => write!(f, "D-curve"),
            ClosedOrbitKind::DoubleConic => write!(f, "double conic"),
            ClosedOrbitKind::TripleConic => write!(f, "triple conic"),
        }
    }
}

/// Invariants of the D-curve family under the residual symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DCurveInvariants {
    /// (bc, b^3 + c^3) of the normalized monic cubic x^3 + bx^2z + cxz^2 + z^3.
    Pair(AlgScalar, AlgScalar),
    /// The orbit of xz(x + z).
    DegenerateXZ,
    /// One tangent direction along a ruling pair (exactly one of the outer
    /// coefficients vanishes); normalization to the monic family impossible.
    RulingPairConic,
}

#[derive(Clone)]
pub struct ClosedOrbitRep {
    pub kind: ClosedOrbitKind,
    /// The representative form: the input for stable orbits, the flat limit
    /// (or the canonical wall A5-curve) otherwise.
    pub form: BiForm,
    pub dcurve: Option<DCurveInvariants>,
    pub cross_ratio: Option<CrossRatioReport>,
}

/// The invariant pair of the normalized monic cubic.
pub fn dcurve_invariants(b: &AlgScalar, c: &AlgScalar) -> (AlgScalar, AlgScalar) {
    let i1 = b.mul(c);
    let i2 = b.mul(b).mul(b).add(&c.mul(c).mul(c));
    (i1, i2)
}

/// Classify the anti-diagonal limit form phi(a, b, c, d) by its root pattern,
/// with exact invariants where defined.
fn classify_antidiagonal(limit: &BiForm) -> Result<(ClosedOrbitKind, Option<DCurveInvariants>), Error> {
    let field = limit.field().clone();
    // limit is supported on i + j = 3: binary cubic e_i x^i z^(3-i)
    let a = limit.coeff(3, 0).clone();
    let b = limit.coeff(2, 1).clone();
    let c = limit.coeff(1, 2).clone();
    let d = limit.coeff(0, 3).clone();
    let p = crate::exact::unipoly::UniPoly::new(&field, "t", vec![d.clone(), c.clone(), b.clone(), a.clone()]);
    // root multiplicities including infinity
    let deg = 3usize;
    let inf_mult = deg - p.degree().unwrap();
    let (_, roots) = crate::exact::factor::split_completely(&p)?;
    let mut mults: Vec<usize> = roots.iter().map(|(_, m)| *m).collect();
    if inf_mult > 0 {
        mults.push(inf_mult);
    }
    mults.sort_unstable_by(|x, y| y.cmp(x));
    let kind = match mults.as_slice() {
        [1, 1, 1] => ClosedOrbitKind::DCurve,
        [2, 1] => ClosedOrbitKind::DoubleConic,
        [3] => ClosedOrbitKind::TripleConic,
        other => {
            return Err(Error::Paradox(format!(
                "unexpected limit root pattern {:?}",
                other
            )))
        }
    };
    let inv = if kind == ClosedOrbitKind::DCurve {
        Some(if !a.is_zero() && !d.is_zero() {
            let ad = a.mul(&d);
            let a2d2 = ad.mul(&ad);
            let i1 = b.mul(&c).div(&ad);
            let i2 = b
                .mul(&b)
                .mul(&b)
                .mul(&d)
                .add(&c.mul(&c).mul(&c).mul(&a))
                .div(&a2d2);
            DCurveInvariants::Pair(i1, i2)
        } else if a.is_zero() && d.is_zero() {
            DCurveInvariants::DegenerateXZ
        } else {
            DCurveInvariants::RulingPairConic
        })
    } else {
        None
    };
    Ok((kind, inv))
}

/// The closed orbit in the orbit closure of a semistable curve.
pub fn closed_orbit_limit(f: &BiForm) -> Result<ClosedOrbitRep, Error> {
    let v = verdict(f)?;
    closed_orbit_limit_with(f, &v)
}

pub fn closed_orbit_limit_with(
    f: &BiForm,
    v: &StabilityVerdict,
) -> Result<ClosedOrbitRep, Error> {
    match v.status {
        Status::Unstable => Err(Error::Usage(
            "closed_orbit_limit requires a semistable curve".into(),
        )),
        Status::Stable => Ok(ClosedOrbitRep {
            kind: ClosedOrbitKind::StableOrbit,
            form: f.clone(),
            dcurve: None,
            cross_ratio: None,
        }),
        Status::StrictlySemistable => {
            let sep = v
                .evidence
                .iter()
                .any(|w| matches!(w, Witness::SeparatingA5Contact { .. }));
            let mult3 = v.evidence.iter().find_map(|w| match w {
                Witness::Mult3Point(p) => Some(p.clone()),
                _ => None,
            });
            let from_mult3 = match &mult3 {
                None => None,
                Some(p) => {
                    let pf = p.p1.0.field().clone();
                    let f_up = f.embed(&pf);
                    let g = centering_change(p);
                    let limit = limit_under_1ps(&f_up, OneParamSubgroup::new(1, 1), &g)?;
                    let (kind, inv) = classify_antidiagonal(&limit)?;
                    let cr = if kind == ClosedOrbitKind::DoubleConic {
                        Some(double_conic_cross_ratio_on(&limit)?)
                    } else {
                        None
                    };
                    Some(ClosedOrbitRep {
                        kind,
                        form: limit,
                        dcurve: inv,
                        cross_ratio: cr,
                    })
                }
            };
            match (sep, from_mult3) {
                (true, None) => Ok(ClosedOrbitRep {
                    kind: ClosedOrbitKind::MaxDegenerateA5,
                    form: max_degenerate_a5_curve(f.field()),
                    dcurve: None,
                    cross_ratio: None,
                }),
                (false, Some(rep)) => Ok(rep),
                (true, Some(rep)) => Err(Error::Paradox(format!(
                    "separating-A5 wall and a multiplicity-3 limit of kind {} coexist",
                    rep.kind
                ))),
                (false, None) => {
                    // strictness from non-reducedness alone cannot occur:
                    // multiple components always carry multiplicity-3 points
                    Err(Error::Paradox(
                        "strictly semistable with no usable wall witness".into(),
                    ))
                }
            }
        }
    }
}

/// Cross-ratio data of a double conic, reported with its S3 orbit.
#[derive(Clone, Debug)]
pub struct CrossRatioReport {
    pub value: AlgScalar,
    /// The six-element (or smaller) orbit under lambda -> 1 - lambda, 1/lambda.
    pub orbit: Vec<AlgScalar>,
}

/// Cross-ratio of a double conic F = L1^2 L2 (L1 irreducible, L2 meeting L1
/// in two distinct points), checked at two sample rulings.
pub fn double_conic_cross_ratio(f: &BiForm) -> Result<CrossRatioReport, Error> {
    double_conic_cross_ratio_on(f)
}

fn double_conic_cross_ratio_on(f: &BiForm) -> Result<CrossRatioReport, Error> {
    if f.bidegree() != (3, 3) {
        return Err(Error::NotDoubleConic);
    }
    let (cfield, comps) = irreducible_components(f)?;
    // locate the doubled (1,1) component
    let mut l1: Option<BiForm> = None;
    for (g, m) in &comps {
        if *m == 2 && g.bidegree() == (1, 1) {
            l1 = Some(g.clone());
        }
    }
    let Some(l1) = l1 else {
        return Err(Error::NotDoubleConic);
    };
    // L1 must be irreducible: the 2x2 coefficient determinant is nonzero
    let det = l1
        .coeff(1, 1)
        .mul(l1.coeff(0, 0))
        .sub(&l1.coeff(1, 0).mul(l1.coeff(0, 1)));
    if det.is_zero() {
        return Err(Error::NotDoubleConic);
    }
    let f_up = f.embed(&cfield);
    let l2 = f_up
        .exact_div(&l1.pow(2))
        .ok_or(Error::NotDoubleConic)?;
    // triple points: L1 cap L2 via the graph parametrization of L1:
    // for (X:Y) = (T:S), the L1 point is (Z:W) = (-(q T + s S) : p T + r S)
    // with L1 = p XZ + q XW + r YZ + s YW
    let p = l1.coeff(1, 1).clone();
    let qq = l1.coeff(1, 0).clone();
    let r = l1.coeff(0, 1).clone();
    let s = l1.coeff(0, 0).clone();
    // Q(T,S) = L2(T, S, -(qT+sS), pT+rS): binary quadratic in (T, S)
    let tvals = |tt: &AlgScalar, ss: &AlgScalar| -> (AlgScalar, AlgScalar) {
        let z = qq.mul(tt).add(&s.mul(ss)).neg();
        let w = p.mul(tt).add(&r.mul(ss));
        (z, w)
    };
    let mut qcoeffs = vec![cfield.zero(); 3];
    // evaluate at (T,S) = (0,1), (1,1), (1,0) and interpolate the quadratic
    let samples = [
        (cfield.zero(), cfield.one()),
        (cfield.one(), cfield.one()),
        (cfield.one(), cfield.zero()),
    ];
    let mut vals = Vec::new();
    for (tt, ss) in &samples {
        let (z, w) = tvals(tt, ss);
        vals.push(l2.eval4(tt, ss, &z, &w));
    }
    // Q = a T^2 + b TS + c S^2: Q(0,1) = c, Q(1,0) = a, Q(1,1) = a + b + c
    qcoeffs[2] = vals[2].clone();
    qcoeffs[0] = vals[0].clone();
    qcoeffs[1] = vals[1].sub(&vals[0]).sub(&vals[2]);
    let qform = crate::biform::BinForm::new(&cfield, 2, vec![qcoeffs[0].clone(), qcoeffs[1].clone(), qcoeffs[2].clone()]);
    if qform.is_zero() {
        return Err(Error::NotDoubleConic);
    }
    let (ext, mut roots) = qform.projective_roots()?;
    if roots.len() != 2 || roots.iter().any(|(_, m)| *m != 1) {
        return Err(Error::NotDoubleConic);
    }
    // deterministic ordering of the triple points
    roots.sort_by(|a, b| {
        let ka = normalize_pair(&a.0);
        let kb = normalize_pair(&b.0);
        ka.0.cmp_det(&kb.0).then(ka.1.cmp_det(&kb.1))
    });
    let q1_first = (ext.embed(&roots[0].0 .0), ext.embed(&roots[0].0 .1));
    let q2_first = (ext.embed(&roots[1].0 .0), ext.embed(&roots[1].0 .1));
    let l1e = l1.embed(&ext);
    let l2e = l2.embed(&ext);
    let pe = ext.embed(&p);
    let qe = ext.embed(&qq);
    let re = ext.embed(&r);
    let se = ext.embed(&s);
    // second coordinates of the triple points via the graph of L1
    let second_of = |tp: &(AlgScalar, AlgScalar)| -> (AlgScalar, AlgScalar) {
        let z = qe.mul(&tp.0).add(&se.mul(&tp.1)).neg();
        let w = pe.mul(&tp.0).add(&re.mul(&tp.1));
        (z, w)
    };
    let h1 = second_of(&q1_first);
    let h2 = second_of(&q2_first);
    // sample vertical rulings avoiding the triple points' first coordinates
    let mut crs = Vec::new();
    let mut c = 0i64;
    while crs.len() < 2 {
        let t = ext.int(c);
        c += 1;
        let sden = ext.one();
        // skip if (t : 1) equals a triple point's first coordinate
        let hits = |q: &(AlgScalar, AlgScalar)| -> bool {
            t.mul(&q.1).sub(&sden.mul(&q.0)).is_zero()
        };
        if hits(&q1_first) || hits(&q2_first) {
            continue;
        }
        // four points on the ruling (Z:W): on L1, on L2, on H1, on H2
        let p1 = {
            let z = qe.mul(&t).add(&se).neg();
            let w = pe.mul(&t).add(&re);
            (z, w)
        };
        let p2 = {
            // L2 restricted to the ruling: linear in (Z, W)
            // L2(t,1,Z,W) = (aZ + bW): a = coeff of Z, b = coeff of W
            let a = l2e.coeff(1, 1).mul(&t).add(l2e.coeff(0, 1));
            let b = l2e.coeff(1, 0).mul(&t).add(l2e.coeff(0, 0));
            // zero locus: (Z : W) = (-b : a)
            (b.neg(), a)
        };
        let p3 = h1.clone();
        let p4 = h2.clone();
        // all four distinct is guaranteed; compute the cross-ratio
        let d = |u: &(AlgScalar, AlgScalar), v: &(AlgScalar, AlgScalar)| -> AlgScalar {
            u.0.mul(&v.1).sub(&v.0.mul(&u.1))
        };
        let num = d(&p1, &p3).mul(&d(&p2, &p4));
        let den = d(&p1, &p4).mul(&d(&p2, &p3));
        if den.is_zero() {
            continue;
        }
        crs.push(num.div(&den));
        let _ = &l1e;
    }
    if crs[0] != crs[1] {
        return Err(Error::Paradox(
            "cross-ratio differs between two sample rulings".into(),
        ));
    }
    let lambda = crs[0].clone();
    let mut orbit = vec![lambda.clone()];
    let one = ext.one();
    let push_new = |v: AlgScalar, orbit: &mut Vec<AlgScalar>| {
        if !orbit.iter().any(|w| w == &v) {
            orbit.push(v);
        }
    };
    let l2v = one.sub(&lambda);
    push_new(l2v.clone(), &mut orbit);
    if !lambda.is_zero() {
        push_new(lambda.inv().unwrap(), &mut orbit);
        push_new(one.sub(&lambda.inv().unwrap()), &mut orbit);
    }
    if !l2v.is_zero() {
        push_new(l2v.inv().unwrap(), &mut orbit);
        if !lambda.is_zero() {
            push_new(lambda.sub(&one).div(&lambda).inv().unwrap(), &mut orbit);
        }
    }
    Ok(CrossRatioReport {
        value: lambda,
        orbit,
    })
}

fn normalize_pair(p: &(AlgScalar, AlgScalar)) -> (AlgScalar, AlgScalar) {
    if !p.0.is_zero() {
        let inv = p.0.inv().unwrap();
        (p.0.mul(&inv), p.1.mul(&inv))
    } else {
        let inv = p.1.inv().unwrap();
        (p.0.mul(&inv), p.1.mul(&inv))
    }
}

/// Convenience: the representative (3,3) form of the generic D-curve with
/// the given cubic coefficients.
pub fn dcurve_form(field: &Field, a: i64, b: i64, c: i64, d: i64) -> BiForm {
    BiForm::from_int_terms(field, 3, 3, &[(a, 3, 0), (b, 2, 1), (c, 1, 2), (d, 0, 3)])
}

/// A J10 family member: three conics x + z + c_i x z through the origin.
pub fn j10_family(field: &Field, cs: [i64; 3]) -> BiForm {
    let mk = |c: i64| BiForm::from_int_terms(field, 1, 1, &[(1, 1, 0), (1, 0, 1), (c, 1, 1)]);
    mk(cs[0]).mul(&mk(cs[1])).mul(&mk(cs[2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::rat;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn j10_members_limit_to_triple_conic() {
        for cs in [[1i64, 2, 3], [2, 5, 7], [-1, 1, 4]] {
            let f = j10_family(&q(), cs);
            let rep = closed_orbit_limit(&f).unwrap();
            assert_eq!(rep.kind, ClosedOrbitKind::TripleConic, "cs = {:?}", cs);
        }
    }

    #[test]
    fn d8_fixture_limits_to_double_conic() {
        let c1 = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 1), (2, 0, 1), (-2, 1, 0)]);
        let c2 = BiForm::from_int_terms(&q(), 2, 2, &[(1, 0, 2), (-1, 2, 0), (1, 2, 1)]);
        let f = c1.mul(&c2);
        let rep = closed_orbit_limit(&f).unwrap();
        assert_eq!(rep.kind, ClosedOrbitKind::DoubleConic);
        let cr = rep.cross_ratio.expect("double conic carries a cross-ratio");
        assert!(!cr.value.is_zero());
    }

    #[test]
    fn generic_dcurve_invariants() {
        // x^3 + 2x^2 z + 3xz^2 + z^3
        let f = dcurve_form(&q(), 1, 2, 3, 1);
        let rep = closed_orbit_limit(&f).unwrap();
        assert_eq!(rep.kind, ClosedOrbitKind::DCurve);
        match rep.dcurve.unwrap() {
            DCurveInvariants::Pair(i1, i2) => {
                assert_eq!(i1, q().int(6));
                assert_eq!(i2, q().int(35)); // 8 + 27
            }
            other => panic!("expected invariant pair, got {:?}", other),
        }
    }

    #[test]
    fn dcurve_invariants_symmetry() {
        let b = q().from_rat(rat(5, 2));
        let c = q().from_rat(rat(-7, 3));
        let (i1, i2) = dcurve_invariants(&b, &c);
        let (j1, j2) = dcurve_invariants(&c, &b);
        assert_eq!(i1, j1);
        assert_eq!(i2, j2);
        // scaling (b, c) -> (wb, w^2 c) with w^3 = 1 fixes the pair; over Q
        // only w = 1, so check instead the explicit formulas
        assert_eq!(i1, b.mul(&c));
    }

    #[test]
    fn triple_point_cubic_333_flagged() {
        // (b, c) = (3, 3): the cubic (x+z)^3 must come out as TripleConic
        let f = dcurve_form(&q(), 1, 3, 3, 1);
        let rep = closed_orbit_limit(&f).unwrap();
        assert_eq!(rep.kind, ClosedOrbitKind::TripleConic);
        assert!(rep.dcurve.is_none());
    }

    #[test]
    fn degenerate_xz_marker() {
        // xz(x+z): coefficients (0, 1, 1, 0)
        let f = dcurve_form(&q(), 0, 1, 1, 0);
        let rep = closed_orbit_limit(&f).unwrap();
        assert_eq!(rep.kind, ClosedOrbitKind::DCurve);
        assert_eq!(rep.dcurve.unwrap(), DCurveInvariants::DegenerateXZ);
    }

    #[test]
    fn a5_wall_beats_nothing() {
        let f = crate::weights::max_degenerate_a5_curve(&q());
        let rep = closed_orbit_limit(&f).unwrap();
        assert_eq!(rep.kind, ClosedOrbitKind::MaxDegenerateA5);
    }

    #[test]
    fn stable_orbit_passthrough() {
        let fx = BiForm::from_int_terms(&q(), 3, 0, &[(1, 3, 0), (1, 0, 0)]);
        let fz = BiForm::from_int_terms(&q(), 0, 3, &[(1, 0, 3), (1, 0, 0)]);
        let f = fx.mul(&fz);
        let rep = closed_orbit_limit(&f).unwrap();
        assert_eq!(rep.kind, ClosedOrbitKind::StableOrbit);
        assert_eq!(rep.form, f);
    }

    #[test]
    fn fixed_points_of_the_limit() {
        // triple conic, double conic, D-curve, wall A5-curve map to themselves
        let dc = dcurve_form(&q(), 1, 2, 3, 1);
        let rep1 = closed_orbit_limit(&dc).unwrap();
        let rep2 = closed_orbit_limit(&rep1.form).unwrap();
        assert_eq!(rep1.kind, rep2.kind);
        assert_eq!(rep1.dcurve, rep2.dcurve);
        let a5 = crate::weights::max_degenerate_a5_curve(&q());
        let rep = closed_orbit_limit(&a5).unwrap();
        let rep2 = closed_orbit_limit(&rep.form).unwrap();
        assert_eq!(rep.kind, rep2.kind);
    }

    #[test]
    fn cross_ratio_sampled_consistently() {
        // symmetric double conic: L1 = XZ - YW, L2 = XW - YZ
        let l1 = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 1), (-1, 0, 0)]);
        let l2 = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 0), (-1, 0, 1)]);
        let f = l1.pow(2).mul(&l2);
        let cr = double_conic_cross_ratio(&f).unwrap();
        assert!(!cr.value.is_zero());
        assert!(cr.orbit.len() <= 6);
        // swapped factor order gives a value in the same S3 orbit
        let g = l2.pow(2).mul(&l1);
        match double_conic_cross_ratio(&g) {
            Ok(cr2) => {
                assert!(cr.orbit.iter().any(|v| {
                    // compare within Q: both rational here
                    v == &cr2.value
                }));
            }
            Err(e) => panic!("swapped double conic failed: {}", e),
        }
        // tangent residual conic: NOT_DOUBLE_CONIC
        // L2' tangent to L1: choose L2' = XZ - YW + XW (meets L1 where XW = 0
        // on L1: tangency check comes out through the double root)
        let l2t = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 1), (-1, 0, 0), (1, 1, 0)]);
        let ft = l1.pow(2).mul(&l2t);
        match double_conic_cross_ratio(&ft) {
            Err(Error::NotDoubleConic) => {}
            other => panic!("expected NOT_DOUBLE_CONIC, got {:?}", other.map(|c| c.value)),
        }
    }
}
