//! Acceptance suite: one test per criterion, every check exact, each test
//! printing its own pass line.

use quadric33::biform::{
    apply_coord_change, centering_change, irreducible_components, local_expand, BiForm,
    CoordChange, Mat2, SurfacePoint,
};
use quadric33::corpus::{
    self, a8_curve, a8_parametrization, a9_curve, corpus, d8_curve, random_suites, Expected,
    Fixture,
};
use quadric33::divisors;
use quadric33::exact::bipoly::BiPoly;
use quadric33::exact::field::{rat, Field, Rat};
use quadric33::exact::unipoly::UniPoly;
use quadric33::rng::Rng;
use quadric33::singularity::{
    classify_local, milnor_number, sing_locus, SingularityType,
};
use quadric33::stability::{
    closed_orbit_limit, double_conic_cross_ratio, mult3_points, stratum_label, verdict,
    ClosedOrbitKind, Status,
};
use quadric33::weights::{
    check_certificate, limit_under_1ps, max_degenerate_a5_curve, monomial_weight, mu_min,
    primitive_subgroups_in_box, weight_table, CertificateVerdict, OneParamSubgroup,
};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn q() -> Field {
    Field::rationals()
}

/// The positive-weight classification for u >= v >= 0, straight from the
/// six-item case list.
fn positive_by_sixitem_list(i: usize, j: usize, u: i64, v: i64) -> bool {
    assert!(u >= v && v >= 0 && u > 0);
    match (i, j) {
        (3, j2) if j2 >= 1 => true,
        (3, 0) => u > v,
        (2, j2) if j2 >= 2 => true,
        (2, 1) => u > v,
        (2, 0) => u > 3 * v,
        (1, 3) => u < 3 * v,
        _ => false,
    }
}

#[test]
fn criterion_01_weight_tables() {
    for (u, v) in [(2i64, 1i64), (4, 1), (1, 1), (3, 1)] {
        let t = weight_table((3, 3), OneParamSubgroup::new(u, v));
        for i in 0..=3usize {
            for j in 0..=3usize {
                assert_eq!(
                    t.positive.contains(&(i, j)),
                    positive_by_sixitem_list(i, j, u, v),
                    "positive set mismatch at (i,j)=({},{}), rho=({},{})",
                    i,
                    j,
                    u,
                    v
                );
            }
        }
    }
    let t31 = weight_table((3, 3), OneParamSubgroup::new(3, 1));
    assert_eq!(t31.zero, vec![(1, 3), (2, 0)], "rho_31 zero set");
    let t11 = weight_table((3, 3), OneParamSubgroup::new(1, 1));
    let mut z = t11.zero.clone();
    z.sort();
    assert_eq!(z, vec![(0, 3), (1, 2), (2, 1), (3, 0)], "rho_11 zero set");
    println!("criterion 01 weight tables: PASS");
}

#[test]
fn criterion_02_maximally_degenerate_a5() {
    let f = max_degenerate_a5_curve(&q());
    let v = verdict(&f).unwrap();
    assert_eq!(v.status, Status::StrictlySemistable);
    let reports = sing_locus(&f).unwrap();
    assert_eq!(reports.len(), 2);
    for r in &reports {
        assert_eq!(r.kind, SingularityType::A(5));
        assert!(r.separating);
    }
    let orbit = closed_orbit_limit(&f).unwrap();
    assert_eq!(orbit.kind, ClosedOrbitKind::MaxDegenerateA5);
    let label = stratum_label(&v, &reports, Some(&orbit));
    assert_eq!(label, "Delta_2");
    println!("criterion 02 maximally degenerate A5 curve: PASS");
}

#[test]
fn criterion_03_fifty_random_nonsemistable_instances() {
    let (cube_contact, double_ruling) = random_suites(quadric33::rng::DEFAULT_SEED, 50);
    assert_eq!(cube_contact.len(), 50);
    assert_eq!(double_ruling.len(), 50);
    for (suite, rho) in [(&cube_contact, (2i64, 1i64)), (&double_ruling, (4i64, 1i64))] {
        for f in suite.iter() {
            let v = verdict(f).unwrap();
            assert_eq!(v.status, Status::Unstable);
            let cert = v.certificate.expect("unstable verdicts carry certificates");
            assert_eq!((cert.rho.u, cert.rho.v), rho);
            assert_eq!(
                check_certificate(f, &cert).unwrap(),
                CertificateVerdict::ValidUnstable
            );
        }
    }
    println!("criterion 03 random nonsemistable instances with certificates: PASS");
}

/// Brute-force numerical oracle: translate each candidate point to the
/// origin chart and scan every primitive one-parameter subgroup in the box
/// |u|, |v| <= 4. Reduced curves are enumerated over their own base field;
/// non-reduced ones contribute component intersections and sample points on
/// their multiple components.
fn oracle_status(f: &BiForm) -> Status {
    let mut candidates: Vec<SurfacePoint> = Vec::new();
    match quadric33::singularity::locus::singular_points_with_mult(f) {
        Ok(pts) => {
            for (p, _, _) in pts {
                candidates.push(p);
            }
        }
        Err(quadric33::Error::NonReduced) => {
            let (cfield, comps) = irreducible_components(f).unwrap();
            let mut red = BiForm::monomial(&cfield, 0, 0, cfield.one(), 0, 0);
            for (g, _) in &comps {
                red = red.mul(g);
            }
            if red.bidegree() != (0, 0) {
                for (p, _, _) in
                    quadric33::singularity::locus::singular_points_with_mult(&red).unwrap()
                {
                    candidates.push(p);
                }
            }
            for p in mult3_points(f, false).unwrap() {
                candidates.push(p);
            }
        }
        Err(e) => panic!("oracle candidate enumeration failed: {}", e),
    }
    let mut best: Option<i64> = None;
    for p in &candidates {
        let pf = p.p1.0.field().clone();
        let f_up = f.embed(&pf);
        let g = centering_change(p);
        let moved = apply_coord_change(&f_up, &g).unwrap();
        for rho in primitive_subgroups_in_box(4) {
            let m = mu_min(&moved, rho);
            best = Some(best.map_or(m, |b| b.max(m)));
        }
    }
    match best {
        Some(m) if m > 0 => Status::Unstable,
        Some(0) => Status::StrictlySemistable,
        _ => Status::Stable,
    }
}

#[test]
fn criterion_04_classifier_vs_oracle() {
    let mut disagreements = Vec::new();
    let mut checked = 0usize;
    for e in corpus() {
        if let Fixture::Curve(f) = &e.fixture {
            let v = verdict(f).unwrap();
            let o = oracle_status(f);
            if v.status != o {
                disagreements.push(format!("{}: verdict {:?}, oracle {:?}", e.name, v.status, o));
            }
            checked += 1;
        }
    }
    let mut rng = Rng::new(quadric33::rng::DEFAULT_SEED ^ 0x5eed);
    for k in 0..100 {
        let f = corpus::random_curve_with_rational_singularities(&mut rng);
        let v = verdict(&f).unwrap();
        let o = oracle_status(&f);
        if v.status != o {
            disagreements.push(format!("random #{}: verdict {:?}, oracle {:?}", k, v.status, o));
        }
        checked += 1;
    }
    assert!(
        disagreements.is_empty(),
        "{} disagreements out of {}: {:?}",
        disagreements.len(),
        checked,
        disagreements
    );
    println!(
        "criterion 04 classifier vs numerical oracle ({} curves, 0 disagreements): PASS",
        checked
    );
}

fn random_local_change(rng: &mut Rng, field: &Field) -> (BiPoly, BiPoly) {
    loop {
        let a = rng.int_in(-3, 3);
        let b = rng.int_in(-3, 3);
        let c = rng.int_in(-3, 3);
        let d = rng.int_in(-3, 3);
        if a * d - b * c == 0 {
            continue;
        }
        let ximg = BiPoly::from_ints(field, &[(a, 1, 0), (b, 0, 1)]);
        let zimg = BiPoly::from_ints(field, &[(c, 1, 0), (d, 0, 1)]);
        return (ximg, zimg);
    }
}

#[test]
fn criterion_05_singularity_lab_normal_forms() {
    let field = q();
    let mut fixtures: Vec<(BiPoly, SingularityType, usize)> = Vec::new();
    for k in 1..=9usize {
        let f = BiPoly::from_ints(&field, &[(1, 0, 2)])
            .sub(&BiPoly::from_ints(&field, &[(1, k + 1, 0)]));
        fixtures.push((f, SingularityType::A(k), k));
    }
    for twok in [4usize, 6, 8] {
        let f = BiPoly::from_ints(&field, &[(1, 1, 2)])
            .sub(&BiPoly::from_ints(&field, &[(1, twok - 1, 0)]));
        fixtures.push((f, SingularityType::D(twok), twok));
    }
    for k in [2usize, 3] {
        let f = BiPoly::from_ints(&field, &[(1, 1, 2)])
            .sub(&BiPoly::from_ints(&field, &[(1, 2 * k, 0)]));
        fixtures.push((f, SingularityType::D(2 * k + 1), 2 * k + 1));
    }
    fixtures.push((
        BiPoly::from_ints(&field, &[(1, 3, 0), (1, 0, 4)]),
        SingularityType::E6,
        6,
    ));
    fixtures.push((
        BiPoly::from_ints(&field, &[(1, 3, 0), (1, 1, 3)]),
        SingularityType::E7,
        7,
    ));
    fixtures.push((
        BiPoly::from_ints(&field, &[(1, 3, 0), (1, 0, 5)]),
        SingularityType::E8,
        8,
    ));
    fixtures.push((
        BiPoly::from_ints(&field, &[(1, 0, 3), (-1, 6, 0)]),
        SingularityType::J10,
        10,
    ));
    let mut rng = Rng::new(quadric33::rng::DEFAULT_SEED ^ 0xc1a551f);
    for (f, expected, mu) in &fixtures {
        assert_eq!(classify_local(f).unwrap(), *expected);
        assert_eq!(milnor_number(f).unwrap(), *mu);
        for _ in 0..20 {
            let (ximg, zimg) = random_local_change(&mut rng, &field);
            let mut g = f.substitute(&ximg, &zimg);
            // optionally twist by a local unit 1 + ax + bz
            let unit = BiPoly::from_ints(
                &field,
                &[(1, 0, 0), (rng.int_in(-2, 2), 1, 0), (rng.int_in(-2, 2), 0, 1)],
            );
            g = g.mul(&unit);
            assert_eq!(
                classify_local(&g).unwrap(),
                *expected,
                "type changed under coordinate change"
            );
        }
    }
    println!(
        "criterion 05 singularity normal forms under {} fixtures x 20 changes: PASS",
        fixtures.len()
    );
}

#[test]
fn criterion_06_a8_pipeline() {
    let phi = a8_parametrization();
    let f = a8_curve();
    assert_eq!(f.bidegree(), (3, 3));
    // exact identical vanishing: substitute the parametrization symbolically
    let field = q();
    let (p1, q1) = &phi.phi1;
    let (p2, q2) = &phi.phi2;
    let mut composite = UniPoly::zero(&field, "t");
    for i in 0..=3usize {
        for j in 0..=3usize {
            let c = f.coeff(i, j);
            if c.is_zero() {
                continue;
            }
            let mut term = UniPoly::constant(&field, "t", c.clone());
            term = term.mul(&p1.pow(i)).mul(&q1.pow(3 - i));
            term = term.mul(&p2.pow(j)).mul(&q2.pow(3 - j));
            composite = composite.add(&term);
        }
    }
    assert!(composite.is_zero(), "parametrization must vanish identically");
    let reports = sing_locus(&f).unwrap();
    assert_eq!(reports.len(), 1, "exactly one singular point");
    let r = &reports[0];
    assert_eq!(r.kind, SingularityType::A(8));
    assert_eq!(r.milnor, 8);
    assert_eq!(r.branches, 1);
    assert_eq!(r.delta, 4);
    assert_eq!(r.conjugates, 1);
    // rational normalization: the delta sum exhausts the arithmetic genus
    assert_eq!(r.delta * r.conjugates, 4);
    println!("criterion 06 A8 implicitization pipeline: PASS");
}

#[test]
fn criterion_07_j10_specialization() {
    let triples = [[1i64, 2, 3], [2, -1, 5], [3, 4, 7]];
    for cs in triples {
        let f = corpus::j10_curve(cs);
        // the common point is ((0:1),(0:1)); flat limit under rho_{1,1}
        let p = SurfacePoint::from_ints(&q(), (0, 1), (0, 1));
        let g = centering_change(&p);
        let limit = limit_under_1ps(&f, OneParamSubgroup::new(1, 1), &g).unwrap();
        let (_, parts) = irreducible_components(&limit).unwrap();
        assert_eq!(parts.len(), 1, "limit must be a single component");
        assert_eq!(parts[0].1, 3, "triple conic");
        assert_eq!(parts[0].0.bidegree(), (1, 1));
        let orbit = closed_orbit_limit(&f).unwrap();
        assert_eq!(orbit.kind, ClosedOrbitKind::TripleConic, "cs = {:?}", cs);
    }
    println!("criterion 07 J10 specialization to the triple conic: PASS");
}

#[test]
fn criterion_08_d8_specialization() {
    let f = d8_curve();
    let reports = sing_locus(&f).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].kind, SingularityType::D(8));
    let orbit = closed_orbit_limit(&f).unwrap();
    assert_eq!(orbit.kind, ClosedOrbitKind::DoubleConic);
    // the cross-ratio computation itself verifies equality at two distinct
    // generic rulings and fails otherwise
    let cr = double_conic_cross_ratio(&orbit.form).unwrap();
    assert!(!cr.value.is_zero());
    assert!(!cr.orbit.is_empty());
    println!("criterion 08 D8 specialization to a double conic: PASS");
}

#[test]
fn criterion_09_divisor_suite() {
    assert_eq!(divisors::kappa_on_v(), Rat::from_integer(BigInt::from(14)));
    let (l, d) = divisors::lambda_delta_on_v();
    assert_eq!(l, Rat::from_integer(BigInt::from(4)));
    assert_eq!(d, Rat::from_integer(BigInt::from(34)));
    let petri = divisors::petri_class_in_ldd();
    assert_eq!(petri, divisors::DivClass::from_ints(17, -2, -7, -9, 0));
    let pb = divisors::standard_pullbacks();
    assert_eq!(pb.f_lambda, divisors::DivClass::from_ints(1, 0, 1, 3, 7));
    assert_eq!(pb.f_delta, divisors::DivClass::from_ints(0, 1, 12, 30, 60));
    assert_eq!(divisors::t3().vector[4], rat(-1, 1), "P . T3 = -1");
    // discrepancy P-coefficient vanishes exactly at alpha = 29/60
    let d29 = divisors::discrepancy(&rat(29, 60));
    assert!(d29.c[4].is_zero());
    let eps = rat(1, 600);
    assert!(!divisors::discrepancy(&(rat(29, 60) + &eps)).c[4].is_zero());
    // polarization vanishes exactly at 8/17
    assert!(divisors::model_polarization(&rat(8, 17)).is_zero());
    assert!(divisors::model_polarization(&(rat(8, 17) + &eps)).is_positive());
    assert!(divisors::model_polarization(&(rat(8, 17) - &eps)).is_negative());
    let ms = divisors::moving_slope_certificate();
    assert_eq!(ms.slope, rat(60, 7));
    assert_eq!(
        ms.moving_class,
        divisors::DivClass::from_ints(60, -7, -24, -30, 0)
    );
    // f*(17 lambda - 2 delta) = 0 after the Petri rewrite
    let cls = pb.f_lambda.scale_int(17).sub(&pb.f_delta.scale_int(2));
    assert!(cls.expand_petri().is_zero());
    println!("criterion 09 divisor suite: PASS");
}

fn random_group_element(rng: &mut Rng, field: &Field, allow_swap: bool) -> CoordChange {
    let mut mat = || loop {
        let a = rng.int_in(-3, 3);
        let b = rng.int_in(-3, 3);
        let c = rng.int_in(-3, 3);
        let d = rng.int_in(-3, 3);
        if a * d - b * c != 0 {
            return Mat2::from_ints(field, [[a, b], [c, d]]);
        }
    };
    CoordChange {
        a: mat(),
        b: mat(),
        swap: allow_swap && rng.int_in(0, 1) == 1,
    }
}

fn sing_multiset(f: &BiForm) -> Result<Vec<(SingularityType, usize)>, quadric33::Error> {
    let rs = sing_locus(f)?;
    let mut out: Vec<(SingularityType, usize)> = Vec::new();
    for r in &rs {
        if let Some(slot) = out.iter_mut().find(|(k, _)| *k == r.kind) {
            slot.1 += r.conjugates;
        } else {
            out.push((r.kind, r.conjugates));
        }
    }
    out.sort_by_key(|(k, _)| format!("{}", k));
    Ok(out)
}

#[test]
fn criterion_10_equivariance() {
    let mut rng = Rng::new(quadric33::rng::DEFAULT_SEED ^ 0x9e0111);
    let mut curves = 0usize;
    for e in corpus() {
        let Fixture::Curve(f) = &e.fixture else { continue };
        // skip entries whose expected data is a discrepancy record
        if matches!(e.expected, Expected::Discrepancy { .. }) {
            continue;
        }
        curves += 1;
        let base_v = verdict(f).unwrap();
        let base_orbit = if base_v.status != Status::Unstable {
            Some(closed_orbit_limit(f).unwrap().kind)
        } else {
            None
        };
        let base_sing = sing_multiset(f);
        for gi in 0..10 {
            let g = random_group_element(&mut rng, &q(), true);
            let fg = apply_coord_change(f, &g).unwrap();
            let vg = verdict(&fg).unwrap();
            assert_eq!(
                vg.status, base_v.status,
                "{}: status changed under g #{}",
                e.name, gi
            );
            let orbit_g = if vg.status != Status::Unstable {
                Some(closed_orbit_limit(&fg).unwrap().kind)
            } else {
                None
            };
            assert_eq!(orbit_g, base_orbit, "{}: orbit kind changed", e.name);
            match (&base_sing, sing_multiset(&fg)) {
                (Ok(b), Ok(gms)) => {
                    assert_eq!(&gms, b, "{}: singularity multiset changed", e.name)
                }
                (Err(quadric33::Error::NonReduced), Err(quadric33::Error::NonReduced)) => {}
                (b, gm) => panic!(
                    "{}: singularity analysis diverged: base {:?}, moved {:?}",
                    e.name, b, gm
                ),
            }
        }
    }
    assert!(curves >= 10, "expected a nontrivial curve corpus");
    println!(
        "criterion 10 equivariance over {} corpus curves x 10 group elements: PASS",
        curves
    );
}

#[test]
fn corpus_suite_green() {
    let (outcomes, ok) = corpus::corpus_run(4);
    for o in &outcomes {
        assert!(o.passed, "{}: {}", o.name, o.detail);
    }
    assert!(ok);
    println!("corpus run ({} entries): PASS", outcomes.len());
}

#[test]
fn a9_constructed_curve_has_single_a9() {
    let f = a9_curve();
    let reports = sing_locus(&f).unwrap();
    assert_eq!(reports.len(), 1);
    let r = &reports[0];
    assert_eq!(r.kind, SingularityType::A(9));
    assert_eq!((r.milnor, r.branches, r.delta), (9, 2, 5));
    assert_eq!(verdict(&f).unwrap().status, Status::Stable);
    println!("constructed A9 fixture: PASS");
}

#[test]
fn weight_formula_spot_values() {
    assert_eq!(monomial_weight(3, 3, (3, 3), OneParamSubgroup::new(1, 1)), 6);
    assert_eq!(monomial_weight(1, 3, (3, 3), OneParamSubgroup::new(2, 1)), 1);
    assert_eq!(monomial_weight(2, 0, (3, 3), OneParamSubgroup::new(4, 1)), 1);
    // the wall curve support weights vanish on the rho_{3,1} wall
    let f = max_degenerate_a5_curve(&q());
    assert_eq!(mu_min(&f, OneParamSubgroup::new(3, 1)), 0);
    // local expansion of the wall curve at the contact point has the A5 germ
    let p = SurfacePoint::from_ints(&q(), (0, 1), (0, 1));
    let germ = local_expand(&f, &p);
    assert_eq!(classify_local(&germ).unwrap(), SingularityType::A(5));
    println!("weight formula spot values: PASS");
}
