//! The fixture corpus: every named curve family with its expected
//! classification, random nonsemistable instance generators, and the
//! executable corpus run.

use crate::biform::{implicitize, BiForm, Parametrization};
use crate::exact::bipoly::BiPoly;
use crate::exact::field::Field;
use crate::exact::unipoly::UniPoly;
use crate::rng::Rng;
use crate::singularity::{classify_local, sing_locus, SingularityType};
use crate::stability::{closed_orbit_limit_with, stratum_label, verdict, ClosedOrbitKind, Status};

/// What a corpus entry expects; every expectation carries a provenance note
/// (the suite refuses entries without one).
#[derive(Clone, Debug)]
pub enum Expected {
    Curve {
        status: Status,
        orbit: Option<ClosedOrbitKind>,
        /// (type, number of points counted with conjugates)
        singularities: Option<Vec<(SingularityType, usize)>>,
        stratum: Option<&'static str>,
    },
    Local {
        kind: SingularityType,
        milnor: usize,
    },
    /// The fixture records data that fails its own consistency checks; the
    /// entry passes when the discrepancy is reproduced, not silently patched.
    Discrepancy { reason: &'static str },
}

pub enum Fixture {
    Curve(BiForm),
    Local(BiPoly),
    /// A parametrization pair printed with rows that should lie on the
    /// quadric; carries the on-quadric defect polynomial of the second row.
    PrintedParamCheck { defect_is_zero: bool },
}

pub struct CorpusEntry {
    pub name: &'static str,
    pub provenance: &'static str,
    pub fixture: Fixture,
    pub expected: Expected,
}

fn q() -> Field {
    Field::rationals()
}

fn poly(cs: &[i64]) -> UniPoly {
    UniPoly::from_ints(&q(), "t", cs)
}

/// The A8 curve: parametrized in the (z0:z2) x (z0:z1) chart of the quadric.
pub fn a8_parametrization() -> Parametrization {
    // z0 = 1 - 3t + 3t^3, z1 = z0 (t^2 + t^3), z2 = t^2 (1 - 2t), z3 = t^4 (1 - t - 2t^2)
    // phi1 = (z0 : z2), phi2 = (z0 : z1) = (1 : t^2 + t^3)
    Parametrization::new(
        (poly(&[1, -3, 0, 3]), poly(&[0, 0, 1, -2])),
        (poly(&[1]), poly(&[0, 0, 1, 1])),
    )
}

pub fn a8_curve() -> BiForm {
    implicitize(&a8_parametrization()).expect("A8 parametrization implicitizes")
}

/// The constructed A9 curve: branches of class (1,2) and (2,1) with contact
/// order 5 at ((1:1),(1:1)). The (2,1) branch solves the four tangency
/// conditions exactly; the resulting singular point is checked to be the
/// unique one by the suite.
pub fn a9_branches() -> (Parametrization, Parametrization) {
    // branch 1: ((1 : s^2), (1 : s))
    let b1 = Parametrization::new((poly(&[1]), poly(&[0, 0, 1])), (poly(&[1]), poly(&[0, 1])));
    // branch 2: ((u : 1), (5u^2 + 10u + 1 : u^2 + 10u + 5))
    let b2 = Parametrization::new(
        (poly(&[0, 1]), poly(&[1])),
        (poly(&[1, 10, 5]), poly(&[5, 10, 1])),
    );
    (b1, b2)
}

pub fn a9_curve() -> BiForm {
    let (b1, b2) = a9_branches();
    let f1 = implicitize(&b1).expect("branch 1");
    let f2 = implicitize(&b2).expect("branch 2");
    f1.mul(&f2)
}

/// The printed A9 parametrization rows: the first row (1, s, s^2, s^3) lies
/// on the quadric z0 z3 = z1 z2; the second row as printed does not, which
/// this check reproduces.
pub fn a9_printed_second_row_on_quadric() -> bool {
    // (1 - 3t + 3t^2 + t^3, t(1 - 2t + t^2), t^2 - t^3, t^3)
    let z0 = poly(&[1, -3, 3, 1]);
    let z1 = poly(&[0, 1, -2, 1]);
    let z2 = poly(&[0, 0, 1, -1]);
    let z3 = poly(&[0, 0, 0, 1]);
    z0.mul(&z3).sub(&z1.mul(&z2)).is_zero()
}

/// The D8 configuration: a nodal (2,2) plus a (1,1) meeting one nodal branch
/// with contact order 3, assembled from exact tangency conditions.
pub fn d8_curve() -> BiForm {
    let c1 = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 1), (2, 0, 1), (-2, 1, 0)]);
    let c2 = BiForm::from_int_terms(&q(), 2, 2, &[(1, 0, 2), (-1, 2, 0), (1, 2, 1)]);
    c1.mul(&c2)
}

/// Three conics through one point, pairwise tangent there.
pub fn j10_curve(cs: [i64; 3]) -> BiForm {
    crate::stability::orbit::j10_family(&q(), cs)
}

/// E-series fixtures inside the (3,3) chart lattice: germs at the origin of
/// type E6, E7, E8, homogenized to global curves.
pub fn e_fixture(kind: SingularityType) -> BiForm {
    let l = BiPoly::from_ints(&q(), &[(1, 1, 0), (1, 0, 1)]); // x + z
    let chart = match kind {
        SingularityType::E6 => l.pow(3).add(&BiPoly::from_ints(&q(), &[(1, 3, 1)])),
        SingularityType::E7 => {
            let c = l.mul(&l).add(&BiPoly::from_ints(&q(), &[(1, 2, 1)]));
            l.mul(&c)
        }
        SingularityType::E8 => l.pow(3).add(&BiPoly::from_ints(&q(), &[(1, 2, 3)])),
        _ => panic!("E6/E7/E8 only"),
    };
    BiForm::homogenize(&q(), &chart, 3, 3)
}

/// The smooth stable fixture; smoothness is checked by the suite.
pub fn stable_fixture() -> BiForm {
    crate::parse::parse_curve(
        "X^3*Z^3 + Y^3*W^3 + X^3*W^3 + Y^3*Z^3 + X*Y*Z*W*(X*Z + Y*W)",
        &q(),
    )
    .unwrap()
}

/// Random nonsemistable instance destabilized on the ray (2,1): a ruling
/// plus a (2,3) residual with a cube contact at a singular point.
pub fn random_cube_contact_instance(rng: &mut Rng) -> BiForm {
    loop {
        let c = rng.nonzero_in(1, 9);
        let a: Vec<i64> = (0..3).map(|_| rng.int_in(-4, 4)).collect();
        let b: Vec<i64> = (0..4).map(|_| rng.int_in(-4, 4)).collect();
        if a.iter().all(|v| *v == 0) && b.iter().all(|v| *v == 0) {
            continue;
        }
        // x (c z^3 + a0 xz + a1 xz^2 + a2 xz^3 + b1 x^2 + b2 x^2 z + b3 x^2 z^2 + b4 x^2 z^3)
        return BiForm::from_int_terms(
            &q(),
            3,
            3,
            &[
                (c, 1, 3),
                (a[0], 2, 1),
                (a[1], 2, 2),
                (a[2], 2, 3),
                (b[0], 3, 0),
                (b[1], 3, 1),
                (b[2], 3, 2),
                (b[3], 3, 3),
            ],
        );
    }
}

/// Random nonsemistable instance destabilized on the ray (4,1): a double ruling.
pub fn random_double_ruling_instance(rng: &mut Rng) -> BiForm {
    // x^2 (1 + a0 z + a1 z^2 + a2 z^3 + b1 x + b2 xz + b3 xz^2 + b4 xz^3)
    let a: Vec<i64> = (0..3).map(|_| rng.int_in(-4, 4)).collect();
    let b: Vec<i64> = (0..4).map(|_| rng.int_in(-4, 4)).collect();
    BiForm::from_int_terms(
        &q(),
        3,
        3,
        &[
            (1, 2, 0),
            (a[0], 2, 1),
            (a[1], 2, 2),
            (a[2], 2, 3),
            (b[0], 3, 0),
            (b[1], 3, 1),
            (b[2], 3, 2),
            (b[3], 3, 3),
        ],
    )
}

/// Random (3,3) curve with imposed rational singular points: a random integer
/// form corrected by a solution of the linear singularity conditions.
pub fn random_curve_with_rational_singularities(rng: &mut Rng) -> BiForm {
    use crate::biform::{centering_change, apply_coord_change, SurfacePoint};
    loop {
        let mut f0 = BiForm::zero(&q(), 3, 3);
        for i in 0..=3 {
            for j in 0..=3 {
                f0.set_coeff(i, j, q().int(rng.int_in(-9, 9)));
            }
        }
        if f0.is_zero() {
            continue;
        }
        let npts = rng.int_in(0, 2);
        let mut pts = Vec::new();
        for _ in 0..npts {
            let p = SurfacePoint::from_ints(
                &q(),
                (rng.int_in(-2, 2), 1),
                (rng.int_in(-2, 2), 1),
            );
            if pts.iter().any(|qp: &SurfacePoint| {
                let a = qp.canonical();
                let b = p.canonical();
                a.p1 == b.p1 && a.p2 == b.p2
            }) {
                continue;
            }
            pts.push(p);
        }
        // impose F(p) = F_x(p) = F_z(p) = 0 for each point by solving the
        // linear system on the 16 coefficients
        let monomials: Vec<(usize, usize)> = (0..=3)
            .flat_map(|i| (0..=3).map(move |j| (i, j)))
            .collect();
        let mut rows: Vec<Vec<crate::exact::field::AlgScalar>> = Vec::new();
        for p in &pts {
            let g = centering_change(p);
            for (i, j) in &monomials {
                let e = BiForm::monomial(&q(), 3, 3, q().one(), *i, *j);
                let moved = apply_coord_change(&e, &g).unwrap();
                let chart = moved.dehomogenize();
                let row_vals = [chart.coeff(0, 0), chart.coeff(1, 0), chart.coeff(0, 1)];
                for (r, v) in row_vals.iter().enumerate() {
                    let idx = rows.len().saturating_sub(3 - r);
                    let _ = idx;
                    // rows are built per condition below instead
                    let _ = v;
                }
            }
            // build the three condition rows for this point
            for cond in 0..3 {
                let mut row = Vec::with_capacity(16);
                for (i, j) in &monomials {
                    let e = BiForm::monomial(&q(), 3, 3, q().one(), *i, *j);
                    let moved = apply_coord_change(&e, &g).unwrap();
                    let chart = moved.dehomogenize();
                    let v = match cond {
                        0 => chart.coeff(0, 0),
                        1 => chart.coeff(1, 0),
                        _ => chart.coeff(0, 1),
                    };
                    row.push(v);
                }
                rows.push(row);
            }
        }
        // solve rows * f = rows * f0 for a correction supported on pivots
        let rhs: Vec<crate::exact::field::AlgScalar> = rows
            .iter()
            .map(|row| {
                let mut acc = q().zero();
                for (k, (i, j)) in monomials.iter().enumerate() {
                    acc = acc.add(&row[k].mul(f0.coeff(*i, *j)));
                }
                acc
            })
            .collect();
        match solve_sparse_correction(&rows, &rhs) {
            Some(correction) => {
                let mut f = f0.clone();
                for (k, (i, j)) in monomials.iter().enumerate() {
                    f.set_coeff(*i, *j, f.coeff(*i, *j).sub(&correction[k]));
                }
                if f.is_zero() {
                    continue;
                }
                return f;
            }
            None => continue,
        }
    }
}

/// Any solution x of rows * x = rhs (full row rank expected at these sizes).
fn solve_sparse_correction(
    rows: &[Vec<crate::exact::field::AlgScalar>],
    rhs: &[crate::exact::field::AlgScalar],
) -> Option<Vec<crate::exact::field::AlgScalar>> {
    if rows.is_empty() {
        return Some(vec![q().zero(); 16]);
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<crate::exact::field::AlgScalar>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let nrows = m.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prow = 0usize;
    for col in 0..ncols {
        let Some(pr) = (prow..nrows).find(|r| !m[*r][col].is_zero()) else {
            continue;
        };
        m.swap(prow, pr);
        let inv = m[prow][col].inv().unwrap();
        for c in col..=ncols {
            m[prow][c] = m[prow][c].mul(&inv);
        }
        for r in 0..nrows {
            if r != prow && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=ncols {
                    let s = factor.mul(&m[prow][c]);
                    m[r][c] = m[r][c].sub(&s);
                }
            }
        }
        pivots.push((prow, col));
        prow += 1;
        if prow == nrows {
            break;
        }
    }
    // consistency
    for r in prow..nrows {
        if !m[r][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![q().zero(); ncols];
    for (r, c) in pivots {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

/// The named corpus.
pub fn corpus() -> Vec<CorpusEntry> {
    use ClosedOrbitKind::*;
    use SingularityType::*;
    let mut entries: Vec<CorpusEntry> = Vec::new();

    entries.push(CorpusEntry {
        name: "max_degenerate_a5",
        provenance: "closed-orbit normal form on the (3,1) wall",
        fixture: Fixture::Curve(crate::weights::max_degenerate_a5_curve(&q())),
        expected: Expected::Curve {
            status: Status::StrictlySemistable,
            orbit: Some(MaxDegenerateA5),
            singularities: Some(vec![(A(5), 2)]),
            stratum: Some("Delta_2"),
        },
    });

    entries.push(CorpusEntry {
        name: "dcurve_generic",
        provenance: "two-parameter strictly semistable family, distinct factors checked",
        fixture: Fixture::Curve(crate::stability::orbit::dcurve_form(&q(), 1, 2, 3, 1)),
        expected: Expected::Curve {
            status: Status::StrictlySemistable,
            orbit: Some(DCurve),
            singularities: Some(vec![(D(4), 2)]),
            stratum: Some("elliptic triboroughs"),
        },
    });

    entries.push(CorpusEntry {
        name: "dcurve_degenerate_xz",
        provenance: "degenerate member xz(x+z) of the D-curve family",
        fixture: Fixture::Curve(crate::stability::orbit::dcurve_form(&q(), 0, 1, 1, 0)),
        expected: Expected::Curve {
            status: Status::StrictlySemistable,
            orbit: Some(DCurve),
            singularities: Some(vec![(A(1), 2), (D(4), 2)]),
            stratum: Some("elliptic triboroughs"),
        },
    });

    entries.push(CorpusEntry {
        name: "double_conic",
        provenance: "non-reduced semistable normal form, two distinct triple points",
        fixture: Fixture::Curve({
            let l1 = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 1), (-1, 0, 0)]);
            let l2 = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 0), (-1, 0, 1)]);
            l1.pow(2).mul(&l2)
        }),
        expected: Expected::Curve {
            status: Status::StrictlySemistable,
            orbit: Some(DoubleConic),
            singularities: None,
            stratum: Some("curves in Delta_0 with a hyperelliptic normalization"),
        },
    });

    entries.push(CorpusEntry {
        name: "triple_conic",
        provenance: "non-reduced semistable normal form, single closed orbit",
        fixture: Fixture::Curve({
            let l = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 1), (-1, 0, 0)]);
            l.pow(3)
        }),
        expected: Expected::Curve {
            status: Status::StrictlySemistable,
            orbit: Some(TripleConic),
            singularities: None,
            stratum: Some("the Petri divisor P"),
        },
    });

    entries.push(CorpusEntry {
        name: "j10_concurrent_conics",
        provenance: "three conics pairwise tangent at one point; distinct parameters",
        fixture: Fixture::Curve(j10_curve([1, 2, 3])),
        expected: Expected::Curve {
            status: Status::StrictlySemistable,
            orbit: Some(TripleConic),
            singularities: Some(vec![(J10, 1)]),
            stratum: Some("the Petri divisor P"),
        },
    });

    entries.push(CorpusEntry {
        name: "d8_configuration",
        provenance: "constructed: nodal (2,2) plus (1,1) with contact 3 on one branch, verified D8",
        fixture: Fixture::Curve(d8_curve()),
        expected: Expected::Curve {
            status: Status::StrictlySemistable,
            orbit: Some(DoubleConic),
            singularities: Some(vec![(D(8), 1)]),
            stratum: Some("curves in Delta_0 with a hyperelliptic normalization"),
        },
    });

    for (name, kind, sings) in [
        ("e6_global", E6, vec![(A(2), 1), (E6, 1)]),
        ("e7_global", E7, vec![(A(1), 1), (E7, 1)]),
        ("e8_global", E8, vec![(E8, 1)]),
    ] {
        entries.push(CorpusEntry {
            name,
            provenance: "constructed germ inside the (3,3) lattice, verified by the local classifier",
            fixture: Fixture::Curve(e_fixture(kind)),
            expected: Expected::Curve {
                status: Status::StrictlySemistable,
                orbit: Some(TripleConic),
                singularities: Some(sings),
                stratum: Some("the Petri divisor P"),
            },
        });
    }

    entries.push(CorpusEntry {
        name: "a8_curve",
        provenance: "implicitized from the printed parametrization; vanishing checked",
        fixture: Fixture::Curve(a8_curve()),
        expected: Expected::Curve {
            status: Status::Stable,
            orbit: Some(StableOrbit),
            singularities: Some(vec![(A(8), 1)]),
            stratum: Some("hyperelliptic curves"),
        },
    });

    entries.push(CorpusEntry {
        name: "a9_curve",
        provenance: "constructed: (1,2)+(2,1) pair with exact contact-5 conditions",
        fixture: Fixture::Curve(a9_curve()),
        expected: Expected::Curve {
            status: Status::Stable,
            orbit: Some(StableOrbit),
            singularities: Some(vec![(A(9), 1)]),
            stratum: Some("hyperelliptic curves"),
        },
    });

    entries.push(CorpusEntry {
        name: "a9_printed_data",
        provenance: "printed second parametrization row; the on-quadric check fails and is reported",
        fixture: Fixture::PrintedParamCheck {
            defect_is_zero: a9_printed_second_row_on_quadric(),
        },
        expected: Expected::Discrepancy {
            reason: "second row does not satisfy z0 z3 = z1 z2",
        },
    });

    entries.push(CorpusEntry {
        name: "stable_smooth",
        provenance: "smoothness verified by the empty singular locus",
        fixture: Fixture::Curve(stable_fixture()),
        expected: Expected::Curve {
            status: Status::Stable,
            orbit: Some(StableOrbit),
            singularities: Some(vec![]),
            stratum: Some("no Table-1 row"),
        },
    });

    entries.push(CorpusEntry {
        name: "six_lines",
        provenance: "three rulings in each family, nodes only",
        fixture: Fixture::Curve({
            let fx = BiForm::from_int_terms(&q(), 3, 0, &[(1, 3, 0), (1, 0, 0)]);
            let fz = BiForm::from_int_terms(&q(), 0, 3, &[(1, 0, 3), (1, 0, 0)]);
            fx.mul(&fz)
        }),
        expected: Expected::Curve {
            status: Status::Stable,
            orbit: Some(StableOrbit),
            singularities: Some(vec![(A(1), 9)]),
            stratum: Some("no Table-1 row"),
        },
    });

    // local normal forms
    for k in 1..=9usize {
        let f = BiPoly::from_ints(&q(), &[(1, 0, 2)])
            .sub(&BiPoly::from_ints(&q(), &[(1, k + 1, 0)]));
        entries.push(CorpusEntry {
            name: Box::leak(format!("normal_form_a{}", k).into_boxed_str()),
            provenance: "A-series normal form",
            fixture: Fixture::Local(f),
            expected: Expected::Local {
                kind: SingularityType::A(k),
                milnor: k,
            },
        });
    }
    for k in 4..=8usize {
        // D_k = x(z^2 - x^(k-2))
        let f = BiPoly::from_ints(&q(), &[(1, 1, 2)])
            .sub(&BiPoly::from_ints(&q(), &[(1, k - 1, 0)]));
        entries.push(CorpusEntry {
            name: Box::leak(format!("normal_form_d{}", k).into_boxed_str()),
            provenance: "D-series normal form",
            fixture: Fixture::Local(f),
            expected: Expected::Local {
                kind: SingularityType::D(k),
                milnor: k,
            },
        });
    }
    for (name, kind, mu, terms) in [
        ("normal_form_e6", E6, 6, vec![(1i64, 3usize, 0usize), (1, 0, 4)]),
        ("normal_form_e7", E7, 7, vec![(1, 3, 0), (1, 1, 3)]),
        ("normal_form_e8", E8, 8, vec![(1, 3, 0), (1, 0, 5)]),
        ("normal_form_j10", J10, 10, vec![(1, 0, 3), (-1, 6, 0)]),
    ] {
        entries.push(CorpusEntry {
            name,
            provenance: "E/J-series normal form",
            fixture: Fixture::Local(BiPoly::from_ints(&q(), &terms)),
            expected: Expected::Local { kind, milnor: mu },
        });
    }

    entries
}

/// Outcome of one corpus entry.
pub struct EntryOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn check_entry(e: &CorpusEntry) -> EntryOutcome {
    if e.provenance.is_empty() {
        return EntryOutcome {
            name: e.name,
            passed: false,
            detail: "entry lacks a provenance note".into(),
        };
    }
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| check_entry_inner(e)));
    match result {
        Ok(Ok(())) => EntryOutcome {
            name: e.name,
            passed: true,
            detail: "ok".into(),
        },
        Ok(Err(msg)) => EntryOutcome {
            name: e.name,
            passed: false,
            detail: msg,
        },
        Err(_) => EntryOutcome {
            name: e.name,
            passed: false,
            detail: "panicked".into(),
        },
    }
}

fn check_entry_inner(e: &CorpusEntry) -> Result<(), String> {
    match (&e.fixture, &e.expected) {
        (Fixture::Curve(f), Expected::Curve { status, orbit, singularities, stratum }) => {
            let v = verdict(f).map_err(|er| format!("verdict failed: {}", er))?;
            if v.status != *status {
                return Err(format!("status {:?}, expected {:?}", v.status, status));
            }
            let rep = if v.status != Status::Unstable {
                Some(
                    closed_orbit_limit_with(f, &v)
                        .map_err(|er| format!("orbit failed: {}", er))?,
                )
            } else {
                None
            };
            if let Some(expected_kind) = orbit {
                let got = rep.as_ref().map(|r| r.kind);
                if got != Some(*expected_kind) {
                    return Err(format!("orbit {:?}, expected {:?}", got, expected_kind));
                }
            }
            let mut sing_reports = Vec::new();
            if let Some(expected_sings) = singularities {
                match sing_locus(f) {
                    Ok(rs) => {
                        let mut got: Vec<(SingularityType, usize)> = Vec::new();
                        for r in &rs {
                            if let Some(slot) =
                                got.iter_mut().find(|(k, _)| *k == r.kind)
                            {
                                slot.1 += r.conjugates;
                            } else {
                                got.push((r.kind, r.conjugates));
                            }
                        }
                        let mut want = expected_sings.clone();
                        got.sort_by_key(|(k, _)| format!("{}", k));
                        want.sort_by_key(|(k, _)| format!("{}", k));
                        if got != want {
                            return Err(format!(
                                "singularities {:?}, expected {:?}",
                                got, want
                            ));
                        }
                        sing_reports = rs;
                    }
                    Err(er) => return Err(format!("sing_locus failed: {}", er)),
                }
            }
            if let Some(expected_label) = stratum {
                let label = stratum_label(&v, &sing_reports, rep.as_ref());
                if &label != expected_label {
                    return Err(format!(
                        "stratum '{}', expected '{}'",
                        label, expected_label
                    ));
                }
            }
            Ok(())
        }
        (Fixture::Local(f), Expected::Local { kind, milnor }) => {
            let got = classify_local(f).map_err(|er| format!("classify failed: {}", er))?;
            if got != *kind {
                return Err(format!("type {}, expected {}", got, kind));
            }
            let mu = crate::singularity::milnor_number(f)
                .map_err(|er| format!("milnor failed: {}", er))?;
            if mu != *milnor {
                return Err(format!("milnor {}, expected {}", mu, milnor));
            }
            Ok(())
        }
        (Fixture::PrintedParamCheck { defect_is_zero }, Expected::Discrepancy { reason }) => {
            if *defect_is_zero {
                Err(format!(
                    "printed data unexpectedly consistent (expected: {})",
                    reason
                ))
            } else {
                Ok(())
            }
        }
        _ => Err("fixture/expectation mismatch".into()),
    }
}

/// Run the whole corpus on a worker pool; deterministic, sorted output.
pub fn corpus_run(jobs: usize) -> (Vec<EntryOutcome>, bool) {
    let entries = corpus();
    let n = entries.len();
    let jobs = jobs.max(1).min(n.max(1));
    let mut outcomes: Vec<Option<EntryOutcome>> = Vec::new();
    outcomes.resize_with(n, || None);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let entries_ref = &entries;
    let outcomes_cell: Vec<std::sync::Mutex<Option<EntryOutcome>>> =
        (0..n).map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let outcome = check_entry(&entries_ref[i]);
                *outcomes_cell[i].lock().unwrap() = Some(outcome);
            });
        }
    });
    let mut list: Vec<EntryOutcome> = outcomes_cell
        .into_iter()
        .map(|m| m.into_inner().unwrap().unwrap())
        .collect();
    let _ = &mut outcomes;
    list.sort_by_key(|o| o.name);
    let ok = list.iter().all(|o| o.passed);
    (list, ok)
}

/// Random-instance suites used by both the CLI corpus and the acceptance
/// tests: (2,1)-shaped and (4,1)-shaped nonsemistable instances.
pub fn random_suites(seed: u64, count: usize) -> (Vec<BiForm>, Vec<BiForm>) {
    let mut rng = Rng::new(seed);
    let cube_contact: Vec<BiForm> = (0..count).map(|_| random_cube_contact_instance(&mut rng)).collect();
    let double_ruling: Vec<BiForm> = (0..count).map(|_| random_double_ruling_instance(&mut rng)).collect();
    (cube_contact, double_ruling)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a8_implicitization_vanishes_on_parametrization() {
        let phi = a8_parametrization();
        let f = a8_curve();
        assert_eq!(f.bidegree(), (3, 3));
        for t in [-2i64, -1, 0, 1, 2, 3, 5] {
            let tv = q().int(t);
            let p = phi.eval(&tv);
            assert!(f.eval_point(&p).is_zero(), "t = {}", t);
        }
    }

    #[test]
    fn a9_union_is_33() {
        let f = a9_curve();
        assert_eq!(f.bidegree(), (3, 3));
        // the two branches pass through ((1:1),(1:1))
        let p = crate::biform::SurfacePoint::from_ints(&q(), (1, 1), (1, 1));
        assert!(f.eval_point(&p).is_zero());
    }

    #[test]
    fn a9_printed_row_fails_quadric() {
        assert!(!a9_printed_second_row_on_quadric());
    }

    #[test]
    fn cube_contact_double_ruling_instances_unstable() {
        let (cube_contact, double_ruling) = random_suites(7, 5);
        for f in &cube_contact {
            let v = verdict(f).unwrap();
            assert_eq!(v.status, Status::Unstable);
            assert_eq!(v.certificate.unwrap().rho, crate::weights::OneParamSubgroup::new(2, 1));
        }
        for f in &double_ruling {
            let v = verdict(f).unwrap();
            assert_eq!(v.status, Status::Unstable);
            assert_eq!(v.certificate.unwrap().rho, crate::weights::OneParamSubgroup::new(4, 1));
        }
    }

    #[test]
    fn imposed_singularities_are_singular() {
        let mut rng = Rng::new(11);
        for _ in 0..5 {
            let f = random_curve_with_rational_singularities(&mut rng);
            assert_eq!(f.bidegree(), (3, 3));
            // nothing to assert beyond well-formedness here; the acceptance
            // suite compares classifier and oracle on these
        }
    }
}
