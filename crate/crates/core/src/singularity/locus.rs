//! Singular locus of a reduced bidegree-(3,3) curve, with exact per-point
//! reports, and the separating test.
//!
//! Singular points found over extension fields are reported once per Galois
//! orbit over the input field, with the orbit size in `conjugates`; global
//! genus bookkeeping sums delta times the orbit size.

use std::collections::BTreeSet;

use crate::biform::{
    irreducible_components, local_expand, restrict_to_ruling, ruling_factors, BiForm, FactorSide,
    RulingFactor, SurfacePoint,
};
use crate::error::Error;
use crate::exact::bipoly::{biv_has_repeated_factor, biv_resultant_z, BiPoly};
use crate::exact::factor::{adjoin_root, factor_univ};
use crate::exact::field::{Field, MAX_STEP_DEGREE, MAX_TOWER_DEPTH};
use crate::exact::unipoly::{gcd_univ, UniPoly};

use super::classify::{local_invariants, SingularityType};

#[derive(Clone, Debug)]
pub struct SingularityReport {
    /// Representative point, over its own (possibly extended) field.
    pub point: SurfacePoint,
    /// Size of the Galois orbit of the point over the curve's field.
    pub conjugates: usize,
    pub multiplicity: usize,
    pub milnor: usize,
    pub branches: usize,
    pub delta: usize,
    pub kind: SingularityType,
    pub separating: bool,
}

/// A candidate singular point with orbit data and a cross-stage dedup key.
struct Candidate {
    point: SurfacePoint,
    orbit: usize,
    key: String,
}

/// Points of multiplicity at least 2, with orbit sizes and multiplicities,
/// for a reduced curve. Lighter than `sing_locus`: no classification.
pub fn singular_points_with_mult(
    f: &BiForm,
) -> Result<Vec<(SurfacePoint, usize, usize)>, Error> {
    let (rfield, rulings, residual) = ruling_factors(f)?;
    if rulings.iter().any(|r| r.multiplicity > 1) {
        return Err(Error::NonReduced);
    }
    if residual.bidegree() != (0, 0) && biv_has_repeated_factor(&residual.dehomogenize()) {
        return Err(Error::NonReduced);
    }
    let candidates = candidate_points(f, &rfield, &rulings, &residual)?;
    let mut out = Vec::new();
    for cand in &candidates {
        let pf = cand.point.p1.0.field().clone();
        let f_up = f.embed(&pf);
        let germ = local_expand(&f_up, &cand.point);
        let m = germ.order_at_origin().unwrap_or(0);
        if m >= 2 {
            out.push((cand.point.clone(), cand.orbit, m));
        }
    }
    Ok(out)
}

/// All singular points of a reduced curve, one report per Galois orbit.
pub fn sing_locus(f: &BiForm) -> Result<Vec<SingularityReport>, Error> {
    assert!(!f.is_zero());
    let (rfield, rulings, residual) = ruling_factors(f)?;
    if rulings.iter().any(|r| r.multiplicity > 1) {
        return Err(Error::NonReduced);
    }
    if residual.bidegree() != (0, 0) && biv_has_repeated_factor(&residual.dehomogenize()) {
        return Err(Error::NonReduced);
    }
    let candidates = candidate_points(f, &rfield, &rulings, &residual)?;

    let mut singular_pts: Vec<(SurfacePoint, usize)> = Vec::new();
    let mut locals = Vec::new();
    for cand in &candidates {
        let pf = cand.point.p1.0.field().clone();
        let f_up = f.embed(&pf);
        let germ = local_expand(&f_up, &cand.point);
        let m = germ.order_at_origin().unwrap_or(0);
        if m < 2 {
            continue;
        }
        singular_pts.push((cand.point.clone(), cand.orbit));
        locals.push((cand.point.clone(), cand.orbit, germ));
    }
    // component data for the separating flag, needed only on singular curves
    let comp_data = if locals.is_empty() {
        None
    } else {
        Some(irreducible_components(f)?)
    };
    let mut reports = Vec::new();
    for (point, orbit, germ) in &locals {
        let inv = local_invariants(germ)?;
        let separating =
            separating_at(comp_data.as_ref().unwrap(), &singular_pts, point)?;
        reports.push(SingularityReport {
            point: point.clone(),
            conjugates: *orbit,
            multiplicity: inv.multiplicity,
            milnor: inv.milnor,
            branches: inv.branches,
            delta: inv.delta,
            kind: inv.kind,
            separating,
        });
    }
    Ok(reports)
}

/// True iff normalizing the curve at p alone disconnects it: the incidence
/// graph of components, with the edges at p removed, is disconnected.
pub fn is_separating(f: &BiForm, p: &SurfacePoint) -> Result<bool, Error> {
    let comp_data = irreducible_components(f)?;
    let reports = sing_locus(f)?;
    let pts: Vec<(SurfacePoint, usize)> = reports
        .iter()
        .map(|r| (r.point.clone(), r.conjugates))
        .collect();
    separating_at(&comp_data, &pts, p)
}

fn separating_at(
    comp_data: &(Field, Vec<(BiForm, usize)>),
    singular_pts: &[(SurfacePoint, usize)],
    p: &SurfacePoint,
) -> Result<bool, Error> {
    let (cfield, comps) = comp_data;
    if comps.len() <= 1 {
        return Ok(false);
    }
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let mut parent: Vec<usize> = (0..comps.len()).collect();
    for (q, orbit) in singular_pts {
        if same_point(q, p) {
            continue;
        }
        if *orbit > 1 {
            // conjugate orbits would need Galois bookkeeping on components
            return Err(Error::TowerTooDeep {
                degree: *orbit,
                depth: 3,
            });
        }
        let mut through: Vec<usize> = Vec::new();
        for (i, (g, _)) in comps.iter().enumerate() {
            match vanishes_at(g, cfield, q) {
                Some(true) => through.push(i),
                Some(false) => {}
                None => {
                    return Err(Error::TowerTooDeep { degree: 0, depth: 3 });
                }
            }
        }
        for w in through.windows(2) {
            let a = find(&mut parent, w[0]);
            let b = find(&mut parent, w[1]);
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut roots = BTreeSet::new();
    for i in 0..comps.len() {
        let r = find(&mut parent, i);
        roots.insert(r);
    }
    Ok(roots.len() > 1)
}

/// Evaluate a component at a point, tolerating fields where one side is a
/// prefix tower of the other; `None` when no common field exists.
fn vanishes_at(g: &BiForm, gfield: &Field, q: &SurfacePoint) -> Option<bool> {
    let qfield = q.p1.0.field();
    if gfield.is_prefix_of(qfield) {
        let gq = g.embed(qfield);
        Some(gq.eval_point(q).is_zero())
    } else if qfield.is_prefix_of(gfield) {
        let qq = q.embed(gfield);
        Some(g.eval_point(&qq).is_zero())
    } else {
        None
    }
}

fn same_point(a: &SurfacePoint, b: &SurfacePoint) -> bool {
    let fa = a.p1.0.field();
    let fb = b.p1.0.field();
    let (a, b) = if fa.is_prefix_of(fb) {
        (a.embed(fb), b.clone())
    } else if fb.is_prefix_of(fa) {
        (a.clone(), b.embed(fa))
    } else {
        return false;
    };
    let (ca, cb) = (a.canonical(), b.canonical());
    ca.p1 == cb.p1 && ca.p2 == cb.p2
}

// ---------------------------------------------------------------------------
// candidate enumeration
// ---------------------------------------------------------------------------

fn candidate_points(
    f: &BiForm,
    rfield: &Field,
    rulings: &[RulingFactor],
    residual: &BiForm,
) -> Result<Vec<Candidate>, Error> {
    let _ = f;
    let mut out: Vec<Candidate> = Vec::new();
    let mut keys: BTreeSet<String> = BTreeSet::new();
    let push = |c: Candidate, keys: &mut BTreeSet<String>, out: &mut Vec<Candidate>| {
        if keys.insert(c.key.clone()) {
            out.push(c);
        }
    };

    // ruling x ruling crossings
    for l1 in rulings.iter().filter(|r| r.side == FactorSide::First) {
        for l2 in rulings.iter().filter(|r| r.side == FactorSide::Second) {
            let p = SurfacePoint::new(l1.base_point(), l2.base_point());
            let key = point_key(&p);
            push(
                Candidate {
                    point: p,
                    orbit: 1,
                    key,
                },
                &mut keys,
                &mut out,
            );
        }
    }

    if residual.bidegree() != (0, 0) {
        // ruling x residual contacts, plus residual meets the chart's lines
        // at infinity (X, Y, Z, W coordinate lines cover everything)
        let mut lines: Vec<RulingFactor> = rulings.to_vec();
        for (alpha, beta, side) in [
            (rfield.one(), rfield.zero(), FactorSide::First),
            (rfield.zero(), rfield.one(), FactorSide::First),
            (rfield.one(), rfield.zero(), FactorSide::Second),
            (rfield.zero(), rfield.one(), FactorSide::Second),
        ] {
            lines.push(RulingFactor {
                side,
                alpha,
                beta,
                multiplicity: 1,
            });
        }
        for l in &lines {
            let restr = restrict_to_ruling(residual, l);
            if restr.is_zero() {
                continue;
            }
            let (ext, roots) = restr.projective_roots()?;
            for ((t, s), _m) in roots {
                let base = (ext.embed(&l.base_point().0), ext.embed(&l.base_point().1));
                let p = match l.side {
                    FactorSide::First => SurfacePoint::new(base, (t, s)),
                    FactorSide::Second => SurfacePoint::new((t, s), base),
                };
                let key = point_key(&p);
                push(
                    Candidate {
                        point: p,
                        orbit: 1,
                        key,
                    },
                    &mut keys,
                    &mut out,
                );
            }
        }
        // interior singular points of the residual: resultant elimination
        for c in eliminate_interior(rfield, rulings, residual)? {
            push(c, &mut keys, &mut out);
        }
    }
    Ok(out)
}

/// Common zeros of (r, r_x, r_z) in the affine chart, by elimination, with
/// one representative per Galois orbit over the residual's field. Rational
/// points are emitted with explicit coordinates so cross-stage dedup works;
/// irrational orbits lying on a ruling or a coordinate line are skipped here
/// because the explicit stages enumerate their conjugates one by one.
fn eliminate_interior(
    rfield: &Field,
    rulings: &[RulingFactor],
    residual: &BiForm,
) -> Result<Vec<Candidate>, Error> {
    let r = residual.dehomogenize();
    let rx = r.derivative_x();
    let rz = r.derivative_z();
    if rx.is_zero() || rz.is_zero() {
        return Ok(Vec::new());
    }
    if r.deg_z() == Some(0) || r.deg_x() == Some(0) {
        return Ok(Vec::new());
    }
    let e1 = biv_resultant_z(&r, &rx);
    let e2 = biv_resultant_z(&r, &rz);
    if e1.is_zero() || e2.is_zero() {
        return Err(Error::Paradox("identically zero eliminant".into()));
    }
    let e = gcd_univ(&e1, &e2)?;
    if e.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (h, _) in factor_univ(&e) {
        let dh = h.degree().unwrap();
        // existence filter without extending the field
        if modh_common_z_degree(&r, &rx, &rz, &h).is_none() {
            continue;
        }
        if dh > MAX_STEP_DEGREE || (dh > 1 && rfield.depth() + 1 > MAX_TOWER_DEPTH) {
            return Err(Error::TowerTooDeep {
                degree: dh,
                depth: rfield.depth() + 1,
            });
        }
        let (xfield, x0) = if dh == 1 {
            (rfield.clone(), h.coeff(0).neg())
        } else {
            let adj = adjoin_root(&h)?;
            (adj.field, adj.root)
        };
        let rs = r.embed(&xfield).eval_x(&x0, "z");
        let rxs = rx.embed(&xfield).eval_x(&x0, "z");
        let rzs = rz.embed(&xfield).eval_x(&x0, "z");
        let mut g: Option<UniPoly> = None;
        for cand in [rs, rxs, rzs] {
            if cand.is_zero() {
                continue;
            }
            g = Some(match g {
                None => cand,
                Some(acc) => gcd_univ(&acc, &cand)?,
            });
        }
        let Some(g) = g else { continue };
        if g.degree().map_or(true, |d| d == 0) {
            continue;
        }
        for (w, _) in factor_univ(&g) {
            let dw = w.degree().unwrap();
            let (zfield, z0) = if dw == 1 {
                (xfield.clone(), w.coeff(0).neg())
            } else {
                if dw > MAX_STEP_DEGREE || xfield.depth() + 1 > MAX_TOWER_DEPTH {
                    return Err(Error::TowerTooDeep {
                        degree: dw,
                        depth: xfield.depth() + 1,
                    });
                }
                let adj = adjoin_root(&w)?;
                (adj.field, adj.root)
            };
            let x0z = zfield.embed(&x0);
            let p = SurfacePoint::new((x0z.clone(), zfield.one()), (z0.clone(), zfield.one()));
            let key = if dh == 1 && dw == 1 {
                point_key(&p)
            } else {
                // skip orbits already enumerated explicitly elsewhere
                let on_line = x0z.is_zero()
                    || z0.is_zero()
                    || rulings.iter().any(|l| {
                        l.embed(&zfield)
                            .as_biform()
                            .eval_point(&p)
                            .is_zero()
                    });
                if on_line {
                    continue;
                }
                format!("orbit|{}|{}", h, w)
            };
            out.push(Candidate {
                point: p,
                orbit: dh * dw,
                key,
            });
        }
    }
    Ok(out)
}

/// Dedup key for explicitly-known points: canonical projective coordinates
/// rendered over their field.
fn point_key(p: &SurfacePoint) -> String {
    let c = p.canonical();
    format!(
        "pt|{}|{}:{}|{}:{}",
        render_field(c.p1.0.field()),
        c.p1.0,
        c.p1.1,
        c.p2.0,
        c.p2.1
    )
}

fn render_field(f: &Field) -> String {
    if f.is_rationals() {
        "Q".to_string()
    } else {
        let names = f.generator_names().join(",");
        format!("Q({};deg{})", names, f.degree())
    }
}

/// Degree of the common z-gcd of (r, rx, rz) with x-coefficients reduced
/// modulo an irreducible h(x); None when the gcd is trivial.
fn modh_common_z_degree(r: &BiPoly, rx: &BiPoly, rz: &BiPoly, h: &UniPoly) -> Option<usize> {
    let field = r.field().clone();
    let reduce = |p: &BiPoly| -> Vec<UniPoly> {
        p.z_coeffs("x").iter().map(|c| c.rem(h)).collect()
    };
    let a = reduce(r);
    let b = reduce(rx);
    let c = reduce(rz);
    let g1 = modh_gcd(&a, &b, h, &field);
    let g1 = match g1 {
        None => return None,
        Some(g) => g,
    };
    let g2 = modh_gcd(&g1, &c, h, &field)?;
    if g2.len() >= 2 {
        Some(g2.len() - 1)
    } else {
        None
    }
}

/// gcd of two z-polynomials with coefficients in K[x]/(h), h irreducible over
/// K. Returns None when the gcd is a unit (or an input is zero and the other
/// constant).
fn modh_gcd(a: &[UniPoly], b: &[UniPoly], h: &UniPoly, field: &Field) -> Option<Vec<UniPoly>> {
    let trim = |v: &mut Vec<UniPoly>| {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
    };
    let inv_mod = |p: &UniPoly| -> UniPoly {
        let (mut r0, mut r1) = (h.clone(), p.clone());
        let (mut t0, mut t1) = (
            UniPoly::zero(field, "x"),
            UniPoly::constant(field, "x", field.one()),
        );
        while !r1.is_zero() {
            let (q, rr) = r0.divrem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, rr);
            t0 = std::mem::replace(&mut t1, t);
        }
        let c = r0.coeff(0).inv().expect("unit modulo irreducible h");
        t0.scale(&c).rem(h)
    };
    let mut f: Vec<UniPoly> = a.to_vec();
    let mut g: Vec<UniPoly> = b.to_vec();
    trim(&mut f);
    trim(&mut g);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let lg = inv_mod(g.last().unwrap());
        let dg = g.len() - 1;
        while f.len() > dg || (f.len() == dg + 1 && dg == 0 && !f.is_empty()) {
            if f.len() <= dg {
                break;
            }
            let df = f.len() - 1;
            if df < dg {
                break;
            }
            let q = f[df].mul(&lg).rem(h);
            for k in 0..=dg {
                let s = q.mul(&g[k]).rem(h);
                f[df - dg + k] = f[df - dg + k].sub(&s).rem(h);
            }
            trim(&mut f);
            if f.len() <= dg {
                break;
            }
        }
        std::mem::swap(&mut f, &mut g);
        trim(&mut g);
    }
    trim(&mut f);
    if f.len() <= 1 {
        None
    } else {
        Some(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn smooth_curve_empty_locus() {
        let f = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 0), (-1, 0, 1)]);
        assert!(sing_locus(&f).unwrap().is_empty());
    }

    #[test]
    fn max_degenerate_a5_two_separating_points() {
        let f = BiForm::from_int_terms(&q(), 3, 3, &[(1, 2, 0), (1, 1, 3)]);
        let reports = sing_locus(&f).unwrap();
        assert_eq!(reports.len(), 2);
        for r in &reports {
            assert_eq!(r.kind, SingularityType::A(5));
            assert_eq!(r.milnor, 5);
            assert_eq!(r.branches, 2);
            assert_eq!(r.delta, 3);
            assert!(r.separating, "A5 contact must separate");
            assert_eq!(r.conjugates, 1);
        }
        let total: usize = reports.iter().map(|r| r.delta * r.conjugates).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn nodal_irreducible_not_separating() {
        let c = BiForm::from_int_terms(&q(), 2, 2, &[(1, 0, 2), (-1, 2, 0), (1, 2, 1)]);
        let reports = sing_locus(&c).unwrap();
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert_eq!(r.kind, SingularityType::A(1));
        assert!(!r.separating);
    }

    #[test]
    fn non_reduced_rejected() {
        let conic = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 1), (-1, 0, 0)]);
        let l2 = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 0), (1, 0, 1)]);
        let f = conic.pow(2).mul(&l2);
        assert_eq!(sing_locus(&f).unwrap_err(), Error::NonReduced);
        let x = BiForm::from_int_terms(&q(), 1, 0, &[(1, 1, 0)]);
        let g13 = BiForm::from_int_terms(&q(), 1, 3, &[(1, 0, 0), (1, 1, 3)]);
        let f2 = x.pow(2).mul(&g13);
        assert_eq!(sing_locus(&f2).unwrap_err(), Error::NonReduced);
    }

    #[test]
    fn conjugate_node_orbit() {
        // two conics meeting where x = z and xz = 2: nodes at x = z = +-sqrt2
        let c1 = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 0), (-1, 0, 1)]); // XW - YZ
        let c2 = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 1), (-2, 0, 0)]); // XZ - 2YW
        let f = c1.mul(&c2);
        let reports = sing_locus(&f).unwrap();
        let total_points: usize = reports.iter().map(|r| r.conjugates).sum();
        assert_eq!(total_points, 2);
        assert!(reports.iter().all(|r| r.kind == SingularityType::A(1)));
    }

    #[test]
    fn d8_fixture_single_point() {
        let c1 = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 1), (2, 0, 1), (-2, 1, 0)]);
        let c2 = BiForm::from_int_terms(&q(), 2, 2, &[(1, 0, 2), (-1, 2, 0), (1, 2, 1)]);
        let f = c1.mul(&c2);
        let reports = sing_locus(&f).unwrap();
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert_eq!(r.kind, SingularityType::D(8));
        assert_eq!((r.milnor, r.branches, r.delta), (8, 3, 5));
    }

    #[test]
    fn singular_point_at_infinity_found() {
        // F = X Y^2 W^3 + X^3 Z^3 = X (Y^2 W^3 + X^2 Z^3): the residual has a
        // cusp at ((1:0), (0:1)), off the finite chart
        let f = BiForm::from_int_terms(&q(), 3, 3, &[(1, 1, 0), (1, 3, 3)]);
        let reports = sing_locus(&f).unwrap();
        assert!(reports.iter().any(|r| r.kind == SingularityType::A(2)),
            "expected a cusp among {:?}",
            reports.iter().map(|r| r.kind).collect::<Vec<_>>()
        );
    }

    #[test]
    fn j10_configuration() {
        // three conics through the origin, pairwise tangent there
        let mk = |c: i64| {
            BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 0), (1, 0, 1), (c, 1, 1)])
        };
        let f = mk(1).mul(&mk(2)).mul(&mk(3));
        let reports = sing_locus(&f).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].kind, SingularityType::J10);
        assert_eq!(reports[0].delta, 6);
        assert!(reports[0].multiplicity == 3);
    }
}
