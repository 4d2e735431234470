//! The Hilbert-Mumford numerical layer: monomial weights under diagonal
//! one-parameter subgroups, sign tables, state polytopes with exact origin
//! classification, flat limits, and certificate checking.
//!
//! Sign convention: the subgroup rho_{u,v} acts by
//! t.(X,Y,Z,W) = (t^u X, t^-u Y, t^v Z, t^-v W), the monomial
//! X^i Y^(a-i) Z^j W^(b-j) has weight (2i-a)u + (2j-b)v, and a form is
//! destabilized by (coords, rho) exactly when every support weight is
//! strictly positive.

use crate::biform::{apply_coord_change, BiForm, CoordChange};
use crate::exact::field::Field;

/// A diagonal one-parameter subgroup rho_{u,v}; (u, v) not both zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct OneParamSubgroup {
    pub u: i64,
    pub v: i64,
}

impl OneParamSubgroup {
    pub fn new(u: i64, v: i64) -> OneParamSubgroup {
        assert!(u != 0 || v != 0, "trivial one-parameter subgroup");
        OneParamSubgroup { u, v }
    }

    /// The primitive vector on the same ray.
    pub fn primitive(&self) -> OneParamSubgroup {
        let g = gcd_i64(self.u.abs(), self.v.abs());
        OneParamSubgroup {
            u: self.u / g,
            v: self.v / g,
        }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd_i64(b, a % b)
    }
}

/// Weight of the monomial X^i Y^(a-i) Z^j W^(b-j) under rho.
pub fn monomial_weight(i: usize, j: usize, bidegree: (usize, usize), rho: OneParamSubgroup) -> i64 {
    let (a, b) = bidegree;
    assert!(i <= a && j <= b);
    (2 * i as i64 - a as i64) * rho.u + (2 * j as i64 - b as i64) * rho.v
}

/// Full sign partition of the (a+1)(b+1) monomials.
#[derive(Clone, Debug)]
pub struct WeightTable {
    pub bidegree: (usize, usize),
    pub rho: OneParamSubgroup,
    pub positive: Vec<(usize, usize)>,
    pub zero: Vec<(usize, usize)>,
    pub negative: Vec<(usize, usize)>,
}

pub fn weight_table(bidegree: (usize, usize), rho: OneParamSubgroup) -> WeightTable {
    let (a, b) = bidegree;
    let mut positive = Vec::new();
    let mut zero = Vec::new();
    let mut negative = Vec::new();
    for i in 0..=a {
        for j in 0..=b {
            let w = monomial_weight(i, j, bidegree, rho);
            match w.cmp(&0) {
                std::cmp::Ordering::Greater => positive.push((i, j)),
                std::cmp::Ordering::Equal => zero.push((i, j)),
                std::cmp::Ordering::Less => negative.push((i, j)),
            }
        }
    }
    WeightTable {
        bidegree,
        rho,
        positive,
        zero,
        negative,
    }
}

/// Minimal weight over the support of F.
pub fn mu_min(f: &BiForm, rho: OneParamSubgroup) -> i64 {
    assert!(!f.is_zero());
    f.support()
        .into_iter()
        .map(|(i, j)| monomial_weight(i, j, f.bidegree(), rho))
        .min()
        .unwrap()
}

/// Position of the origin relative to the state polytope.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OriginPosition {
    Interior,
    Boundary,
    Outside,
}

/// Exact 2-D state polytope of the support weights (2i-a, 2j-b).
#[derive(Clone, Debug)]
pub struct StatePolytope {
    /// Hull vertices in counterclockwise order (a point or a segment keeps
    /// its natural description: one or two vertices).
    pub vertices: Vec<(i64, i64)>,
    pub origin: OriginPosition,
}

pub fn state_polytope(f: &BiForm) -> StatePolytope {
    assert!(!f.is_zero());
    let (a, b) = f.bidegree();
    let pts: Vec<(i64, i64)> = f
        .support()
        .into_iter()
        .map(|(i, j)| (2 * i as i64 - a as i64, 2 * j as i64 - b as i64))
        .collect();
    let vertices = convex_hull(pts);
    let origin = classify_origin(&vertices);
    StatePolytope { vertices, origin }
}

/// Andrew monotone chain over exact integers; collinear points dropped.
fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i64 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.is_empty() {
        // all points collinear: keep the two extreme ones
        return vec![pts[0], *pts.last().unwrap()];
    }
    lower
}

fn classify_origin(hull: &[(i64, i64)]) -> OriginPosition {
    let o = (0i64, 0i64);
    match hull.len() {
        0 => unreachable!(),
        1 => {
            if hull[0] == o {
                OriginPosition::Boundary
            } else {
                OriginPosition::Outside
            }
        }
        2 => {
            if on_segment(hull[0], hull[1], o) {
                OriginPosition::Boundary
            } else {
                OriginPosition::Outside
            }
        }
        _ => {
            let mut on_edge = false;
            for k in 0..hull.len() {
                let a = hull[k];
                let b = hull[(k + 1) % hull.len()];
                let cr = (b.0 - a.0) * (o.1 - a.1) - (b.1 - a.1) * (o.0 - a.0);
                if cr < 0 {
                    return OriginPosition::Outside;
                }
                if cr == 0 && on_segment(a, b, o) {
                    on_edge = true;
                }
            }
            if on_edge {
                OriginPosition::Boundary
            } else {
                OriginPosition::Interior
            }
        }
    }
}

fn on_segment(a: (i64, i64), b: (i64, i64), p: (i64, i64)) -> bool {
    let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
    if cross != 0 {
        return false;
    }
    let dot = (p.0 - a.0) * (b.0 - a.0) + (p.1 - a.1) * (b.1 - a.1);
    let len2 = (b.0 - a.0).pow(2) + (b.1 - a.1).pow(2);
    dot >= 0 && dot <= len2
}

/// Flat limit of F under rho after moving by g: apply g, then keep exactly
/// the monomials of minimal weight.
pub fn limit_under_1ps(
    f: &BiForm,
    rho: OneParamSubgroup,
    g: &CoordChange,
) -> Result<BiForm, crate::error::Error> {
    let moved = apply_coord_change(f, g)?;
    assert!(!moved.is_zero());
    let (a, b) = moved.bidegree();
    let min = mu_min(&moved, rho);
    let field = moved.field().clone();
    let mut out = BiForm::zero(&field, a, b);
    for (i, j) in moved.support() {
        if monomial_weight(i, j, (a, b), rho) == min {
            out.set_coeff(i, j, moved.coeff(i, j).clone());
        }
    }
    Ok(out)
}

/// An instability certificate: coordinates g and a destabilizing rho.
#[derive(Clone)]
pub struct InstabilityCertificate {
    pub g: CoordChange,
    pub rho: OneParamSubgroup,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CertificateVerdict {
    ValidUnstable,
    ValidStrictWitness,
    Invalid,
}

/// Check a certificate against the destabilization convention: unstable when
/// every support weight of g.F is strictly positive, a strict witness at
/// minimal weight zero.
pub fn check_certificate(
    f: &BiForm,
    cert: &InstabilityCertificate,
) -> Result<CertificateVerdict, crate::error::Error> {
    let moved = apply_coord_change(f, &cert.g)?;
    if moved.is_zero() {
        return Ok(CertificateVerdict::Invalid);
    }
    let m = mu_min(&moved, cert.rho);
    Ok(match m.cmp(&0) {
        std::cmp::Ordering::Greater => CertificateVerdict::ValidUnstable,
        std::cmp::Ordering::Equal => CertificateVerdict::ValidStrictWitness,
        std::cmp::Ordering::Less => CertificateVerdict::Invalid,
    })
}

/// Primitive one-parameter subgroups with |u|, |v| bounded, up to nothing:
/// all of them, for the brute-force oracle.
pub fn primitive_subgroups_in_box(bound: i64) -> Vec<OneParamSubgroup> {
    let mut out = Vec::new();
    for u in -bound..=bound {
        for v in -bound..=bound {
            if u == 0 && v == 0 {
                continue;
            }
            if gcd_i64(u.abs(), v.abs()) != 1 {
                continue;
            }
            out.push(OneParamSubgroup { u, v });
        }
    }
    out
}

/// The maximally degenerate A5-curve XY(XW^3 + YZ^3) as a (3,3) form.
pub fn max_degenerate_a5_curve(field: &Field) -> BiForm {
    BiForm::from_int_terms(field, 3, 3, &[(1, 2, 0), (1, 1, 3)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biform::Mat2;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(monomial_weight(3, 3, (3, 3), OneParamSubgroup::new(1, 1)), 6);
        assert_eq!(monomial_weight(1, 3, (3, 3), OneParamSubgroup::new(2, 1)), 1);
        assert_eq!(monomial_weight(2, 0, (3, 3), OneParamSubgroup::new(4, 1)), 1);
    }

    #[test]
    fn central_symmetry() {
        let rho = OneParamSubgroup::new(3, -2);
        for i in 0..=3 {
            for j in 0..=3 {
                let w1 = monomial_weight(i, j, (3, 3), rho);
                let w2 = monomial_weight(3 - i, 3 - j, (3, 3), rho);
                assert_eq!(w1 + w2, 0);
            }
        }
    }

    /// The positive-weight classification for u >= v >= 0 from the numerical
    /// criterion, as an independent predicate.
    fn positive_by_list(i: usize, j: usize, u: i64, v: i64) -> bool {
        assert!(u >= v && v >= 0 && u > 0);
        match (i, j) {
            (3, j) if j >= 1 => true,
            (3, 0) => u > v,
            (2, j) if j >= 2 => true,
            (2, 1) => u > v,
            (2, 0) => u > 3 * v,
            (1, 3) => u < 3 * v,
            _ => false,
        }
    }

    #[test]
    fn positive_lists_match_rho21_rho41() {
        for (u, v) in [(2i64, 1i64), (4, 1)] {
            let t = weight_table((3, 3), OneParamSubgroup::new(u, v));
            for i in 0..=3usize {
                for j in 0..=3usize {
                    let expect = positive_by_list(i, j, u, v);
                    let got = t.positive.contains(&(i, j));
                    assert_eq!(got, expect, "(i,j)=({},{}) rho=({},{})", i, j, u, v);
                }
            }
        }
    }

    #[test]
    fn zero_sets_on_walls() {
        let t31 = weight_table((3, 3), OneParamSubgroup::new(3, 1));
        assert_eq!(t31.zero, vec![(1, 3), (2, 0)]);
        let t11 = weight_table((3, 3), OneParamSubgroup::new(1, 1));
        let mut z = t11.zero.clone();
        z.sort();
        assert_eq!(z, vec![(0, 3), (1, 2), (2, 1), (3, 0)]);
        // rho = (1,0): no zero monomials in bidegree (3,3) by parity
        let t10 = weight_table((3, 3), OneParamSubgroup::new(1, 0));
        assert!(t10.zero.is_empty());
    }

    #[test]
    fn mu_min_examples() {
        // the wall curve has mu_min = 0 under rho_{3,1}
        let f = max_degenerate_a5_curve(&q());
        assert_eq!(mu_min(&f, OneParamSubgroup::new(3, 1)), 0);
        // full-support form: the (0,0) corner has negative weight for u,v >= 0
        let mut full = BiForm::zero(&q(), 3, 3);
        for i in 0..=3 {
            for j in 0..=3 {
                full.set_coeff(i, j, q().int(1));
            }
        }
        for rho in primitive_subgroups_in_box(4) {
            assert!(mu_min(&full, rho) < 0);
        }
    }

    #[test]
    fn state_polytopes() {
        // full support: interior
        let mut full = BiForm::zero(&q(), 3, 3);
        for i in 0..=3 {
            for j in 0..=3 {
                full.set_coeff(i, j, q().int(1));
            }
        }
        assert_eq!(state_polytope(&full).origin, OriginPosition::Interior);
        // single monomial X^3 Z^3: outside (hull = point (3,3))
        let f = BiForm::from_int_terms(&q(), 3, 3, &[(1, 3, 3)]);
        assert_eq!(state_polytope(&f).origin, OriginPosition::Outside);
        // the wall curve: segment (1,-3) -- (-1,3) through the origin
        let f = max_degenerate_a5_curve(&q());
        let sp = state_polytope(&f);
        assert_eq!(sp.origin, OriginPosition::Boundary);
        assert_eq!(sp.vertices.len(), 2);
    }

    #[test]
    fn origin_position_matches_rho_search() {
        // Outside <=> some rho in the box destabilizes; Boundary <=> best is 0
        let fixtures: Vec<BiForm> = vec![
            max_degenerate_a5_curve(&q()),
            BiForm::from_int_terms(&q(), 3, 3, &[(1, 3, 3)]),
            BiForm::from_int_terms(&q(), 3, 3, &[(1, 3, 0), (1, 0, 3)]),
            BiForm::from_int_terms(&q(), 3, 3, &[(1, 2, 0), (1, 2, 3), (1, 3, 1)]),
            BiForm::from_int_terms(&q(), 3, 3, &[(1, 0, 0), (1, 3, 3), (1, 1, 2)]),
        ];
        for f in &fixtures {
            let sp = state_polytope(f);
            let best = primitive_subgroups_in_box(4)
                .into_iter()
                .map(|rho| mu_min(f, rho))
                .max()
                .unwrap();
            match sp.origin {
                OriginPosition::Outside => assert!(best > 0),
                OriginPosition::Boundary => assert!(best == 0),
                OriginPosition::Interior => assert!(best < 0),
            }
        }
    }

    #[test]
    fn limit_idempotent_and_homogeneous() {
        let f = BiForm::from_int_terms(
            &q(),
            3,
            3,
            &[(1, 3, 0), (2, 2, 1), (5, 1, 2), (1, 0, 3), (7, 3, 3), (3, 2, 2)],
        );
        let rho = OneParamSubgroup::new(1, 1);
        let id = CoordChange::identity(&q());
        let lim = limit_under_1ps(&f, rho, &id).unwrap();
        // support on i + j = 3 only
        assert!(lim.support().iter().all(|&(i, j)| i + j == 3));
        let lim2 = limit_under_1ps(&lim, rho, &id).unwrap();
        assert_eq!(lim, lim2);
    }

    #[test]
    fn certificate_check() {
        // X^2 * (generic (1,3)) destabilized by rho_{4,1} at identity coords
        let x2 = BiForm::from_int_terms(&q(), 2, 0, &[(1, 2, 0)]);
        let g13 = BiForm::from_int_terms(&q(), 1, 3, &[(1, 0, 0), (2, 1, 3), (1, 0, 2)]);
        let f = x2.mul(&g13);
        let cert = InstabilityCertificate {
            g: CoordChange::identity(&q()),
            rho: OneParamSubgroup::new(4, 1),
        };
        assert_eq!(
            check_certificate(&f, &cert).unwrap(),
            CertificateVerdict::ValidUnstable
        );
        // the wall curve with rho_{3,1}: strict witness
        let cert31 = InstabilityCertificate {
            g: CoordChange::identity(&q()),
            rho: OneParamSubgroup::new(3, 1),
        };
        assert_eq!(
            check_certificate(&max_degenerate_a5_curve(&q()), &cert31).unwrap(),
            CertificateVerdict::ValidStrictWitness
        );
        // wrong coordinates: invalid
        let bad = InstabilityCertificate {
            g: CoordChange::linear(
                Mat2::from_ints(&q(), [[0, 1], [1, 0]]),
                Mat2::identity(&q()),
            ),
            rho: OneParamSubgroup::new(4, 1),
        };
        assert_eq!(check_certificate(&f, &bad).unwrap(), CertificateVerdict::Invalid);
    }

    #[test]
    fn mu_min_scales_with_rho() {
        let f = max_degenerate_a5_curve(&q());
        for rho in primitive_subgroups_in_box(3) {
            let m1 = mu_min(&f, rho);
            let m3 = mu_min(&f, OneParamSubgroup::new(3 * rho.u, 3 * rho.v));
            assert_eq!(3 * m1, m3);
        }
    }
}
