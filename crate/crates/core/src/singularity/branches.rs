//! Geometric branch count of a squarefree plane-curve germ at the origin by
//! successive Newton-polygon expansion, adjoining roots as required.

use crate::error::Error;
use crate::exact::bipoly::BiPoly;
use crate::exact::factor::{adjoin_root, factor_univ};
use crate::exact::field::Field;
use crate::exact::unipoly::UniPoly;

/// Number of Newton-Puiseux branches of f at the origin. The germ must be
/// squarefree and vanish at the origin.
pub fn branch_count(f: &BiPoly) -> Result<usize, Error> {
    assert!(!f.is_zero());
    assert!(f.coeff(0, 0).is_zero(), "germ does not pass through the origin");
    branch_rec(f, 0)
}

fn branch_rec(f: &BiPoly, depth: usize) -> Result<usize, Error> {
    assert!(depth < 48, "runaway Newton-Puiseux recursion");
    let field = f.field().clone();
    let mut g = f.clone();
    let mut count = 0usize;

    // coordinate-axis branches
    let x = BiPoly::monomial(&field, field.one(), 1, 0);
    let z = BiPoly::monomial(&field, field.one(), 0, 1);
    while let Some(q) = g.exact_div(&x) {
        count += 1;
        g = q;
    }
    while let Some(q) = g.exact_div(&z) {
        count += 1;
        g = q;
    }
    if !g.coeff(0, 0).is_zero() {
        return Ok(count);
    }

    for edge in newton_edges(&g) {
        let chi = edge_char_poly(&field, &g, &edge);
        for (h, r) in factor_univ(&chi) {
            let d = h.degree().unwrap();
            if d == 0 {
                continue;
            }
            // skip the root sigma = 0 (not on the edge interior)
            if d == 1 && h.coeff(0).is_zero() {
                continue;
            }
            if r == 1 {
                count += d;
                continue;
            }
            // multiple root: adjoin sigma, then c with c^Q = sigma, substitute
            let adj_sigma = adjoin_root(&h)?;
            let ks = adj_sigma.field.clone();
            let sigma = adj_sigma.root.clone();
            let mut croot_poly = vec![ks.zero(); edge.q + 1];
            croot_poly[0] = sigma.neg();
            croot_poly[edge.q] = ks.one();
            let adj_c = adjoin_root(&UniPoly::new(&ks, "c", croot_poly))?;
            let kc = adj_c.field.clone();
            let c = adj_c.root.clone();
            let g_up = g.embed(&kc);
            let f1 = edge_substitute(&g_up, &edge, &c);
            count += d * branch_rec(&f1, depth + 1)?;
        }
    }
    Ok(count)
}

pub(crate) struct Edge {
    /// Start (i0, j0) with the larger j, end (i1, j1) with j1 < j0.
    pub i0: usize,
    pub j0: usize,
    /// Primitive direction: (p, -q) with p, q > 0.
    pub p: usize,
    pub q: usize,
    /// Number of primitive steps (lattice points on the edge minus one).
    pub len: usize,
}

/// Lower Newton polygon edges between the two axis intercepts; assumes
/// support on both axes (no x- or z-factor).
pub(crate) fn newton_edges(g: &BiPoly) -> Vec<Edge> {
    let mut pts: Vec<(usize, usize)> = g.terms().map(|(i, j, _)| (i, j)).collect();
    pts.sort();
    // lower hull in (i, j)
    let cross = |o: (usize, usize), a: (usize, usize), b: (usize, usize)| -> i64 {
        let (ox, oy) = (o.0 as i64, o.1 as i64);
        (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
    };
    let mut hull: Vec<(usize, usize)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let mut edges = Vec::new();
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b.1 >= a.1 {
            break; // past the x-axis anchor: no more origin-facing edges
        }
        let di = b.0 - a.0;
        let dj = a.1 - b.1;
        let g = gcd_usize(di, dj);
        edges.push(Edge {
            i0: a.0,
            j0: a.1,
            p: di / g,
            q: dj / g,
            len: g,
        });
    }
    edges
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// chi(S) = sum over lattice points on the edge of coeff * S^(len - k), so
/// that the branch scalars satisfy chi(c^q) = 0.
fn edge_char_poly(field: &Field, g: &BiPoly, e: &Edge) -> UniPoly {
    let mut coeffs = vec![field.zero(); e.len + 1];
    for k in 0..=e.len {
        let i = e.i0 + k * e.p;
        let j = e.j0 - k * e.q;
        coeffs[e.len - k] = g.coeff(i, j);
    }
    UniPoly::new(field, "s", coeffs)
}

/// Substitute x = x^q, z = x^p (c + z), divide out the full x-power.
fn edge_substitute(g: &BiPoly, e: &Edge, c: &crate::exact::field::AlgScalar) -> BiPoly {
    let field = g.field().clone();
    let mut acc = BiPoly::zero(&field);
    // z-slot image: x^p * (c + z)
    let zimg = BiPoly::monomial(&field, field.one(), e.p, 0).mul(
        &BiPoly::constant(&field, c.clone()).add(&BiPoly::monomial(&field, field.one(), 0, 1)),
    );
    for (i, j, co) in g.terms() {
        let mut term = BiPoly::monomial(&field, co.clone(), i * e.q, 0);
        term = term.mul(&zimg.pow(j));
        acc = acc.add(&term);
    }
    // divide by the x-content
    let ord = acc
        .terms()
        .map(|(i, _, _)| i)
        .min()
        .expect("nonzero substitution");
    if ord == 0 {
        return acc;
    }
    let xpow = BiPoly::monomial(&field, field.one(), ord, 0);
    acc.exact_div(&xpow).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn bp(terms: &[(i64, usize, usize)]) -> BiPoly {
        BiPoly::from_ints(&q(), terms)
    }

    #[test]
    fn node_and_cusp() {
        assert_eq!(branch_count(&bp(&[(1, 0, 2), (-1, 2, 0)])).unwrap(), 2); // z^2 - x^2
        assert_eq!(branch_count(&bp(&[(1, 0, 2), (-1, 3, 0)])).unwrap(), 1); // z^2 - x^3
    }

    #[test]
    fn a5_two_smooth_branches() {
        assert_eq!(branch_count(&bp(&[(1, 0, 2), (-1, 6, 0)])).unwrap(), 2); // z^2 - x^6
    }

    #[test]
    fn a_series_parity() {
        for k in 1..=9usize {
            let f = bp(&[(1, 0, 2)]).sub(&bp(&[(1, k + 1, 0)]));
            let expected = if k % 2 == 1 { 2 } else { 1 };
            assert_eq!(branch_count(&f).unwrap(), expected, "A_{}", k);
        }
    }

    #[test]
    fn d_series() {
        // x(z^2 - x^(2k-2)): for 2k-2 even the quadratic splits: 3 branches
        let d8 = bp(&[(1, 1, 2), (-1, 7, 0)]);
        assert_eq!(branch_count(&d8).unwrap(), 3);
        // D5 = x(z^2 - x^3): cusp + line: 2 branches
        let d5 = bp(&[(1, 1, 2), (-1, 4, 0)]);
        assert_eq!(branch_count(&d5).unwrap(), 2);
    }

    #[test]
    fn e_series_branches() {
        assert_eq!(branch_count(&bp(&[(1, 3, 0), (1, 0, 4)])).unwrap(), 1); // E6
        assert_eq!(branch_count(&bp(&[(1, 3, 0), (1, 1, 3)])).unwrap(), 2); // E7 = x(x^2 + z^3)
        assert_eq!(branch_count(&bp(&[(1, 3, 0), (1, 0, 5)])).unwrap(), 1); // E8
    }

    #[test]
    fn j10_three_branches() {
        // z^3 - x^6 = (z - x^2)(z^2 + x^2 z + x^4): three smooth branches
        assert_eq!(branch_count(&bp(&[(1, 0, 3), (-1, 6, 0)])).unwrap(), 3);
    }

    #[test]
    fn irrational_tangent_directions() {
        // z^2 - 2x^2: branches z = +- sqrt2 x
        assert_eq!(branch_count(&bp(&[(1, 0, 2), (-2, 2, 0)])).unwrap(), 2);
    }

    #[test]
    fn ramified_multiple_root() {
        // (z - x^2)^2 - x^5: A4-type with one branch (z = x^2 + x^(5/2))
        let f = bp(&[(1, 0, 1), (-1, 2, 0)])
            .mul(&bp(&[(1, 0, 1), (-1, 2, 0)]))
            .sub(&bp(&[(1, 5, 0)]));
        assert_eq!(branch_count(&f).unwrap(), 1);
        // (z - x^2)^2 - x^6: splits: two branches
        let f = bp(&[(1, 0, 1), (-1, 2, 0)])
            .mul(&bp(&[(1, 0, 1), (-1, 2, 0)]))
            .sub(&bp(&[(1, 6, 0)]));
        assert_eq!(branch_count(&f).unwrap(), 2);
    }
}
