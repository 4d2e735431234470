//! Splitting a bihomogeneous form into irreducible components.
//!
//! Bidegrees at most (3,3) keep every ansatz finite: after ruling factors are
//! removed the residual has z-degree at most 3, so any nontrivial split
//! contains a factor linear in z (or is a conjugate pair detected through the
//! z-discriminant). Factors over extensions are reached by adjoining roots of
//! specializations, which at these degrees is a complete procedure for the
//! conjugate-conic splits that actually occur.

use super::rulings::ruling_factors;
use super::BiForm;
use crate::error::Error;
use crate::exact::bipoly::{biv_squarefree_part, BiPoly};
use crate::exact::factor::{adjoin_root, factor_univ, split_completely};
use crate::exact::field::{AlgScalar, Field, MAX_TOWER_DEPTH};
use crate::exact::unipoly::{gcd_univ, squarefree_decomposition, UniPoly};

/// Factorization into irreducible bihomogeneous factors over the descriptor
/// field or a depth-legal extension; the product times a scalar reconstructs
/// the input. Returns the common field and the (factor, multiplicity) list.
pub fn irreducible_components(f: &BiForm) -> Result<(Field, Vec<(BiForm, usize)>), Error> {
    assert!(!f.is_zero());
    let (mut field, rulings, residual) = ruling_factors(f)?;
    let mut out: Vec<(BiForm, usize)> = rulings
        .iter()
        .map(|r| (r.as_biform().normalize(), r.multiplicity))
        .collect();
    let (ra, rb) = residual.bidegree();
    if ra == 0 && rb == 0 {
        return Ok((field, out));
    }
    let chart = residual.dehomogenize();
    let reduced = biv_squarefree_part(&chart);
    let (ext, irreducibles) = split_squarefree(&field, &reduced)?;
    if ext != field {
        field = ext;
        out = out
            .iter()
            .map(|(g, m)| (g.embed(&field), *m))
            .collect();
    }
    let chart_ext = chart.embed(&field);
    for g in irreducibles {
        // multiplicity by repeated division
        let mut m = 0usize;
        let mut rest = chart_ext.clone();
        while let Some(q) = rest.exact_div(&g) {
            m += 1;
            rest = q;
        }
        debug_assert!(m >= 1);
        let form = BiForm::homogenize(&field, &g, g.deg_x().unwrap(), g.deg_z().unwrap());
        out.push((form.normalize(), m));
    }
    Ok((field, out))
}

/// Split a squarefree, content-free (no pure-x or pure-z factors) chart
/// polynomial into absolutely irreducible factors over a depth-legal field.
fn split_squarefree(field: &Field, u: &BiPoly) -> Result<(Field, Vec<BiPoly>), Error> {
    let mut field = field.clone();
    let mut todo: Vec<BiPoly> = vec![u.clone()];
    let mut done: Vec<BiPoly> = Vec::new();
    let mut adjunctions = 0usize;
    'work: while let Some(v) = todo.pop() {
        if v.deg_x() == Some(0) && v.deg_z() == Some(0) {
            continue;
        }
        // structured cases first
        if let Some(parts) = split_homogeneous(&field, &v)? {
            route_parts(&mut field, parts.0, parts.1, &mut todo, &mut done);
            continue;
        }
        if let Some(parts) = split_in_xz_product(&field, &v)? {
            route_parts(&mut field, parts.0, parts.1, &mut todo, &mut done);
            continue;
        }
        let dz = v.deg_z().unwrap();
        let dx = v.deg_x().unwrap();
        if dz == 0 || dx == 0 {
            // pure-content pieces cannot appear here
            done.push(v);
            continue;
        }
        if dz == 1 || dx == 1 {
            // primitive and linear in one variable: irreducible
            done.push(v);
            continue;
        }
        // z-linear factor search over the current field
        if let Some(g) = find_z_linear_factor(&field, &v) {
            let rest = v.exact_div(&g).expect("factor divides");
            todo.push(g);
            todo.push(rest);
            continue;
        }
        // and symmetrically x-linear factors
        if let Some(g) = find_z_linear_factor(&field, &transpose(&v)) {
            let g = transpose(&g);
            let rest = v.exact_div(&g).expect("factor divides");
            todo.push(g);
            todo.push(rest);
            continue;
        }
        if dz == 2 || dx == 2 {
            let (vv, flip) = if dz == 2 { (v.clone(), false) } else { (transpose(&v), true) };
            match split_z_quadratic(&field, &vv)? {
                QuadSplit::Irreducible => {
                    done.push(v);
                    continue;
                }
                QuadSplit::Split(new_field, g1, g2) => {
                    let (g1, g2) = if flip { (transpose(&g1), transpose(&g2)) } else { (g1, g2) };
                    migrate(&mut field, new_field, &mut todo, &mut done);
                    todo.push(g1.embed(&field));
                    todo.push(g2.embed(&field));
                    continue;
                }
            }
        }
        // dz == 3 and dx >= 2 here. A hidden absolute split must be three
        // conjugate factors, which forces bidegree (3,3) with (1,1) factors
        // over a cubic coefficient field; a degree-3 root of one of the
        // line-specializations generates it.
        if dz == 3 && dx == 3 && field.depth() < MAX_TOWER_DEPTH && triple_shape_possible(&field, &v) {
            let mut v_cur = v.clone();
            let mut split = false;
            'attempt: loop {
                if !triple_shape_possible(&field, &v_cur) {
                    break;
                }
                let specs = specialization_polys(&field, &v_cur);
                let mut adjoined = false;
                for spec in specs {
                    for (g, _) in factor_univ(&spec) {
                        if g.degree() != Some(3) {
                            continue;
                        }
                        if adjunctions >= 4 || field.depth() + 1 > MAX_TOWER_DEPTH {
                            break 'attempt;
                        }
                        let adj = adjoin_root(&g)?;
                        if adj.degree == 1 {
                            continue;
                        }
                        adjunctions += 1;
                        migrate(&mut field, adj.field, &mut todo, &mut done);
                        v_cur = v_cur.embed(&field);
                        if let Some(gf) = find_z_linear_factor(&field, &v_cur) {
                            let rest = v_cur.exact_div(&gf).expect("factor divides");
                            todo.push(gf);
                            todo.push(rest);
                            split = true;
                            break 'attempt;
                        }
                        // refresh specializations over the extension
                        adjoined = true;
                        break;
                    }
                    if adjoined {
                        break;
                    }
                }
                if !adjoined {
                    break;
                }
            }
            if split {
                continue 'work;
            }
            done.push(v_cur);
            continue;
        }
        // no split found: certified irreducible at these degrees
        done.push(v);
    }
    Ok((field, done))
}

fn route_parts(
    field: &mut Field,
    new_field: Field,
    parts: Vec<BiPoly>,
    todo: &mut Vec<BiPoly>,
    done: &mut Vec<BiPoly>,
) {
    migrate(field, new_field, todo, done);
    for p in parts {
        done.push(p.embed(field));
    }
}

fn migrate(field: &mut Field, new_field: Field, todo: &mut Vec<BiPoly>, done: &mut Vec<BiPoly>) {
    if new_field == *field {
        return;
    }
    *todo = todo.iter().map(|p| p.embed(&new_field)).collect();
    *done = done.iter().map(|p| p.embed(&new_field)).collect();
    *field = new_field;
}

fn transpose(p: &BiPoly) -> BiPoly {
    let field = p.field().clone();
    let mut acc = BiPoly::zero(&field);
    for (i, j, c) in p.terms() {
        acc = acc.add(&BiPoly::monomial(&field, c.clone(), j, i));
    }
    acc
}

/// Chart polynomial homogeneous in (x, z): a binary form, splitting into
/// linear binary factors (each a (1,1)-form upstairs).
fn split_homogeneous(
    field: &Field,
    v: &BiPoly,
) -> Result<Option<(Field, Vec<BiPoly>)>, Error> {
    let degs: Vec<usize> = v.terms().map(|(i, j, _)| i + j).collect();
    let Some(&d) = degs.first() else {
        return Ok(None);
    };
    if !degs.iter().all(|&t| t == d) || d == 0 {
        return Ok(None);
    }
    // binary form sum c_i x^i z^(d-i); content-free means both x^d and z^d appear
    let p = UniPoly::new(
        field,
        "t",
        (0..=d).map(|i| v.coeff(i, d - i)).collect(),
    );
    let (ext, roots) = split_completely(&p)?;
    let lead = ext.embed(&p.coeff(d));
    let mut parts = Vec::new();
    let mut first = true;
    for (r, m) in roots {
        // root t = x/z: factor (x - r z)
        for _ in 0..m {
            let mut lin = BiPoly::monomial(&ext, ext.one(), 1, 0)
                .sub(&BiPoly::monomial(&ext, r.clone(), 0, 1));
            if first {
                lin = lin.scale(&lead);
                first = false;
            }
            parts.push(lin);
        }
    }
    Ok(Some((ext, parts)))
}

/// Chart polynomial supported on powers of the product xz: a univariate in
/// u = xz, splitting into factors (xz - rho) which are (1,1)-forms upstairs.
fn split_in_xz_product(
    field: &Field,
    v: &BiPoly,
) -> Result<Option<(Field, Vec<BiPoly>)>, Error> {
    if !v.terms().all(|(i, j, _)| i == j) {
        return Ok(None);
    }
    let d = v.deg_x().unwrap();
    if d == 0 {
        return Ok(None);
    }
    let p = UniPoly::new(field, "u", (0..=d).map(|i| v.coeff(i, i)).collect());
    let (ext, roots) = split_completely(&p)?;
    let lead = ext.embed(&p.coeff(d));
    let mut parts = Vec::new();
    let mut first = true;
    for (r, m) in roots {
        for _ in 0..m {
            let mut lin = BiPoly::monomial(&ext, ext.one(), 1, 1)
                .sub(&BiPoly::constant(&ext, r.clone()));
            if first {
                lin = lin.scale(&lead);
                first = false;
            }
            parts.push(lin);
        }
    }
    Ok(Some((ext, parts)))
}

/// Monic divisors of a univariate polynomial, from its factorization.
fn monic_divisors(p: &UniPoly) -> Vec<UniPoly> {
    let field = p.field().clone();
    let fs = factor_univ(p);
    let mut divs = vec![UniPoly::constant(&field, p.var(), field.one())];
    for (g, m) in fs {
        let mut next = Vec::new();
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..m {
                acc = acc.mul(&g);
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs
}

/// Search for a factor p(x) z + q(x) of v over the given field: p runs over
/// monic divisors of the leading z-coefficient, q over scalar multiples of
/// monic divisors of v(x, 0); the scalar is solved exactly.
fn find_z_linear_factor(field: &Field, v: &BiPoly) -> Option<BiPoly> {
    let dz = v.deg_z()?;
    if dz == 0 {
        return None;
    }
    let zc = v.z_coeffs("x");
    let lead = &zc[dz];
    let f0 = &zc[0];
    if f0.is_zero() {
        // z divides v: content, not handled here
        return None;
    }
    let p_cands = monic_divisors(lead);
    let q_cands = monic_divisors(f0);
    for p_hat in &p_cands {
        for q_hat in &q_cands {
            if p_hat.is_constant() && q_hat.is_constant() {
                // constant factor: not a genuine component
                continue;
            }
            if gcd_univ(p_hat, q_hat).map_or(false, |g| g.degree() != Some(0)) {
                continue; // factor would be imprimitive
            }
            // v(x, -c q/p) * p^dz = sum_k v_k (-c q)^k p^(dz-k) = 0 as poly in x
            // collect coefficients of powers of c
            let mut c_polys: Vec<UniPoly> = Vec::new(); // index k: x-poly multiplying c^k
            for (k, vk) in zc.iter().enumerate() {
                if vk.is_zero() {
                    continue;
                }
                let term = vk
                    .mul(&q_hat.pow(k))
                    .mul(&p_hat.pow(dz - k))
                    .scale(&field.int(if k % 2 == 0 { 1 } else { -1 }));
                if c_polys.len() <= k {
                    c_polys.resize(k + 1, UniPoly::zero(field, "x"));
                }
                c_polys[k] = c_polys[k].add(&term);
            }
            // constraints: for each x-power, sum_k c_polys[k][x-power] c^k = 0
            let max_x = c_polys
                .iter()
                .filter_map(|p| p.degree())
                .max()
                .unwrap_or(0);
            let mut constraint: Option<UniPoly> = None;
            let mut inconsistent = false;
            for e in 0..=max_x {
                let coeffs: Vec<AlgScalar> =
                    c_polys.iter().map(|p| p.coeff(e)).collect();
                let ce = UniPoly::new(field, "c", coeffs);
                if ce.is_zero() {
                    continue;
                }
                if ce.is_constant() {
                    inconsistent = true;
                    break;
                }
                constraint = Some(match constraint {
                    None => ce,
                    Some(acc) => gcd_univ(&acc, &ce).unwrap(),
                });
                if constraint.as_ref().unwrap().degree() == Some(0) {
                    inconsistent = true;
                    break;
                }
            }
            if inconsistent {
                continue;
            }
            let Some(conpoly) = constraint else {
                continue;
            };
            for (g, _) in factor_univ(&conpoly) {
                if g.degree() != Some(1) {
                    continue;
                }
                let c = g.coeff(0).neg();
                if c.is_zero() {
                    continue;
                }
                let cand_zc: Vec<UniPoly> = vec![q_hat.scale(&c), p_hat.clone()];
                let cand = BiPoly::from_z_coeffs(field, &cand_zc);
                if v.exact_div(&cand).is_some() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

enum QuadSplit {
    Irreducible,
    Split(Field, BiPoly, BiPoly),
}

/// Complete decision for z-quadratic content-free v: splits over a constant
/// extension iff the z-discriminant is a scalar times a square in K[x].
fn split_z_quadratic(field: &Field, v: &BiPoly) -> Result<QuadSplit, Error> {
    let zc = v.z_coeffs("x");
    debug_assert_eq!(zc.len(), 3);
    let (c0, c1, c2) = (&zc[0], &zc[1], &zc[2]);
    let disc = c1.mul(c1).sub(&c2.mul(c0).scale(&field.int(4)));
    if disc.is_zero() {
        // v = c2 (z + c1/(2 c2))^2 up to content: not squarefree, cannot occur
        return Ok(QuadSplit::Irreducible);
    }
    // disc = e * s(x)^2 exactly?
    let dec = squarefree_decomposition(&disc);
    if dec.iter().any(|(_, m)| m % 2 == 1) {
        return Ok(QuadSplit::Irreducible);
    }
    let mut s = UniPoly::constant(field, "x", field.one());
    for (g, m) in &dec {
        s = s.mul(&g.pow(m / 2));
    }
    let e = disc.leading_coeff(); // disc = e * s^2 with s monic
    debug_assert_eq!(s.scale(&e).mul(&s), disc);
    // sqrt of e
    let (ext, sqrt_e) = if let Some(r) = square_root_in(field, &e) {
        (field.clone(), r)
    } else {
        let m = UniPoly::new(field, "y", vec![e.neg(), field.zero(), field.one()]);
        let adj = adjoin_root(&m)?;
        let root = adj.root.clone();
        (adj.field, root)
    };
    let v_up = v.embed(&ext);
    let c1u = c1.embed(&ext);
    let c2u = c2.embed(&ext);
    let su = s.embed(&ext);
    // G = c2 z + (c1 - s sqrt_e)/2, primitive part
    let half = ext.from_rat(crate::exact::field::rat(1, 2));
    let qpart = c1u.sub(&su.scale(&sqrt_e)).scale(&half);
    let g = BiPoly::from_z_coeffs(&ext, &[qpart, c2u.clone()]);
    let g = primitive_z_linear(&g);
    match v_up.exact_div(&g) {
        Some(rest) => Ok(QuadSplit::Split(ext, g, rest)),
        None => {
            // conjugate choice
            let qpart2 = c1u.add(&su.scale(&sqrt_e)).scale(&half);
            let g2 = BiPoly::from_z_coeffs(&ext, &[qpart2, c2u]);
            let g2 = primitive_z_linear(&g2);
            match v_up.exact_div(&g2) {
                Some(rest) => Ok(QuadSplit::Split(ext, g2, rest)),
                None => Err(Error::FactorizationIncomplete),
            }
        }
    }
}

fn primitive_z_linear(g: &BiPoly) -> BiPoly {
    let field = g.field().clone();
    let zc = g.z_coeffs("x");
    let mut content = UniPoly::zero(&field, "x");
    for p in &zc {
        if p.is_zero() {
            continue;
        }
        content = if content.is_zero() {
            p.monic()
        } else {
            gcd_univ(&content, p).unwrap()
        };
    }
    if content.degree() == Some(0) {
        return g.clone();
    }
    let divided: Vec<UniPoly> = zc
        .iter()
        .map(|p| {
            if p.is_zero() {
                p.clone()
            } else {
                p.exact_div(&content).unwrap()
            }
        })
        .collect();
    BiPoly::from_z_coeffs(&field, &divided)
}

fn square_root_in(field: &Field, e: &AlgScalar) -> Option<AlgScalar> {
    // x^2 - e has a root in the field iff it factors with a linear part
    let m = UniPoly::new(field, "y", vec![e.neg(), field.zero(), field.one()]);
    for (g, _) in factor_univ(&m) {
        if g.degree() == Some(1) {
            return Some(g.coeff(0).neg());
        }
    }
    None
}

/// Specializations of v along four lines in each direction, used to reveal
/// coefficient fields of hidden conjugate factors.
fn specialization_polys(field: &Field, v: &BiPoly) -> Vec<UniPoly> {
    let mut out = Vec::new();
    for k in 0..4i64 {
        let val = field.int(k);
        out.push(v.eval_z(&val, "x"));
        out.push(v.eval_x(&val, "z"));
    }
    out.retain(|p| p.degree().map_or(false, |d| d >= 2));
    out
}

/// Necessary condition for a hidden split into three conjugate (1,1)-forms:
/// every specialization (and both leading coefficient rows) factors with root
/// degrees dividing 3 -- an irreducible quadratic factor rules it out.
fn triple_shape_possible(field: &Field, v: &BiPoly) -> bool {
    let mut polys = specialization_polys(field, v);
    let zc = v.z_coeffs("x");
    if let Some(lead) = zc.last() {
        polys.push(lead.clone());
    }
    let xc = transpose(v).z_coeffs("z");
    if let Some(lead) = xc.last() {
        polys.push(lead.clone());
    }
    for p in &polys {
        if p.degree().map_or(true, |d| d < 2) {
            continue;
        }
        for (g, _) in factor_univ(p) {
            if g.degree() == Some(2) {
                return false;
            }
        }
    }
    true
}
