//! ADE/J10 classification of isolated plane-curve germs.

use crate::error::Error;
use crate::exact::bipoly::BiPoly;
use crate::exact::factor::split_completely;
use crate::exact::field::AlgScalar;
use crate::exact::unipoly::UniPoly;

use super::milnor::milnor_number;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum SingularityType {
    Smooth,
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    J10,
    Unclassified,
}

impl std::fmt::Display for SingularityType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularityType::Smooth => write!(f, "smooth"),
            SingularityType::A(k) => write!(f, "A{}", k),
            SingularityType::D(k) => write!(f, "D{}", k),
            SingularityType::E6 => write!(f, "E6"),
            SingularityType::E7 => write!(f, "E7"),
            SingularityType::E8 => write!(f, "E8"),
            SingularityType::J10 => write!(f, "J10"),
            SingularityType::Unclassified => write!(f, "unclassified"),
        }
    }
}

/// Multiplicity: minimal total degree in the support.
pub fn multiplicity(f: &BiPoly) -> usize {
    assert!(!f.is_zero());
    f.order_at_origin().unwrap()
}

/// Shape of the tangent cone (the lowest homogeneous part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TangentConeShape {
    /// m pairwise distinct lines (their root data not retained).
    DistinctLines(usize),
    /// A double line plus a transverse simple line.
    DoubleLinePlusSimple,
    /// A single line with multiplicity three.
    TripleLine,
    /// Multiplicity at least 4 or other configurations.
    Other,
}

/// Root-multiplicity pattern of the tangent cone as a binary form.
pub fn tangent_cone_shape(f: &BiPoly) -> Result<TangentConeShape, Error> {
    let m = multiplicity(f);
    let cone = f.homogeneous_part(m);
    let mults = cone_root_multiplicities(&cone)?;
    Ok(match (m, mults.as_slice()) {
        (_, ms) if ms.iter().all(|&x| x == 1) => TangentConeShape::DistinctLines(m),
        (3, [2, 1]) | (3, [1, 2]) => TangentConeShape::DoubleLinePlusSimple,
        (3, [3]) => TangentConeShape::TripleLine,
        _ => TangentConeShape::Other,
    })
}

/// Multiplicities of the linear factors of a nonzero binary form in (x, z).
fn cone_root_multiplicities(cone: &BiPoly) -> Result<Vec<usize>, Error> {
    let field = cone.field().clone();
    let m = cone.order_at_origin().unwrap();
    // binary form sum_k c_k x^k z^(m-k): core in t = x/z plus z-root at infinity
    let coeffs: Vec<AlgScalar> = (0..=m).map(|k| cone.coeff(k, m - k)).collect();
    let p = UniPoly::new(&field, "t", coeffs);
    let inf_mult = m - p.degree().unwrap();
    let (_, roots) = split_completely(&p)?;
    let mut mults: Vec<usize> = roots.into_iter().map(|(_, mult)| mult).collect();
    if inf_mult > 0 {
        mults.push(inf_mult);
    }
    Ok(mults)
}

/// The unique tangent line direction of a cone that is a perfect power of one
/// line: returns (alpha, beta) with the line alpha x + beta z (exact, no
/// extension needed since the repeated root is rational over the field).
fn repeated_line(cone: &BiPoly, m: usize) -> (AlgScalar, AlgScalar) {
    let field = cone.field().clone();
    let coeffs: Vec<AlgScalar> = (0..=m).map(|k| cone.coeff(k, m - k)).collect();
    let p = UniPoly::new(&field, "t", coeffs);
    match p.degree() {
        Some(0) | None => (field.zero(), field.one()), // cone = c z^m: line z
        Some(d) if d == m => {
            // cone = lc (t - r)^m with r = -c_{m-1}/(m lc): line x - r z
            let r = p
                .coeff(m - 1)
                .div(&p.leading_coeff())
                .div(&field.int(m as i64))
                .neg();
            (field.one(), r.neg())
        }
        Some(_) => {
            // mixed power x^a z^b cannot be a repeated single line
            unreachable!("repeated_line called on a non-power cone")
        }
    }
}

/// Linear change making the repeated tangent line the axis {z = 0}: after the
/// substitution the cone is a scalar times z^m.
fn rotate_line_to_z(f: &BiPoly, line: &(AlgScalar, AlgScalar)) -> BiPoly {
    let field = f.field().clone();
    let (alpha, beta) = line;
    // ell = alpha x + beta z; choose new coordinates (x', z') with z' = ell
    if !beta.is_zero() {
        // x = x', z = (z' - alpha x')/beta
        let binv = beta.inv().unwrap();
        let ximg = BiPoly::monomial(&field, field.one(), 1, 0);
        let zimg = BiPoly::monomial(&field, binv.clone(), 0, 1)
            .add(&BiPoly::monomial(&field, alpha.mul(&binv).neg(), 1, 0));
        f.substitute(&ximg, &zimg)
    } else {
        // ell = alpha x: swap roles: x = z'/alpha, z = x'
        let ainv = alpha.inv().unwrap();
        let ximg = BiPoly::monomial(&field, ainv, 0, 1);
        let zimg = BiPoly::monomial(&field, field.one(), 1, 0);
        f.substitute(&ximg, &zimg)
    }
}

/// A_k invariant by the Weierstrass route: after rotating so that f(0, z)
/// has order exactly 2, solve f = unit * (z^2 + s(x) z + t(x)) to x-order M
/// and read off k = ord_x(s^2 - 4t) - 1.
fn a_invariant_by_discriminant(f: &BiPoly, order: usize) -> Option<usize> {
    let field = f.field().clone();
    // make the z^2 coefficient of the 2-jet nonzero by a deterministic shear
    let mut g = None;
    for lambda in 0..4i64 {
        let cand = if lambda == 0 {
            f.clone()
        } else {
            // x -> x, z -> z stays; shear x -> x + lambda... need f(0, z) of
            // order 2: substitute x = x' + lambda z', z = z'
            let ximg = BiPoly::monomial(&field, field.one(), 1, 0)
                .add(&BiPoly::monomial(&field, field.int(lambda), 0, 1));
            let zimg = BiPoly::monomial(&field, field.one(), 0, 1);
            f.substitute(&ximg, &zimg)
        };
        if !cand.coeff(0, 2).is_zero() {
            g = Some(cand);
            break;
        }
        // also try the transpose-like swap once via (x, z) -> (z, x)
        if lambda == 0 {
            let swapped = f.substitute(
                &BiPoly::monomial(&field, field.one(), 0, 1),
                &BiPoly::monomial(&field, field.one(), 1, 0),
            );
            if !swapped.coeff(0, 2).is_zero() {
                g = Some(swapped);
                break;
            }
        }
    }
    let g = g?;
    // order-by-order solve of g = u * (z^2 + s z + t) mod x^order, where
    // u = sum_{k<=dz-2} u_k(x) z^k. Since the germ is singular at the origin
    // with cone z^2-unit, s(0) = t(0) = 0 and u_0(0) is a unit, which makes
    // the solve triangular: at x-order n compute t[n], then s[n], then u_k[n].
    let dz = g.deg_z().unwrap();
    if dz < 2 {
        return None;
    }
    let ucount = dz - 1;
    let mut s = vec![field.zero(); order];
    let mut t = vec![field.zero(); order];
    let mut u: Vec<Vec<AlgScalar>> = vec![vec![field.zero(); order]; ucount];
    let g0 = g.eval_x(&field.zero(), "z");
    if !g0.coeff(0).is_zero() || !g0.coeff(1).is_zero() {
        return None;
    }
    for k in 0..ucount {
        u[k][0] = g0.coeff(k + 2);
    }
    let u00_inv = u[0][0].inv()?;
    for n in 1..order {
        // z^0: u_0 * t at x^n; unknown t[n] with coefficient u_0[0]
        let mut acc = field.zero();
        for b in 1..n {
            acc = acc.add(&u[0][n - b].mul(&t[b]));
        }
        t[n] = g.coeff(n, 0).sub(&acc).mul(&u00_inv);
        // z^1: u_0 * s + u_1 * t; unknown s[n]
        let mut acc = field.zero();
        for b in 1..n {
            acc = acc.add(&u[0][n - b].mul(&s[b]));
        }
        if ucount >= 2 {
            for b in 1..=n {
                acc = acc.add(&u[1][n - b].mul(&t[b]));
            }
        }
        s[n] = g.coeff(n, 1).sub(&acc).mul(&u00_inv);
        // z^j, j >= 2: z^2 contributes exactly the unknown u_{j-2}[n]
        for j in 2..=dz {
            let k = j - 2;
            let mut acc = field.zero();
            if j - 1 < ucount {
                for b in 1..=n {
                    acc = acc.add(&u[j - 1][n - b].mul(&s[b]));
                }
            }
            if j < ucount {
                for b in 1..=n {
                    acc = acc.add(&u[j][n - b].mul(&t[b]));
                }
            }
            u[k][n] = g.coeff(n, j).sub(&acc);
        }
    }
    // discriminant order
    let spoly = UniPoly::new(&field, "x", s);
    let tpoly = UniPoly::new(&field, "x", t);
    let disc = spoly.mul(&spoly).sub(&tpoly.scale(&field.int(4)));
    let ord = disc.coeffs().iter().position(|c| !c.is_zero())?;
    Some(ord - 1)
}

/// The classification decision tree.
pub fn classify_local(f: &BiPoly) -> Result<SingularityType, Error> {
    let m = multiplicity(f);
    match m {
        0 => Ok(SingularityType::Smooth),
        1 => Ok(SingularityType::Smooth),
        2 => {
            let mu = milnor_number(f)?;
            // independent route: discriminant order after Weierstrass
            let order = 2 * mu + 6;
            match a_invariant_by_discriminant(f, order) {
                Some(k) if k == mu => Ok(SingularityType::A(mu)),
                Some(k) => Err(Error::Paradox(format!(
                    "A-series cross-check failed: mu = {}, discriminant order gives k = {}",
                    mu, k
                ))),
                None => Err(Error::Paradox("Weierstrass normalization failed".into())),
            }
        }
        3 => {
            let mu = milnor_number(f)?;
            match tangent_cone_shape(f)? {
                TangentConeShape::DistinctLines(3) => {
                    if mu == 4 {
                        Ok(SingularityType::D(4))
                    } else {
                        Err(Error::Paradox(format!(
                            "three distinct tangent lines but mu = {}",
                            mu
                        )))
                    }
                }
                TangentConeShape::DoubleLinePlusSimple => {
                    if mu >= 5 {
                        Ok(SingularityType::D(mu))
                    } else {
                        Ok(SingularityType::Unclassified)
                    }
                }
                TangentConeShape::TripleLine => {
                    match mu {
                        6 => Ok(SingularityType::E6),
                        7 => Ok(SingularityType::E7),
                        8 => Ok(SingularityType::E8),
                        10 => {
                            // J10 test: rotate the triple line to {z = 0};
                            // under weights (x, z) = (1, 2) the order-6 part
                            // must be z^3 + e x^2 z^2 + d x^4 z + c x^6 with
                            // the cubic s^3 + e s^2 + d s + c squarefree.
                            // (A literal "c nonzero" requirement is not
                            // coordinate-invariant: a shear can move one
                            // branch's root to zero while the germ stays J10.)
                            let cone = f.homogeneous_part(3);
                            let line = repeated_line(&cone, 3);
                            let rot = rotate_line_to_z(f, &line);
                            let w = rot.weighted_order(1, 2).unwrap();
                            if w == 6 {
                                let part = rot.weighted_part(1, 2, 6);
                                let lead = part.coeff(0, 3);
                                if !lead.is_zero() {
                                    let field = f.field().clone();
                                    let psi = UniPoly::new(
                                        &field,
                                        "s",
                                        vec![
                                            part.coeff(6, 0),
                                            part.coeff(4, 1),
                                            part.coeff(2, 2),
                                            lead,
                                        ],
                                    );
                                    let g =
                                        crate::exact::unipoly::gcd_univ(&psi, &psi.derivative())
                                            .expect("gcd of nonzero polynomials");
                                    if g.degree() == Some(0) {
                                        return Ok(SingularityType::J10);
                                    }
                                }
                            }
                            Ok(SingularityType::Unclassified)
                        }
                        _ => Ok(SingularityType::Unclassified),
                    }
                }
                _ => Ok(SingularityType::Unclassified),
            }
        }
        _ => Ok(SingularityType::Unclassified),
    }
}

/// Convenience wrapper carrying the standard numeric invariants.
#[derive(Clone, Debug)]
pub struct LocalInvariants {
    pub multiplicity: usize,
    pub milnor: usize,
    pub branches: usize,
    pub delta: usize,
    pub kind: SingularityType,
}

pub fn local_invariants(f: &BiPoly) -> Result<LocalInvariants, Error> {
    let m = multiplicity(f);
    let mu = milnor_number(f)?;
    let r = super::branches::branch_count(f)?;
    assert!((mu + r) % 2 == 1, "mu + r - 1 must be even: mu={} r={}", mu, r);
    let delta = (mu + r - 1) / 2;
    let kind = classify_local(f)?;
    Ok(LocalInvariants {
        multiplicity: m,
        milnor: mu,
        branches: r,
        delta,
        kind,
    })
}
