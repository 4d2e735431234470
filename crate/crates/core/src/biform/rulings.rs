//! Ruling factors of a bihomogeneous form and restriction to a ruling.

use super::{BiForm, BinForm, FactorSide};
use crate::error::Error;
use crate::exact::field::{AlgScalar, Field};
use crate::exact::unipoly::{gcd_univ, UniPoly};

/// A linear ruling factor alpha*X + beta*Y (side First) or alpha*Z + beta*W
/// (side Second).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RulingFactor {
    pub side: FactorSide,
    pub alpha: AlgScalar,
    pub beta: AlgScalar,
    pub multiplicity: usize,
}

impl RulingFactor {
    /// The ruling as a bihomogeneous form of class (1,0) or (0,1).
    pub fn as_biform(&self) -> BiForm {
        let field = self.alpha.field().clone();
        match self.side {
            FactorSide::First => {
                // alpha X + beta Y, bidegree (1,0): c[1][0] = alpha, c[0][0] = beta
                let mut f = BiForm::zero(&field, 1, 0);
                f.set_coeff(1, 0, self.alpha.clone());
                f.set_coeff(0, 0, self.beta.clone());
                f
            }
            FactorSide::Second => {
                let mut f = BiForm::zero(&field, 0, 1);
                f.set_coeff(0, 1, self.alpha.clone());
                f.set_coeff(0, 0, self.beta.clone());
                f
            }
        }
    }

    /// The point of the opposite P1 cut out by this ruling: (X:Y) = (-beta : alpha)
    /// for a first-side ruling.
    pub fn base_point(&self) -> (AlgScalar, AlgScalar) {
        (self.beta.neg(), self.alpha.clone())
    }

    pub fn embed(&self, target: &Field) -> RulingFactor {
        RulingFactor {
            side: self.side,
            alpha: target.embed(&self.alpha),
            beta: target.embed(&self.beta),
            multiplicity: self.multiplicity,
        }
    }
}

/// Restrict F to the ruling {L = 0}: substituting the base point into the
/// matching coordinate pair leaves a binary form in the other pair.
pub fn restrict_to_ruling(f: &BiForm, l: &RulingFactor) -> BinForm {
    let field = f.field().clone();
    let (a, b) = f.bidegree();
    let (pt0, pt1) = l.base_point();
    match l.side {
        FactorSide::First => {
            // F(-beta, alpha, Z, W): binary form of degree b in (Z, W)
            let mut out = vec![field.zero(); b + 1];
            let mut xpow = vec![field.one()];
            for i in 1..=a {
                xpow.push(xpow[i - 1].mul(&pt0));
            }
            let mut ypow = vec![field.one()];
            for i in 1..=a {
                ypow.push(ypow[i - 1].mul(&pt1));
            }
            for i in 0..=a {
                for (j, slot) in out.iter_mut().enumerate() {
                    let c = f.coeff(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    *slot = slot.add(&c.mul(&xpow[i]).mul(&ypow[a - i]));
                }
            }
            BinForm::new(&field, b, out)
        }
        FactorSide::Second => {
            let mut out = vec![field.zero(); a + 1];
            let mut zpow = vec![field.one()];
            for j in 1..=b {
                zpow.push(zpow[j - 1].mul(&pt0));
            }
            let mut wpow = vec![field.one()];
            for j in 1..=b {
                wpow.push(wpow[j - 1].mul(&pt1));
            }
            for (i, slot) in out.iter_mut().enumerate() {
                for j in 0..=b {
                    let c = f.coeff(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    *slot = slot.add(&c.mul(&zpow[j]).mul(&wpow[b - j]));
                }
            }
            BinForm::new(&field, a, out)
        }
    }
}

/// Divide F exactly by a ruling factor (must divide).
pub fn divide_by_ruling(f: &BiForm, l: &RulingFactor) -> BiForm {
    f.exact_div(&l.as_biform()).expect("ruling factor divides")
}

/// The content of F on one side: the gcd of the coefficient binary forms.
/// Returned as a BinForm on that side's coordinates.
fn side_content(f: &BiForm, side: FactorSide) -> BinForm {
    let field = f.field().clone();
    let (a, b) = f.bidegree();
    match side {
        FactorSide::First => {
            // coefficient forms g_j(X, Y), j = 0..b
            let mut acc: Option<(UniPoly, usize)> = None; // (core poly in x, Y-mult)
            for j in 0..=b {
                let col: Vec<AlgScalar> = (0..=a).map(|i| f.coeff(i, j).clone()).collect();
                if col.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let bf = BinForm::new(&field, a, col);
                let (core, ymult) = binform_core(&bf);
                acc = Some(match acc {
                    None => (core, ymult),
                    Some((g, m)) => (gcd_univ(&g, &core).unwrap(), m.min(ymult)),
                });
                if let Some((g, m)) = &acc {
                    if g.degree() == Some(0) && *m == 0 {
                        break;
                    }
                }
            }
            let (core, ymult) = acc.expect("nonzero form");
            binform_from_core(&field, &core, ymult)
        }
        FactorSide::Second => {
            let mut acc: Option<(UniPoly, usize)> = None;
            for i in 0..=a {
                let row: Vec<AlgScalar> = (0..=b).map(|j| f.coeff(i, j).clone()).collect();
                if row.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let bf = BinForm::new(&field, b, row);
                let (core, wmult) = binform_core(&bf);
                acc = Some(match acc {
                    None => (core, wmult),
                    Some((g, m)) => (gcd_univ(&g, &core).unwrap(), m.min(wmult)),
                });
                if let Some((g, m)) = &acc {
                    if g.degree() == Some(0) && *m == 0 {
                        break;
                    }
                }
            }
            let (core, wmult) = acc.expect("nonzero form");
            binform_from_core(&field, &core, wmult)
        }
    }
}

/// Split a binary form as T^e0 * S^e1ing ... returns (core unipoly in t with
/// nonzero constant term, multiplicity of S). The T-multiplicity is the
/// core's order at zero, kept inside the core.
fn binform_core(bf: &BinForm) -> (UniPoly, usize) {
    let p = bf.to_unipoly("t");
    let smult = bf.degree - p.degree().unwrap();
    (p.monic(), smult)
}

fn binform_from_core(field: &Field, core: &UniPoly, smult: usize) -> BinForm {
    // core has degree d; represented form = core homogenized times S^smult,
    // total degree = d + smult <= degree. Pad to exactly d + smult.
    let d = core.degree().unwrap();
    let mut coeffs = vec![field.zero(); d + smult + 1];
    for (k, c) in core.coeffs().iter().enumerate() {
        coeffs[k] = c.clone();
    }
    BinForm::new(field, d + smult, coeffs)
}

/// All bidegree-(1,0) and (0,1) linear factors of F with multiplicities over
/// the descriptor field or a depth-legal extension, plus the residual form.
/// Every returned factor and the residual live over the common (possibly
/// extended) field, which is also returned.
pub fn ruling_factors(
    f: &BiForm,
) -> Result<(Field, Vec<RulingFactor>, BiForm), Error> {
    assert!(!f.is_zero(), "ruling factors of the zero form");
    let mut field = f.field().clone();
    let mut residual = f.clone();
    let mut out: Vec<RulingFactor> = Vec::new();

    for side in [FactorSide::First, FactorSide::Second] {
        let content = side_content(&residual, side);
        if content.degree == 0 {
            continue;
        }
        let (ext, roots) = content.projective_roots()?;
        if ext != field {
            field = ext;
            residual = residual.embed(&field);
            out = out.iter().map(|r| r.embed(&field)).collect();
        }
        for ((t, s), mult) in roots {
            // root (t:s) of the content: linear factor s*T' - ... the factor with
            // root (t:s) is (s X - t Y) on the first side (vanishes at (X:Y)=(t:s)).
            let rf = RulingFactor {
                side,
                alpha: field.embed(&s),
                beta: field.embed(&t).neg(),
                multiplicity: mult,
            };
            for _ in 0..mult {
                residual = divide_by_ruling(&residual, &rf);
            }
            out.push(rf);
        }
    }
    Ok((field, out, residual))
}
