//! Stratum labels: which locus of the genus-4 moduli space a classified
//! curve replaces, as static metadata keyed on the distinguished feature.

use super::orbit::{ClosedOrbitKind, ClosedOrbitRep};
use super::StabilityVerdict;
use crate::singularity::{SingularityReport, SingularityType};

/// Rows of the replacement table: (feature, locus removed).
pub const REPLACEMENT_TABLE: &[(&str, &str)] = &[
    ("A2", "elliptic tails attached nodally"),
    ("A3", "elliptic bridges attached nodally"),
    ("A4", "genus 2 tails attached nodally at a Weierstrass point"),
    (
        "non-separating A5",
        "genus 2 bridges attached nodally at conjugate points",
    ),
    ("the maximally degenerate A5-curve", "Delta_2"),
    (
        "A6",
        "hyperelliptic genus 3 tails attached nodally at a Weierstrass point",
    ),
    ("A7", "hyperelliptic genus 3 tails attached nodally"),
    ("D4", "elliptic triboroughs"),
    (
        "double conics",
        "curves in Delta_0 with a hyperelliptic normalization",
    ),
    ("A8, A9", "hyperelliptic curves"),
    ("the triple conic", "the Petri divisor P"),
];

/// The table row matching the curve's distinguished feature, or the explicit
/// "no Table-1 row" marker.
pub fn stratum_label(
    _verdict: &StabilityVerdict,
    singularities: &[SingularityReport],
    orbit: Option<&ClosedOrbitRep>,
) -> String {
    if let Some(rep) = orbit {
        match rep.kind {
            ClosedOrbitKind::MaxDegenerateA5 => return "Delta_2".to_string(),
            ClosedOrbitKind::TripleConic => return "the Petri divisor P".to_string(),
            ClosedOrbitKind::DoubleConic => {
                return "curves in Delta_0 with a hyperelliptic normalization".to_string()
            }
            ClosedOrbitKind::DCurve => return "elliptic triboroughs".to_string(),
            ClosedOrbitKind::StableOrbit => {}
        }
    }
    // severity scan over the singularity multiset
    let mut best: Option<(usize, String)> = None;
    let mut consider = |rank: usize, label: &str| {
        if best.as_ref().map_or(true, |(r, _)| rank > *r) {
            best = Some((rank, label.to_string()));
        }
    };
    for r in singularities {
        match r.kind {
            SingularityType::A(9) | SingularityType::A(8) => {
                consider(90, "hyperelliptic curves")
            }
            SingularityType::A(7) => {
                consider(70, "hyperelliptic genus 3 tails attached nodally")
            }
            SingularityType::A(6) => consider(
                60,
                "hyperelliptic genus 3 tails attached nodally at a Weierstrass point",
            ),
            SingularityType::A(5) => {
                if r.separating {
                    consider(50, "Delta_2")
                } else {
                    consider(50, "genus 2 bridges attached nodally at conjugate points")
                }
            }
            SingularityType::A(4) => {
                consider(40, "genus 2 tails attached nodally at a Weierstrass point")
            }
            SingularityType::A(3) => consider(30, "elliptic bridges attached nodally"),
            SingularityType::A(2) => consider(20, "elliptic tails attached nodally"),
            SingularityType::D(4) => consider(45, "elliptic triboroughs"),
            _ => {}
        }
    }
    best.map(|(_, l)| l)
        .unwrap_or_else(|| "no Table-1 row".to_string())
}
