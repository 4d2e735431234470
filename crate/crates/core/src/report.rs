//! Machine-readable classification reports. The JSON schema is versioned and
//! deterministic for identical inputs; timing is opt-in so byte-identical
//! reruns stay the default.

use serde::Serialize;

use crate::biform::BiForm;
use crate::error::Error;
use crate::singularity::{sing_locus, SingularityReport};
use crate::stability::{
    closed_orbit_limit_with, stratum_label, verdict, ClosedOrbitKind, ClosedOrbitRep,
    DCurveInvariants, StabilityVerdict, Status, Witness,
};
use crate::weights::check_certificate;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Clone)]
pub struct MatrixJson(pub [[String; 2]; 2]);

#[derive(Serialize, Clone)]
pub struct CertificateJson {
    pub a: MatrixJson,
    pub b: MatrixJson,
    pub swap: bool,
    pub rho: (i64, i64),
    /// Re-verification outcome of the emitted certificate.
    pub check: String,
}

#[derive(Serialize, Clone)]
pub struct WitnessJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
}

#[derive(Serialize, Clone)]
pub struct VerdictJson {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    pub evidence: Vec<WitnessJson>,
}

#[derive(Serialize, Clone)]
pub struct SingularityJson {
    pub point: String,
    pub field_degree: usize,
    pub conjugates: usize,
    pub multiplicity: usize,
    pub milnor: usize,
    pub branches: usize,
    pub delta: usize,
    pub kind: String,
    pub separating: bool,
}

#[derive(Serialize, Clone)]
pub struct OrbitJson {
    pub kind: String,
    pub form: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dcurve_invariants: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_ratio: Option<serde_json::Value>,
}

#[derive(Serialize, Clone)]
pub struct Report {
    pub schema_version: u32,
    pub input: String,
    pub field: String,
    pub verdict: VerdictJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singularities: Option<Vec<SingularityJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stratum: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Clone, Copy, Default)]
pub struct ReportOptions {
    pub skip_sing: bool,
    pub certify_only: bool,
    pub with_timing: bool,
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Stable => "stable",
        Status::StrictlySemistable => "strictly_semistable",
        Status::Unstable => "unstable",
    }
}

fn mat_json(m: &crate::biform::Mat2) -> MatrixJson {
    MatrixJson([
        [format!("{}", m.m[0][0]), format!("{}", m.m[0][1])],
        [format!("{}", m.m[1][0]), format!("{}", m.m[1][1])],
    ])
}

pub fn verdict_json(f: &BiForm, v: &StabilityVerdict) -> VerdictJson {
    let certificate = v.certificate.as_ref().map(|c| {
        let check = match check_certificate(&f.embed(c.g.a.m[0][0].field()), c) {
            Ok(r) => format!("{:?}", r),
            Err(e) => format!("error: {}", e),
        };
        CertificateJson {
            a: mat_json(&c.g.a),
            b: mat_json(&c.g.b),
            swap: c.g.swap,
            rho: (c.rho.u, c.rho.v),
            check,
        }
    });
    let evidence = v
        .evidence
        .iter()
        .map(|w| match w {
            Witness::Mult3Point(p) => WitnessJson {
                kind: "multiplicity_3_point".into(),
                point: Some(format!("{}", p)),
            },
            Witness::SeparatingA5Contact { point, .. } => WitnessJson {
                kind: "separating_a5_ruling_contact".into(),
                point: Some(format!("{}", point)),
            },
            Witness::NonReduced => WitnessJson {
                kind: "non_reduced".into(),
                point: None,
            },
        })
        .collect();
    VerdictJson {
        status: status_str(v.status).to_string(),
        certificate,
        evidence,
    }
}

pub fn singularity_json(r: &SingularityReport) -> SingularityJson {
    SingularityJson {
        point: format!("{}", r.point),
        field_degree: r.point.p1.0.field().degree(),
        conjugates: r.conjugates,
        multiplicity: r.multiplicity,
        milnor: r.milnor,
        branches: r.branches,
        delta: r.delta,
        kind: format!("{}", r.kind),
        separating: r.separating,
    }
}

pub fn orbit_json(rep: &ClosedOrbitRep) -> OrbitJson {
    let dcurve_invariants = rep.dcurve.as_ref().map(|d| match d {
        DCurveInvariants::Pair(i1, i2) => serde_json::json!({
            "pair": [format!("{}", i1), format!("{}", i2)],
        }),
        DCurveInvariants::DegenerateXZ => serde_json::json!("degenerate_xz"),
        DCurveInvariants::RulingPairConic => serde_json::json!("ruling_pair_conic"),
    });
    let cross_ratio = rep.cross_ratio.as_ref().map(|c| {
        serde_json::json!({
            "value": format!("{}", c.value),
            "s3_orbit": c.orbit.iter().map(|v| format!("{}", v)).collect::<Vec<_>>(),
        })
    });
    OrbitJson {
        kind: match rep.kind {
            ClosedOrbitKind::StableOrbit => "stable_orbit",
            ClosedOrbitKind::MaxDegenerateA5 => "maximally_degenerate_a5",
            ClosedOrbitKind::DCurve => "d_curve",
            ClosedOrbitKind::DoubleConic => "double_conic",
            ClosedOrbitKind::TripleConic => "triple_conic",
        }
        .to_string(),
        form: format!("{}", rep.form),
        dcurve_invariants,
        cross_ratio,
    }
}

/// Compose the full classification report; tower-depth failures degrade to a
/// partial report with a note rather than an error.
pub fn run_report(f: &BiForm, input: &str, opts: ReportOptions) -> Result<Report, Error> {
    let start = std::time::Instant::now();
    let v = verdict(f)?;
    let mut notes = Vec::new();
    let mut singularities = None;
    let mut orbit = None;
    let mut stratum = None;
    let mut sing_reports: Vec<SingularityReport> = Vec::new();
    if !opts.certify_only {
        if v.status != Status::Unstable {
            match closed_orbit_limit_with(f, &v) {
                Ok(rep) => {
                    orbit = Some(rep);
                }
                Err(e) => notes.push(format!("orbit limit unavailable: {}", e)),
            }
        }
        if !opts.skip_sing {
            match sing_locus(f) {
                Ok(rs) => {
                    sing_reports = rs;
                    singularities =
                        Some(sing_reports.iter().map(singularity_json).collect());
                }
                Err(Error::NonReduced) => {
                    notes.push(
                        "non-reduced curve: singularity analysis is by component multiplicities"
                            .into(),
                    );
                }
                Err(e) => notes.push(format!("singularity analysis degraded: {}", e)),
            }
        }
        stratum = Some(stratum_label(&v, &sing_reports, orbit.as_ref()));
    }
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        input: input.to_string(),
        field: if f.field().is_rationals() {
            "Q".into()
        } else {
            format!("Q({})", f.field().generator_names().join(","))
        },
        verdict: verdict_json(f, &v),
        singularities,
        orbit: orbit.as_ref().map(orbit_json),
        stratum,
        notes,
        timing_ms: if opts.with_timing {
            Some(start.elapsed().as_millis())
        } else {
            None
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::Field;
    use crate::parse::parse_curve;

    #[test]
    fn report_deterministic() {
        let q = Field::rationals();
        let f = parse_curve("X*Y*(X*W^3 + Y*Z^3)", &q).unwrap();
        let r1 = run_report(&f, "X*Y*(X*W^3 + Y*Z^3)", ReportOptions::default()).unwrap();
        let r2 = run_report(&f, "X*Y*(X*W^3 + Y*Z^3)", ReportOptions::default()).unwrap();
        let s1 = serde_json::to_string_pretty(&r1).unwrap();
        let s2 = serde_json::to_string_pretty(&r2).unwrap();
        assert_eq!(s1, s2);
        assert!(s1.contains("strictly_semistable"));
        assert!(s1.contains("Delta_2"));
        assert!(!s1.contains("timing_ms"));
    }

    #[test]
    fn unstable_report_echoes_certificate() {
        let q = Field::rationals();
        let f = parse_curve("X^2*(Y*W^3 + X*Z^3)", &q).unwrap();
        let r = run_report(&f, "input", ReportOptions::default()).unwrap();
        assert_eq!(r.verdict.status, "unstable");
        let cert = r.verdict.certificate.unwrap();
        assert_eq!(cert.rho, (4, 1));
        assert_eq!(cert.check, "ValidUnstable");
    }

    #[test]
    fn non_reduced_degrades_gracefully() {
        let q = Field::rationals();
        let f = parse_curve("(X*Z - Y*W)^3", &q).unwrap();
        let r = run_report(&f, "triple conic", ReportOptions::default()).unwrap();
        assert_eq!(r.verdict.status, "strictly_semistable");
        assert!(r.singularities.is_none());
        assert_eq!(r.orbit.unwrap().kind, "triple_conic");
        assert_eq!(r.stratum.as_deref(), Some("the Petri divisor P"));
    }
}
