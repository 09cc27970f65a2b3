//! Runs every check on one dataset and collects the outcomes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::contraction::LinkedContraction;
use crate::dataset::Resolver;
use crate::variety::{format_coords, VarietyData, VarietyError};

/// Random trials per contraction for the projection formula.
pub const PROJECTION_TRIALS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    /// The check does not apply (vacuous hypothesis).
    Skipped,
    /// The check could not run.
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Passed => "passed",
            Status::Failed => "failed",
            Status::Skipped => "skipped",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub dataset: String,
    pub checks: Vec<CheckOutcome>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn get(&self, check: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.check == check)
    }
}

struct Builder {
    checks: Vec<CheckOutcome>,
}

impl Builder {
    fn push(&mut self, check: impl Into<String>, status: Status, detail: Option<String>) {
        self.checks.push(CheckOutcome { check: check.into(), status, detail });
    }

    fn flag(&mut self, check: impl Into<String>, ok: bool, failure: impl FnOnce() -> String) {
        if ok {
            self.push(check, Status::Passed, None);
        } else {
            self.push(check, Status::Failed, Some(failure()));
        }
    }

    fn result(&mut self, check: impl Into<String>, result: Result<bool, VarietyError>, failure: impl FnOnce() -> String) {
        match result {
            Ok(ok) => self.flag(check, ok, failure),
            Err(e) => self.push(check, Status::Error, Some(e.to_string())),
        }
    }
}

fn rays_of(cone: &crate::Cone) -> String {
    match cone.extremal_rays() {
        Ok(rays) => rays.iter().map(|r| format_coords(r)).collect::<Vec<_>>().join(" "),
        Err(_) => "(not pointed)".to_string(),
    }
}

pub fn run_verification(v: &VarietyData, resolver: &dyn Resolver) -> VerificationReport {
    let mut b = Builder { checks: Vec::new() };
    let mut warnings = Vec::new();

    b.flag("fano", v.is_fano_numerically(), || {
        let values: Vec<String> = v.anticanonical_degrees().iter().map(ToString::to_string).collect();
        format!("-K on the rays: {}", values.join(", "))
    });
    b.result("inclusions", v.inclusion_check(), || "SME ⊆ Mov ⊆ NE does not hold".to_string());
    match v.check_main_theorem() {
        Ok(check) => {
            warnings.extend(check.warnings.iter().cloned());
            b.flag("main_theorem", check.holds, || {
                format!("Mov rays {} differ from SME rays {}", rays_of(&check.moving), rays_of(&check.sme))
            });
        }
        Err(e) => b.push("main_theorem", Status::Error, Some(e.to_string())),
    }
    match v.prop1_violations() {
        Ok(violations) => b.flag("prop1", violations.is_empty(), || {
            let items: Vec<String> = violations
                .iter()
                .map(|x| format!("ray {} on generator {} gives {}", format_coords(&x.ray), x.divisor_index, x.value))
                .collect();
            items.join("; ")
        }),
        Err(e) => b.push("prop1", Status::Error, Some(e.to_string())),
    }
    match v.corollary_failures() {
        Ok(failures) => b.flag("corollary", failures.is_empty(), || {
            let rays: Vec<String> = failures.iter().map(|r| format_coords(r)).collect();
            format!("no exceptional divisor vanishes on {}", rays.join(" "))
        }),
        Err(e @ VarietyError::NoDivisorialContractions(_)) => b.push("corollary", Status::Skipped, Some(e.to_string())),
        Err(e) => b.push("corollary", Status::Error, Some(e.to_string())),
    }

    for (i, ray) in v.ne_rays().iter().enumerate() {
        let Some(link) = &ray.contraction.target else { continue };
        let prefix = format!("contraction[{i}] -> {}", link.name);
        let target = match resolver.resolve(&link.name) {
            Ok(t) => t,
            Err(e) => {
                b.push(prefix, Status::Error, Some(e.to_string()));
                continue;
            }
        };
        let phi = match LinkedContraction::new(v, i, target) {
            Ok(phi) => phi,
            Err(e) => {
                b.push(prefix, Status::Error, Some(e.to_string()));
                continue;
            }
        };
        let violations = phi.invariant_violations();
        b.flag(format!("{prefix}: invariants"), violations.is_empty(), || violations.join("; "));
        let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
        b.flag(format!("{prefix}: projection_formula"), phi.check_projection_formula(PROJECTION_TRIALS, &mut rng), || {
            "an identity failed".to_string()
        });
        b.flag(format!("{prefix}: lemma"), phi.check_lemma_rmk(), || "an identity failed".to_string());
        if ray.contraction.is_divisorial() {
            let check = format!("{prefix}: correspondence");
            match phi.check_extremal_correspondence() {
                Ok(report) => b.flag(check, report.passed(), || {
                    let mut bad: Vec<String> = report
                        .forward
                        .iter()
                        .filter(|r| !r.extremal)
                        .map(|r| format!("pullback {} of {} not extremal", format_coords(&r.pulled_back), format_coords(&r.target_ray)))
                        .collect();
                    bad.extend(
                        report
                            .reverse
                            .iter()
                            .filter(|r| !(r.round_trip && r.extremal))
                            .map(|r| format!("ray {} does not correspond", format_coords(&r.source_ray))),
                    );
                    bad.join("; ")
                }),
                Err(e) => b.push(check, Status::Error, Some(e.to_string())),
            }
        }
    }

    let passed = b.checks.iter().all(|c| matches!(c.status, Status::Passed | Status::Skipped));
    VerificationReport { dataset: v.name().to_string(), checks: b.checks, warnings, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{DatasetError, Registry};

    #[test]
    fn bundled_datasets_pass() {
        let r = Registry::bundled();
        for name in r.names() {
            let report = run_verification(r.get(name).unwrap(), &r);
            assert!(report.passed, "{report:?}");
        }
    }

    #[test]
    fn corollary_is_skipped_without_divisorial_rays() {
        let r = Registry::bundled();
        let report = run_verification(r.get("p1xp1xp1").unwrap(), &r);
        assert_eq!(report.get("corollary").unwrap().status, Status::Skipped);
        assert!(report.passed);
    }

    #[test]
    fn blowup_runs_contraction_checks() {
        let r = Registry::bundled();
        let report = run_verification(r.get("blowup-point-p3").unwrap(), &r);
        let names: Vec<&str> = report.checks.iter().map(|c| c.check.as_str()).collect();
        assert!(names.contains(&"contraction[0] -> p3: correspondence"));
        assert_eq!(names.len(), 9);
    }

    struct Nothing;
    impl Resolver for Nothing {
        fn resolve(&self, name: &str) -> Result<&VarietyData, DatasetError> {
            Err(DatasetError::UnknownDataset(name.to_string()))
        }
    }

    #[test]
    fn unresolved_targets_are_errors() {
        let r = Registry::bundled();
        let report = run_verification(r.get("blowup-point-p3").unwrap(), &Nothing);
        assert_eq!(report.get("contraction[0] -> p3").unwrap().status, Status::Error);
        assert_eq!(report.get("main_theorem").unwrap().status, Status::Passed);
        assert!(!report.passed);
    }
}
