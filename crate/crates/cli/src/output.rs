use std::fmt::Write as _;

use movcone_core::variety::format_coords;
use movcone_core::verify::{Status, VerificationReport};
use movcone_core::{Rat, VarietyData};
use num_traits::ToPrimitive;
use serde_json::Value;

/// Integers as JSON numbers, everything else as `"p/q"` strings.
pub fn json_vec(v: &[Rat]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| match x.is_integer().then(|| x.numer().to_i64()).flatten() {
                Some(n) => Value::from(n),
                None => Value::from(x.to_string()),
            })
            .collect(),
    )
}

pub fn describe(v: &VarietyData) -> String {
    let p = v.parts();
    let mut out = String::new();
    writeln!(out, "{} (rho = {})", p.name, p.rho).unwrap();
    writeln!(out, "divisor basis: {}", p.divisor_basis_labels.join(", ")).unwrap();
    writeln!(out, "curve basis:   {}", p.curve_basis_labels.join(", ")).unwrap();
    writeln!(out, "pairing (rows D_i, columns c_j):").unwrap();
    for i in 0..p.pairing.rows() {
        let row: Vec<String> = p.pairing.row(i).iter().map(|x| format!("{x:>4}")).collect();
        writeln!(out, "  {:<6}{}", p.divisor_basis_labels[i], row.join("")).unwrap();
    }
    writeln!(out, "K = {}", v.describe_divisor(&p.canonical_class)).unwrap();
    writeln!(out, "NE rays:").unwrap();
    let degrees = v.anticanonical_degrees();
    for (i, (ray, deg)) in p.ne_rays.iter().zip(&degrees).enumerate() {
        let c = &ray.contraction;
        write!(out, "  [{i}] {} = {}  {}", format_coords(&ray.class.coords), v.describe_curve(&ray.class.coords), c.kind.as_str())
            .unwrap();
        if let Some(e) = &c.exceptional_divisor {
            write!(out, ", exceptional {}", v.describe_divisor(&e.coords)).unwrap();
        }
        if let Some(t) = &c.target {
            write!(out, ", onto {}", t.name).unwrap();
        }
        writeln!(out, ", -K = {deg}").unwrap();
    }
    writeln!(out, "Eff generators:").unwrap();
    for d in &p.eff_generators {
        writeln!(out, "  {} = {}", format_coords(d), v.describe_divisor(d)).unwrap();
    }
    out
}

pub fn report(r: &VerificationReport) -> String {
    let mut out = String::new();
    writeln!(out, "{}: {}", r.dataset, if r.passed { "PASS" } else { "FAIL" }).unwrap();
    for c in &r.checks {
        let mark = match c.status {
            Status::Passed => "ok",
            Status::Failed => "FAILED",
            Status::Skipped => "skipped",
            Status::Error => "ERROR",
        };
        write!(out, "  {:<8} {}", mark, c.check).unwrap();
        if let Some(d) = &c.detail {
            write!(out, " ({d})").unwrap();
        }
        out.push('\n');
    }
    for w in &r.warnings {
        writeln!(out, "  warning: {w}").unwrap();
    }
    out
}
