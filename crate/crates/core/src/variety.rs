//! Numerical data of a variety: the intersection pairing between divisor and
//! curve classes, and the cones built from it.
//!
//! * `NE(X)` is spanned by the listed extremal rays of the Mori cone.
//! * `Eff(X)` is spanned by the listed effective divisor classes.
//! * `SME(X)` is the dual of `Eff(X)` under the pairing; on a smooth variety
//!   it coincides with the moving cone.
//! * `Mov(X)` is computed as `NE(X)` cut by `c·E ≥ 0` for the exceptional
//!   divisor `E` of every divisorial contraction.
//!
//! The checks on [`VarietyData`] compare these constructions exactly.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::cone::{Cone, ConeError};
use crate::linalg::{dot, is_zero_vec, rank, Matrix};
use crate::{QMat, QVec, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("class belongs to variety `{found}`, expected `{expected}`")]
    VarietyMismatch { expected: String, found: String },
    #[error("class has {found} coordinates, expected {expected}")]
    WrongDimension { expected: usize, found: usize },
    #[error("dataset `{0}` lacks effective generators")]
    NoEffectiveGenerators(String),
    #[error("no divisorial contractions on `{0}`; corollary vacuous")]
    NoDivisorialContractions(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// A data invariant violated while building a [`VarietyData`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: {message}")]
pub struct ValidationError {
    pub location: String,
    pub message: String,
}

impl ValidationError {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        ValidationError { location: location.into(), message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub variety: String,
    pub coords: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub variety: String,
    pub coords: QVec,
}

impl DivisorClass {
    pub fn new(variety: impl Into<String>, coords: QVec) -> Self {
        DivisorClass { variety: variety.into(), coords }
    }
}

impl CurveClass {
    pub fn new(variety: impl Into<String>, coords: QVec) -> Self {
        CurveClass { variety: variety.into(), coords }
    }
}

pub(crate) fn fmt_coords(coords: &[Rat], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in coords.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Formats a coordinate vector as `(a,b,c)`.
pub fn format_coords(coords: &[Rat]) -> String {
    struct Coords<'a>(&'a [Rat]);
    impl fmt::Display for Coords<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt_coords(self.0, f)
        }
    }
    Coords(coords).to_string()
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(&self.coords, f)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(&self.coords, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContractionKind {
    Divisorial,
    Fiber,
    /// Representable, but rejected on smooth threefolds: their extremal
    /// contractions are divisorial or of fiber type.
    Small,
}

impl ContractionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ContractionKind::Divisorial => "divisorial",
            ContractionKind::Fiber => "fiber",
            ContractionKind::Small => "small",
        }
    }
}

/// The target of a contraction with the induced maps on divisor classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContractionTarget {
    pub name: String,
    /// `φ_*: N^1(X) → N^1(Y)`, a `ρ_Y × ρ_X` matrix.
    pub pushforward: QMat,
    /// `φ^*: N^1(Y) → N^1(X)`, a `ρ_X × ρ_Y` matrix.
    pub pullback: QMat,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContractionInfo {
    pub kind: ContractionKind,
    pub exceptional_divisor: Option<DivisorClass>,
    pub target: Option<ContractionTarget>,
}

impl ContractionInfo {
    pub fn fiber() -> Self {
        ContractionInfo { kind: ContractionKind::Fiber, exceptional_divisor: None, target: None }
    }

    pub fn is_divisorial(&self) -> bool {
        self.kind == ContractionKind::Divisorial
    }
}

/// One extremal ray of the Mori cone together with its contraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NeRay {
    pub class: CurveClass,
    pub contraction: ContractionInfo,
}

/// Unvalidated constituents of a [`VarietyData`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyParts {
    pub name: String,
    pub rho: usize,
    pub divisor_basis_labels: Vec<String>,
    pub curve_basis_labels: Vec<String>,
    /// Entry `(i, j)` is `D_i · c_j`.
    pub pairing: QMat,
    pub canonical_class: QVec,
    pub ne_rays: Vec<NeRay>,
    pub eff_generators: Vec<QVec>,
}

/// Validated numerical record of one variety. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyData {
    parts: VarietyParts,
}

fn check_len(location: &str, v: &[Rat], rho: usize) -> Result<(), ValidationError> {
    if v.len() != rho {
        return Err(ValidationError::new(location, format!("expected {rho} coordinates, found {}", v.len())));
    }
    Ok(())
}

fn validate_target(
    location: &str,
    rho: usize,
    info: &ContractionInfo,
    target: &ContractionTarget,
) -> Result<(), ValidationError> {
    let push = &target.pushforward;
    let pull = &target.pullback;
    if push.cols() != rho {
        return Err(ValidationError::new(format!("{location}.pushforward"), format!("expected {rho} columns, found {}", push.cols())));
    }
    if pull.rows() != rho {
        return Err(ValidationError::new(format!("{location}.pullback"), format!("expected {rho} rows, found {}", pull.rows())));
    }
    let rho_y = push.rows();
    if pull.cols() != rho_y {
        return Err(ValidationError::new(
            format!("{location}.pullback"),
            format!("expected {rho_y} columns to match the pushforward, found {}", pull.cols()),
        ));
    }
    if push.mul(pull) != Matrix::identity(rho_y) {
        return Err(ValidationError::new(location, "pushforward after pullback is not the identity"));
    }
    if rank(pull) != rho_y {
        return Err(ValidationError::new(format!("{location}.pullback"), "pullback is not injective"));
    }
    if info.is_divisorial() {
        if rho_y + 1 != rho {
            return Err(ValidationError::new(
                location,
                format!("divisorial contraction must drop the Picard number by one ({rho} -> {rho_y})"),
            ));
        }
        if let Some(e) = &info.exceptional_divisor {
            if !is_zero_vec(&push.mul_vec(&e.coords)) {
                return Err(ValidationError::new(location, "exceptional divisor is not in the kernel of the pushforward"));
            }
        }
    }
    Ok(())
}

impl VarietyData {
    pub fn new(parts: VarietyParts) -> Result<Self, ValidationError> {
        let rho = parts.rho;
        let name = &parts.name;
        if name.is_empty() {
            return Err(ValidationError::new("name", "must not be empty"));
        }
        if rho == 0 {
            return Err(ValidationError::new("rho", "Picard number must be positive"));
        }
        if parts.divisor_basis_labels.len() != rho {
            return Err(ValidationError::new("divisor_basis", format!("expected {rho} labels")));
        }
        if parts.curve_basis_labels.len() != rho {
            return Err(ValidationError::new("curve_basis", format!("expected {rho} labels")));
        }
        if parts.pairing.rows() != rho || parts.pairing.cols() != rho {
            return Err(ValidationError::new(
                "pairing",
                format!("expected a {rho}x{rho} matrix, found {}x{}", parts.pairing.rows(), parts.pairing.cols()),
            ));
        }
        if rank(&parts.pairing) != rho {
            return Err(ValidationError::new("pairing", "pairing not invertible"));
        }
        check_len("canonical_class", &parts.canonical_class, rho)?;
        if parts.ne_rays.is_empty() {
            return Err(ValidationError::new("ne_rays", "at least one extremal ray is required"));
        }
        for (i, ray) in parts.ne_rays.iter().enumerate() {
            let location = format!("ne_rays[{i}]");
            check_len(&format!("{location}.coords"), &ray.class.coords, rho)?;
            if is_zero_vec(&ray.class.coords) {
                return Err(ValidationError::new(format!("{location}.coords"), "ray must be nonzero"));
            }
            if &ray.class.variety != name {
                return Err(ValidationError::new(format!("{location}.coords"), "class tagged with another variety"));
            }
            let info = &ray.contraction;
            let location = format!("{location}.contraction");
            match info.kind {
                ContractionKind::Small => {
                    return Err(ValidationError::new(
                        format!("{location}.kind"),
                        "small contractions do not occur on a smooth threefold",
                    ))
                }
                ContractionKind::Divisorial => {
                    let Some(e) = &info.exceptional_divisor else {
                        return Err(ValidationError::new(
                            format!("{location}.exceptional_divisor"),
                            "divisorial contraction needs an exceptional divisor",
                        ));
                    };
                    check_len(&format!("{location}.exceptional_divisor"), &e.coords, rho)?;
                    let value = pair_raw(&parts.pairing, &e.coords, &ray.class.coords);
                    if !value.is_negative() {
                        return Err(ValidationError::new(
                            format!("{location}.exceptional_divisor"),
                            format!("exceptional divisor must meet its contracted ray negatively, got {value}"),
                        ));
                    }
                }
                ContractionKind::Fiber => {
                    if info.exceptional_divisor.is_some() {
                        return Err(ValidationError::new(
                            format!("{location}.exceptional_divisor"),
                            "fiber-type contraction has no exceptional divisor",
                        ));
                    }
                }
            }
            if let Some(target) = &info.target {
                validate_target(&location, rho, info, target)?;
            }
        }
        let rays: Vec<QVec> = parts.ne_rays.iter().map(|r| r.class.coords.clone()).collect();
        if !Cone::from_generators(&rays, rho).is_pointed() {
            return Err(ValidationError::new("ne_rays", "Mori cone must be pointed"));
        }
        for (i, d) in parts.eff_generators.iter().enumerate() {
            check_len(&format!("eff_generators[{i}]"), d, rho)?;
        }
        Ok(VarietyData { parts })
    }

    pub fn parts(&self) -> &VarietyParts {
        &self.parts
    }

    pub fn into_parts(self) -> VarietyParts {
        self.parts
    }

    pub fn name(&self) -> &str {
        &self.parts.name
    }

    pub fn rho(&self) -> usize {
        self.parts.rho
    }

    pub fn pairing(&self) -> &QMat {
        &self.parts.pairing
    }

    pub fn ne_rays(&self) -> &[NeRay] {
        &self.parts.ne_rays
    }

    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass::new(self.name(), self.parts.canonical_class.clone())
    }

    pub fn eff_generators(&self) -> Vec<DivisorClass> {
        self.parts.eff_generators.iter().map(|d| DivisorClass::new(self.name(), d.clone())).collect()
    }

    pub fn divisor(&self, coords: QVec) -> DivisorClass {
        DivisorClass::new(self.name(), coords)
    }

    pub fn curve(&self, coords: QVec) -> CurveClass {
        CurveClass::new(self.name(), coords)
    }

    fn own(&self, variety: &str, len: usize) -> Result<(), VarietyError> {
        if variety != self.name() {
            return Err(VarietyError::VarietyMismatch { expected: self.name().to_string(), found: variety.to_string() });
        }
        if len != self.rho() {
            return Err(VarietyError::WrongDimension { expected: self.rho(), found: len });
        }
        Ok(())
    }

    /// The intersection number `D · c`.
    pub fn pair(&self, d: &DivisorClass, c: &CurveClass) -> Result<Rat, VarietyError> {
        self.own(&d.variety, d.coords.len())?;
        self.own(&c.variety, c.coords.len())?;
        Ok(pair_raw(self.pairing(), &d.coords, &c.coords))
    }

    pub(crate) fn pair_coords(&self, d: &[Rat], c: &[Rat]) -> Rat {
        pair_raw(self.pairing(), d, c)
    }

    /// The linear form `c ↦ D·c` in curve coordinates.
    pub fn divisor_functional(&self, d: &[Rat]) -> QVec {
        self.pairing().transpose().mul_vec(d)
    }

    /// Exceptional divisors of the divisorial rays, in ray order.
    pub fn exceptional_divisors(&self) -> Vec<DivisorClass> {
        self.ne_rays()
            .iter()
            .filter(|r| r.contraction.is_divisorial())
            .filter_map(|r| r.contraction.exceptional_divisor.clone())
            .collect()
    }

    pub fn mori_cone(&self) -> Cone {
        let rays: Vec<QVec> = self.ne_rays().iter().map(|r| r.class.coords.clone()).collect();
        Cone::from_generators(&rays, self.rho())
    }

    pub fn eff_cone(&self) -> Result<Cone, VarietyError> {
        if self.parts.eff_generators.is_empty() {
            return Err(VarietyError::NoEffectiveGenerators(self.name().to_string()));
        }
        Ok(Cone::from_generators(&self.parts.eff_generators, self.rho()))
    }

    /// Curve classes nonnegative on every effective generator.
    pub fn sme_cone(&self) -> Result<Cone, VarietyError> {
        if self.parts.eff_generators.is_empty() {
            return Err(VarietyError::NoEffectiveGenerators(self.name().to_string()));
        }
        let normals: Vec<QVec> = self.parts.eff_generators.iter().map(|d| self.divisor_functional(d)).collect();
        Ok(Cone::from_inequalities(&normals, self.rho()))
    }

    /// `NE(X) ∩ {c : c·E_i ≥ 0}` over the exceptional divisors of the
    /// divisorial contractions.
    pub fn moving_cone(&self) -> Cone {
        let normals: Vec<QVec> =
            self.exceptional_divisors().iter().map(|e| self.divisor_functional(&e.coords)).collect();
        self.mori_cone().intersect_halfspaces(&normals)
    }

    /// `-K_X · r` for every listed ray.
    pub fn anticanonical_degrees(&self) -> Vec<Rat> {
        let minus_k: QVec = self.parts.canonical_class.iter().map(|x| -x).collect();
        self.ne_rays().iter().map(|r| self.pair_coords(&minus_k, &r.class.coords)).collect()
    }

    /// Kleiman-type test: `-K_X` is strictly positive on every generator of NE.
    pub fn is_fano_numerically(&self) -> bool {
        self.anticanonical_degrees().iter().all(|v| v.is_positive())
    }

    /// `SME ⊆ Mov ⊆ NE`.
    pub fn inclusion_check(&self) -> Result<bool, VarietyError> {
        let sme = self.sme_cone()?;
        let mov = self.moving_cone();
        Ok(mov.contains_cone(&sme) && self.mori_cone().contains_cone(&mov))
    }

    /// Compares the moving cone cut out by exceptional divisors with the dual
    /// of the effective cone.
    pub fn check_main_theorem(&self) -> Result<MainTheoremCheck, VarietyError> {
        let mut warnings = Vec::new();
        if !self.is_fano_numerically() {
            warnings.push(format!("`{}` is not numerically Fano", self.name()));
        }
        let sme = self.sme_cone()?;
        let moving = self.moving_cone();
        let holds = moving.equals(&sme);
        Ok(MainTheoremCheck { moving, sme, holds, warnings })
    }

    /// Pairs every extremal ray of the moving cone with every listed effective
    /// generator and returns the negative intersections.
    pub fn prop1_violations(&self) -> Result<Vec<Prop1Violation>, VarietyError> {
        let rays = self.moving_cone().extremal_rays()?;
        let mut out = Vec::new();
        for ray in &rays {
            for (index, d) in self.parts.eff_generators.iter().enumerate() {
                let value = self.pair_coords(d, ray);
                if value.is_negative() {
                    out.push(Prop1Violation { ray: ray.clone(), divisor_index: index, value });
                }
            }
        }
        Ok(out)
    }

    pub fn check_prop1(&self) -> Result<bool, VarietyError> {
        Ok(self.prop1_violations()?.is_empty())
    }

    /// Extremal rays of `Mov(X)` that are not rays of `NE(X)` and have `c·E = 0`
    /// for no exceptional divisor `E`. Errors when there are no divisorial rays.
    pub fn corollary_failures(&self) -> Result<Vec<QVec>, VarietyError> {
        let exceptional = self.exceptional_divisors();
        if exceptional.is_empty() {
            return Err(VarietyError::NoDivisorialContractions(self.name().to_string()));
        }
        let mori = self.mori_cone();
        let ne_rays = mori.extremal_rays()?;
        let failures = self
            .moving_cone()
            .extremal_rays()?
            .into_iter()
            .filter(|c| !ne_rays.contains(c))
            .filter(|c| !exceptional.iter().any(|e| self.pair_coords(&e.coords, c).is_zero()))
            .collect();
        Ok(failures)
    }

    pub fn check_corollary(&self) -> Result<bool, VarietyError> {
        Ok(self.corollary_failures()?.is_empty())
    }

    /// Labels the coordinates of a divisor, e.g. `H - E`.
    pub fn describe_divisor(&self, coords: &[Rat]) -> String {
        describe(coords, &self.parts.divisor_basis_labels)
    }

    pub fn describe_curve(&self, coords: &[Rat]) -> String {
        describe(coords, &self.parts.curve_basis_labels)
    }
}

fn pair_raw(pairing: &QMat, d: &[Rat], c: &[Rat]) -> Rat {
    dot(d, &pairing.mul_vec(c))
}

fn describe(coords: &[Rat], labels: &[String]) -> String {
    let mut out = String::new();
    for (x, label) in coords.iter().zip(labels) {
        if x.is_zero() {
            continue;
        }
        let magnitude = x.abs();
        let sign = if x.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if x.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if magnitude != Rat::from_integer(1.into()) {
            out.push_str(&magnitude.to_string());
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug)]
pub struct MainTheoremCheck {
    pub moving: Cone,
    pub sme: Cone,
    pub holds: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop1Violation {
    pub ray: QVec,
    pub divisor_index: usize,
    pub value: Rat,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qvec;

    fn qmat(rows: &[&[i64]]) -> QMat {
        Matrix::from_rows(rows[0].len(), rows.iter().map(|r| qvec(r)))
    }

    fn blowup_point() -> VarietyParts {
        let name = "blowup-point-p3".to_string();
        VarietyParts {
            name: name.clone(),
            rho: 2,
            divisor_basis_labels: vec!["H".into(), "E".into()],
            curve_basis_labels: vec!["e".into(), "l".into()],
            pairing: qmat(&[&[0, 1], &[-1, 1]]),
            canonical_class: qvec(&[-4, 2]),
            ne_rays: vec![
                NeRay {
                    class: CurveClass::new(&name, qvec(&[1, 0])),
                    contraction: ContractionInfo {
                        kind: ContractionKind::Divisorial,
                        exceptional_divisor: Some(DivisorClass::new(&name, qvec(&[0, 1]))),
                        target: Some(ContractionTarget {
                            name: "p3".into(),
                            pushforward: qmat(&[&[1, 0]]),
                            pullback: qmat(&[&[1], &[0]]),
                        }),
                    },
                },
                NeRay { class: CurveClass::new(&name, qvec(&[0, 1])), contraction: ContractionInfo::fiber() },
            ],
            eff_generators: vec![qvec(&[0, 1]), qvec(&[1, -1])],
        }
    }

    fn wedge() -> Cone {
        Cone::from_generators(&[qvec(&[0, 1]), qvec(&[1, 1])], 2)
    }

    #[test]
    fn pairing_values() {
        let v = VarietyData::new(blowup_point()).unwrap();
        let e = v.curve(qvec(&[1, 0]));
        assert_eq!(v.pair(&v.divisor(qvec(&[1, 0])), &e).unwrap(), Rat::zero());
        assert_eq!(v.pair(&v.divisor(qvec(&[0, 1])), &e).unwrap(), Rat::from_integer((-1).into()));
        assert_eq!(v.pair(&v.divisor(qvec(&[0, 0])), &e).unwrap(), Rat::zero());
        let foreign = DivisorClass::new("p3", qvec(&[1, 0]));
        assert!(matches!(v.pair(&foreign, &e), Err(VarietyError::VarietyMismatch { .. })));
    }

    #[test]
    fn cones_of_the_point_blowup() {
        let v = VarietyData::new(blowup_point()).unwrap();
        assert!(v.mori_cone().equals(&Cone::from_generators(&[qvec(&[1, 0]), qvec(&[0, 1])], 2)));
        assert!(v.eff_cone().unwrap().equals(&Cone::from_generators(&[qvec(&[0, 1]), qvec(&[1, -1])], 2)));
        assert!(v.sme_cone().unwrap().equals(&wedge()));
        assert!(v.moving_cone().equals(&wedge()));
        assert!(v.check_main_theorem().unwrap().holds);
        assert!(v.check_prop1().unwrap());
        assert!(v.check_corollary().unwrap());
        assert!(v.inclusion_check().unwrap());
        assert_eq!(v.anticanonical_degrees(), qvec(&[2, 2]));
        assert!(v.is_fano_numerically());
    }

    #[test]
    fn validation_rejects_bad_data() {
        let mut p = blowup_point();
        p.pairing = qmat(&[&[1, 1], &[1, 1]]);
        assert_eq!(VarietyData::new(p).unwrap_err().message, "pairing not invertible");

        let mut p = blowup_point();
        p.ne_rays[0].contraction.exceptional_divisor = None;
        assert_eq!(VarietyData::new(p).unwrap_err().location, "ne_rays[0].contraction.exceptional_divisor");

        let mut p = blowup_point();
        p.ne_rays[0].contraction.target.as_mut().unwrap().pushforward = qmat(&[&[1, 1]]);
        assert!(VarietyData::new(p).unwrap_err().message.contains("kernel"));

        let mut p = blowup_point();
        p.ne_rays[0].contraction.target.as_mut().unwrap().pullback = qmat(&[&[2], &[0]]);
        assert!(VarietyData::new(p).unwrap_err().message.contains("identity"));

        let mut p = blowup_point();
        p.ne_rays[1].contraction.kind = ContractionKind::Small;
        assert!(VarietyData::new(p).is_err());

        let mut p = blowup_point();
        p.ne_rays.push(NeRay {
            class: CurveClass::new("blowup-point-p3", qvec(&[-1, 0])),
            contraction: ContractionInfo::fiber(),
        });
        assert_eq!(VarietyData::new(p).unwrap_err().message, "Mori cone must be pointed");

        let mut p = blowup_point();
        p.ne_rays[0].contraction.exceptional_divisor = Some(DivisorClass::new("blowup-point-p3", qvec(&[1, 0])));
        assert!(VarietyData::new(p).is_err());
    }

    #[test]
    fn mutated_pairing_breaks_the_main_theorem() {
        let mut p = blowup_point();
        p.pairing = qmat(&[&[0, 1], &[-1, -1]]);
        let v = VarietyData::new(p).unwrap();
        let check = v.check_main_theorem().unwrap();
        assert!(!check.holds);
        assert!(check.moving.is_zero());
        assert!(check.sme.equals(&Cone::from_generators(&[qvec(&[-1, 1]), qvec(&[-2, 1])], 2)));
        assert!(!v.inclusion_check().unwrap());
    }

    #[test]
    fn missing_effective_generators() {
        let mut p = blowup_point();
        p.eff_generators.clear();
        let v = VarietyData::new(p).unwrap();
        assert!(matches!(v.eff_cone(), Err(VarietyError::NoEffectiveGenerators(_))));
        assert!(v.check_main_theorem().is_err());
    }

    #[test]
    fn dropping_an_effective_generator_enlarges_sme() {
        let mut p = blowup_point();
        p.eff_generators = vec![qvec(&[1, -1])];
        let v = VarietyData::new(p).unwrap();
        assert!(!v.inclusion_check().unwrap());
    }

    #[test]
    fn fano_test_flags_sign_flip() {
        let mut p = blowup_point();
        p.canonical_class = qvec(&[4, -2]);
        let v = VarietyData::new(p).unwrap();
        assert!(!v.is_fano_numerically());
        assert_eq!(v.check_main_theorem().unwrap().warnings.len(), 1);
    }

    #[test]
    fn divisor_descriptions() {
        let v = VarietyData::new(blowup_point()).unwrap();
        assert_eq!(v.describe_divisor(&qvec(&[1, -1])), "H - E");
        assert_eq!(v.describe_divisor(&qvec(&[-4, 2])), "-4H + 2E");
        assert_eq!(v.describe_curve(&qvec(&[0, 0])), "0");
    }
}
