//! Maps induced by an extremal contraction `φ: X → Y`.
//!
//! Divisor classes move by the stored matrices `φ_*` and `φ^*`. Curve classes
//! move by the dual maps: `φ^•(c)` is the class on `X` pairing with every `D`
//! as `c` pairs with `φ_*(D)`, and `φ_•(c)` pairs with `D_Y` as `c` pairs with
//! `φ^*(D_Y)`. Both are exact solves against the (invertible) pairings.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::linalg::{is_zero_vec, kernel_basis, solve, Matrix};
use crate::variety::{ContractionInfo, ContractionTarget, CurveClass, DivisorClass, VarietyData, VarietyError};
use crate::{QMat, QVec, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("no target recorded for this contraction")]
    NoTarget,
    #[error("contraction targets `{expected}`, got dataset `{found}`")]
    TargetMismatch { expected: String, found: String },
    #[error("ray index {index} out of range ({count} rays)")]
    RayIndex { index: usize, count: usize },
    #[error("contraction matrices do not fit Picard numbers {rho_x} and {rho_y}")]
    Shape { rho_x: usize, rho_y: usize },
    #[error("correspondence check needs a divisorial contraction")]
    NotDivisorial,
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

/// A contraction together with its source and resolved target.
///
/// Construction checks only that shapes fit; the data invariants are reported
/// by [`LinkedContraction::invariant_violations`], so deliberately corrupted
/// matrices can be examined.
#[derive(Debug)]
pub struct LinkedContraction<'a> {
    source: &'a VarietyData,
    target: &'a VarietyData,
    ray: &'a CurveClass,
    info: &'a ContractionInfo,
    link: &'a ContractionTarget,
    curve_pullback: OnceLock<QMat>,
    curve_pushforward: OnceLock<QMat>,
}

impl<'a> LinkedContraction<'a> {
    /// Links the contraction of `source.ne_rays()[ray_index]` to `target`.
    pub fn new(source: &'a VarietyData, ray_index: usize, target: &'a VarietyData) -> Result<Self, ContractionError> {
        let count = source.ne_rays().len();
        let ray = source.ne_rays().get(ray_index).ok_or(ContractionError::RayIndex { index: ray_index, count })?;
        Self::from_parts(source, &ray.class, &ray.contraction, target)
    }

    /// Links an arbitrary `info` (not necessarily the one stored in `source`).
    pub fn from_parts(
        source: &'a VarietyData,
        ray: &'a CurveClass,
        info: &'a ContractionInfo,
        target: &'a VarietyData,
    ) -> Result<Self, ContractionError> {
        let link = info.target.as_ref().ok_or(ContractionError::NoTarget)?;
        if link.name != target.name() {
            return Err(ContractionError::TargetMismatch { expected: link.name.clone(), found: target.name().to_string() });
        }
        let (rho_x, rho_y) = (source.rho(), target.rho());
        let fits = link.pushforward.rows() == rho_y
            && link.pushforward.cols() == rho_x
            && link.pullback.rows() == rho_x
            && link.pullback.cols() == rho_y
            && ray.coords.len() == rho_x;
        if !fits {
            return Err(ContractionError::Shape { rho_x, rho_y });
        }
        Ok(LinkedContraction {
            source,
            target,
            ray,
            info,
            link,
            curve_pullback: OnceLock::new(),
            curve_pushforward: OnceLock::new(),
        })
    }

    pub fn source(&self) -> &VarietyData {
        self.source
    }

    pub fn target(&self) -> &VarietyData {
        self.target
    }

    pub fn info(&self) -> &ContractionInfo {
        self.info
    }

    pub fn pushforward_divisor(&self, d: &DivisorClass) -> Result<DivisorClass, ContractionError> {
        self.check_source_class(&d.variety, d.coords.len())?;
        Ok(self.target.divisor(self.link.pushforward.mul_vec(&d.coords)))
    }

    pub fn pullback_divisor(&self, d: &DivisorClass) -> Result<DivisorClass, ContractionError> {
        self.check_class(self.target, &d.variety, d.coords.len())?;
        Ok(self.source.divisor(self.link.pullback.mul_vec(&d.coords)))
    }

    /// `ρ_X × ρ_Y` matrix of `φ^•` on curve coordinates.
    pub fn curve_pullback_matrix(&self) -> &QMat {
        // P_X · φ^•(c) = φ_*ᵀ · P_Y · c, column by column
        self.curve_pullback.get_or_init(|| {
            let rhs = self.link.pushforward.transpose().mul(self.target.pairing());
            solve_columns(self.source.pairing(), &rhs)
        })
    }

    /// `ρ_Y × ρ_X` matrix of `φ_•` on curve coordinates.
    pub fn curve_pushforward_matrix(&self) -> &QMat {
        self.curve_pushforward.get_or_init(|| {
            let rhs = self.link.pullback.transpose().mul(self.source.pairing());
            solve_columns(self.target.pairing(), &rhs)
        })
    }

    pub fn numerical_pullback(&self, c: &CurveClass) -> Result<CurveClass, ContractionError> {
        self.check_class(self.target, &c.variety, c.coords.len())?;
        Ok(self.source.curve(self.curve_pullback_matrix().mul_vec(&c.coords)))
    }

    pub fn numerical_pushforward(&self, c: &CurveClass) -> Result<CurveClass, ContractionError> {
        self.check_source_class(&c.variety, c.coords.len())?;
        Ok(self.target.curve(self.curve_pushforward_matrix().mul_vec(&c.coords)))
    }

    fn check_source_class(&self, variety: &str, len: usize) -> Result<(), ContractionError> {
        self.check_class(self.source, variety, len)
    }

    fn check_class(&self, owner: &VarietyData, variety: &str, len: usize) -> Result<(), ContractionError> {
        if variety != owner.name() {
            return Err(VarietyError::VarietyMismatch { expected: owner.name().to_string(), found: variety.to_string() }.into());
        }
        if len != owner.rho() {
            return Err(VarietyError::WrongDimension { expected: owner.rho(), found: len }.into());
        }
        Ok(())
    }

    /// Data invariants of the contraction matrices, as readable messages.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let rho_y = self.target.rho();
        if self.link.pushforward.mul(&self.link.pullback) != Matrix::identity(rho_y) {
            out.push("pushforward after pullback is not the identity".to_string());
        }
        if crate::linalg::rank(&self.link.pullback) != rho_y {
            out.push("pullback is not injective".to_string());
        }
        if self.info.is_divisorial() {
            if rho_y + 1 != self.source.rho() {
                out.push("divisorial contraction must drop the Picard number by one".to_string());
            }
            match &self.info.exceptional_divisor {
                Some(e) if !is_zero_vec(&self.link.pushforward.mul_vec(&e.coords)) => {
                    out.push("exceptional divisor is not in the kernel of the pushforward".to_string())
                }
                None => out.push("divisorial contraction without exceptional divisor".to_string()),
                _ => {}
            }
        }
        out
    }

    /// Both projection-formula identities on every basis pair and on `trials`
    /// random rational pairs, plus `φ_•(r) = 0` for the contracted ray `r`.
    pub fn check_projection_formula<R: Rng + ?Sized>(&self, trials: usize, rng: &mut R) -> bool {
        let (rho_x, rho_y) = (self.source.rho(), self.target.rho());
        let mut pull_pairs: Vec<(QVec, QVec)> = Vec::new();
        let mut push_pairs: Vec<(QVec, QVec)> = Vec::new();
        for i in 0..rho_y {
            for j in 0..rho_x {
                pull_pairs.push((unit(rho_y, i), unit(rho_x, j)));
                push_pairs.push((unit(rho_x, j), unit(rho_y, i)));
            }
        }
        for _ in 0..trials {
            pull_pairs.push((random_vec(rng, rho_y), random_vec(rng, rho_x)));
            push_pairs.push((random_vec(rng, rho_x), random_vec(rng, rho_y)));
        }
        let pullback_ok = pull_pairs.iter().all(|(c_y, d_x)| {
            let c_x = self.curve_pullback_matrix().mul_vec(c_y);
            self.source.pair_coords(d_x, &c_x) == self.target.pair_coords(&self.link.pushforward.mul_vec(d_x), c_y)
        });
        let pushforward_ok = push_pairs.iter().all(|(c_x, d_y)| {
            let c_y = self.curve_pushforward_matrix().mul_vec(c_x);
            self.source.pair_coords(&self.link.pullback.mul_vec(d_y), c_x) == self.target.pair_coords(d_y, &c_y)
        });
        // the contracted ray maps to a point, so every pulled-back divisor is trivial on it
        let contracted_ok = (0..rho_y)
            .all(|i| self.source.pair_coords(&self.link.pullback.mul_vec(&unit(rho_y, i)), &self.ray.coords).is_zero());
        pullback_ok && pushforward_ok && contracted_ok
    }

    /// `φ_•∘φ^• = id`, `φ^*(D)·φ^•(c) = D·c`, and `D·φ^•(c) = 0` for `D` in
    /// `ker φ_*` (the exceptional divisor included), all on bases.
    pub fn check_lemma_rmk(&self) -> bool {
        let rho_y = self.target.rho();
        let pulled: Vec<QVec> = (0..rho_y).map(|i| self.curve_pullback_matrix().mul_vec(&unit(rho_y, i))).collect();
        let identity = pulled
            .iter()
            .enumerate()
            .all(|(i, c)| self.curve_pushforward_matrix().mul_vec(c) == unit(rho_y, i));
        let projection = (0..rho_y).all(|a| {
            let d = unit(rho_y, a);
            let pulled_d = self.link.pullback.mul_vec(&d);
            pulled.iter().enumerate().all(|(b, c)| self.source.pair_coords(&pulled_d, c) == self.target.pair_coords(&d, &unit(rho_y, b)))
        });
        let mut kernel = kernel_basis(&self.link.pushforward);
        if let Some(e) = &self.info.exceptional_divisor {
            kernel.push(e.coords.clone());
        }
        let orthogonal = kernel.iter().all(|d| pulled.iter().all(|c| self.source.pair_coords(d, c).is_zero()));
        identity && projection && orthogonal
    }

    /// Extremal rays of `SME(Y)` against those of `SME(X)` under `φ^•`/`φ_•`.
    pub fn check_extremal_correspondence(&self) -> Result<CorrespondenceReport, ContractionError> {
        if !self.info.is_divisorial() {
            return Err(ContractionError::NotDivisorial);
        }
        let e = self.info.exceptional_divisor.as_ref().ok_or(ContractionError::NotDivisorial)?;
        let sme_x = self.source.sme_cone()?;
        let sme_y = self.target.sme_cone()?;
        let mut forward = Vec::new();
        for c in sme_y.extremal_rays().map_err(VarietyError::from)? {
            let pulled_back = self.curve_pullback_matrix().mul_vec(&c);
            let extremal = sme_x.is_extremal_face(std::slice::from_ref(&pulled_back)).map_err(VarietyError::from)?;
            forward.push(ForwardRow { target_ray: c, pulled_back, extremal });
        }
        let mut reverse = Vec::new();
        let mut excluded = Vec::new();
        for r in sme_x.extremal_rays().map_err(VarietyError::from)? {
            if !self.source.pair_coords(&e.coords, &r).is_zero() {
                excluded.push(r);
                continue;
            }
            let pushed_forward = self.curve_pushforward_matrix().mul_vec(&r);
            let round_trip = self.curve_pullback_matrix().mul_vec(&pushed_forward) == r;
            let extremal = !is_zero_vec(&pushed_forward)
                && sme_y.is_extremal_face(std::slice::from_ref(&pushed_forward)).map_err(VarietyError::from)?;
            reverse.push(ReverseRow { source_ray: r, pushed_forward, round_trip, extremal });
        }
        Ok(CorrespondenceReport { forward, reverse, excluded })
    }
}

fn solve_columns(m: &QMat, rhs: &QMat) -> QMat {
    let columns: Vec<QVec> = (0..rhs.cols())
        .map(|j| solve(m, &rhs.column(j)).expect("pairing is invertible by validation"))
        .collect();
    Matrix::from_columns(m.cols(), &columns)
}

fn unit(n: usize, i: usize) -> QVec {
    (0..n).map(|k| Rat::from_integer(BigInt::from((k == i) as i64))).collect()
}

fn random_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QVec {
    (0..n)
        .map(|_| Rat::new(BigInt::from(rng.gen_range(-20i64..=20)), BigInt::from(rng.gen_range(1i64..=9))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardRow {
    pub target_ray: QVec,
    pub pulled_back: QVec,
    pub extremal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReverseRow {
    pub source_ray: QVec,
    pub pushed_forward: QVec,
    pub round_trip: bool,
    pub extremal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub forward: Vec<ForwardRow>,
    pub reverse: Vec<ReverseRow>,
    /// Extremal rays of `SME(X)` not orthogonal to the exceptional divisor.
    pub excluded: Vec<QVec>,
}

impl CorrespondenceReport {
    pub fn forward_passed(&self) -> bool {
        self.forward.iter().all(|r| r.extremal)
    }

    pub fn reverse_passed(&self) -> bool {
        self.reverse.iter().all(|r| r.round_trip && r.extremal)
    }

    pub fn passed(&self) -> bool {
        self.forward_passed() && self.reverse_passed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qvec;
    use crate::variety::{ContractionKind, NeRay, VarietyParts};
    use rand::SeedableRng;

    fn qmat(rows: &[&[i64]]) -> QMat {
        Matrix::from_rows(rows[0].len(), rows.iter().map(|r| qvec(r)))
    }

    fn p3() -> VarietyData {
        VarietyData::new(VarietyParts {
            name: "p3".into(),
            rho: 1,
            divisor_basis_labels: vec!["H".into()],
            curve_basis_labels: vec!["l".into()],
            pairing: qmat(&[&[1]]),
            canonical_class: qvec(&[-4]),
            ne_rays: vec![NeRay { class: CurveClass::new("p3", qvec(&[1])), contraction: ContractionInfo::fiber() }],
            eff_generators: vec![qvec(&[1])],
        })
        .unwrap()
    }

    fn blowup() -> VarietyData {
        let name = "bl";
        VarietyData::new(VarietyParts {
            name: name.into(),
            rho: 2,
            divisor_basis_labels: vec!["H".into(), "E".into()],
            curve_basis_labels: vec!["e".into(), "l".into()],
            pairing: qmat(&[&[0, 1], &[-1, 1]]),
            canonical_class: qvec(&[-4, 2]),
            ne_rays: vec![
                NeRay {
                    class: CurveClass::new(name, qvec(&[1, 0])),
                    contraction: ContractionInfo {
                        kind: ContractionKind::Divisorial,
                        exceptional_divisor: Some(DivisorClass::new(name, qvec(&[0, 1]))),
                        target: Some(ContractionTarget {
                            name: "p3".into(),
                            pushforward: qmat(&[&[1, 0]]),
                            pullback: qmat(&[&[1], &[0]]),
                        }),
                    },
                },
                NeRay { class: CurveClass::new(name, qvec(&[0, 1])), contraction: ContractionInfo::fiber() },
            ],
            eff_generators: vec![qvec(&[0, 1]), qvec(&[1, -1])],
        })
        .unwrap()
    }

    #[test]
    fn divisor_maps() {
        let (x, y) = (blowup(), p3());
        let phi = LinkedContraction::new(&x, 0, &y).unwrap();
        assert_eq!(phi.pushforward_divisor(&x.divisor(qvec(&[1, 0]))).unwrap().coords, qvec(&[1]));
        assert_eq!(phi.pushforward_divisor(&x.divisor(qvec(&[0, 1]))).unwrap().coords, qvec(&[0]));
        assert_eq!(phi.pushforward_divisor(&x.divisor(qvec(&[1, 1]))).unwrap().coords, qvec(&[1]));
        assert_eq!(phi.pullback_divisor(&y.divisor(qvec(&[1]))).unwrap().coords, qvec(&[1, 0]));
        assert_eq!(phi.pullback_divisor(&y.divisor(qvec(&[0]))).unwrap().coords, qvec(&[0, 0]));
        assert!(phi.pullback_divisor(&x.divisor(qvec(&[1, 0]))).is_err());
    }

    #[test]
    fn curve_maps() {
        let (x, y) = (blowup(), p3());
        let phi = LinkedContraction::new(&x, 0, &y).unwrap();
        let line = phi.numerical_pullback(&y.curve(qvec(&[1]))).unwrap();
        assert_eq!(line.coords, qvec(&[1, 1]));
        assert_eq!(phi.numerical_pullback(&y.curve(qvec(&[0]))).unwrap().coords, qvec(&[0, 0]));
        assert_eq!(phi.numerical_pushforward(&x.curve(qvec(&[1, 0]))).unwrap().coords, qvec(&[0]));
        assert_eq!(phi.numerical_pushforward(&x.curve(qvec(&[0, 1]))).unwrap().coords, qvec(&[1]));
        assert_eq!(phi.numerical_pushforward(&line).unwrap().coords, qvec(&[1]));
    }

    #[test]
    fn fiber_rays_have_no_target() {
        let (x, y) = (blowup(), p3());
        assert_eq!(LinkedContraction::new(&x, 1, &y).unwrap_err(), ContractionError::NoTarget);
        assert!(matches!(LinkedContraction::new(&x, 0, &x), Err(ContractionError::TargetMismatch { .. })));
        assert!(matches!(LinkedContraction::new(&x, 5, &y), Err(ContractionError::RayIndex { .. })));
    }

    #[test]
    fn identities_hold() {
        let (x, y) = (blowup(), p3());
        let phi = LinkedContraction::new(&x, 0, &y).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        assert!(phi.invariant_violations().is_empty());
        assert!(phi.check_projection_formula(100, &mut rng));
        assert!(phi.check_projection_formula(0, &mut rng));
        assert!(phi.check_lemma_rmk());
        let report = phi.check_extremal_correspondence().unwrap();
        assert!(report.passed());
        assert_eq!(report.forward.len(), 1);
        assert_eq!(report.forward[0].pulled_back, qvec(&[1, 1]));
        assert_eq!(report.reverse.len(), 1);
        assert_eq!(report.reverse[0].pushed_forward, qvec(&[1]));
        assert_eq!(report.excluded, vec![qvec(&[0, 1])]);
    }

    #[test]
    fn corrupted_matrices_are_detected() {
        let (x, y) = (blowup(), p3());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut info = x.ne_rays()[0].contraction.clone();
        info.target.as_mut().unwrap().pullback = qmat(&[&[1], &[1]]);
        let phi = LinkedContraction::from_parts(&x, &x.ne_rays()[0].class, &info, &y).unwrap();
        assert!(!phi.check_projection_formula(10, &mut rng));

        let mut info = x.ne_rays()[0].contraction.clone();
        info.target.as_mut().unwrap().pushforward = qmat(&[&[1, 1]]);
        let phi = LinkedContraction::from_parts(&x, &x.ne_rays()[0].class, &info, &y).unwrap();
        assert!(!phi.check_lemma_rmk());
        assert!(!phi.invariant_violations().is_empty());
    }

    #[test]
    fn correspondence_rejects_fiber_contractions() {
        let (x, y) = (blowup(), p3());
        let mut info = x.ne_rays()[0].contraction.clone();
        info.kind = ContractionKind::Fiber;
        info.exceptional_divisor = None;
        let phi = LinkedContraction::from_parts(&x, &x.ne_rays()[0].class, &info, &y).unwrap();
        assert_eq!(phi.check_extremal_correspondence().unwrap_err(), ContractionError::NotDivisorial);
    }
}
