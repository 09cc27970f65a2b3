use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::{Cone, ConeError};
use crate::linalg::{dot, scale, sub};
use crate::{QVec, Rat};

fn cross(a: &[Rat], b: &[Rat]) -> QVec {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub(super) fn cross_section(cone: &Cone, level: &[Rat]) -> Result<Vec<QVec>, ConeError> {
    if cone.ambient_dim != 3 {
        return Err(ConeError::NotThreeDimensional(cone.ambient_dim));
    }
    if level.len() != 3 {
        return Err(ConeError::DimensionMismatch { expected: 3, found: level.len() });
    }
    if !cone.is_pointed() {
        return Err(ConeError::HasLineality(cone.lineality_basis.len()));
    }
    let mut vertices = Vec::with_capacity(cone.generators.len());
    for (i, g) in cone.generators.iter().enumerate() {
        let height = dot(level, g);
        if !height.is_positive() {
            return Err(ConeError::LevelNotPositive(i));
        }
        vertices.push(scale(g, &(Rat::from_integer(1.into()) / height)));
    }
    if vertices.len() < 2 {
        return Ok(vertices);
    }

    let n = Rat::from_integer((vertices.len() as i64).into());
    let centroid: QVec = (0..3)
        .map(|k| vertices.iter().fold(Rat::zero(), |acc, v| acc + &v[k]) / &n)
        .collect();
    let start = vertices.iter().max().cloned().expect("nonempty");
    let reference = sub(&start, &centroid);
    let turn = |a: &[Rat], b: &[Rat]| dot(&cross(a, b), level);
    // 0 for angles in [0, π) measured from the reference direction, 1 otherwise
    let half = |a: &[Rat]| -> u8 {
        let t = turn(&reference, a);
        if t.is_positive() || (t.is_zero() && dot(&reference, a).is_positive()) {
            0
        } else {
            1
        }
    };
    vertices.sort_by(|p, q| {
        let (a, b) = (sub(p, &centroid), sub(q, &centroid));
        half(&a).cmp(&half(&b)).then_with(|| {
            let t = turn(&a, &b);
            if t.is_positive() {
                Ordering::Less
            } else if t.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    Ok(vertices)
}
