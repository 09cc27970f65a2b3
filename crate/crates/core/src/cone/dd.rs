//! Double description: inequalities `a·x ≥ 0` to extreme rays plus lineality.
//!
//! Constraints are inserted one at a time in lexicographic order. While the
//! current lineality space is not annihilated by the new constraint, one
//! lineality direction is turned into a ray. Otherwise rays are split by sign
//! and each adjacent positive/negative pair contributes one new ray. Two rays
//! are adjacent iff the processed constraints active at both have rank
//! `dim - lineality - 2`.

use num_traits::{Signed, Zero};

use super::canonical::{primitive, sort_dedup};
use crate::linalg::{dot, rank, Matrix};
use crate::{QVec, Rat};

struct Ray {
    vector: QVec,
    zeros: Vec<usize>,
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Computes `(rays, lineality)` with `{x : a·x ≥ 0 ∀a} = lin(lineality) + cone(rays)`.
/// Rays are primitive, pairwise distinct and extreme modulo the lineality space;
/// they are not projected onto its orthogonal complement.
pub fn double_description(dim: usize, normals: &[QVec]) -> (Vec<QVec>, Vec<QVec>) {
    let constraints = sort_dedup(normals.iter().filter_map(|n| primitive(n)).collect());
    let mut lineality: Vec<QVec> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { Rat::from_integer(1.into()) } else { Rat::zero() }).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (index, a) in constraints.iter().enumerate() {
        let values: Vec<Rat> = lineality.iter().map(|l| dot(a, l)).collect();
        if let Some(k) = values.iter().position(|v| !v.is_zero()) {
            let mut pivot = lineality[k].clone();
            let mut pivot_value = values[k].clone();
            if pivot_value.is_negative() {
                pivot = pivot.iter().map(|x| -x).collect();
                pivot_value = -pivot_value;
            }
            let reduce = |v: &QVec| -> QVec {
                let t = dot(a, v) / &pivot_value;
                v.iter().zip(&pivot).map(|(x, p)| x - &t * p).collect()
            };
            lineality = lineality
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, l)| reduce(l))
                .collect();
            for ray in rays.iter_mut() {
                ray.vector = primitive(&reduce(&ray.vector)).expect("ray stays nonzero modulo lineality");
                ray.zeros.push(index);
            }
            // every processed constraint vanishes on the old lineality space
            rays.push(Ray { vector: primitive(&pivot).unwrap(), zeros: (0..index).collect() });
            continue;
        }

        let target_rank = (dim - lineality.len()).saturating_sub(2);
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        let mut next: Vec<Ray> = Vec::new();
        for ray in rays.drain(..) {
            let value = dot(a, &ray.vector);
            if value.is_positive() {
                positive.push((ray, value));
            } else if value.is_negative() {
                negative.push((ray, value));
            } else {
                let mut zeros = ray.zeros;
                zeros.push(index);
                next.push(Ray { vector: ray.vector, zeros });
            }
        }
        for (p, pv) in &positive {
            for (n, nv) in &negative {
                let common = intersect_sorted(&p.zeros, &n.zeros);
                if common.len() < target_rank {
                    continue;
                }
                let active = Matrix::from_rows(dim, common.iter().map(|&i| constraints[i].clone()));
                if rank(&active) != target_rank {
                    continue;
                }
                let combined: QVec = p
                    .vector
                    .iter()
                    .zip(&n.vector)
                    .map(|(x, y)| pv * y - nv * x)
                    .collect();
                let mut zeros = common;
                zeros.push(index);
                next.push(Ray { vector: primitive(&combined).expect("adjacent rays are independent"), zeros });
            }
        }
        next.extend(positive.into_iter().map(|(r, _)| r));
        rays = next;
    }

    let rays = sort_dedup(rays.into_iter().map(|r| r.vector).collect());
    (rays, lineality)
}
