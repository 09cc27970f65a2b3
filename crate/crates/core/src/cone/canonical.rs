use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::{dot, echelon, is_zero_vec, solve, sub, Matrix};
use crate::{QVec, Rat};

/// Scales `v` by the unique positive rational that makes its entries coprime
/// integers. Returns `None` for the zero vector.
pub fn primitive(v: &[Rat]) -> Option<QVec> {
    if is_zero_vec(v) {
        return None;
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| Rat::from_integer(x / &gcd)).collect())
}

/// Canonical basis of the span of `vectors`: the nonzero rows of the reduced
/// row echelon form, each made primitive.
pub fn subspace_basis(dim: usize, vectors: &[QVec]) -> Vec<QVec> {
    let m = Matrix::from_rows(dim, vectors.iter().cloned());
    echelon(&m)
        .row_space_basis()
        .iter()
        .filter_map(|row| primitive(row))
        .collect()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
/// `basis` must be linearly independent.
pub fn project_out(v: &[Rat], basis: &[QVec]) -> QVec {
    if basis.is_empty() {
        return v.to_vec();
    }
    let k = basis.len();
    let gram = Matrix::from_rows(k, basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()));
    let rhs: QVec = basis.iter().map(|b| dot(b, v)).collect();
    let coeffs = solve(&gram, &rhs).expect("Gram matrix of an independent family is invertible");
    let mut along = vec![Rat::zero(); v.len()];
    for (c, b) in coeffs.iter().zip(basis) {
        for (x, y) in along.iter_mut().zip(b) {
            *x += c * y;
        }
    }
    sub(v, &along)
}

/// Canonical list order: lexicographic, duplicates dropped.
pub fn sort_dedup(mut vs: Vec<QVec>) -> Vec<QVec> {
    vs.sort();
    vs.dedup();
    vs
}
