//! Conic feasibility oracle: is `v` a nonnegative combination of generators?
//!
//! Decided by phase one of the simplex method on `G λ = v, λ ≥ 0` with
//! Bland's anticycling rule, over an exact ordered field. Nothing here shares
//! code with the double description implementation it is used to check.

use crate::scalar::OrderedField;

/// True iff `v` lies in the nonnegative hull of `gens`. An empty generator
/// list accepts only the zero vector.
pub fn in_cone_bruteforce<T: OrderedField>(gens: &[Vec<T>], v: &[T]) -> bool {
    let d = v.len();
    for (i, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), d, "generator {i} has length {}, expected {d}", g.len());
    }
    let n = gens.len();
    let width = n + d;

    // Tableau rows: [ G (sign-adjusted) | I ] with rhs |v|.
    let mut tableau: Vec<Vec<T>> = Vec::with_capacity(d);
    let mut rhs: Vec<T> = Vec::with_capacity(d);
    for i in 0..d {
        let flip = v[i].is_negative();
        let mut row: Vec<T> = gens
            .iter()
            .map(|g| if flip { -g[i].clone() } else { g[i].clone() })
            .collect();
        row.extend((0..d).map(|k| if k == i { T::one() } else { T::zero() }));
        tableau.push(row);
        rhs.push(v[i].abs());
    }
    // phase-one cost: 1 on the artificial columns j >= n, 0 elsewhere
    let mut basis: Vec<usize> = (n..width).collect();

    loop {
        // Bland: lowest-index column with negative reduced cost enters.
        let entering = (0..width).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut reduced = if j >= n { T::one() } else { T::zero() };
            for (i, row) in tableau.iter().enumerate() {
                if basis[i] >= n && !row[j].is_zero() {
                    reduced = reduced - row[j].clone();
                }
            }
            reduced.is_negative()
        });
        let Some(col) = entering else { break };

        let mut leave: Option<(usize, T)> = None;
        for i in 0..d {
            if !tableau[i][col].is_positive() {
                continue;
            }
            let ratio = rhs[i].clone() / tableau[i][col].clone();
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (pivot, _) = leave.expect("phase-one objective is bounded");

        let inv = T::one() / tableau[pivot][col].clone();
        for x in tableau[pivot].iter_mut().filter(|x| !x.is_zero()) {
            *x = x.clone() * inv.clone();
        }
        rhs[pivot] = rhs[pivot].clone() * inv;
        let pivot_row = tableau[pivot].clone();
        let pivot_rhs = rhs[pivot].clone();
        for i in 0..d {
            if i == pivot || tableau[i][col].is_zero() {
                continue;
            }
            let factor = tableau[i][col].clone();
            for (x, p) in tableau[i].iter_mut().zip(&pivot_row).filter(|(_, p)| !p.is_zero()) {
                *x = x.clone() - factor.clone() * p.clone();
            }
            rhs[i] = rhs[i].clone() - factor * pivot_rhs.clone();
        }
        basis[pivot] = col;
    }

    basis
        .iter()
        .zip(&rhs)
        .all(|(&b, value)| b < n || value.is_zero())
}
