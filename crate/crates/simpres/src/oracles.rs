//! Brute-force reference implementations of the classical Hochschild chain
//! and cochain complexes, used to cross-check the generic pipeline.
//!
//! Everything here is built straight from the textbook alternating-sum
//! formulas for `b` and `δ` on `M ⊗ A^{⊗n}` and `Hom_k(A^{⊗n}, M)`, with its
//! own tuple indexing. It deliberately shares nothing with the simplicial
//! and tensor modules except scalars and sparse linear algebra, so agreement
//! between the two sides is evidence rather than tautology.

use crate::algebra::{Algebra, Bimodule};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::Scalar;

/// Homology dimensions of `k[x]/(x²)` acting on itself, degrees 0..=4, over
/// a field of characteristic ≠ 2. Worked out by hand from the 2-periodic
/// free resolution of the algebra over its enveloping algebra: the induced
/// maps on `A` alternate between 0 and multiplication by 2x, giving
/// `A, A/(x), (x), A/(x), (x)`.
pub const DUAL_NUMBERS_HOMOLOGY: [usize; 5] = [2, 1, 1, 1, 1];

/// Same algebra in characteristic 2: both periodic maps vanish, so every
/// degree contributes the whole algebra.
pub const DUAL_NUMBERS_HOMOLOGY_CHAR2: [usize; 5] = [2, 2, 2, 2, 2];

/// `k×k` is separable, so only degree 0 (the algebra modulo commutators,
/// which is everything) survives.
pub const SPLIT_PAIR_HOMOLOGY: [usize; 5] = [2, 0, 0, 0, 0];

/// `M₂(k)` is separable; degree 0 is the algebra modulo commutators, and the
/// commutator subspace is the trace-zero matrices.
pub const MAT2_HOMOLOGY: [usize; 3] = [1, 0, 0];

/// Cohomology dimensions of `k[x]/(x²)` on itself, degrees 0..=3, char ≠ 2:
/// degree 0 is the center (everything), higher degrees alternate between the
/// annihilator of 2x and the cokernel of 2x, each one-dimensional.
pub const DUAL_NUMBERS_COHOMOLOGY: [usize; 4] = [2, 1, 1, 1];

/// `M₂(k)`: degree 0 is the center (scalars), higher degrees vanish.
pub const MAT2_COHOMOLOGY: [usize; 3] = [1, 0, 0];

fn pow(base: usize, exp: usize) -> usize {
    base.checked_pow(exp as u32).expect("oracle dimension overflow")
}

/// Digits of `idx` as an `n`-tuple base `dim`, leftmost slowest.
fn tuple_digits(mut idx: usize, n: usize, dim: usize) -> Vec<usize> {
    let mut out = vec![0usize; n];
    for slot in (0..n).rev() {
        out[slot] = idx % dim;
        idx /= dim;
    }
    out
}

fn tuple_index(digits: &[usize], dim: usize) -> usize {
    digits.iter().fold(0, |acc, d| acc * dim + d)
}

fn merged_index(t: &[usize], at: usize, replacement: usize, dim: usize) -> usize {
    let mut acc = 0usize;
    for (s, d) in t.iter().enumerate() {
        if s == at + 1 {
            continue;
        }
        acc = acc * dim + if s == at { replacement } else { *d };
    }
    acc
}

/// The boundary `C_n → C_{n-1}` of the classical chain complex
/// `C_n = M ⊗ A^{⊗n}`, coordinates `m_idx · dim_a^n + tuple_idx`:
/// `b(m⊗a_1⊗…⊗a_n) = (m·a_1)⊗a_2… + Σ_{i=1}^{n-1} (−1)^i m⊗…(a_i a_{i+1})…
/// + (−1)^n (a_n·m)⊗a_1…a_{n-1}`.
pub fn chain_boundary(alg: &Algebra, module: &Bimodule, n: usize) -> Matrix {
    assert!(n >= 1);
    let (da, dm) = (alg.dim(), module.dim());
    let field = alg.field();
    let block = pow(da, n - 1);
    let mut cols = Vec::with_capacity(dm * pow(da, n));
    for m_idx in 0..dm {
        let m = SparseVec::unit(m_idx, field);
        for t_idx in 0..pow(da, n) {
            let t = tuple_digits(t_idx, n, da);
            let mut entries: Vec<(usize, Scalar)> = Vec::new();

            let rest = tuple_index(&t[1..], da);
            for (m2, c) in module.act_right(&m, &SparseVec::unit(t[0], field)).iter() {
                entries.push((m2 * block + rest, c.clone()));
            }

            for i in 1..n {
                let negate = i % 2 == 1;
                for (k, c) in alg.basis_product(t[i - 1], t[i]).iter() {
                    let s_idx = merged_index(&t, i - 1, *k, da);
                    let c = if negate { c.neg() } else { c.clone() };
                    entries.push((m_idx * block + s_idx, c));
                }
            }

            let front = tuple_index(&t[..n - 1], da);
            let negate = n % 2 == 1;
            for (m2, c) in module.act_left(&SparseVec::unit(t[n - 1], field), &m).iter() {
                let c = if negate { c.neg() } else { c.clone() };
                entries.push((m2 * block + front, c));
            }

            cols.push(SparseVec::from_entries(entries));
        }
    }
    Matrix::from_columns(dm * block, field, cols)
}

/// The coboundary `C^n → C^{n+1}` of the classical cochain complex
/// `C^n = Hom_k(A^{⊗n}, M)`, coordinates `tuple_idx · dim_m + m_idx`:
/// `(δf)(a_1,…,a_{n+1}) = a_1·f(a_2,…) + Σ_{i=1}^{n} (−1)^i f(…,a_i a_{i+1},…)
/// + (−1)^{n+1} f(a_1,…,a_n)·a_{n+1}`.
pub fn cochain_coboundary(alg: &Algebra, module: &Bimodule, n: usize) -> Matrix {
    let (da, dm) = (alg.dim(), module.dim());
    let field = alg.field();
    let n_cols = pow(da, n) * dm;
    let mut col_entries: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n_cols];
    for t_idx in 0..pow(da, n + 1) {
        let t = tuple_digits(t_idx, n + 1, da);

        let rest = tuple_index(&t[1..], da);
        let left = module.left_action(t[0]);
        for m_src in 0..dm {
            for (m_dst, c) in left.column(m_src).iter() {
                col_entries[rest * dm + m_src].push((t_idx * dm + m_dst, c.clone()));
            }
        }

        for i in 1..=n {
            let negate = i % 2 == 1;
            for (k, c) in alg.basis_product(t[i - 1], t[i]).iter() {
                let s_idx = merged_index(&t, i - 1, *k, da);
                let c = if negate { c.neg() } else { c.clone() };
                for m in 0..dm {
                    col_entries[s_idx * dm + m].push((t_idx * dm + m, c.clone()));
                }
            }
        }

        let front = tuple_index(&t[..n], da);
        let negate = (n + 1) % 2 == 1;
        let right = module.right_action(t[n]);
        for m_src in 0..dm {
            for (m_dst, c) in right.column(m_src).iter() {
                let c = if negate { c.neg() } else { c.clone() };
                col_entries[front * dm + m_src].push((t_idx * dm + m_dst, c));
            }
        }
    }
    let cols = col_entries.into_iter().map(SparseVec::from_entries).collect();
    Matrix::from_columns(pow(da, n + 1) * dm, field, cols)
}

/// Homology dimensions of the classical complex, degrees 0..=up_to.
/// Panics if the squared boundary is nonzero — that would mean the oracle
/// itself is broken.
pub fn classical_hochschild_betti(alg: &Algebra, module: &Bimodule, up_to: usize) -> Vec<usize> {
    let maps: Vec<Matrix> = (1..=up_to + 1)
        .map(|n| chain_boundary(alg, module, n))
        .collect();
    for (k, w) in maps.windows(2).enumerate() {
        assert!(
            w[0].compose(&w[1]).is_zero(),
            "oracle boundary fails b∘b = 0 at degree {}",
            k + 2
        );
    }
    let ranks: Vec<usize> = maps.iter().map(Matrix::rank).collect();
    (0..=up_to)
        .map(|n| {
            let dim = module.dim() * pow(alg.dim(), n);
            let rank_out = if n == 0 { 0 } else { ranks[n - 1] };
            dim - rank_out - ranks[n]
        })
        .collect()
}

/// Cohomology dimensions of the classical cochain complex, degrees 0..=up_to.
pub fn classical_hochschild_cobetti(alg: &Algebra, module: &Bimodule, up_to: usize) -> Vec<usize> {
    let maps: Vec<Matrix> = (0..=up_to)
        .map(|n| cochain_coboundary(alg, module, n))
        .collect();
    for (k, w) in maps.windows(2).enumerate() {
        assert!(
            w[1].compose(&w[0]).is_zero(),
            "oracle coboundary fails δ∘δ = 0 at degree {k}"
        );
    }
    let ranks: Vec<usize> = maps.iter().map(Matrix::rank).collect();
    (0..=up_to)
        .map(|n| {
            let dim = module.dim() * pow(alg.dim(), n);
            let rank_in = if n == 0 { 0 } else { ranks[n - 1] };
            dim - ranks[n] - rank_in
        })
        .collect()
}

/// Predicted quotient dimension of the secondary complex at degree `n`:
/// after the algebra action absorbs the two corner slots and every pair
/// touching them, `dim M · dim A^n · dim B^{n(n−1)/2}` slots remain.
pub fn secondary_dimension_formula(dim_m: usize, dim_a: usize, dim_b: usize, n: usize) -> usize {
    dim_m * pow(dim_a, n) * pow(dim_b, n * n.saturating_sub(1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::scalar::Field;

    #[test]
    fn ground_field_homology_is_module_in_degree_zero() {
        let a = presets::ground(Field::Q);
        let m = Bimodule::regular(&presets::mat2(Field::Q));
        // M as a bimodule over k: every basis element of k acts as identity
        let mk = Bimodule::new(
            "M",
            Field::Q,
            4,
            vec![Matrix::identity(4, Field::Q)],
            vec![Matrix::identity(4, Field::Q)],
        )
        .unwrap();
        assert_eq!(classical_hochschild_betti(&a, &mk, 4), vec![4, 0, 0, 0, 0]);
        assert_eq!(classical_hochschild_cobetti(&a, &mk, 3), vec![4, 0, 0, 0]);
        drop(m);
    }

    #[test]
    fn dual_numbers_homology_table() {
        let a = presets::dual_numbers(Field::Q);
        let m = Bimodule::regular(&a);
        assert_eq!(
            classical_hochschild_betti(&a, &m, 4),
            DUAL_NUMBERS_HOMOLOGY.to_vec()
        );
    }

    #[test]
    fn dual_numbers_homology_respects_characteristic() {
        let f5 = Field::fp(5).unwrap();
        let a5 = presets::dual_numbers(f5);
        assert_eq!(
            classical_hochschild_betti(&a5, &Bimodule::regular(&a5), 4),
            DUAL_NUMBERS_HOMOLOGY.to_vec()
        );
        let f2 = Field::fp(2).unwrap();
        let a2 = presets::dual_numbers(f2);
        assert_eq!(
            classical_hochschild_betti(&a2, &Bimodule::regular(&a2), 4),
            DUAL_NUMBERS_HOMOLOGY_CHAR2.to_vec()
        );
    }

    #[test]
    fn split_pair_homology_table() {
        let a = presets::split_pair(Field::Q);
        let m = Bimodule::regular(&a);
        assert_eq!(
            classical_hochschild_betti(&a, &m, 4),
            SPLIT_PAIR_HOMOLOGY.to_vec()
        );
    }

    #[test]
    fn mat2_homology_table() {
        let a = presets::mat2(Field::Q);
        let m = Bimodule::regular(&a);
        assert_eq!(classical_hochschild_betti(&a, &m, 2), MAT2_HOMOLOGY.to_vec());
    }

    #[test]
    fn dual_numbers_cohomology_table() {
        let a = presets::dual_numbers(Field::Q);
        let m = Bimodule::regular(&a);
        assert_eq!(
            classical_hochschild_cobetti(&a, &m, 3),
            DUAL_NUMBERS_COHOMOLOGY.to_vec()
        );
    }

    #[test]
    fn mat2_cohomology_table() {
        let a = presets::mat2(Field::Q);
        let m = Bimodule::regular(&a);
        assert_eq!(
            classical_hochschild_cobetti(&a, &m, 2),
            MAT2_COHOMOLOGY.to_vec()
        );
    }

    #[test]
    fn degree_one_boundary_is_commutator() {
        // b(m⊗a) = m·a − a·m
        let a = presets::mat2(Field::Q);
        let m = Bimodule::regular(&a);
        let b1 = chain_boundary(&a, &m, 1);
        let e12 = SparseVec::unit(1, Field::Q);
        let e21 = SparseVec::unit(2, Field::Q);
        // column for m = E12, a = E21: E12·E21 − E21·E12 = E11 − E22
        let col = b1.column(1 * 4 + 2);
        let expected = a.multiply(&e12, &e21).sub(&a.multiply(&e21, &e12));
        assert_eq!(col, &expected);
    }

    #[test]
    fn degree_zero_coboundary_is_inner_derivation() {
        // (δm)(a) = a·m − m·a
        let a = presets::dual_numbers(Field::Q);
        let m = Bimodule::regular(&a);
        let d0 = cochain_coboundary(&a, &m, 0);
        // commutative algebra: every inner derivation vanishes
        assert!(d0.is_zero());
    }

    #[test]
    fn secondary_dimension_formula_cases() {
        assert_eq!(secondary_dimension_formula(2, 2, 2, 0), 2);
        assert_eq!(secondary_dimension_formula(2, 2, 2, 1), 4);
        assert_eq!(secondary_dimension_formula(2, 2, 2, 2), 16);
        assert_eq!(secondary_dimension_formula(2, 2, 2, 3), 128);
        // dim B = 1 degenerates to the classical dimension count
        for n in 0..5 {
            assert_eq!(
                secondary_dimension_formula(3, 2, 1, n),
                3 * 2usize.pow(n as u32)
            );
        }
    }
}
