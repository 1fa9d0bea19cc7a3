//! Stock algebras and morphisms shared by tests, examples, and fixtures:
//! the ground field, dual numbers k[x]/(x²), the split pair k×k, and 2×2
//! matrices, plus the central morphisms between them.

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::Field;

fn sv(field: Field, entries: &[(usize, i64)]) -> SparseVec {
    SparseVec::from_entries(
        entries
            .iter()
            .map(|(i, n)| (*i, field.integer(*n)))
            .collect(),
    )
}

/// The ground field as a one-dimensional algebra.
pub fn ground(field: Field) -> Algebra {
    Algebra::new(
        "k",
        field,
        sv(field, &[(0, 1)]),
        vec![sv(field, &[(0, 1)])],
        vec!["1".into()],
    )
    .unwrap()
}

/// k[x]/(x²), basis {1, x}.
pub fn dual_numbers(field: Field) -> Algebra {
    let one = sv(field, &[(0, 1)]);
    let x = sv(field, &[(1, 1)]);
    let zero = SparseVec::new();
    Algebra::new(
        "k[x]/(x^2)",
        field,
        one.clone(),
        vec![one, x.clone(), x, zero],
        vec!["1".into(), "x".into()],
    )
    .unwrap()
}

/// k × k, basis of orthogonal idempotents {e1, e2}; the unit is e1 + e2.
pub fn split_pair(field: Field) -> Algebra {
    let e1 = sv(field, &[(0, 1)]);
    let e2 = sv(field, &[(1, 1)]);
    let zero = SparseVec::new();
    Algebra::new(
        "k x k",
        field,
        sv(field, &[(0, 1), (1, 1)]),
        vec![e1, zero.clone(), zero, e2],
        vec!["e1".into(), "e2".into()],
    )
    .unwrap()
}

/// 2×2 matrices over k, basis {E11, E12, E21, E22} with index 2·row + col;
/// the unit is E11 + E22.
pub fn mat2(field: Field) -> Algebra {
    let mut mul = Vec::with_capacity(16);
    for r in 0..2usize {
        for c in 0..2usize {
            for r2 in 0..2usize {
                for c2 in 0..2usize {
                    mul.push(if c == r2 {
                        sv(field, &[(2 * r + c2, 1)])
                    } else {
                        SparseVec::new()
                    });
                }
            }
        }
    }
    Algebra::new(
        "M2(k)",
        field,
        sv(field, &[(0, 1), (3, 1)]),
        mul,
        vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()],
    )
    .unwrap()
}

/// The identity morphism of a commutative algebra.
pub fn eps_identity(a: &Algebra) -> AlgebraMorphism {
    AlgebraMorphism::new(a.clone(), a.clone(), Matrix::identity(a.dim(), a.field())).unwrap()
}

/// k×k → k[x]/(x²): e1 ↦ 1, e2 ↦ 0.
pub fn eps_split_to_dual(field: Field) -> AlgebraMorphism {
    let cols = vec![sv(field, &[(0, 1)]), SparseVec::new()];
    AlgebraMorphism::new(
        split_pair(field),
        dual_numbers(field),
        Matrix::from_columns(2, field, cols),
    )
    .unwrap()
}

/// k[x]/(x²) → k×k: 1 ↦ e1 + e2, x ↦ 0.
pub fn eps_dual_to_split(field: Field) -> AlgebraMorphism {
    let cols = vec![sv(field, &[(0, 1), (1, 1)]), SparseVec::new()];
    AlgebraMorphism::new(
        dual_numbers(field),
        split_pair(field),
        Matrix::from_columns(2, field, cols),
    )
    .unwrap()
}

/// k → A, the unit inclusion; its image is always central.
pub fn eps_from_ground(a: &Algebra) -> AlgebraMorphism {
    AlgebraMorphism::new(
        ground(a.field()),
        a.clone(),
        Matrix::from_columns(a.dim(), a.field(), vec![a.unit().clone()]),
    )
    .unwrap()
}
