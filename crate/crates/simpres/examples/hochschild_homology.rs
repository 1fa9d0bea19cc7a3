//! Hochschild homology of three small algebras over Q, plus one algebra
//! built from scratch, each cross-checked against the dimension-counting
//! oracle.

use simpres::algebra::{Algebra, Bimodule};
use simpres::complexes::{tensor_over, to_chain_complex};
use simpres::linalg::SparseVec;
use simpres::oracles::classical_hochschild_betti;
use simpres::presets;
use simpres::scalar::Field;
use simpres::simplicial::{bar_module, coefficient_right_module, env_algebra};

fn homology_table(a: &Algebra, up_to: usize) {
    let env = env_algebra(a);
    let coefficients = coefficient_right_module(&Bimodule::regular(a), &env).unwrap();
    let bar = bar_module(a);
    let levels = tensor_over(&coefficients, &bar, up_to + 1).unwrap();
    let complex = to_chain_complex(&levels);
    let betti = complex.betti_through(up_to).unwrap();
    let oracle = classical_hochschild_betti(a, &Bimodule::regular(a), up_to);

    println!("{} (dim {}) with regular coefficients", a.name(), a.dim());
    println!("  chain dims  {:?}", &levels.quotient_dims()[..=up_to]);
    println!("  betti       {betti:?}");
    println!("  oracle      {oracle:?}");
    println!(
        "  agreement   {}",
        if betti == oracle { "exact" } else { "MISMATCH" }
    );
    println!();
}

fn truncated_cubic(field: Field) -> Algebra {
    // k[x]/(x^3) with basis {1, x, x^2}: e_i * e_j = e_{i+j}, zero past x^2
    let dim = 3;
    let mut mul = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            mul.push(if i + j < dim {
                SparseVec::unit(i + j, field)
            } else {
                SparseVec::new()
            });
        }
    }
    Algebra::new(
        "k[x]/(x^3)",
        field,
        SparseVec::unit(0, field),
        mul,
        vec!["1".into(), "x".into(), "x^2".into()],
    )
    .unwrap()
}

fn main() {
    homology_table(&presets::dual_numbers(Field::Q), 4);
    homology_table(&presets::split_pair(Field::Q), 4);
    homology_table(&presets::mat2(Field::Q), 2);

    let cubic = truncated_cubic(Field::Q);
    assert!(cubic.validate().ok());
    homology_table(&cubic, 3);
}
