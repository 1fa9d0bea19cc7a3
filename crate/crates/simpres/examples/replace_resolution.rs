//! Replacing a resolution along a homotopy equivalence and verifying,
//! degree by degree, that the replacement is sound: the morphisms descend
//! to the quotient complexes, the lifted homotopies satisfy the chain
//! homotopy identity, and homology is carried across unchanged. A corrupted
//! homotopy at the end shows the verifier locating the damage.

use simpres::algebra::Bimodule;
use simpres::homotopy::{
    identity_morphism, reflexive_homotopy, scaled_equivalence, verify_replacement,
    verify_replacement_cohomology, HomotopyEquivalence, PresimplicialHomotopy,
};
use simpres::linalg::Matrix;
use simpres::presets;
use simpres::scalar::Field;
use simpres::simplicial::{
    bar_module, coefficient_right_module, constant_cosimplicial_module, env_algebra,
};

fn main() {
    let dual = presets::dual_numbers(Field::Q);
    let env = env_algebra(&dual);
    let bar = bar_module(&dual);
    let coefficients = coefficient_right_module(&Bimodule::regular(&dual), &env).unwrap();

    // scaling by 2 is a self-equivalence of the resolution with inverse 1/2
    let eq = scaled_equivalence(&bar, &Field::Q.integer(2), 3);
    let outcome = verify_replacement(&coefficients, &eq, 2).unwrap();
    println!("{}", outcome.report);
    println!("  source betti {:?}", outcome.source_betti);
    println!("  target betti {:?}", outcome.target_betti);

    let cosimplicial =
        constant_cosimplicial_module(&Bimodule::regular(&dual), &env).unwrap();
    let outcome = verify_replacement_cohomology(
        &cosimplicial,
        &scaled_equivalence(&bar, &Field::Q.integer(2), 3),
        2,
    )
    .unwrap();
    println!("\n{}", outcome.report);
    println!("  source betti {:?}", outcome.source_betti);
    println!("  target betti {:?}", outcome.target_betti);

    // corrupt one entry of one homotopy component and watch it get caught
    let id = identity_morphism(&bar, 3);
    let good = reflexive_homotopy(&id);
    let mut maps = good.maps().to_vec();
    let mut dense = vec![vec![Field::Q.zero(); bar.level_dim(1)]; bar.level_dim(2)];
    dense[0][0] = Field::Q.one();
    maps[1][0] = maps[1][0].add(&Matrix::from_rows(Field::Q, &dense));
    let bad =
        PresimplicialHomotopy::new("corrupted", good.from().clone(), good.to().clone(), maps)
            .unwrap();
    let eq = HomotopyEquivalence::new(id.clone(), id, bad, good).unwrap();
    let outcome = verify_replacement(&coefficients, &eq, 2).unwrap();
    println!("\nafter corrupting one homotopy entry:");
    println!("{}", outcome.report);
}
