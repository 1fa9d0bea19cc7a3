//! Presimplicial morphisms and homotopies between them: the reflexive,
//! symmetric, and transitive constructions, each run through the full law
//! checker, plus the error a mismatched composition produces.

use simpres::homotopy::{
    check_homotopy, check_morphism, identity_morphism, reflexive_homotopy, scaled_identity,
    symmetric_homotopy, transitive_homotopy, zero_morphism,
};
use simpres::presets;
use simpres::scalar::Field;
use simpres::simplicial::bar_module;

fn main() {
    let bar = bar_module(&presets::dual_numbers(Field::Q));
    let depth = 3;

    let id = identity_morphism(&bar, depth);
    let double = scaled_identity(&bar, &Field::Q.integer(2), depth);
    let zero = zero_morphism(&bar, &bar, depth).unwrap();
    for f in [&id, &double, &zero] {
        println!("{}", check_morphism(f, depth));
    }

    let h = reflexive_homotopy(&double);
    println!("{}", check_homotopy(&h, depth));

    let s = symmetric_homotopy(&h);
    println!("{}", check_homotopy(&s, depth));
    assert_eq!(symmetric_homotopy(&s), h, "symmetry is an involution");

    let t = transitive_homotopy(&h, &reflexive_homotopy(&double)).unwrap();
    println!("{}", check_homotopy(&t, depth));
    assert_eq!(t, h, "splicing against a reflexive homotopy changes nothing");

    println!("\nhomotopies only compose end to end:");
    match transitive_homotopy(&reflexive_homotopy(&id), &reflexive_homotopy(&double)) {
        Err(e) => println!("  {e}"),
        Ok(_) => println!("  unexpectedly composed"),
    }
}
