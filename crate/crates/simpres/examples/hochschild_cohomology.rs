//! Hochschild cohomology via the hom-side pipeline: cochain dimensions and
//! Betti numbers for the dual numbers and the 2x2 matrix algebra, checked
//! against the dimension-counting oracle. Degree 0 is the center of the
//! algebra, degree 1 the outer derivations.

use simpres::algebra::{Algebra, Bimodule};
use simpres::complexes::{hom_over, to_cochain_complex};
use simpres::oracles::classical_hochschild_cobetti;
use simpres::presets;
use simpres::scalar::Field;
use simpres::simplicial::{bar_module, constant_cosimplicial_module, env_algebra};

fn cohomology_table(a: &Algebra, up_to: usize) {
    let env = env_algebra(a);
    let coefficients = constant_cosimplicial_module(&Bimodule::regular(a), &env).unwrap();
    let bar = bar_module(a);
    let levels = hom_over(&bar, &coefficients, up_to + 1).unwrap();
    let complex = to_cochain_complex(&levels);
    let betti = complex.betti_through(up_to).unwrap();
    let oracle = classical_hochschild_cobetti(a, &Bimodule::regular(a), up_to);

    println!("{} with regular coefficients", a.name());
    println!("  cochain dims {:?}", &levels.level_dims()[..=up_to]);
    println!("  betti        {betti:?}");
    println!("  oracle       {oracle:?}");
    println!("  center has dimension {}", betti[0]);
    if betti.len() > 1 {
        println!("  outer derivations have dimension {}", betti[1]);
    }
    println!(
        "  agreement    {}",
        if betti == oracle { "exact" } else { "MISMATCH" }
    );
    println!();
}

fn main() {
    cohomology_table(&presets::dual_numbers(Field::Q), 3);
    cohomology_table(&presets::mat2(Field::Q), 2);
}
