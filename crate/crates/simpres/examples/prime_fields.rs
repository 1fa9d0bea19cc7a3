//! The same computation over different scalars: Hochschild homology of the
//! dual numbers over Q, F_2, and F_5. In characteristic 2 the Betti numbers
//! jump because 2x = 0 kills the boundary terms that otherwise cancel.

use simpres::algebra::Bimodule;
use simpres::complexes::{tensor_over, to_chain_complex};
use simpres::presets;
use simpres::scalar::Field;
use simpres::simplicial::{bar_module, coefficient_right_module, env_algebra};

fn betti_over(field: Field, up_to: usize) -> Vec<usize> {
    let dual = presets::dual_numbers(field);
    let env = env_algebra(&dual);
    let coefficients = coefficient_right_module(&Bimodule::regular(&dual), &env).unwrap();
    let levels = tensor_over(&coefficients, &bar_module(&dual), up_to + 1).unwrap();
    to_chain_complex(&levels).betti_through(up_to).unwrap()
}

fn main() {
    for field in [Field::Q, Field::fp(2).unwrap(), Field::fp(5).unwrap()] {
        println!("{field}: betti {:?}", betti_over(field, 4));
    }

    println!();
    match Field::fp(6) {
        Err(e) => println!("F_6 is refused: {e}"),
        Ok(_) => println!("F_6 was unexpectedly accepted"),
    }

    // residues reduce on entry, including negative ones
    let f5 = Field::fp(5).unwrap();
    println!("over {f5}: -3 = {}, 12 = {}", f5.integer(-3), f5.integer(12));
}
