//! The mechanical law checkers: simplicial identities, levelwise algebra
//! morphisms, module/action compatibility, and action associativity, run
//! over classical and secondary structures. A deliberately broken bimodule
//! at the end shows what a failing report looks like.

use simpres::algebra::Bimodule;
use simpres::linalg::Matrix;
use simpres::presets;
use simpres::scalar::Field;
use simpres::simplicial::{
    bar_module, check_action_associativity, check_level_morphisms, check_module_compatibility,
    check_simplicial_identities, coefficient_right_module, env_algebra, secondary_algebra,
    secondary_bar_module,
};

fn main() {
    let dual = presets::dual_numbers(Field::Q);
    println!("algebra laws: {}", dual.validate());

    let env = env_algebra(&dual);
    let bar = bar_module(&dual);
    let coefficients = coefficient_right_module(&Bimodule::regular(&dual), &env).unwrap();

    println!("{}", check_simplicial_identities(&env, 4));
    println!("{}", check_level_morphisms(&env, 4));
    println!("{}", check_simplicial_identities(&bar, 4));
    println!("{}", check_module_compatibility(&bar, 4));
    println!("{}", check_module_compatibility(&coefficients, 4));
    for n in 0..=3 {
        println!("{}", check_action_associativity(&bar, n));
    }

    let split = presets::split_pair(Field::Q);
    let eps = presets::eps_split_to_dual(Field::Q);
    let alg = secondary_algebra(&dual, &split, &eps).unwrap();
    let sbar = secondary_bar_module(&dual, &split, &eps).unwrap();
    println!("{}", check_simplicial_identities(&alg, 2));
    println!("{}", check_level_morphisms(&alg, 2));
    println!("{}", check_simplicial_identities(&sbar, 2));
    println!("{}", check_module_compatibility(&sbar, 2));

    // break the regular bimodule: acting by x on the right through the
    // identity matrix contradicts x^2 = 0
    let field = Field::Q;
    let regular = Bimodule::regular(&dual);
    let left = vec![
        regular.left_action(0).clone(),
        regular.left_action(1).clone(),
    ];
    let right = vec![
        regular.right_action(0).clone(),
        Matrix::identity(2, field),
    ];
    let broken = Bimodule::new("broken", field, 2, left, right).unwrap();
    println!("\na broken module fails loudly:");
    println!("{}", broken.validate(&dual));
}
