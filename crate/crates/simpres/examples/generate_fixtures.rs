//! Regenerates the bundled JSON fixtures under `fixtures/` (or a directory
//! given as the first argument): preset algebras over several fields,
//! triples with each ε preset, an explicit coefficient bimodule,
//! homotopy-equivalence instances, and two deliberately broken documents.
//!
//!     cargo run -p simpres --example generate_fixtures [-- <dir>]

use std::collections::BTreeMap;
use std::path::PathBuf;

use simpres::cli::{
    algebra_def, bimodule_def, matrix_def, AlgebraDef, FieldSpec, HomotopyDef, InputDocument,
    MatrixDef, TripleDef,
};
use simpres::algebra::{AlgebraMorphism, Bimodule};
use simpres::homotopy::{identity_morphism, reflexive_homotopy, scaled_identity};
use simpres::presets;
use simpres::scalar::Field;
use simpres::simplicial::{bar_module, secondary_bar_module, SimplicialModule};

fn single(fixture: &str, field: FieldSpec, def: AlgebraDef) -> InputDocument {
    let mut algebras = BTreeMap::new();
    algebras.insert("A".to_string(), def);
    InputDocument {
        fixture: Some(fixture.to_string()),
        field,
        algebras,
        triple: None,
        bimodule: None,
        homotopy: None,
    }
}

fn with_triple(fixture: &str, a: AlgebraDef, b: AlgebraDef, eps: &AlgebraMorphism) -> InputDocument {
    let mut algebras = BTreeMap::new();
    algebras.insert("A".to_string(), a);
    algebras.insert("B".to_string(), b);
    InputDocument {
        fixture: Some(fixture.to_string()),
        field: FieldSpec::Name("Q".into()),
        algebras,
        triple: Some(TripleDef {
            a: "A".into(),
            b: "B".into(),
            epsilon: matrix_def(eps.matrix()),
        }),
        bimodule: None,
        homotopy: None,
    }
}

/// f = g = c·id, contracted both ways by the reflexive homotopy on the
/// identity, truncated to the declared degree.
fn scaled_instance(bar: &SimplicialModule, c: i64, max_degree: usize) -> HomotopyDef {
    let field = bar.field();
    let f = scaled_identity(bar, &field.integer(c), max_degree + 1);
    let g = scaled_identity(bar, &field.integer(c).inv(), max_degree + 1);
    let refl = reflexive_homotopy(&identity_morphism(bar, max_degree + 1));
    let slots: Vec<Vec<MatrixDef>> = refl.maps()[..=max_degree]
        .iter()
        .map(|level| level.iter().map(matrix_def).collect())
        .collect();
    HomotopyDef {
        max_degree,
        f: f.maps().iter().map(matrix_def).collect(),
        g: g.maps().iter().map(matrix_def).collect(),
        h: slots.clone(),
        t: slots,
    }
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixtures"));
    std::fs::create_dir_all(&dir).expect("create fixture directory");
    let write = |doc: &InputDocument| {
        let name = doc.fixture.clone().unwrap();
        let path = dir.join(format!("{name}.json"));
        let text = serde_json::to_string_pretty(doc).unwrap();
        std::fs::write(&path, text + "\n").unwrap();
        println!("wrote {}", path.display());
    };

    let q = || FieldSpec::Name("Q".into());
    let dual = presets::dual_numbers(Field::Q);
    let split = presets::split_pair(Field::Q);

    write(&single("kx2_q", q(), algebra_def(&dual)));
    write(&single("kxk_q", q(), algebra_def(&split)));
    write(&single("m2_q", q(), algebra_def(&presets::mat2(Field::Q))));
    write(&single(
        "kx2_f2",
        FieldSpec::Fp { p: 2 },
        algebra_def(&presets::dual_numbers(Field::fp(2).unwrap())),
    ));
    write(&single(
        "kx2_f5",
        FieldSpec::Fp { p: 5 },
        algebra_def(&presets::dual_numbers(Field::fp(5).unwrap())),
    ));

    write(&with_triple(
        "secondary_dual_q",
        algebra_def(&dual),
        algebra_def(&dual),
        &presets::eps_identity(&dual),
    ));
    write(&with_triple(
        "secondary_mixed_q",
        algebra_def(&dual),
        algebra_def(&split),
        &presets::eps_split_to_dual(Field::Q),
    ));
    let ground = presets::ground(Field::Q);
    write(&with_triple(
        "secondary_ground_q",
        algebra_def(&dual),
        algebra_def(&ground),
        &presets::eps_from_ground(&dual),
    ));

    // the regular bimodule spelled out as explicit action matrices, so the
    // custom-coefficients path can be compared against the regular one
    let mut bimodule_doc = single("bimodule_q", q(), algebra_def(&dual));
    bimodule_doc.bimodule = Some(bimodule_def(&Bimodule::regular(&dual), "A"));
    write(&bimodule_doc);

    let bar = bar_module(&dual);
    let mut identity_doc = single("homotopy_identity_q", q(), algebra_def(&dual));
    identity_doc.homotopy = Some(scaled_instance(&bar, 1, 1));
    write(&identity_doc);

    let mut scaled_doc = single("homotopy_scaled_q", q(), algebra_def(&dual));
    scaled_doc.homotopy = Some(scaled_instance(&bar, 2, 1));
    write(&scaled_doc);

    let mut fault_doc = single("homotopy_fault_q", q(), algebra_def(&dual));
    let mut faulty = scaled_instance(&bar, 1, 1);
    faulty.h[1][0][0][0] = "7".into();
    fault_doc.homotopy = Some(faulty);
    write(&fault_doc);

    let sbar = secondary_bar_module(&dual, &ground, &presets::eps_from_ground(&dual)).unwrap();
    let mut secondary_doc = with_triple(
        "homotopy_secondary_q",
        algebra_def(&dual),
        algebra_def(&ground),
        &presets::eps_from_ground(&dual),
    );
    secondary_doc.homotopy = Some(scaled_instance(&sbar, 1, 1));
    write(&secondary_doc);

    // 1·x = 1 breaks associativity: (x·1)·x = 0 but x·(1·x) = x
    let mut bad_assoc = single("bad_assoc_q", q(), algebra_def(&dual));
    bad_assoc.algebras.get_mut("A").unwrap().mul[0][1] = vec!["1".into(), "0".into()];
    write(&bad_assoc);

    let mut bad_scalar = single("bad_scalar_q", q(), algebra_def(&dual));
    bad_scalar.algebras.get_mut("A").unwrap().unit[0] = "1/0".into();
    write(&bad_scalar);
}
