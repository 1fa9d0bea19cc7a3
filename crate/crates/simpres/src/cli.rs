//! JSON input documents, deterministic TSV / JSON result tables, and the
//! command bodies behind the `simpres` binary.
//!
//! Scalars travel as exact strings (`"3/7"` over the rationals, plain
//! integers over a prime field) — never floats. All maps are ordered and all
//! output is byte-deterministic except the `wall_ms` metadata field, which
//! golden-file comparisons exclude.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_symmetric_action, Algebra, AlgebraMorphism, Bimodule};
use crate::complexes::{hom_over, tensor_over, to_chain_complex, to_cochain_complex};
use crate::homotopy::{
    compose_morphisms, identity_morphism, verify_replacement, HomotopyEquivalence,
    PresimplicialHomotopy, PresimplicialMorphism,
};
use crate::linalg::{Matrix, SparseVec};
use crate::oracles;
use crate::report::CheckReport;
use crate::scalar::Field;
use crate::simplicial::{
    bar_module, check_level_morphisms, check_module_compatibility, check_simplicial_identities,
    coefficient_right_module, constant_cosimplicial_module, env_algebra, secondary_algebra,
    secondary_bar_module, SimplicialModule,
};
use crate::Error;

/// Which (co)homology theory a command computes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Theory {
    Hochschild,
    Secondary,
}

impl std::fmt::Display for Theory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Theory::Hochschild => write!(f, "hochschild"),
            Theory::Secondary => write!(f, "secondary"),
        }
    }
}

/// Which coefficient bimodule a command uses: the algebra acting on itself,
/// or the `bimodule` entry of the document.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum CoefficientChoice {
    Regular,
    Custom,
}

impl std::fmt::Display for CoefficientChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoefficientChoice::Regular => write!(f, "regular"),
            CoefficientChoice::Custom => write!(f, "custom"),
        }
    }
}

/// A dense matrix as nested arrays of exact scalar strings, row-major.
pub type MatrixDef = Vec<Vec<String>>;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Fp { #[serde(rename = "Fp")] p: u64 },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDef {
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    /// `mul[i][j]` is the dense coefficient vector of the product of basis
    /// elements i and j.
    pub mul: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDef {
    pub a: String,
    pub b: String,
    /// dim A × dim B matrix of the morphism B → A.
    pub epsilon: MatrixDef,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDef {
    pub over: String,
    pub dim: usize,
    /// `left[i]` is the matrix of `m ↦ e_i·m`.
    pub left: Vec<MatrixDef>,
    /// `right[i]` is the matrix of `m ↦ m·e_i`.
    pub right: Vec<MatrixDef>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyDef {
    pub max_degree: usize,
    /// Forward morphism, one square matrix per degree 0..=max_degree+1.
    pub f: Vec<MatrixDef>,
    /// Backward morphism, same shape as `f`.
    pub g: Vec<MatrixDef>,
    /// Homotopy from g∘f to the identity: `h[n]` holds n+1 matrices,
    /// each level_dim(n+1) × level_dim(n), for n 0..=max_degree.
    pub h: Vec<Vec<MatrixDef>>,
    /// Homotopy from f∘g to the identity, same shape as `h`.
    pub t: Vec<Vec<MatrixDef>>,
}

/// One self-contained problem statement: a field, algebras by structure
/// constants, and optionally a triple (A, B, ε), a coefficient bimodule,
/// and a homotopy-equivalence instance.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    pub field: FieldSpec,
    pub algebras: BTreeMap<String, AlgebraDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<TripleDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<BimoduleDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homotopy: Option<HomotopyDef>,
}

fn parse_vector(
    field: Field,
    entries: &[String],
    dim: usize,
    context: &str,
) -> Result<SparseVec, Error> {
    if entries.len() != dim {
        return Err(Error::DimensionMismatch {
            context: context.to_string(),
            expected: dim,
            found: entries.len(),
        });
    }
    let mut scalars = Vec::with_capacity(dim);
    for s in entries {
        scalars.push(field.parse(s)?);
    }
    Ok(SparseVec::from_dense(&scalars))
}

fn parse_matrix(
    field: Field,
    rows: &[Vec<String>],
    expect_rows: usize,
    expect_cols: usize,
    context: &str,
) -> Result<Matrix, Error> {
    if rows.len() != expect_rows {
        return Err(Error::DimensionMismatch {
            context: format!("row count of {context}"),
            expected: expect_rows,
            found: rows.len(),
        });
    }
    let mut parsed = Vec::with_capacity(expect_rows);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != expect_cols {
            return Err(Error::DimensionMismatch {
                context: format!("row {r} of {context}"),
                expected: expect_cols,
                found: row.len(),
            });
        }
        let mut scalars = Vec::with_capacity(expect_cols);
        for s in row {
            scalars.push(field.parse(s)?);
        }
        parsed.push(scalars);
    }
    Ok(Matrix::from_rows(field, &parsed))
}

impl InputDocument {
    pub fn from_path(path: &Path) -> Result<InputDocument, Error> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn fixture_name(&self) -> &str {
        self.fixture.as_deref().unwrap_or("unnamed")
    }

    pub fn field(&self) -> Result<Field, Error> {
        match &self.field {
            FieldSpec::Name(s) if s == "Q" => Ok(Field::Q),
            FieldSpec::Name(s) => Err(Error::Parse(format!(
                "unknown field '{s}' (expected \"Q\" or {{\"Fp\": p}})"
            ))),
            FieldSpec::Fp { p } => Field::fp(*p),
        }
    }

    pub fn algebra(&self, name: &str) -> Result<Algebra, Error> {
        let field = self.field()?;
        let def = self
            .algebras
            .get(name)
            .ok_or_else(|| Error::Parse(format!("document defines no algebra named '{name}'")))?;
        let dim = def.labels.len();
        let unit = parse_vector(field, &def.unit, dim, &format!("unit of '{name}'"))?;
        if def.mul.len() != dim {
            return Err(Error::DimensionMismatch {
                context: format!("multiplication table of '{name}'"),
                expected: dim,
                found: def.mul.len(),
            });
        }
        let mut mul = Vec::with_capacity(dim * dim);
        for (i, row) in def.mul.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: format!("row {i} of the multiplication table of '{name}'"),
                    expected: dim,
                    found: row.len(),
                });
            }
            for (j, entry) in row.iter().enumerate() {
                mul.push(parse_vector(
                    field,
                    entry,
                    dim,
                    &format!("product e_{i}·e_{j} in '{name}'"),
                )?);
            }
        }
        Algebra::new(name, field, unit, mul, def.labels.clone())
    }

    /// The algebra classical commands run over: the `a` of the triple when
    /// one is present, otherwise the document's single algebra.
    pub fn default_algebra(&self) -> Result<Algebra, Error> {
        if let Some(t) = &self.triple {
            return self.algebra(&t.a);
        }
        if self.algebras.len() == 1 {
            return self.algebra(self.algebras.keys().next().unwrap());
        }
        Err(Error::Parse(
            "several algebras and no triple; cannot choose one".into(),
        ))
    }

    pub fn triple_parts(&self) -> Result<(Algebra, Algebra, AlgebraMorphism), Error> {
        let t = self
            .triple
            .as_ref()
            .ok_or_else(|| Error::Parse("document defines no triple".into()))?;
        let a = self.algebra(&t.a)?;
        let b = self.algebra(&t.b)?;
        let field = self.field()?;
        let matrix = parse_matrix(field, &t.epsilon, a.dim(), b.dim(), "epsilon")?;
        let eps = AlgebraMorphism::new(b.clone(), a.clone(), matrix)?;
        Ok((a, b, eps))
    }

    pub fn custom_bimodule(&self, over: &Algebra) -> Result<Bimodule, Error> {
        let def = self
            .bimodule
            .as_ref()
            .ok_or_else(|| Error::Parse("document defines no bimodule".into()))?;
        if def.over != over.name() {
            return Err(Error::Parse(format!(
                "bimodule is over '{}' but the command runs over '{}'",
                def.over,
                over.name()
            )));
        }
        let field = self.field()?;
        if def.left.len() != over.dim() || def.right.len() != over.dim() {
            return Err(Error::DimensionMismatch {
                context: "action matrix count of the bimodule".into(),
                expected: over.dim(),
                found: def.left.len().min(def.right.len()),
            });
        }
        let parse_actions = |defs: &[MatrixDef], side: &str| -> Result<Vec<Matrix>, Error> {
            defs.iter()
                .enumerate()
                .map(|(i, m)| {
                    parse_matrix(field, m, def.dim, def.dim, &format!("{side} action of e_{i}"))
                })
                .collect()
        };
        Bimodule::new(
            format!("M over {}", over.name()),
            field,
            def.dim,
            parse_actions(&def.left, "left")?,
            parse_actions(&def.right, "right")?,
        )
    }

    pub fn coefficients(
        &self,
        over: &Algebra,
        choice: CoefficientChoice,
    ) -> Result<Bimodule, Error> {
        match choice {
            CoefficientChoice::Regular => Ok(Bimodule::regular(over)),
            CoefficientChoice::Custom => self.custom_bimodule(over),
        }
    }

    /// Custom coefficients when the document bundles them, the regular
    /// bimodule otherwise.
    pub fn coefficients_auto(&self, over: &Algebra) -> Result<Bimodule, Error> {
        if self.bimodule.is_some() {
            self.custom_bimodule(over)
        } else {
            Ok(Bimodule::regular(over))
        }
    }
}

/// Serializes a matrix as nested arrays of exact scalar strings.
pub fn matrix_def(m: &Matrix) -> MatrixDef {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.entry(r, c).to_string()).collect())
        .collect()
}

/// Serializes a vector densely as exact scalar strings.
pub fn vector_def(v: &SparseVec, dim: usize, field: Field) -> Vec<String> {
    let mut out = vec![field.zero().to_string(); dim];
    for (i, c) in v.iter() {
        out[*i] = c.to_string();
    }
    out
}

/// Serializes an algebra into the document format.
pub fn algebra_def(a: &Algebra) -> AlgebraDef {
    let dim = a.dim();
    AlgebraDef {
        labels: a.labels().to_vec(),
        unit: vector_def(a.unit(), dim, a.field()),
        mul: (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| vector_def(a.basis_product(i, j), dim, a.field()))
                    .collect()
            })
            .collect(),
    }
}

/// Serializes a bimodule into the document format.
pub fn bimodule_def(m: &Bimodule, over: &str) -> BimoduleDef {
    BimoduleDef {
        over: over.to_string(),
        dim: m.dim(),
        left: (0..m.dim()).map(|i| matrix_def(m.left_action(i))).collect(),
        right: (0..m.dim()).map(|i| matrix_def(m.right_action(i))).collect(),
    }
}

/// What a command hands back to `main`: everything already rendered, plus
/// the process exit status.
pub struct CommandResult {
    pub stdout: String,
    pub exit_code: i32,
}

fn run(body: impl FnOnce() -> Result<(String, i32), Error>) -> CommandResult {
    match body() {
        Ok((stdout, exit_code)) => CommandResult { stdout, exit_code },
        Err(e) => CommandResult {
            stdout: format!("error: {e}\n"),
            exit_code: e.exit_code(),
        },
    }
}

#[derive(Serialize)]
struct TableRow {
    degree: usize,
    dim: usize,
    betti: usize,
}

#[derive(Serialize)]
struct ResultTable {
    fixture: String,
    field: String,
    theory: String,
    coefficients: String,
    max_degree: usize,
    wall_ms: u128,
    rows: Vec<TableRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_agrees: Option<bool>,
}

impl ResultTable {
    fn tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# fixture\t{}", self.fixture);
        let _ = writeln!(out, "# field\t{}", self.field);
        let _ = writeln!(out, "# theory\t{}", self.theory);
        let _ = writeln!(out, "# coefficients\t{}", self.coefficients);
        let _ = writeln!(out, "# max_degree\t{}", self.max_degree);
        let _ = writeln!(out, "# wall_ms\t{}", self.wall_ms);
        let _ = writeln!(out, "degree\tdim\tbetti");
        for row in &self.rows {
            let _ = writeln!(out, "{}\t{}\t{}", row.degree, row.dim, row.betti);
        }
        if let Some(oracle) = &self.oracle {
            let _ = writeln!(out, "oracle_degree\toracle_betti");
            for (n, b) in oracle.iter().enumerate() {
                let _ = writeln!(out, "{n}\t{b}");
            }
            let _ = writeln!(
                out,
                "# oracle\t{}",
                if self.oracle_agrees == Some(true) {
                    "agrees"
                } else {
                    "MISMATCH"
                }
            );
        }
        out
    }

    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result table serializes");
        s.push('\n');
        s
    }

    fn render(&self, json: bool) -> String {
        if json {
            self.json()
        } else {
            self.tsv()
        }
    }
}

#[derive(Serialize)]
struct SubjectRow {
    subject: String,
    checked: u64,
    failed: u64,
}

#[derive(Serialize)]
struct ViolationRow {
    subject: String,
    law: String,
    location: String,
}

#[derive(Serialize)]
struct CheckTable {
    fixture: String,
    field: String,
    max_degree: usize,
    wall_ms: u128,
    subjects: Vec<SubjectRow>,
    violations: Vec<ViolationRow>,
    ok: bool,
}

impl CheckTable {
    fn from_reports(
        fixture: &str,
        field: Field,
        max_degree: usize,
        wall_ms: u128,
        reports: &[CheckReport],
    ) -> CheckTable {
        let subjects = reports
            .iter()
            .map(|r| SubjectRow {
                subject: r.subject.clone(),
                checked: r.checked,
                failed: r.failed,
            })
            .collect();
        let violations = reports
            .iter()
            .flat_map(|r| {
                r.violations.iter().map(|v| ViolationRow {
                    subject: r.subject.clone(),
                    law: v.law.clone(),
                    location: v.location.clone(),
                })
            })
            .collect();
        CheckTable {
            fixture: fixture.to_string(),
            field: field.to_string(),
            max_degree,
            wall_ms,
            subjects,
            violations,
            ok: reports.iter().all(|r| r.ok()),
        }
    }

    fn tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# fixture\t{}", self.fixture);
        let _ = writeln!(out, "# field\t{}", self.field);
        let _ = writeln!(out, "# max_degree\t{}", self.max_degree);
        let _ = writeln!(out, "# wall_ms\t{}", self.wall_ms);
        let _ = writeln!(out, "subject\tchecked\tfailed");
        for s in &self.subjects {
            let _ = writeln!(out, "{}\t{}\t{}", s.subject, s.checked, s.failed);
        }
        for v in &self.violations {
            let _ = writeln!(out, "violation\t{}\t{}\t{}", v.subject, v.law, v.location);
        }
        let _ = writeln!(out, "# result\t{}", if self.ok { "ok" } else { "FAILED" });
        out
    }

    fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("check table serializes");
            s.push('\n');
            s
        } else {
            self.tsv()
        }
    }
}

/// Validates everything the document defines: algebra laws, ε laws,
/// B-symmetry of coefficients, the simplicial identity suites, and module
/// compatibility, through the given degree. Exit 0 iff nothing fails.
pub fn cmd_check(path: &Path, max_degree: usize, json: bool) -> CommandResult {
    run(|| run_check(path, max_degree, json))
}

fn run_check(path: &Path, max_degree: usize, json: bool) -> Result<(String, i32), Error> {
    let start = Instant::now();
    let doc = InputDocument::from_path(path)?;
    let field = doc.field()?;
    let mut reports: Vec<CheckReport> = Vec::new();

    let mut algebras: BTreeMap<String, Algebra> = BTreeMap::new();
    for name in doc.algebras.keys() {
        let a = doc.algebra(name)?;
        reports.push(a.validate());
        algebras.insert(name.clone(), a);
    }

    for a in algebras.values() {
        let env = env_algebra(a);
        reports.push(check_simplicial_identities(&env, max_degree));
        reports.push(check_level_morphisms(&env, max_degree));
        let bar = bar_module(a);
        reports.push(check_simplicial_identities(&bar, max_degree));
        reports.push(check_module_compatibility(&bar, max_degree));
    }

    if doc.triple.is_some() {
        let (a, b, eps) = doc.triple_parts()?;
        let eps_report = eps.check();
        let eps_ok = eps_report.ok();
        reports.push(eps_report);
        if eps_ok {
            let salg = secondary_algebra(&a, &b, &eps)?;
            reports.push(check_simplicial_identities(&salg, max_degree));
            reports.push(check_level_morphisms(&salg, max_degree));
            let sbar = secondary_bar_module(&a, &b, &eps)?;
            reports.push(check_simplicial_identities(&sbar, max_degree));
            reports.push(check_module_compatibility(&sbar, max_degree));
            let m = doc.coefficients_auto(&a)?;
            reports.push(m.validate(&a));
            reports.push(check_symmetric_action(&m, &eps));
        }
    } else if doc.bimodule.is_some() {
        let a = doc.default_algebra()?;
        let m = doc.custom_bimodule(&a)?;
        reports.push(m.validate(&a));
    }

    let table = CheckTable::from_reports(
        doc.fixture_name(),
        field,
        max_degree,
        start.elapsed().as_millis(),
        &reports,
    );
    let exit = if table.ok { 0 } else { 1 };
    Ok((table.render(json), exit))
}

fn resolution_for(
    doc: &InputDocument,
    theory: Theory,
) -> Result<(Algebra, SimplicialModule), Error> {
    match theory {
        Theory::Hochschild => {
            let a = doc.default_algebra()?;
            let y = bar_module(&a);
            Ok((a, y))
        }
        Theory::Secondary => {
            let (a, b, eps) = doc.triple_parts()?;
            let y = secondary_bar_module(&a, &b, &eps)?;
            Ok((a, y))
        }
    }
}

/// Options shared by the homology and cohomology commands.
pub struct TableOptions {
    pub theory: Theory,
    pub coefficients: CoefficientChoice,
    pub max_degree: usize,
    pub oracle: bool,
    pub json: bool,
}

/// Betti numbers of the tensor-side pipeline, degrees 0..=max_degree.
/// With `oracle`, also prints the independent classical table and exits
/// nonzero on any mismatch.
pub fn cmd_homology(path: &Path, opts: &TableOptions) -> CommandResult {
    run(|| run_table(path, opts, false))
}

/// Betti numbers of the hom-side pipeline; otherwise like `cmd_homology`.
pub fn cmd_cohomology(path: &Path, opts: &TableOptions) -> CommandResult {
    run(|| run_table(path, opts, true))
}

fn run_table(path: &Path, opts: &TableOptions, cohomology: bool) -> Result<(String, i32), Error> {
    let start = Instant::now();
    let doc = InputDocument::from_path(path)?;
    let field = doc.field()?;
    if opts.oracle && opts.theory != Theory::Hochschild {
        return Err(Error::Parse(
            "--oracle needs --theory hochschild: there is no independent secondary oracle".into(),
        ));
    }
    let (a, y) = resolution_for(&doc, opts.theory)?;
    let m = doc.coefficients(&a, opts.coefficients)?;

    let (dims, betti) = if cohomology {
        let coeff = constant_cosimplicial_module(&m, y.over())?;
        let levels = hom_over(&y, &coeff, opts.max_degree + 1)?;
        let complex = to_cochain_complex(&levels);
        (
            levels.level_dims()[..=opts.max_degree].to_vec(),
            complex.betti_through(opts.max_degree)?,
        )
    } else {
        let coeff = coefficient_right_module(&m, y.over())?;
        let levels = tensor_over(&coeff, &y, opts.max_degree + 1)?;
        let complex = to_chain_complex(&levels);
        (
            levels.quotient_dims()[..=opts.max_degree].to_vec(),
            complex.betti_through(opts.max_degree)?,
        )
    };

    let (oracle, oracle_agrees) = if opts.oracle {
        let table = if cohomology {
            oracles::classical_hochschild_cobetti(&a, &m, opts.max_degree)
        } else {
            oracles::classical_hochschild_betti(&a, &m, opts.max_degree)
        };
        let agrees = table == betti;
        (Some(table), Some(agrees))
    } else {
        (None, None)
    };

    let rows = (0..=opts.max_degree)
        .map(|n| TableRow {
            degree: n,
            dim: dims[n],
            betti: betti[n],
        })
        .collect();
    let table = ResultTable {
        fixture: doc.fixture_name().to_string(),
        field: field.to_string(),
        theory: opts.theory.to_string(),
        coefficients: opts.coefficients.to_string(),
        max_degree: opts.max_degree,
        wall_ms: start.elapsed().as_millis(),
        rows,
        oracle,
        oracle_agrees,
    };
    let exit = if oracle_agrees == Some(false) { 1 } else { 0 };
    Ok((table.render(opts.json), exit))
}

#[derive(Serialize)]
struct HomotopyRow {
    degree: usize,
    source_betti: usize,
    target_betti: usize,
}

#[derive(Serialize)]
struct HomotopyTable {
    fixture: String,
    field: String,
    theory: String,
    max_degree: usize,
    wall_ms: u128,
    rows: Vec<HomotopyRow>,
    checked: u64,
    failed: u64,
    violations: Vec<ViolationRow>,
    ok: bool,
}

impl HomotopyTable {
    fn tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# fixture\t{}", self.fixture);
        let _ = writeln!(out, "# field\t{}", self.field);
        let _ = writeln!(out, "# theory\t{}", self.theory);
        let _ = writeln!(out, "# max_degree\t{}", self.max_degree);
        let _ = writeln!(out, "# wall_ms\t{}", self.wall_ms);
        let _ = writeln!(out, "degree\tsource_betti\ttarget_betti");
        for r in &self.rows {
            let _ = writeln!(out, "{}\t{}\t{}", r.degree, r.source_betti, r.target_betti);
        }
        let _ = writeln!(out, "# laws_checked\t{}", self.checked);
        let _ = writeln!(out, "# laws_failed\t{}", self.failed);
        for v in &self.violations {
            let _ = writeln!(out, "violation\t{}\t{}\t{}", v.subject, v.law, v.location);
        }
        let _ = writeln!(out, "# result\t{}", if self.ok { "ok" } else { "FAILED" });
        out
    }

    fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("homotopy table serializes");
            s.push('\n');
            s
        } else {
            self.tsv()
        }
    }
}

fn parse_self_morphism(
    field: Field,
    module: &SimplicialModule,
    defs: &[MatrixDef],
    name: &str,
) -> Result<PresimplicialMorphism, Error> {
    if defs.is_empty() {
        return Err(Error::Parse(format!("morphism {name} has no matrices")));
    }
    let maps = defs
        .iter()
        .enumerate()
        .map(|(n, def)| {
            parse_matrix(
                field,
                def,
                module.level_dim(n),
                module.level_dim(n),
                &format!("degree-{n} matrix of {name}"),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    PresimplicialMorphism::new(name, module.clone(), module.clone(), maps)
}

fn parse_contraction(
    field: Field,
    module: &SimplicialModule,
    defs: &[Vec<MatrixDef>],
    from: PresimplicialMorphism,
    name: &str,
) -> Result<PresimplicialHomotopy, Error> {
    if defs.is_empty() {
        return Err(Error::Parse(format!("homotopy {name} has no matrices")));
    }
    let mut maps = Vec::with_capacity(defs.len());
    for (n, at_level) in defs.iter().enumerate() {
        let mut level = Vec::with_capacity(at_level.len());
        for (i, def) in at_level.iter().enumerate() {
            level.push(parse_matrix(
                field,
                def,
                module.level_dim(n + 1),
                module.level_dim(n),
                &format!("slot {i} of {name} at degree {n}"),
            )?);
        }
        maps.push(level);
    }
    let to = identity_morphism(module, from.built_degree());
    PresimplicialHomotopy::new(name, from, to, maps)
}

/// Runs the full replacement verification on the document's bundled
/// homotopy-equivalence instance. Exit 0 iff every law holds and the Betti
/// tables agree.
pub fn cmd_homotopy_verify(
    path: &Path,
    theory: Theory,
    max_degree: Option<usize>,
    json: bool,
) -> CommandResult {
    run(|| run_homotopy_verify(path, theory, max_degree, json))
}

fn run_homotopy_verify(
    path: &Path,
    theory: Theory,
    max_degree: Option<usize>,
    json: bool,
) -> Result<(String, i32), Error> {
    let start = Instant::now();
    let doc = InputDocument::from_path(path)?;
    let field = doc.field()?;
    let (a, y) = resolution_for(&doc, theory)?;
    let def = doc
        .homotopy
        .as_ref()
        .ok_or_else(|| Error::Parse("document has no homotopy instance".into()))?;
    let up_to = max_degree.unwrap_or(def.max_degree);

    let f = parse_self_morphism(field, &y, &def.f, "f")?;
    let g = parse_self_morphism(field, &y, &def.g, "g")?;
    let h = parse_contraction(field, &y, &def.h, compose_morphisms(&g, &f)?, "h")?;
    let t = parse_contraction(field, &y, &def.t, compose_morphisms(&f, &g)?, "t")?;
    let eq = HomotopyEquivalence::new(f, g, h, t)?;

    let m = doc.coefficients_auto(&a)?;
    let coeff = coefficient_right_module(&m, y.over())?;
    let outcome = verify_replacement(&coeff, &eq, up_to)?;

    let rows = (0..=up_to)
        .map(|n| HomotopyRow {
            degree: n,
            source_betti: outcome.source_betti[n],
            target_betti: outcome.target_betti[n],
        })
        .collect();
    let violations = outcome
        .report
        .violations
        .iter()
        .map(|v| ViolationRow {
            subject: outcome.report.subject.clone(),
            law: v.law.clone(),
            location: v.location.clone(),
        })
        .collect();
    let ok = outcome.report.ok();
    let table = HomotopyTable {
        fixture: doc.fixture_name().to_string(),
        field: field.to_string(),
        theory: theory.to_string(),
        max_degree: up_to,
        wall_ms: start.elapsed().as_millis(),
        rows,
        checked: outcome.report.checked,
        failed: outcome.report.failed,
        violations,
        ok,
    };
    Ok((table.render(json), if ok { 0 } else { 1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use std::io::Write as _;

    fn write_doc(doc: &InputDocument) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        let text = serde_json::to_string_pretty(doc).unwrap();
        file.write_all(text.as_bytes()).unwrap();
        file.flush().unwrap();
        file
    }

    fn dual_numbers_doc() -> InputDocument {
        let a = presets::dual_numbers(Field::Q);
        let mut algebras = BTreeMap::new();
        algebras.insert("A".to_string(), algebra_def(&a));
        InputDocument {
            fixture: Some("kx2_q".into()),
            field: FieldSpec::Name("Q".into()),
            algebras,
            triple: None,
            bimodule: None,
            homotopy: None,
        }
    }

    #[test]
    fn roundtrip_algebra_through_json() {
        let doc = dual_numbers_doc();
        let text = serde_json::to_string(&doc).unwrap();
        let back: InputDocument = serde_json::from_str(&text).unwrap();
        let a = back.algebra("A").unwrap();
        assert!(a.validate().ok());
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn check_passes_on_a_valid_document() {
        let file = write_doc(&dual_numbers_doc());
        let result = cmd_check(file.path(), 2, false);
        assert_eq!(result.exit_code, 0, "{}", result.stdout);
        assert!(result.stdout.contains("# result\tok"));
    }

    #[test]
    fn check_locates_broken_associativity() {
        let mut doc = dual_numbers_doc();
        // 1·x = 1 makes (x·1)·x = 0 but x·(1·x) = x
        doc.algebras.get_mut("A").unwrap().mul[0][1] = vec!["1".into(), "0".into()];
        let file = write_doc(&doc);
        let result = cmd_check(file.path(), 2, false);
        assert_eq!(result.exit_code, 1, "{}", result.stdout);
        assert!(result.stdout.contains("associativity"));
    }

    #[test]
    fn malformed_scalar_is_a_parse_error() {
        let mut doc = dual_numbers_doc();
        doc.algebras.get_mut("A").unwrap().unit[0] = "1/0".into();
        let file = write_doc(&doc);
        let result = cmd_check(file.path(), 2, false);
        assert_eq!(result.exit_code, 2, "{}", result.stdout);
    }

    #[test]
    fn homology_table_matches_the_oracle_flag() {
        let file = write_doc(&dual_numbers_doc());
        let opts = TableOptions {
            theory: Theory::Hochschild,
            coefficients: CoefficientChoice::Regular,
            max_degree: 2,
            oracle: true,
            json: false,
        };
        let result = cmd_homology(file.path(), &opts);
        assert_eq!(result.exit_code, 0, "{}", result.stdout);
        assert!(result.stdout.contains("# oracle\tagrees"));
        assert!(result.stdout.contains("0\t2\t2"));
    }

    #[test]
    fn json_and_tsv_agree_on_the_numbers() {
        let file = write_doc(&dual_numbers_doc());
        let mut opts = TableOptions {
            theory: Theory::Hochschild,
            coefficients: CoefficientChoice::Regular,
            max_degree: 2,
            oracle: false,
            json: false,
        };
        let tsv = cmd_homology(file.path(), &opts);
        opts.json = true;
        let json = cmd_homology(file.path(), &opts);
        let parsed: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
        for row in parsed["rows"].as_array().unwrap() {
            let line = format!(
                "{}\t{}\t{}",
                row["degree"], row["dim"], row["betti"]
            );
            assert!(tsv.stdout.contains(&line), "missing {line} in:\n{}", tsv.stdout);
        }
    }

    #[test]
    fn secondary_with_oracle_flag_is_refused() {
        let a = presets::dual_numbers(Field::Q);
        let mut doc = dual_numbers_doc();
        doc.algebras.insert("B".to_string(), algebra_def(&a));
        doc.triple = Some(TripleDef {
            a: "A".into(),
            b: "B".into(),
            epsilon: matrix_def(presets::eps_identity(&a).matrix()),
        });
        let file = write_doc(&doc);
        let opts = TableOptions {
            theory: Theory::Secondary,
            coefficients: CoefficientChoice::Regular,
            max_degree: 1,
            oracle: true,
            json: false,
        };
        let result = cmd_homology(file.path(), &opts);
        assert_eq!(result.exit_code, 2);
    }

    #[test]
    fn missing_file_exits_two() {
        let result = cmd_check(Path::new("/nonexistent/fixture.json"), 2, false);
        assert_eq!(result.exit_code, 2);
    }
}
