//! Finite-dimensional unital associative algebras presented by structure
//! constants, algebra morphisms, and bimodules given by explicit action
//! matrices.
//!
//! Constructors only check shapes; the axioms themselves (associativity,
//! unit laws, multiplicativity, action compatibilities) are verified by the
//! `validate`/`check` methods, which report every violation with its
//! location instead of stopping at the first one.

use crate::linalg::{Matrix, SparseVec};
use crate::report::CheckReport;
use crate::scalar::Field;
use crate::tensor::{SlotChoice, TensorShape};
use crate::Error;

/// A unital associative algebra with a distinguished basis: the product of
/// basis elements `e_i · e_j` is stored at `mul[i * dim + j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    name: String,
    field: Field,
    dim: usize,
    unit: SparseVec,
    mul: Vec<SparseVec>,
    labels: Vec<String>,
}

impl Algebra {
    pub fn new(
        name: impl Into<String>,
        field: Field,
        unit: SparseVec,
        mul: Vec<SparseVec>,
        labels: Vec<String>,
    ) -> Result<Algebra, Error> {
        let name = name.into();
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::Invalid(format!("algebra '{name}' has no basis")));
        }
        if mul.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                context: format!("multiplication table of '{name}'"),
                expected: dim * dim,
                found: mul.len(),
            });
        }
        for v in mul.iter().chain(std::iter::once(&unit)) {
            if v.max_index().is_some_and(|m| m >= dim) {
                return Err(Error::Invalid(format!(
                    "vector in '{name}' mentions basis index ≥ {dim}"
                )));
            }
        }
        Ok(Algebra {
            name,
            field,
            dim,
            unit,
            mul,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mul[i * self.dim + j]
    }

    /// If the unit is a single basis vector with coefficient 1, its index.
    pub fn unit_basis_index(&self) -> Option<usize> {
        match self.unit.iter().as_slice() {
            [(i, v)] if v.is_one() => Some(*i),
            _ => None,
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let c = a.mul(b);
                for (k, s) in self.basis_product(*i, *j).iter() {
                    pairs.push((*k, c.mul(s)));
                }
            }
        }
        SparseVec::from_entries(pairs)
    }

    /// Checks associativity on all basis triples and both unit laws.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new(format!("algebra {}", self.name));
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let left = self.multiply(self.basis_product(i, j), &SparseVec::unit(k, self.field));
                    let right = self.multiply(&SparseVec::unit(i, self.field), self.basis_product(j, k));
                    report.tally(left == right, "associativity", || {
                        format!(
                            "({}·{})·{} ≠ {}·({}·{})",
                            self.labels[i], self.labels[j], self.labels[k],
                            self.labels[i], self.labels[j], self.labels[k]
                        )
                    });
                }
            }
        }
        for i in 0..self.dim {
            let e = SparseVec::unit(i, self.field);
            report.tally(self.multiply(&self.unit, &e) == e, "left unit law", || {
                format!("1·{} ≠ {}", self.labels[i], self.labels[i])
            });
            report.tally(self.multiply(&e, &self.unit) == e, "right unit law", || {
                format!("{}·1 ≠ {}", self.labels[i], self.labels[i])
            });
        }
        report
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| {
            (i + 1..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i))
        })
    }

    /// Same underlying space with the multiplication reversed.
    pub fn opposite(&self) -> Algebra {
        let mut mul = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                mul.push(self.basis_product(j, i).clone());
            }
        }
        Algebra {
            name: format!("{}^op", self.name),
            field: self.field,
            dim: self.dim,
            unit: self.unit.clone(),
            mul,
            labels: self.labels.clone(),
        }
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult_matrix(&self, a: &SparseVec) -> Matrix {
        let cols = (0..self.dim)
            .map(|j| self.multiply(a, &SparseVec::unit(j, self.field)))
            .collect();
        Matrix::from_columns(self.dim, self.field, cols)
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult_matrix(&self, a: &SparseVec) -> Matrix {
        let cols = (0..self.dim)
            .map(|j| self.multiply(&SparseVec::unit(j, self.field), a))
            .collect();
        Matrix::from_columns(self.dim, self.field, cols)
    }
}

/// Tensor product of algebras; the leftmost factor varies slowest in the
/// product basis, and multiplication is factorwise.
pub fn tensor_algebras(name: impl Into<String>, factors: &[&Algebra]) -> Algebra {
    let name = name.into();
    assert!(!factors.is_empty(), "empty tensor product");
    let field = factors[0].field;
    assert!(factors.iter().all(|a| a.field == field));
    let shape = TensorShape::new(&factors.iter().map(|a| a.dim).collect::<Vec<_>>());
    let dim = shape.total_dim();

    let labels: Vec<String> = (0..dim)
        .map(|idx| {
            let digits = shape.digits(idx);
            digits
                .iter()
                .zip(factors)
                .map(|(d, a)| a.label(*d as usize))
                .collect::<Vec<_>>()
                .join("⊗")
        })
        .collect();

    let unit_parts: Vec<SlotChoice> = factors.iter().map(|a| SlotChoice::Spread(&a.unit)).collect();
    let unit = shape.assemble(field, &unit_parts);

    let mut mul = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let di = shape.digits(i);
        for j in 0..dim {
            let dj = shape.digits(j);
            let slot_products: Vec<&SparseVec> = factors
                .iter()
                .enumerate()
                .map(|(s, a)| a.basis_product(di[s] as usize, dj[s] as usize))
                .collect();
            let choices: Vec<SlotChoice> =
                slot_products.iter().map(|p| SlotChoice::Spread(p)).collect();
            mul.push(shape.assemble(field, &choices));
        }
    }

    Algebra {
        name,
        field,
        dim,
        unit,
        mul,
        labels,
    }
}

/// A linear map of algebras `source → target`, stored as a
/// `target.dim × source.dim` matrix over the common field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: Algebra, target: Algebra, matrix: Matrix) -> Result<AlgebraMorphism, Error> {
        if source.field != target.field {
            return Err(Error::Invalid(format!(
                "morphism {} → {} mixes fields {} and {}",
                source.name, target.name, source.field, target.field
            )));
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::DimensionMismatch {
                context: format!("matrix of morphism {} → {}", source.name, target.name),
                expected: target.dim * source.dim,
                found: matrix.rows() * matrix.cols(),
            });
        }
        Ok(AlgebraMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.apply(v)
    }

    pub fn apply_basis(&self, j: usize) -> &SparseVec {
        self.matrix.column(j)
    }

    /// Verifies that the map is a unital algebra morphism from a commutative
    /// source whose image is central in the target.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new(format!(
            "morphism {} → {}",
            self.source.name, self.target.name
        ));
        report.tally(
            self.apply(&self.source.unit) == self.target.unit,
            "unit preservation",
            || "ε(1) ≠ 1".to_string(),
        );
        report.tally(
            self.source.is_commutative(),
            "source commutativity",
            || format!("{} is not commutative", self.source.name),
        );
        for i in 0..self.source.dim {
            for j in 0..self.source.dim {
                let via_source = self.apply(self.source.basis_product(i, j));
                let via_target = self
                    .target
                    .multiply(self.apply_basis(i), self.apply_basis(j));
                report.tally(via_source == via_target, "multiplicativity", || {
                    format!(
                        "ε({}·{}) ≠ ε({})·ε({})",
                        self.source.labels[i],
                        self.source.labels[j],
                        self.source.labels[i],
                        self.source.labels[j]
                    )
                });
            }
        }
        for i in 0..self.source.dim {
            let img = self.apply_basis(i);
            for j in 0..self.target.dim {
                let e = SparseVec::unit(j, self.target.field);
                report.tally(
                    self.target.multiply(img, &e) == self.target.multiply(&e, img),
                    "central image",
                    || {
                        format!(
                            "ε({}) does not commute with {}",
                            self.source.labels[i], self.target.labels[j]
                        )
                    },
                );
            }
        }
        report
    }
}

/// A bimodule over an algebra: per-basis-element action matrices on a based
/// vector space. `left[i]` is the matrix of `m ↦ e_i·m`, `right[i]` of
/// `m ↦ m·e_i`.
#[derive(Clone, PartialEq, Debug)]
pub struct Bimodule {
    name: String,
    field: Field,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(
        name: impl Into<String>,
        field: Field,
        dim: usize,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Bimodule, Error> {
        let name = name.into();
        for m in left.iter().chain(&right) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    context: format!("action matrix of '{name}'"),
                    expected: dim,
                    found: m.rows(),
                });
            }
        }
        Ok(Bimodule {
            name,
            field,
            dim,
            left,
            right,
        })
    }

    /// The algebra acting on itself by multiplication on both sides.
    pub fn regular(alg: &Algebra) -> Bimodule {
        let left = (0..alg.dim())
            .map(|i| alg.left_mult_matrix(&SparseVec::unit(i, alg.field())))
            .collect();
        let right = (0..alg.dim())
            .map(|i| alg.right_mult_matrix(&SparseVec::unit(i, alg.field())))
            .collect();
        Bimodule {
            name: alg.name().to_string(),
            field: alg.field(),
            dim: alg.dim(),
            left,
            right,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of `m ↦ e_i·m`.
    pub fn left_action(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Matrix of `m ↦ m·e_i`.
    pub fn right_action(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    pub fn act_left(&self, a: &SparseVec, m: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in a.iter() {
            acc = acc.add_scaled(&self.left[*i].apply(m), c);
        }
        acc
    }

    pub fn act_right(&self, m: &SparseVec, a: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in a.iter() {
            acc = acc.add_scaled(&self.right[*i].apply(m), c);
        }
        acc
    }

    /// Matrix of `m ↦ a·m` for an arbitrary algebra element.
    pub fn left_matrix_of(&self, a: &SparseVec) -> Matrix {
        let mut acc = Matrix::zero(self.dim, self.dim, self.field);
        for (i, c) in a.iter() {
            acc = acc.add(&self.left[*i].scaled(c));
        }
        acc
    }

    pub fn right_matrix_of(&self, a: &SparseVec) -> Matrix {
        let mut acc = Matrix::zero(self.dim, self.dim, self.field);
        for (i, c) in a.iter() {
            acc = acc.add(&self.right[*i].scaled(c));
        }
        acc
    }

    /// Verifies the bimodule axioms over `alg`: both actions are unital and
    /// associative, and they commute with each other.
    pub fn validate(&self, alg: &Algebra) -> CheckReport {
        let mut report = CheckReport::new(format!("bimodule {} over {}", self.name, alg.name()));
        let id = Matrix::identity(self.dim, self.field);
        if self.left.len() != alg.dim() || self.right.len() != alg.dim() {
            report.tally(false, "action table size", || {
                format!(
                    "expected {} action matrices per side, found {}/{}",
                    alg.dim(),
                    self.left.len(),
                    self.right.len()
                )
            });
            return report;
        }
        report.tally(self.left_matrix_of(alg.unit()) == id, "left unit action", || {
            "1·m ≠ m".to_string()
        });
        report.tally(self.right_matrix_of(alg.unit()) == id, "right unit action", || {
            "m·1 ≠ m".to_string()
        });
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let prod = alg.basis_product(i, j);
                report.tally(
                    self.left[i].compose(&self.left[j]) == self.left_matrix_of(prod),
                    "left associativity",
                    || format!("{}·({}·m) ≠ ({}·{})·m", alg.label(i), alg.label(j), alg.label(i), alg.label(j)),
                );
                report.tally(
                    self.right[j].compose(&self.right[i]) == self.right_matrix_of(prod),
                    "right associativity",
                    || format!("(m·{})·{} ≠ m·({}·{})", alg.label(i), alg.label(j), alg.label(i), alg.label(j)),
                );
                report.tally(
                    self.left[i].compose(&self.right[j]) == self.right[j].compose(&self.left[i]),
                    "actions commute",
                    || format!("{}·(m·{}) ≠ ({}·m)·{}", alg.label(i), alg.label(j), alg.label(i), alg.label(j)),
                );
            }
        }
        report
    }
}

/// Checks that every element of the morphism's image acts the same on both
/// sides of the module: `ε(b)·m = m·ε(b)` for all basis `b` of the source.
pub fn check_symmetric_action(module: &Bimodule, eps: &AlgebraMorphism) -> CheckReport {
    let mut report = CheckReport::new(format!(
        "symmetry of {} under {} → {}",
        module.name,
        eps.source().name(),
        eps.target().name()
    ));
    for j in 0..eps.source().dim() {
        let img = eps.apply_basis(j);
        report.tally(
            module.left_matrix_of(img) == module.right_matrix_of(img),
            "two-sided symmetry",
            || format!("ε({})·m ≠ m·ε({})", eps.source().label(j), eps.source().label(j)),
        );
    }
    report
}
