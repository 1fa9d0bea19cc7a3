//! Levelwise tensor products over a simplicial algebra, levelwise
//! equivariant hom spaces, and the passage to (co)chain complexes with
//! Betti numbers.
//!
//! `tensor_over` forms the quotient of X_n ⊗_k Y_n by the balancing
//! relations (x·a)⊗y − x⊗(a·y); `hom_over` solves for the A_n-equivariant
//! maps inside Hom_k(Y_n, M_n). Both stream their (many, sparse) relation
//! rows through an exact echelon instead of materializing dense systems,
//! and both verify — not assume — that faces, degeneracies, and cofaces
//! descend to the computed spaces.

use crate::linalg::{Echelon, Matrix, QuotientSpace, SparseVec, Subspace};
use crate::scalar::{Field, Scalar};
use crate::simplicial::{
    CosimplicialModule, Side, SimplicialModule, SimplicialSpace,
};
use crate::Error;

/// Largest ambient level dimension the builders will attempt. Override with
/// the `SIMPRES_DIM_CAP` environment variable.
pub fn dim_cap() -> usize {
    std::env::var("SIMPRES_DIM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1 << 20)
}

/// Applies a slotwise map `fx ⊗ fy` (given by per-basis image tables) to an
/// ambient vector of a level with y-dimension `src_ydim`, landing in a level
/// with y-dimension `dst_ydim`. Ambient coordinates are `x_idx·ydim + y_idx`.
pub fn tensor_map(
    v: &SparseVec,
    src_ydim: usize,
    dst_ydim: usize,
    fx: &[SparseVec],
    fy: &[SparseVec],
) -> SparseVec {
    let mut entries: Vec<(usize, Scalar)> = Vec::new();
    for (idx, c) in v.iter() {
        let (x, y) = (idx / src_ydim, idx % src_ydim);
        for (xi, cx) in fx[x].iter() {
            let cxc = c.mul(cx);
            for (yi, cy) in fy[y].iter() {
                entries.push((xi * dst_ydim + yi, cxc.mul(cy)));
            }
        }
    }
    SparseVec::from_entries(entries)
}

/// The levelwise tensor product X ⊗_𝒜 Y of a simplicial right module with a
/// simplicial left module, carrying induced faces and degeneracies.
pub struct TensorLevels {
    name: String,
    field: Field,
    x_dims: Vec<usize>,
    y_dims: Vec<usize>,
    levels: Vec<QuotientSpace>,
    faces: Vec<Vec<Matrix>>,
    degeneracies: Vec<Vec<Matrix>>,
}

fn level_quotient(
    x: &SimplicialModule,
    y: &SimplicialModule,
    n: usize,
    gens: &[SparseVec],
    cap: usize,
) -> Result<QuotientSpace, Error> {
    let field = x.field();
    let xd = x.level_dim(n);
    let yd = y.level_dim(n);
    let ambient = xd
        .checked_mul(yd)
        .filter(|&d| d <= cap)
        .ok_or(Error::Infeasible {
            level: n,
            dim: xd.saturating_mul(yd),
            cap,
        })?;
    let mut relations = Echelon::new(ambient, field);
    for g in gens {
        let xg: Vec<SparseVec> = (0..xd)
            .map(|m| x.act(n, g, &SparseVec::unit(m, field)))
            .collect();
        let gy: Vec<SparseVec> = (0..yd)
            .map(|b| y.act(n, g, &SparseVec::unit(b, field)))
            .collect();
        for m in 0..xd {
            for b in 0..yd {
                let mut entries: Vec<(usize, Scalar)> =
                    Vec::with_capacity(xg[m].support_len() + gy[b].support_len());
                for (mi, c) in xg[m].iter() {
                    entries.push((mi * yd + b, c.clone()));
                }
                for (bi, c) in gy[b].iter() {
                    entries.push((m * yd + bi, c.neg()));
                }
                let rel = SparseVec::from_entries(entries);
                if !rel.is_empty() {
                    relations.insert(rel);
                }
            }
        }
    }
    Ok(QuotientSpace::from_echelon(relations))
}

pub fn tensor_over(
    x: &SimplicialModule,
    y: &SimplicialModule,
    up_to: usize,
) -> Result<TensorLevels, Error> {
    tensor_over_with_cap(x, y, up_to, dim_cap())
}

pub(crate) fn tensor_over_with_cap(
    x: &SimplicialModule,
    y: &SimplicialModule,
    up_to: usize,
    cap: usize,
) -> Result<TensorLevels, Error> {
    if x.side() != Side::Right || y.side() != Side::Left {
        return Err(Error::Invalid(
            "tensor product needs a right module first and a left module second".into(),
        ));
    }
    if x.over() != y.over() {
        return Err(Error::AlgebraMismatch);
    }
    let alg = x.over();
    let field = x.field();

    let mut levels = Vec::with_capacity(up_to + 1);
    let mut x_dims = Vec::with_capacity(up_to + 1);
    let mut y_dims = Vec::with_capacity(up_to + 1);
    for n in 0..=up_to {
        levels.push(level_quotient(x, y, n, &alg.generating_set(n), cap)?);
        x_dims.push(x.level_dim(n));
        y_dims.push(y.level_dim(n));
    }

    let mut faces: Vec<Vec<Matrix>> = vec![Vec::new()];
    for n in 1..=up_to {
        let mut at_level = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let fx: Vec<SparseVec> = (0..x_dims[n]).map(|m| x.face_of_basis(n, i, m)).collect();
            let fy: Vec<SparseVec> = (0..y_dims[n]).map(|b| y.face_of_basis(n, i, b)).collect();
            at_level.push(induced_map(
                &levels[n],
                &levels[n - 1],
                y_dims[n],
                y_dims[n - 1],
                &fx,
                &fy,
                field,
                || format!("face δ_{i} at level {n}"),
            )?);
        }
        faces.push(at_level);
    }

    let mut degeneracies: Vec<Vec<Matrix>> = Vec::with_capacity(up_to + 1);
    for n in 0..up_to {
        let mut at_level = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let sx: Vec<SparseVec> = (0..x_dims[n])
                .map(|m| x.degeneracy_of_basis(n, i, m))
                .collect();
            let sy: Vec<SparseVec> = (0..y_dims[n])
                .map(|b| y.degeneracy_of_basis(n, i, b))
                .collect();
            at_level.push(induced_map(
                &levels[n],
                &levels[n + 1],
                y_dims[n],
                y_dims[n + 1],
                &sx,
                &sy,
                field,
                || format!("degeneracy σ_{i} at level {n}"),
            )?);
        }
        degeneracies.push(at_level);
    }
    degeneracies.push(Vec::new());

    Ok(TensorLevels {
        name: format!("{} ⊗ {}", x.name(), y.name()),
        field,
        x_dims,
        y_dims,
        levels,
        faces,
        degeneracies,
    })
}

/// Descends an ambient-level slotwise map to quotient coordinates, first
/// verifying that it carries the source relation span into the target
/// relation span (checked on the reduced relation rows, which span the same
/// space as the full generating family).
#[allow(clippy::too_many_arguments)]
fn induced_map(
    src: &QuotientSpace,
    dst: &QuotientSpace,
    src_ydim: usize,
    dst_ydim: usize,
    fx: &[SparseVec],
    fy: &[SparseVec],
    field: Field,
    context: impl Fn() -> String,
) -> Result<Matrix, Error> {
    for row in src.relation_rows() {
        let image = tensor_map(&row, src_ydim, dst_ydim, fx, fy);
        if !dst.relations_contain(&image) {
            return Err(Error::Invalid(format!(
                "induced {} does not preserve the balancing relations",
                context()
            )));
        }
    }
    let cols = (0..src.dim())
        .map(|q| dst.project(&tensor_map(&src.section_vec(q), src_ydim, dst_ydim, fx, fy)))
        .collect();
    Ok(Matrix::from_columns(dst.dim(), field, cols))
}

impl TensorLevels {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn built_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &QuotientSpace {
        &self.levels[n]
    }

    pub fn x_dim(&self, n: usize) -> usize {
        self.x_dims[n]
    }

    pub fn y_dim(&self, n: usize) -> usize {
        self.y_dims[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &Matrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &Matrix {
        &self.degeneracies[n][i]
    }

    pub fn quotient_dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim()).collect()
    }
}

impl SimplicialSpace for TensorLevels {
    fn space_name(&self) -> String {
        self.name.clone()
    }

    fn space_field(&self) -> Field {
        self.field
    }

    fn level_dim(&self, n: usize) -> usize {
        self.levels[n].dim()
    }

    fn face_of_basis(&self, n: usize, i: usize, idx: usize) -> SparseVec {
        self.faces[n][i].column(idx).clone()
    }

    fn degeneracy_of_basis(&self, n: usize, i: usize, idx: usize) -> SparseVec {
        self.degeneracies[n][i].column(idx).clone()
    }
}

/// Quotient dimensions recomputed with balancing relations over the full
/// basis of each level algebra instead of a generating set; used to check
/// that the generating-set shortcut loses nothing.
pub fn quotient_dims_full_basis(
    x: &SimplicialModule,
    y: &SimplicialModule,
    up_to: usize,
) -> Result<Vec<usize>, Error> {
    if x.side() != Side::Right || y.side() != Side::Left {
        return Err(Error::Invalid(
            "tensor product needs a right module first and a left module second".into(),
        ));
    }
    if x.over() != y.over() {
        return Err(Error::AlgebraMismatch);
    }
    let alg = x.over();
    let field = x.field();
    let cap = dim_cap();
    let mut dims = Vec::with_capacity(up_to + 1);
    for n in 0..=up_to {
        let gens: Vec<SparseVec> = (0..alg.level_dim(n))
            .map(|a| SparseVec::unit(a, field))
            .collect();
        dims.push(level_quotient(x, y, n, &gens, cap)?.dim());
    }
    Ok(dims)
}

/// The levelwise A_n-equivariant maps Hom_𝒜(Y, M) with induced cofaces.
/// Ambient coordinates at level n are `y_idx·(dim M_n) + m_idx`.
pub struct HomLevels {
    name: String,
    field: Field,
    y_dims: Vec<usize>,
    m_dims: Vec<usize>,
    levels: Vec<Subspace>,
    cofaces: Vec<Vec<Matrix>>,
}

pub fn hom_over(
    y: &SimplicialModule,
    m: &CosimplicialModule,
    up_to: usize,
) -> Result<HomLevels, Error> {
    hom_over_with_cap(y, m, up_to, dim_cap())
}

pub(crate) fn hom_over_with_cap(
    y: &SimplicialModule,
    m: &CosimplicialModule,
    up_to: usize,
    cap: usize,
) -> Result<HomLevels, Error> {
    if y.side() != Side::Left {
        return Err(Error::Invalid(
            "hom levels take maps out of a left module".into(),
        ));
    }
    if y.over() != m.over() {
        return Err(Error::AlgebraMismatch);
    }
    let alg = y.over();
    let field = y.field();

    let mut levels = Vec::with_capacity(up_to + 1);
    let mut y_dims = Vec::with_capacity(up_to + 1);
    let mut m_dims = Vec::with_capacity(up_to + 1);
    for n in 0..=up_to {
        let yd = y.level_dim(n);
        let md = m.level_dim(n);
        let ambient = yd
            .checked_mul(md)
            .filter(|&d| d <= cap)
            .ok_or(Error::Infeasible {
                level: n,
                dim: yd.saturating_mul(md),
                cap,
            })?;
        // f is equivariant iff f(g·b) = g·f(b) for every algebra generator g
        // and basis element b; products and sums of generators follow.
        let mut constraints = Echelon::new(ambient, field);
        for g in alg.generating_set(n) {
            let gy: Vec<SparseVec> = (0..yd)
                .map(|b| y.act(n, &g, &SparseVec::unit(b, field)))
                .collect();
            let gm: Vec<SparseVec> = (0..md)
                .map(|mu| m.act(n, &g, &SparseVec::unit(mu, field)))
                .collect();
            for b in 0..yd {
                for nu in 0..md {
                    let mut entries: Vec<(usize, Scalar)> = Vec::new();
                    for (bi, c) in gy[b].iter() {
                        entries.push((bi * md + nu, c.clone()));
                    }
                    for (mu, action) in gm.iter().enumerate() {
                        if let Some(c) = action.get(nu) {
                            entries.push((b * md + mu, c.neg()));
                        }
                    }
                    let row = SparseVec::from_entries(entries);
                    if !row.is_empty() {
                        constraints.insert(row);
                    }
                }
            }
        }
        levels.push(Subspace::from_vectors(
            ambient,
            field,
            constraints.kernel_basis(),
        ));
        y_dims.push(yd);
        m_dims.push(md);
    }

    let mut cofaces: Vec<Vec<Matrix>> = vec![Vec::new()];
    for n in 1..=up_to {
        let mut at_level = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let fy: Vec<SparseVec> = (0..y_dims[n]).map(|b| y.face_of_basis(n, i, b)).collect();
            let cm: Vec<SparseVec> = (0..m_dims[n - 1])
                .map(|mu| m.coface_of_basis(n - 1, i, mu))
                .collect();
            let mut cols = Vec::with_capacity(levels[n - 1].dim());
            for phi in levels[n - 1].basis() {
                let psi = precompose(phi, &fy, &cm, m_dims[n - 1], m_dims[n]);
                let coords = levels[n].express(&psi).ok_or_else(|| {
                    Error::Invalid(format!(
                        "coface d^{i} at level {n} leaves the equivariant subspace"
                    ))
                })?;
                cols.push(SparseVec::from_dense(&coords));
            }
            at_level.push(Matrix::from_columns(levels[n].dim(), field, cols));
        }
        cofaces.push(at_level);
    }

    // d^j d^i = d^i d^{j−1} for i < j
    for n in 2..=up_to {
        for j in 1..=n {
            for i in 0..j {
                let lhs = cofaces[n][j].compose(&cofaces[n - 1][i]);
                let rhs = cofaces[n][i].compose(&cofaces[n - 1][j - 1]);
                assert_eq!(
                    lhs, rhs,
                    "cosimplicial identity d^{j}d^{i} = d^{i}d^{} broken at level {n}",
                    j - 1
                );
            }
        }
    }

    Ok(HomLevels {
        name: format!("Hom({}, {})", y.name(), m.name()),
        field,
        y_dims,
        m_dims,
        levels,
        cofaces,
    })
}

/// φ ∘ (face table), then the coefficient coface, as an ambient hom vector.
pub(crate) fn precompose(
    phi: &SparseVec,
    face_table: &[SparseVec],
    coface_table: &[SparseVec],
    src_mdim: usize,
    dst_mdim: usize,
) -> SparseVec {
    let mut by_source: std::collections::HashMap<usize, Vec<(usize, Scalar)>> =
        std::collections::HashMap::new();
    for (idx, c) in phi.iter() {
        by_source
            .entry(idx / src_mdim)
            .or_default()
            .push((idx % src_mdim, c.clone()));
    }
    let mut entries: Vec<(usize, Scalar)> = Vec::new();
    for (b, fb) in face_table.iter().enumerate() {
        for (bi, c) in fb.iter() {
            if let Some(group) = by_source.get(bi) {
                for (mu, cm) in group {
                    let w = c.mul(cm);
                    for (nu, cc) in coface_table[*mu].iter() {
                        entries.push((b * dst_mdim + nu, w.mul(cc)));
                    }
                }
            }
        }
    }
    SparseVec::from_entries(entries)
}

impl HomLevels {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn built_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Subspace {
        &self.levels[n]
    }

    pub fn y_dim(&self, n: usize) -> usize {
        self.y_dims[n]
    }

    pub fn coefficient_dim(&self, n: usize) -> usize {
        self.m_dims[n]
    }

    pub fn coface(&self, n: usize, i: usize) -> &Matrix {
        &self.cofaces[n][i]
    }

    pub fn level_dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim()).collect()
    }
}

/// Direction of the differentials in an assembled complex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grading {
    /// maps[n]: level n → level n−1 (maps[0] lands in the zero space)
    Down,
    /// maps[n]: level n → level n+1 (no map out of the top level)
    Up,
}

pub struct ChainComplex {
    name: String,
    grading: Grading,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl ChainComplex {
    pub fn new_down(name: impl Into<String>, dims: Vec<usize>, maps: Vec<Matrix>) -> ChainComplex {
        let name = name.into();
        assert_eq!(maps.len(), dims.len());
        assert_eq!(maps[0].rows(), 0);
        for n in 0..dims.len() {
            assert_eq!(maps[n].cols(), dims[n], "boundary {n} of {name}");
        }
        for n in 1..dims.len() {
            assert!(
                maps[n - 1].compose(&maps[n]).is_zero(),
                "boundary squared is nonzero between degrees {n} and {} in {name}",
                n - 2
            );
        }
        ChainComplex {
            name,
            grading: Grading::Down,
            dims,
            maps,
        }
    }

    pub fn new_up(name: impl Into<String>, dims: Vec<usize>, maps: Vec<Matrix>) -> ChainComplex {
        let name = name.into();
        assert_eq!(maps.len() + 1, dims.len());
        for n in 0..maps.len() {
            assert_eq!(maps[n].cols(), dims[n], "coboundary {n} of {name}");
            assert_eq!(maps[n].rows(), dims[n + 1], "coboundary {n} of {name}");
        }
        for n in 1..maps.len() {
            assert!(
                maps[n].compose(&maps[n - 1]).is_zero(),
                "coboundary squared is nonzero between degrees {} and {} in {name}",
                n - 1,
                n + 1
            );
        }
        ChainComplex {
            name,
            grading: Grading::Up,
            dims,
            maps,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn map(&self, n: usize) -> &Matrix {
        &self.maps[n]
    }

    pub fn boundary_squared_is_zero(&self) -> bool {
        match self.grading {
            Grading::Down => (1..self.maps.len())
                .all(|n| self.maps[n - 1].compose(&self.maps[n]).is_zero()),
            Grading::Up => {
                (1..self.maps.len()).all(|n| self.maps[n].compose(&self.maps[n - 1]).is_zero())
            }
        }
    }

    /// Highest degree whose Betti number the built range determines.
    pub fn betti_range(&self) -> usize {
        self.dims.len().saturating_sub(2)
    }

    pub fn betti(&self, n: usize) -> Result<usize, Error> {
        let cap = self.betti_range();
        if n > cap {
            return Err(Error::DegreeOutOfRange { requested: n, cap });
        }
        Ok(match self.grading {
            Grading::Down => self.dims[n] - self.maps[n].rank() - self.maps[n + 1].rank(),
            Grading::Up => {
                let below = if n == 0 { 0 } else { self.maps[n - 1].rank() };
                self.dims[n] - self.maps[n].rank() - below
            }
        })
    }

    pub fn betti_through(&self, max: usize) -> Result<Vec<usize>, Error> {
        let cap = self.betti_range();
        if max > cap {
            return Err(Error::DegreeOutOfRange { requested: max, cap });
        }
        let ranks: Vec<usize> = self.maps.iter().map(|m| m.rank()).collect();
        Ok((0..=max)
            .map(|n| match self.grading {
                Grading::Down => self.dims[n] - ranks[n] - ranks[n + 1],
                Grading::Up => self.dims[n] - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] },
            })
            .collect())
    }
}

pub(crate) fn alternating_sum(mats: &[Matrix]) -> Matrix {
    let mut acc = mats[0].clone();
    for (i, m) in mats.iter().enumerate().skip(1) {
        acc = if i % 2 == 0 { acc.add(m) } else { acc.sub(m) };
    }
    acc
}

/// d(n) = Σ_{i=0}^{n} (−1)^i D(n,i); verifies d∘d = 0 on construction.
pub fn to_chain_complex(t: &TensorLevels) -> ChainComplex {
    let dims = t.quotient_dims();
    let mut maps = vec![Matrix::zero(0, dims[0], t.field())];
    for n in 1..=t.built_degree() {
        maps.push(alternating_sum(&t.faces[n]));
    }
    ChainComplex::new_down(format!("chains of {}", t.name()), dims, maps)
}

/// δ(n) = Σ_{i=0}^{n+1} (−1)^i d^i; verifies δ∘δ = 0 on construction.
pub fn to_cochain_complex(h: &HomLevels) -> ChainComplex {
    let dims = h.level_dims();
    let maps = (1..=h.built_degree())
        .map(|n| alternating_sum(&h.cofaces[n]))
        .collect();
    ChainComplex::new_up(format!("cochains of {}", h.name()), dims, maps)
}
