//! Mixed-radix indexing for tensor products of based vector spaces.
//!
//! A basis element of `V_0 ⊗ … ⊗ V_{k-1}` is a tuple of per-slot basis
//! indices ("digits"); the leftmost slot varies slowest. `assemble` expands a
//! pure tensor of per-slot vectors into a sparse ambient vector directly,
//! which is what lets face and degeneracy maps be evaluated pointwise without
//! ever materializing a dense operator.

use smallvec::SmallVec;

use crate::linalg::SparseVec;
use crate::scalar::{Field, Scalar};

/// Per-slot basis indices of one ambient basis element.
pub type Digits = SmallVec<[u32; 24]>;

/// One slot of a pure tensor being assembled: a fixed basis index, or an
/// arbitrary sparse vector to distribute over.
pub enum SlotChoice<'a> {
    Fixed(u32),
    Spread(&'a SparseVec),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorShape {
    dims: SmallVec<[u32; 24]>,
    strides: SmallVec<[usize; 24]>,
    total: usize,
}

impl TensorShape {
    /// Panics on overflow rather than wrapping; callers gate sizes up front.
    pub fn new(dims: &[usize]) -> TensorShape {
        let mut total = 1usize;
        for d in dims {
            assert!(*d > 0, "zero-dimensional tensor slot");
            total = total.checked_mul(*d).expect("tensor dimension overflow");
        }
        let mut strides = SmallVec::with_capacity(dims.len());
        let mut acc = total;
        for d in dims {
            acc /= *d;
            strides.push(acc);
        }
        TensorShape {
            dims: dims.iter().map(|d| *d as u32).collect(),
            strides,
            total,
        }
    }

    pub fn num_slots(&self) -> usize {
        self.dims.len()
    }

    pub fn slot_dim(&self, slot: usize) -> usize {
        self.dims[slot] as usize
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn digits(&self, mut index: usize) -> Digits {
        debug_assert!(index < self.total);
        let mut out = Digits::with_capacity(self.dims.len());
        for s in &self.strides {
            out.push((index / s) as u32);
            index %= s;
        }
        out
    }

    pub fn index(&self, digits: &[u32]) -> usize {
        debug_assert_eq!(digits.len(), self.dims.len());
        digits
            .iter()
            .zip(&self.strides)
            .map(|(i, s)| *i as usize * s)
            .sum()
    }

    /// Expands a pure tensor with the given per-slot contents. Output indices
    /// come out strictly ascending because the depth-first walk over spread
    /// slots is lexicographic and digit order matches ambient index order.
    pub fn assemble(&self, field: Field, choices: &[SlotChoice]) -> SparseVec {
        debug_assert_eq!(choices.len(), self.num_slots());
        let mut base = 0usize;
        let mut spreads: SmallVec<[(usize, &SparseVec); 8]> = SmallVec::new();
        for (s, choice) in choices.iter().enumerate() {
            match choice {
                SlotChoice::Fixed(i) => {
                    debug_assert!((*i as usize) < self.slot_dim(s));
                    base += *i as usize * self.strides[s];
                }
                SlotChoice::Spread(v) => {
                    if v.is_empty() {
                        return SparseVec::new();
                    }
                    spreads.push((self.strides[s], v));
                }
            }
        }
        let mut out = Vec::new();
        dfs(base, &field.one(), &spreads, &mut out);
        SparseVec::from_sorted(out)
    }
}

fn dfs(
    offset: usize,
    coeff: &Scalar,
    rest: &[(usize, &SparseVec)],
    out: &mut Vec<(usize, Scalar)>,
) {
    match rest.split_first() {
        None => out.push((offset, coeff.clone())),
        Some(((stride, vec), tail)) => {
            for (i, v) in vec.iter() {
                let c = coeff.mul(v);
                dfs(offset + i * stride, &c, tail, out);
            }
        }
    }
}
