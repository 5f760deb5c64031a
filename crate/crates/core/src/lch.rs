//! Bilinearized Legendrian contact homology over Z₂.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::evaluate_word;
use crate::augment::{AugmentError, Augmentation};
use crate::dga::Dga;
use crate::gf2::{BitVec, GF2Matrix, Subspace};
use crate::poly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LchError {
    #[error(transparent)]
    Augmentation(#[from] AugmentError),
    #[error("bilinearized differential does not square to zero at {generator}")]
    NotSquareZero { generator: String },
    #[error("chain is not homogeneous of degree {expected}")]
    DegreeMismatch { expected: i64 },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("cochain is not a cocycle")]
    NotACocycle,
}

/// `(C, ∂^{ε₁,ε₂})` on the generators of a DGA. Column `j` of `matrix` is `∂^{ε₁,ε₂}(c_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearizedComplex {
    pub degrees: Vec<i64>,
    pub matrix: GF2Matrix,
    pub e1: Augmentation,
    pub e2: Augmentation,
}

pub fn bilinearize(g: &Dga, e1: &Augmentation, e2: &Augmentation) -> Result<BilinearizedComplex, LchError> {
    e1.validate(g)?;
    e2.validate(g)?;
    let n = g.len();
    let mut matrix = GF2Matrix::zeros(n, n);
    for c in 0..n {
        for w in g.differential(c).words() {
            for l in 1..=w.len() {
                if evaluate_word(w, e1.values(), e2.values(), l) {
                    matrix.toggle(w.0[l - 1], c);
                }
            }
        }
    }
    let complex = BilinearizedComplex { degrees: g.degrees(), matrix, e1: e1.clone(), e2: e2.clone() };
    let square = complex.matrix.mul(&complex.matrix).expect("square matrix");
    if let Some(c) = (0..n).find(|&c| !square.column(c).is_zero()) {
        return Err(LchError::NotSquareZero { generator: g.generators()[c].name.clone() });
    }
    Ok(complex)
}

impl BilinearizedComplex {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn generators_in(&self, k: i64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == k).collect()
    }

    /// `∂_k: C_k → C_{k−1}` as a matrix in the generator bases of the two degrees.
    pub fn block(&self, k: i64) -> GF2Matrix {
        self.matrix.submatrix(&self.generators_in(k - 1), &self.generators_in(k))
    }

    pub fn degree_range(&self) -> Vec<i64> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn differential(&self, chain: &BitVec) -> BitVec {
        self.matrix.mul_vec(chain).expect("chain has one entry per generator")
    }

    /// The dual differential `μ¹`, with `⟨μ¹(a), b⟩ = ⟨a, ∂b⟩`.
    pub fn codifferential(&self, cochain: &BitVec) -> BitVec {
        self.matrix.transpose().mul_vec(cochain).expect("cochain has one entry per generator")
    }

    pub fn is_cycle(&self, chain: &BitVec) -> bool {
        self.differential(chain).is_zero()
    }

    pub fn is_cocycle(&self, cochain: &BitVec) -> bool {
        self.codifferential(cochain).is_zero()
    }

    pub fn degree_of(&self, chain: &BitVec) -> Option<i64> {
        let mut it = chain.iter_ones().map(|i| self.degrees[i]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    fn lift(&self, k: i64, v: &BitVec) -> BitVec {
        let gens = self.generators_in(k);
        BitVec::ones_at(self.len(), v.iter_ones().map(|i| gens[i]))
    }

    pub fn homology(&self) -> HomologyProfile {
        let mut degrees = BTreeMap::new();
        let n = self.len();
        for k in self.degree_range() {
            let out = self.block(k);
            let into = self.block(k + 1);
            let cycles = Subspace::span(n, out.kernel().iter().map(|v| self.lift(k, v)));
            let boundaries = Subspace::span(n, into.image().iter().map(|v| self.lift(k, v)));
            let cocycles = Subspace::span(n, into.transpose().kernel().iter().map(|v| self.lift(k, v)));
            let coboundaries = Subspace::span(n, out.transpose().image().iter().map(|v| self.lift(k, v)));
            let representatives = complement(&boundaries, &cycles);
            let corepresentatives = complement(&coboundaries, &cocycles);
            degrees.insert(k, DegreeHomology { cycles, boundaries, representatives, cocycles, coboundaries, corepresentatives });
        }
        HomologyProfile { degrees }
    }

    pub fn poincare(&self) -> LaurentPoly {
        self.homology().poincare()
    }

    /// `⟨a, b⟩` for a cocycle `a` and a cycle `b` of the same degree.
    pub fn pairing(&self, cocycle: &BitVec, cycle: &BitVec) -> Result<bool, LchError> {
        if let (Some(p), Some(q)) = (self.degree_of(cocycle), self.degree_of(cycle)) {
            if p != q {
                return Err(LchError::DegreeMismatch { expected: q });
            }
        }
        if !self.is_cocycle(cocycle) {
            return Err(LchError::NotACocycle);
        }
        if !self.is_cycle(cycle) {
            return Err(LchError::NotACycle);
        }
        Ok(cocycle.dot(cycle))
    }
}

/// Vectors from a basis of `outer` that extend a basis of `inner ⊆ outer` to one of `outer`.
fn complement(inner: &Subspace, outer: &Subspace) -> Vec<BitVec> {
    let mut acc = inner.clone();
    outer.basis().iter().filter(|v| acc.insert((*v).clone())).cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHomology {
    pub cycles: Subspace,
    pub boundaries: Subspace,
    /// Cycles whose classes form a basis of homology in this degree.
    pub representatives: Vec<BitVec>,
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
    pub corepresentatives: Vec<BitVec>,
}

impl DegreeHomology {
    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    pub fn corank(&self) -> usize {
        self.corepresentatives.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub degrees: BTreeMap<i64, DegreeHomology>,
}

impl HomologyProfile {
    pub fn rank(&self, k: i64) -> usize {
        self.degrees.get(&k).map_or(0, DegreeHomology::rank)
    }

    pub fn cohomology_rank(&self, k: i64) -> usize {
        self.degrees.get(&k).map_or(0, DegreeHomology::corank)
    }

    pub fn degree(&self, k: i64) -> Option<&DegreeHomology> {
        self.degrees.get(&k)
    }

    pub fn poincare(&self) -> LaurentPoly {
        LaurentPoly::from_counts(self.degrees.iter().map(|(&k, h)| (k, h.rank() as u64)))
    }
}
