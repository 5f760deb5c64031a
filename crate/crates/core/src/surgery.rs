//! The short exact sequence `0 → Z₂⟨s⟩ → C(Λ, S) → C(Λ) → 0` of bilinearized complexes.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::augment::{induce_surgery_augmentation, is_homotopic, AugmentError, Augmentation};
use crate::dga::{surgered_dga, DgaError, SurgeryDga};
use crate::diagram::{DiagramError, Event, FrontDiagram};
use crate::duality::N;
use crate::gf2::{GF2Matrix, Subspace};
use crate::lch::{bilinearize, BilinearizedComplex, HomologyProfile, LchError};
use crate::resolve::resolve;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Lch(#[from] LchError),
    #[error(transparent)]
    Augmentation(#[from] AugmentError),
    #[error("projection forgetting the surgery generators is not a chain map")]
    NotAChainMap,
    #[error("homotopy before surgery is {base}, after surgery {surgered}")]
    SEpsilon { base: bool, surgered: bool },
    #[error("component index {0} out of range")]
    NoSuchComponent(usize),
    #[error("components {0} and {1} never share a column")]
    NoCommonColumn(usize, usize),
    #[error("the long exact sequence fails its rank count in degree {0}")]
    RankLedger(i64),
}

#[derive(Debug, Clone)]
pub struct SurgerySequence {
    pub base: BilinearizedComplex,
    pub surgered: BilinearizedComplex,
    pub base_homology: HomologyProfile,
    pub surgered_homology: HomologyProfile,
    /// Rows: surgery generators; columns: generators of the unsurgered algebra. Entry `(s, a)` is
    /// the coefficient of `s` in `∂_S^{ε₁,ε₂}(a)`.
    pub rho: GF2Matrix,
    /// Rank of the connecting map `LCH_n(Λ) → Z₂⟨s⟩`.
    pub rho_rank: usize,
}

impl SurgerySequence {
    /// `(k, rank LCH_k(Λ), rank LCH_k(Λ_S))` over every degree that occurs.
    pub fn ranks(&self) -> BTreeMap<i64, (usize, usize)> {
        let mut out = BTreeMap::new();
        for k in self.base_homology.degrees.keys().chain(self.surgered_homology.degrees.keys()) {
            out.insert(*k, (self.base_homology.rank(*k), self.surgered_homology.rank(*k)));
        }
        out
    }

    /// Degrees `k ≠ n` where `π_k` is not a rank isomorphism.
    pub fn non_isomorphic_degrees(&self) -> Vec<i64> {
        self.ranks().into_iter().filter(|&(k, (a, b))| k != N && a != b).map(|(k, _)| k).collect()
    }

    /// Rank counts forced by exactness: `π` is an isomorphism away from degrees `n` and `n − 1`,
    /// and around them `rank_S(n) = rank(n) − rank ρ` and `rank_S(n−1) = rank(n−1) + #s − rank ρ`.
    pub fn check_rank_ledger(&self) -> Result<(), SurgeryError> {
        let (s, rho) = (self.rho.rows() as i64, self.rho_rank as i64);
        for (k, (a, b)) in self.ranks() {
            let (a, b) = (a as i64, b as i64);
            let expected = if k == N {
                a - rho
            } else if k == N - 1 {
                a + s - rho
            } else {
                a
            };
            if b != expected {
                return Err(SurgeryError::RankLedger(k));
            }
        }
        Ok(())
    }
}

/// Builds the sequence for augmentations `e1`, `e2` of the unsurgered algebra.
pub fn surgery_sequence(sg: &SurgeryDga, e1: &Augmentation, e2: &Augmentation) -> Result<SurgerySequence, SurgeryError> {
    let (s1, s2) = (induce_surgery_augmentation(sg, e1)?, induce_surgery_augmentation(sg, e2)?);
    let base = bilinearize(&sg.base, e1, e2)?;
    let surgered = bilinearize(&sg.surgered, &s1, &s2)?;
    let old: Vec<usize> = (0..sg.base.len()).collect();
    let s_gens = sg.s_generators();
    if surgered.matrix.submatrix(&old, &old) != base.matrix {
        return Err(SurgeryError::NotAChainMap);
    }
    let all: Vec<usize> = (0..sg.surgered.len()).collect();
    if !surgered.matrix.submatrix(&all, &s_gens).is_zero() {
        return Err(SurgeryError::NotAChainMap);
    }
    let rho = surgered.matrix.submatrix(&s_gens, &old);
    let base_homology = base.homology();
    let surgered_homology = surgered.homology();
    let reps = base_homology.degree(N).map(|d| d.representatives.clone()).unwrap_or_default();
    let rho_rank = Subspace::span(s_gens.len(), reps.iter().map(|z| rho.mul_vec(z).expect("chain length"))).dim();
    let seq = SurgerySequence { base, surgered, base_homology, surgered_homology, rho, rho_rank };
    seq.check_rank_ledger()?;
    Ok(seq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SEpsilonVerdict {
    pub homotopic: bool,
}

/// `ε₁ ∼ ε₂` exactly when `ε₁^S ∼ ε₂^S`.
pub fn verify_s_epsilon(sg: &SurgeryDga, e1: &Augmentation, e2: &Augmentation) -> Result<SEpsilonVerdict, SurgeryError> {
    let base = is_homotopic(&sg.base, e1, e2)?.is_homotopic();
    let (s1, s2) = (induce_surgery_augmentation(sg, e1)?, induce_surgery_augmentation(sg, e2)?);
    let surgered = is_homotopic(&sg.surgered, &s1, &s2)?.is_homotopic();
    if base != surgered {
        return Err(SurgeryError::SEpsilon { base, surgered });
    }
    Ok(SEpsilonVerdict { homotopic: base })
}

/// Adds one surgery mark pair per join, at the first column containing strands of both
/// components: on the topmost strand of the first and the bottommost strand of the second.
pub fn place_surgeries(front: &FrontDiagram, joins: &[(usize, usize)]) -> Result<FrontDiagram, SurgeryError> {
    let mut current = front.clone();
    for &(a, b) in joins {
        for c in [a, b] {
            if c >= current.component_count() {
                return Err(SurgeryError::NoSuchComponent(c));
            }
        }
        let here = &current;
        let spot = (0..here.events().len()).find_map(|e| {
            let owned = |c: usize| (1..=here.column(e).len()).filter(|&p| here.strand_component(e, p) == c).collect::<Vec<_>>();
            let top = *owned(a).first()?;
            let bottom = *owned(b).last()?;
            Some((e, top, bottom))
        });
        let (e, first, second) = spot.ok_or(SurgeryError::NoCommonColumn(a, b))?;
        let mut events = current.events().to_vec();
        events.insert(e, Event::Surgery { first, second, name: None });
        current = FrontDiagram::new(current.components().to_vec(), events)?;
    }
    Ok(current)
}

/// Surgery along a list of component pairs, attached in order; the pairs must form a forest.
pub fn iterate_surgery(front: &FrontDiagram, joins: &[(usize, usize)]) -> Result<(FrontDiagram, SurgeryDga), SurgeryError> {
    let placed = place_surgeries(front, joins)?;
    let sg = surgered_dga(&resolve(&placed), N)?;
    Ok((placed, sg))
}
