//! Words and elements of the free unital algebra over Z₂ on chord generators.

use std::collections::BTreeSet;

/// Index of a generator in its DGA's generator table.
pub type GenId = usize;

/// A monomial `b₁ b₂ … b_m`; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<GenId>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, degrees: &[i64]) -> i64 {
        self.0.iter().map(|&g| degrees[g]).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl From<Vec<GenId>> for Word {
    fn from(v: Vec<GenId>) -> Self {
        Word(v)
    }
}

/// A finite Z₂-linear combination of words, stored as the set of words with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    terms: BTreeSet<Word>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::unit())
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Self::zero();
        e.toggle(w);
        e
    }

    /// Adds a single word, cancelling it if already present.
    pub fn toggle(&mut self, w: Word) {
        if !self.terms.remove(&w) {
            self.terms.insert(w);
        }
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for w in &other.terms {
            self.toggle(w.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.terms.contains(w)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = Self::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.concat(b));
            }
        }
        out
    }

    /// The common degree of all terms, if the element is homogeneous and nonzero.
    pub fn homogeneous_degree(&self, degrees: &[i64]) -> Option<i64> {
        let mut it = self.terms.iter().map(|w| w.degree(degrees));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl FromIterator<Word> for AlgebraElement {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        let mut e = Self::zero();
        for w in iter {
            e.toggle(w);
        }
        e
    }
}

/// Product of `left` values on letters before position `split` (1-based) and `right` values
/// on letters after it; the split letter itself is not evaluated.
pub fn evaluate_word(w: &Word, left: &[bool], right: &[bool], split: usize) -> bool {
    debug_assert!(split >= 1 && split <= w.len(), "split {split} outside word of length {}", w.len());
    w.0[..split - 1].iter().all(|&g| left[g]) && w.0[split..].iter().all(|&g| right[g])
}

/// Product of `left` values on the first `cut` letters and `right` values on the rest.
pub fn evaluate_cut(w: &Word, left: &[bool], right: &[bool], cut: usize) -> bool {
    w.0[..cut].iter().all(|&g| left[g]) && w.0[cut..].iter().all(|&g| right[g])
}

/// Value of an augmentation on an algebra element.
pub fn evaluate(e: &AlgebraElement, aug: &[bool]) -> bool {
    e.words().filter(|w| w.0.iter().all(|&g| aug[g])).count() % 2 == 1
}
