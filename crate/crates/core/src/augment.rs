//! Graded augmentations `ε: (𝒜, ∂) → (Z₂, 0)` and the DGA-homotopy relation between them.
//!
//! Because the target is `(Z₂, 0)`, an `(ε₁, ε₂)`-antiderivation is determined by its values on
//! degree −1 generators, and `ε₁ − ε₂ = K∘∂` becomes one linear equation per degree 0 generator.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{evaluate, evaluate_word, AlgebraElement, GenId, Word};
use crate::dga::{Dga, SurgeryDga};
use crate::gf2::{BitVec, GF2Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AugmentError {
    #[error("augmentation has {found} values but the algebra has {expected} generators")]
    LengthMismatch { expected: usize, found: usize },
    #[error("augmentation is 1 on {generator}, which has degree {degree}")]
    OffDegreeZero { generator: String, degree: i64 },
    #[error("augmentation does not kill the differential of {generator}")]
    NotAChainMap { generator: String },
    #[error("unknown generator {0:?} in augmentation")]
    UnknownGenerator(String),
    #[error("cannot read augmentation {0:?}; expected {{NAME=1, ...}}")]
    Syntax(String),
    #[error("homotopy is not transitive on augmentations {0}, {1}, {2}")]
    NotTransitive(usize, usize, usize),
}

/// Values of an augmentation on the generators, indexed by generator id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Augmentation(Vec<bool>);

impl Augmentation {
    pub fn zero(len: usize) -> Self {
        Augmentation(vec![false; len])
    }

    pub fn from_values(values: Vec<bool>) -> Self {
        Augmentation(values)
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, g: GenId) -> bool {
        self.0[g]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = GenId> + '_ {
        self.0.iter().enumerate().filter(|(_, &v)| v).map(|(i, _)| i)
    }

    /// The same augmentation extended by zeros to `len` generators.
    pub fn extended(&self, len: usize) -> Augmentation {
        let mut v = self.0.clone();
        v.resize(len, false);
        Augmentation(v)
    }

    pub fn restricted(&self, gens: &[GenId]) -> Augmentation {
        Augmentation(gens.iter().map(|&g| self.0[g]).collect())
    }

    pub fn validate(&self, g: &Dga) -> Result<(), AugmentError> {
        if self.0.len() != g.len() {
            return Err(AugmentError::LengthMismatch { expected: g.len(), found: self.0.len() });
        }
        for (i, gen) in g.generators().iter().enumerate() {
            if self.0[i] && gen.degree != 0 {
                return Err(AugmentError::OffDegreeZero { generator: gen.name.clone(), degree: gen.degree });
            }
        }
        for (i, gen) in g.generators().iter().enumerate() {
            if evaluate(g.differential(i), &self.0) {
                return Err(AugmentError::NotAChainMap { generator: gen.name.clone() });
            }
        }
        Ok(())
    }

    /// `{m12=1}` style text: generators with value 1, in generator order.
    pub fn display<'a>(&'a self, g: &'a Dga) -> impl fmt::Display + 'a {
        AugDisplay { aug: self, dga: g }
    }

    pub fn parse(g: &Dga, text: &str) -> Result<Augmentation, AugmentError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| AugmentError::Syntax(text.to_string()))?;
        let mut values = vec![false; g.len()];
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, bit) = part.split_once('=').ok_or_else(|| AugmentError::Syntax(text.to_string()))?;
            let id = g.generator_by_name(name.trim()).ok_or_else(|| AugmentError::UnknownGenerator(name.trim().to_string()))?;
            values[id] = match bit.trim() {
                "0" => false,
                "1" => true,
                _ => return Err(AugmentError::Syntax(text.to_string())),
            };
        }
        let aug = Augmentation(values);
        aug.validate(g)?;
        Ok(aug)
    }
}

struct AugDisplay<'a> {
    aug: &'a Augmentation,
    dga: &'a Dga,
}

impl fmt::Display for AugDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.dga.names();
        let parts: Vec<String> = self.aug.support().map(|g| format!("{}=1", names[g])).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// How surgery generators of degree 0 are treated during enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurgeryLetters {
    /// Induced augmentations: every surgery generator is sent to 0.
    Vanish,
    /// Any graded value is allowed on surgery generators.
    Free,
}

/// All graded augmentations, with surgery generators sent to 0.
pub fn enumerate_augmentations(g: &Dga) -> Vec<Augmentation> {
    enumerate_augmentations_with(g, SurgeryLetters::Vanish)
}

/// Depth-first search over degree 0 generators in generator order, so the output is sorted.
/// A constraint `ε(∂c) = 0` for `|c| = 1` is tested as soon as every letter it involves is set.
pub fn enumerate_augmentations_with(g: &Dga, policy: SurgeryLetters) -> Vec<Augmentation> {
    let surgery = g.surgery_generators();
    let free: Vec<GenId> = (0..g.len())
        .filter(|&i| g.generators()[i].degree == 0)
        .filter(|i| policy == SurgeryLetters::Free || !surgery.contains(i))
        .collect();
    let mut slot = vec![usize::MAX; g.len()];
    for (k, &i) in free.iter().enumerate() {
        slot[i] = k;
    }
    // constraints[k]: words (over free letters only) that become decidable once slot k is set.
    let mut constraints: Vec<Vec<Vec<Word>>> = vec![Vec::new(); free.len() + 1];
    for c in 0..g.len() {
        if g.generators()[c].degree != 1 {
            continue;
        }
        let words: Vec<Word> = g
            .differential(c)
            .words()
            .filter(|w| w.0.iter().all(|&b| slot[b] != usize::MAX))
            .cloned()
            .collect();
        let ready = words.iter().flat_map(|w| w.0.iter().map(|&b| slot[b] + 1)).max().unwrap_or(0);
        constraints[ready].push(words);
    }
    let mut out = Vec::new();
    let mut values = vec![false; g.len()];
    let holds = |values: &[bool], k: usize| {
        constraints[k].iter().all(|words| words.iter().filter(|w| w.0.iter().all(|&b| values[b])).count() % 2 == 0)
    };
    if holds(&values, 0) {
        search(&free, &mut values, 0, &holds, &mut out);
    }
    out
}

fn search(free: &[GenId], values: &mut Vec<bool>, k: usize, holds: &dyn Fn(&[bool], usize) -> bool, out: &mut Vec<Augmentation>) {
    if k == free.len() {
        out.push(Augmentation(values.clone()));
        return;
    }
    for bit in [false, true] {
        values[free[k]] = bit;
        if holds(values, k + 1) {
            search(free, values, k + 1, holds, out);
        }
    }
    values[free[k]] = false;
}

/// Values of an antiderivation on generators; nonzero only in degree −1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antiderivation(pub Vec<bool>);

impl Antiderivation {
    /// `K(b₁…b_m) = Σ_l ε₁(b₁…b_{l−1}) K(b_l) ε₂(b_{l+1}…b_m)`.
    pub fn apply(&self, e1: &Augmentation, e2: &Augmentation, x: &AlgebraElement) -> bool {
        let mut acc = false;
        for w in x.words() {
            for l in 1..=w.len() {
                if self.0[w.0[l - 1]] && evaluate_word(w, e1.values(), e2.values(), l) {
                    acc = !acc;
                }
            }
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyWitness {
    /// `ε₁ − ε₂ = K∘∂` on every generator.
    Homotopic(Antiderivation),
    /// Degree 0 generators whose equations sum to `0 = 1`.
    Obstructed(Vec<GenId>),
}

impl HomotopyWitness {
    pub fn is_homotopic(&self) -> bool {
        matches!(self, HomotopyWitness::Homotopic(_))
    }
}

/// Coefficient matrix (rows: degree 0 generators, columns: degree −1 generators) of the map
/// `K ↦ K∘∂` restricted to degree 0, together with the row and column generator lists.
pub fn homotopy_system(g: &Dga, e1: &Augmentation, e2: &Augmentation) -> (GF2Matrix, Vec<GenId>, Vec<GenId>) {
    let rows: Vec<GenId> = (0..g.len()).filter(|&i| g.generators()[i].degree == 0).collect();
    let cols: Vec<GenId> = (0..g.len()).filter(|&i| g.generators()[i].degree == -1).collect();
    let mut col_of = vec![usize::MAX; g.len()];
    for (j, &c) in cols.iter().enumerate() {
        col_of[c] = j;
    }
    let mut m = GF2Matrix::zeros(rows.len(), cols.len());
    for (i, &c) in rows.iter().enumerate() {
        for w in g.differential(c).words() {
            for l in 1..=w.len() {
                let b = w.0[l - 1];
                if col_of[b] != usize::MAX && evaluate_word(w, e1.values(), e2.values(), l) {
                    m.toggle(i, col_of[b]);
                }
            }
        }
    }
    (m, rows, cols)
}

pub fn is_homotopic(g: &Dga, e1: &Augmentation, e2: &Augmentation) -> Result<HomotopyWitness, AugmentError> {
    e1.validate(g)?;
    e2.validate(g)?;
    let (m, rows, cols) = homotopy_system(g, e1, e2);
    let rhs = BitVec::from_bools(&rows.iter().map(|&c| e1.get(c) != e2.get(c)).collect::<Vec<_>>());
    let solution = m.solve(&rhs).expect("system dimensions agree by construction");
    Ok(match solution {
        Some(x) => {
            let mut k = vec![false; g.len()];
            for j in x.iter_ones() {
                k[cols[j]] = true;
            }
            let k = Antiderivation(k);
            debug_assert!(check_antiderivation(g, e1, e2, &k));
            HomotopyWitness::Homotopic(k)
        }
        None => {
            let y = m
                .transpose()
                .kernel()
                .into_iter()
                .find(|y| y.dot(&rhs))
                .expect("an unsolvable system has a left kernel vector detecting it");
            HomotopyWitness::Obstructed(y.iter_ones().map(|i| rows[i]).collect())
        }
    })
}

/// Checks `ε₁(a) + ε₂(a) = K(∂a)` on every generator.
pub fn check_antiderivation(g: &Dga, e1: &Augmentation, e2: &Augmentation, k: &Antiderivation) -> bool {
    (0..g.len()).all(|a| (e1.get(a) != e2.get(a)) == k.apply(e1, e2, g.differential(a)))
}

/// Augmentations partitioned into homotopy classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSet {
    pub augmentations: Vec<Augmentation>,
    /// Class index of each augmentation; classes are numbered by first appearance.
    pub class_of: Vec<usize>,
    /// Lexicographically least member of each class.
    pub representatives: Vec<usize>,
}

impl ClassSet {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn homotopic(&self, i: usize, j: usize) -> bool {
        self.class_of[i] == self.class_of[j]
    }
}

pub fn homotopy_classes(g: &Dga) -> Result<ClassSet, AugmentError> {
    classes_of(g, enumerate_augmentations(g))
}

pub fn classes_of(g: &Dga, augmentations: Vec<Augmentation>) -> Result<ClassSet, AugmentError> {
    let n = augmentations.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let verdicts: Vec<bool> = pairs
        .par_iter()
        .map(|&(i, j)| is_homotopic(g, &augmentations[i], &augmentations[j]).map(|w| w.is_homotopic()))
        .collect::<Result<_, _>>()?;
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for (&(i, j), &v) in pairs.iter().zip(&verdicts) {
        rel[i][j] = v;
        rel[j][i] = v;
    }
    for i in 0..n {
        for j in 0..n {
            if !rel[i][j] {
                continue;
            }
            for k in 0..n {
                if rel[j][k] && !rel[i][k] {
                    return Err(AugmentError::NotTransitive(i, j, k));
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let class = representatives.len();
        let members: Vec<usize> = (0..n).filter(|&j| rel[i][j]).collect();
        for &j in &members {
            class_of[j] = class;
        }
        let least = *members.iter().min_by(|&&a, &&b| augmentations[a].cmp(&augmentations[b])).expect("class contains i");
        representatives.push(least);
    }
    Ok(ClassSet { augmentations, class_of, representatives })
}

/// `ε^S`: the augmentation extended by 0 on the surgery generators, checked against `∂_S`.
pub fn induce_surgery_augmentation(sg: &SurgeryDga, e: &Augmentation) -> Result<Augmentation, AugmentError> {
    e.validate(&sg.base)?;
    let induced = e.extended(sg.surgered.len());
    induced.validate(&sg.surgered)?;
    Ok(induced)
}

/// Augmentation counts of a surgered algebra with surgery generators sent to 0 and left free.
pub fn surgery_augmentation_counts(g: &Dga) -> (usize, usize) {
    (
        enumerate_augmentations_with(g, SurgeryLetters::Vanish).len(),
        enumerate_augmentations_with(g, SurgeryLetters::Free).len(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{build_dga, surgered_dga, Generator, Origin};
    use crate::diagram::parse_front;
    use crate::resolve::resolve;

    const HOPF: &str = "legendrian v1\ncomponent B shift 1\ncomponent A shift 0\nevents:\nL 1\nL 3\nX 2 m12\nX 2 m21\nR 1\nR 1\n";
    const HOPF_S: &str = "legendrian v1\ncomponent B shift 1\ncomponent A shift 0\nevents:\nL 1\nL 3\nS 1 4\nX 2 m12\nX 2 m21\nR 1\nR 1\n";
    const TREFOIL: &str = "legendrian v1\nevents:\nL 1\nL 3\nX 2\nX 2\nX 2\nR 1\nR 1\n";

    fn dga(src: &str) -> Dga {
        build_dga(&resolve(&parse_front(src).unwrap())).unwrap()
    }

    fn gen(name: &str, degree: i64) -> Generator {
        Generator { name: name.into(), degree, source: 0, target: 0, origin: Origin::Crossing { event: 0 } }
    }

    /// A hand-built DGA with a degree −1 generator: `∂a = 1 + x y`, `∂x = k`, `∂y = 0`, `∂k = 0`,
    /// where `|a| = 1`, `|x| = |y| = 0`, `|k| = −1`.
    fn with_minus_one() -> Dga {
        let w = |v: Vec<usize>| AlgebraElement::from_word(Word(v));
        let mut da = AlgebraElement::one();
        da.add_assign(&w(vec![1, 2]));
        Dga::from_parts(
            vec![gen("a", 1), gen("x", 0), gen("y", 0), gen("k", -1)],
            vec![da, AlgebraElement::zero(), AlgebraElement::zero(), AlgebraElement::zero()],
            vec!["K".into()],
        )
    }

    fn exhaustive_homotopic(g: &Dga, e1: &Augmentation, e2: &Augmentation) -> bool {
        let minus: Vec<GenId> = (0..g.len()).filter(|&i| g.generators()[i].degree == -1).collect();
        (0u64..1 << minus.len()).any(|mask| {
            let mut k = vec![false; g.len()];
            for (b, &c) in minus.iter().enumerate() {
                k[c] = mask >> b & 1 == 1;
            }
            check_antiderivation(g, e1, e2, &Antiderivation(k))
        })
    }

    #[test]
    fn unknot_has_only_the_zero_augmentation() {
        let g = dga("legendrian v1\nevents:\nL 1\nR 1\n");
        assert_eq!(enumerate_augmentations(&g), vec![Augmentation::zero(1)]);
        assert_eq!(homotopy_classes(&g).unwrap().class_count(), 1);
    }

    #[test]
    fn unit_differential_admits_nothing() {
        let g = Dga::from_parts(vec![gen("a", 1)], vec![AlgebraElement::one()], vec!["K".into()]);
        assert!(enumerate_augmentations(&g).is_empty());
    }

    #[test]
    fn hopf_left_and_right() {
        let g = dga(HOPF);
        let m12 = g.generator_by_name("m12").unwrap();
        let augs = enumerate_augmentations(&g);
        assert_eq!(augs.len(), 3);
        let left = augs.iter().find(|a| a.support().collect::<Vec<_>>() == vec![m12]).unwrap();
        let right = Augmentation::zero(g.len());
        assert!(augs.contains(&right));
        assert_eq!(left.display(&g).to_string(), "{m12=1}");
        assert_eq!(right.display(&g).to_string(), "{}");
        let w = is_homotopic(&g, left, &right).unwrap();
        assert_eq!(w, HomotopyWitness::Obstructed(vec![m12]));
        assert!(is_homotopic(&g, left, left).unwrap().is_homotopic());
        assert_eq!(homotopy_classes(&g).unwrap().class_count(), 3);
    }

    #[test]
    fn parse_round_trip() {
        let g = dga(HOPF);
        let a = Augmentation::parse(&g, "{m21=1}").unwrap();
        assert_eq!(Augmentation::parse(&g, &a.display(&g).to_string()).unwrap(), a);
        assert!(matches!(Augmentation::parse(&g, "{c3=1}"), Err(AugmentError::OffDegreeZero { .. })));
        assert!(matches!(Augmentation::parse(&g, "{m12=1, m21=1}"), Err(AugmentError::NotAChainMap { .. })));
        assert!(matches!(Augmentation::parse(&g, "m12=1"), Err(AugmentError::Syntax(_))));
    }

    #[test]
    fn degree_minus_one_generator_links_classes() {
        let g = with_minus_one();
        let augs = enumerate_augmentations(&g);
        assert_eq!(augs.len(), 1);
        assert_eq!(augs[0].support().collect::<Vec<_>>(), vec![1, 2]);

        // ∂x = k and ∂a has no constant: two augmentations x ↦ 0/1 that K = k* connects.
        let g2 = Dga::from_parts(
            vec![gen("x", 0), gen("k", -1)],
            vec![AlgebraElement::from_word(Word(vec![1])), AlgebraElement::zero()],
            vec!["K".into()],
        );
        let augs = enumerate_augmentations(&g2);
        assert_eq!(augs.len(), 2);
        let w = is_homotopic(&g2, &augs[0], &augs[1]).unwrap();
        assert_eq!(w, HomotopyWitness::Homotopic(Antiderivation(vec![false, true])));
        assert_eq!(homotopy_classes(&g2).unwrap().class_count(), 1);
    }

    #[test]
    fn trefoil_classes_agree_with_exhaustive_search() {
        let g = dga(TREFOIL);
        let augs = enumerate_augmentations(&g);
        assert_eq!(augs.len(), 5);
        for a in &augs {
            for b in &augs {
                assert_eq!(is_homotopic(&g, a, b).unwrap().is_homotopic(), exhaustive_homotopic(&g, a, b));
            }
        }
    }

    #[test]
    fn surgery_induces_valid_augmentations() {
        let sg = surgered_dga(&resolve(&parse_front(HOPF_S).unwrap()), 1).unwrap();
        let augs = enumerate_augmentations(&sg.base);
        for a in &augs {
            let s = induce_surgery_augmentation(&sg, a).unwrap();
            assert_eq!(s.len(), sg.surgered.len());
        }
        let induced: Vec<Augmentation> = augs.iter().map(|a| a.extended(sg.surgered.len())).collect();
        assert_eq!(enumerate_augmentations(&sg.surgered), induced);
        let (vanish, free) = surgery_augmentation_counts(&sg.surgered);
        assert_eq!(vanish, 3);
        assert!(free >= vanish);
        let m12 = sg.base.generator_by_name("m12").unwrap();
        let left = augs.iter().find(|a| a.get(m12)).unwrap();
        let right = Augmentation::zero(sg.base.len());
        assert!(!is_homotopic(&sg.base, left, &right).unwrap().is_homotopic());
        let (ls, rs) = (induce_surgery_augmentation(&sg, left).unwrap(), induce_surgery_augmentation(&sg, &right).unwrap());
        assert!(!is_homotopic(&sg.surgered, &ls, &rs).unwrap().is_homotopic());
    }
}
