//! The Chekanov–Eliashberg algebra of a resolved front and its surgered extension.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{AlgebraElement, GenId, Word};
use crate::diagram::{ChordKind, DiagramError, Event, FrontDiagram};
use crate::disks::{enumerate_all, BoundaryItem, DecoratedDisk};
use crate::resolve::{MarkKind, ResolvedDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgaError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("d^2 {generator} contains the word {word:?}")]
    DSquared { generator: String, word: String },
    #[error("disk at {generator} has negative word {word:?} of the wrong degree")]
    DegreeMismatch { generator: String, word: String },
    #[error("surgery {surgery} joins component {component} to itself")]
    SelfJoin { surgery: String, component: String },
    #[error("surgery {surgery} would close a cycle: {first} and {second} are already joined")]
    NotATree { surgery: String, first: String, second: String },
    #[error("no surgery pair at event {0}")]
    NoSuchSurgery(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Crossing { event: usize },
    RightCusp { event: usize },
    Surgery { event: usize },
}

impl Origin {
    pub fn event(self) -> usize {
        match self {
            Origin::Crossing { event } | Origin::RightCusp { event } | Origin::Surgery { event } => event,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub source: usize,
    pub target: usize,
    pub origin: Origin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DgaMark {
    pub kind: MarkKind,
    pub component: usize,
    /// Component of the unsurgered link the mark was placed on.
    pub original: usize,
    /// Basepoints of components absorbed by a surgery are switched off.
    pub active: bool,
    /// Surgery generator inserted where a disk boundary passes the mark.
    pub letter: Option<GenId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurgeryRecord {
    pub generator: GenId,
    pub event: usize,
    /// Components of the unsurgered link that the two marks sit on.
    pub joins: (usize, usize),
}

/// A DGA over Z₂ on named generators, with the decorated disks it was counted from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dga {
    generators: Vec<Generator>,
    differential: Vec<AlgebraElement>,
    disks: Vec<DecoratedDisk>,
    marks: Vec<DgaMark>,
    components: Vec<String>,
    original_components: Vec<String>,
    component_of_original: Vec<usize>,
    surgeries: Vec<SurgeryRecord>,
}

impl Dga {
    /// Assembles a DGA directly from generators and differentials, with no disk data.
    pub fn from_parts(generators: Vec<Generator>, differential: Vec<AlgebraElement>, components: Vec<String>) -> Self {
        assert_eq!(generators.len(), differential.len());
        let n = components.len();
        Dga {
            generators,
            differential,
            disks: Vec::new(),
            marks: Vec::new(),
            original_components: components.clone(),
            components,
            component_of_original: (0..n).collect(),
            surgeries: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn differential(&self, g: GenId) -> &AlgebraElement {
        &self.differential[g]
    }

    pub fn disks(&self) -> &[DecoratedDisk] {
        &self.disks
    }

    pub fn marks(&self) -> &[DgaMark] {
        &self.marks
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_names(&self) -> &[String] {
        &self.components
    }

    /// Component of the surgered link containing an original component.
    pub fn component_of_original(&self, c: usize) -> usize {
        self.component_of_original[c]
    }

    pub fn original_component_names(&self) -> &[String] {
        &self.original_components
    }

    pub fn surgeries(&self) -> &[SurgeryRecord] {
        &self.surgeries
    }

    pub fn surgery_generators(&self) -> Vec<GenId> {
        self.surgeries.iter().map(|s| s.generator).collect()
    }

    pub fn generator_by_name(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// Copy with one differential replaced; used to build deliberately broken inputs.
    pub fn with_differential(&self, g: GenId, d: AlgebraElement) -> Dga {
        let mut out = self.clone();
        out.differential[g] = d;
        out
    }

    pub fn word_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter().map(|&g| self.generators[g].name.as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn element_string(&self, e: &AlgebraElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        e.words().map(|w| self.word_string(w)).collect::<Vec<_>>().join(" + ")
    }

    /// `∂` applied to a word by the Leibniz rule.
    pub fn d_word(&self, w: &Word) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (i, &g) in w.0.iter().enumerate() {
            for term in self.differential[g].words() {
                let mut v = w.0[..i].to_vec();
                v.extend_from_slice(&term.0);
                v.extend_from_slice(&w.0[i + 1..]);
                out.toggle(Word(v));
            }
        }
        out
    }

    pub fn d_element(&self, e: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for w in e.words() {
            out.add_assign(&self.d_word(w));
        }
        out
    }

    /// Generator and differential dump in the stable `gen`/`d`/`surgery` line format.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            let _ = writeln!(s, "gen {} deg {} comp {} {}", g.name, g.degree, g.source + 1, g.target + 1);
        }
        for (g, d) in self.generators.iter().zip(&self.differential) {
            let _ = writeln!(s, "d {} = {}", g.name, self.element_string(d));
        }
        for rec in &self.surgeries {
            let _ = writeln!(s, "surgery {} joins {} {}", self.generators[rec.generator].name, rec.joins.0 + 1, rec.joins.1 + 1);
        }
        s
    }
}

/// Certificate that `∂² = 0` was checked on every generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DSquaredCertificate {
    pub generators_checked: usize,
    pub words_expanded: usize,
}

/// Expands `∂(∂a)` for every generator; the first surviving word is the counterexample.
pub fn check_d_squared(g: &Dga) -> Result<DSquaredCertificate, DgaError> {
    let mut words = 0;
    for (a, d) in g.differential.iter().enumerate() {
        words += d.len();
        let first = g.d_element(d).words().next().cloned();
        if let Some(w) = first {
            let word = g.word_string(&w);
            return Err(DgaError::DSquared { generator: g.generators[a].name.clone(), word });
        }
    }
    Ok(DSquaredCertificate { generators_checked: g.len(), words_expanded: words })
}

/// Every way of reading a disk boundary: each pass over a surgery mark contributes
/// either nothing or the surgery letter, so `∂_S = ∂ + h` where `h` collects the
/// readings with at least one letter inserted.
pub fn expand_boundary(marks: &[DgaMark], boundary: &[BoundaryItem]) -> Vec<Vec<BoundaryItem>> {
    let mut out: Vec<Vec<BoundaryItem>> = vec![Vec::new()];
    for item in boundary {
        let optional = match item {
            BoundaryItem::Mark(m) => marks[*m].letter,
            BoundaryItem::Letter(_) => None,
        };
        match optional {
            None => out.iter_mut().for_each(|v| v.push(*item)),
            Some(s) => {
                let with: Vec<Vec<BoundaryItem>> = out
                    .iter()
                    .map(|v| {
                        let mut v = v.clone();
                        v.push(BoundaryItem::Letter(s));
                        v
                    })
                    .collect();
                out.extend(with);
            }
        }
    }
    out
}

pub fn letters(items: &[BoundaryItem]) -> Word {
    Word(
        items
            .iter()
            .filter_map(|b| match b {
                BoundaryItem::Letter(c) => Some(*c),
                BoundaryItem::Mark(_) => None,
            })
            .collect(),
    )
}

fn differential_from_disks(n: usize, disks: &[DecoratedDisk], marks: &[DgaMark]) -> Vec<AlgebraElement> {
    let mut d = vec![AlgebraElement::zero(); n];
    for k in disks {
        for reading in expand_boundary(marks, &k.boundary) {
            d[k.positive].toggle(letters(&reading));
        }
    }
    d
}

/// Counts disks of a graded front; surgery marks are carried as inactive decorations.
pub fn build_dga(d: &ResolvedDiagram) -> Result<Dga, DgaError> {
    let chords = d.front().chords()?;
    let generators: Vec<Generator> = chords
        .iter()
        .map(|c| Generator {
            name: c.name.clone(),
            degree: c.degree,
            source: c.source,
            target: c.target,
            origin: match c.kind {
                ChordKind::Crossing => Origin::Crossing { event: c.event },
                ChordKind::RightCusp => Origin::RightCusp { event: c.event },
            },
        })
        .collect();
    let degrees: Vec<i64> = generators.iter().map(|g| g.degree).collect();
    let mut disks = Vec::new();
    for (a, found) in enumerate_all(d).into_iter().enumerate() {
        for k in found {
            if k.word().degree(&degrees) != degrees[a] - 1 {
                return Err(DgaError::DegreeMismatch {
                    generator: generators[a].name.clone(),
                    word: k.word().0.iter().map(|&b| generators[b].name.clone()).collect::<Vec<_>>().join(" "),
                });
            }
            disks.push(k);
        }
    }
    let marks: Vec<DgaMark> = d
        .marks()
        .iter()
        .map(|m| DgaMark { kind: m.kind, component: m.component, original: m.component, active: m.kind == MarkKind::Basepoint, letter: None })
        .collect();
    let components: Vec<String> = d.front().components().iter().map(|c| c.name.clone()).collect();
    let n = components.len();
    let g = Dga {
        differential: differential_from_disks(generators.len(), &disks, &marks),
        generators,
        disks,
        marks,
        original_components: components.clone(),
        components,
        component_of_original: (0..n).collect(),
        surgeries: Vec::new(),
    };
    check_d_squared(&g)?;
    Ok(g)
}

/// The algebra before and after surgery, with `∂_S = ∂ + h` on old generators.
#[derive(Debug, Clone)]
pub struct SurgeryDga {
    pub base: Dga,
    pub surgered: Dga,
    /// `h(a) = ∂_S(a) − ∂(a)` for each generator of `base`.
    pub h: Vec<AlgebraElement>,
}

impl SurgeryDga {
    pub fn new(base: Dga, surgered: Dga) -> Self {
        let h = (0..base.len())
            .map(|a| {
                let mut e = surgered.differential(a).clone();
                e.add_assign(base.differential(a));
                e
            })
            .collect();
        SurgeryDga { base, surgered, h }
    }

    pub fn s_generators(&self) -> Vec<GenId> {
        self.surgered.surgery_generators()
    }
}

/// Adds the generator of the surgery pair at event `event`, of degree `n − 1`.
pub fn attach_surgery(g: &Dga, front_names: &[Option<String>], event: usize, n: i64) -> Result<Dga, DgaError> {
    let pair: Vec<usize> = g
        .marks
        .iter()
        .enumerate()
        .filter(|(_, m)| m.kind == MarkKind::Surgery { event })
        .map(|(i, _)| i)
        .collect();
    if pair.len() != 2 {
        return Err(DgaError::NoSuchSurgery(event));
    }
    let name = front_names.get(event).cloned().flatten().unwrap_or_else(|| format!("s{}", g.surgeries.len() + 1));
    let (oa, ob) = (g.marks[pair[0]].component, g.marks[pair[1]].component);
    let (orig_a, orig_b) = (g.marks[pair[0]].original, g.marks[pair[1]].original);
    if orig_a == orig_b {
        return Err(DgaError::SelfJoin { surgery: name, component: g.original_components[orig_a].clone() });
    }
    if oa == ob {
        return Err(DgaError::NotATree {
            surgery: name,
            first: g.original_components[orig_a].clone(),
            second: g.original_components[orig_b].clone(),
        });
    }
    let (keep, drop) = (oa.min(ob), oa.max(ob));
    let remap = |c: usize| -> usize {
        let c = if c == drop { keep } else { c };
        if c > drop {
            c - 1
        } else {
            c
        }
    };
    let s = g.generators.len();
    let mut out = g.clone();
    for gen in &mut out.generators {
        gen.source = remap(gen.source);
        gen.target = remap(gen.target);
    }
    let merged = remap(keep);
    out.generators.push(Generator { name, degree: n - 1, source: merged, target: merged, origin: Origin::Surgery { event } });
    for (i, m) in out.marks.iter_mut().enumerate() {
        if m.kind == MarkKind::Basepoint && m.component == drop {
            m.active = false;
        }
        m.component = remap(m.component);
        if pair.contains(&i) {
            m.active = false;
            m.letter = Some(s);
        }
    }
    for c in &mut out.component_of_original {
        *c = remap(*c);
    }
    let joined = format!("{}#{}", g.components[keep], g.components[drop]);
    out.components.remove(drop);
    out.components[merged] = joined;
    out.differential = differential_from_disks(s + 1, &out.disks, &out.marks);
    out.surgeries.push(SurgeryRecord { generator: s, event, joins: (orig_a, orig_b) });
    check_d_squared(&out)?;
    Ok(out)
}

/// The algebra of the link a front describes once all of its surgeries are performed.
pub fn link_algebra(front: &FrontDiagram, n: i64) -> Result<Dga, DgaError> {
    Ok(surgered_dga(&crate::resolve::resolve(front), n)?.surgered)
}

/// Builds both algebras for a front whose surgery events are attached in event order.
pub fn surgered_dga(d: &ResolvedDiagram, n: i64) -> Result<SurgeryDga, DgaError> {
    let base = build_dga(d)?;
    let names: Vec<Option<String>> = (0..d.front().events().len()).map(|e| d.front().name_of(e).map(str::to_string)).collect();
    let mut current = base.clone();
    for (e, ev) in d.front().events().iter().enumerate() {
        if matches!(ev, Event::Surgery { .. }) {
            current = attach_surgery(&current, &names, e, n)?;
        }
    }
    Ok(SurgeryDga::new(base, current))
}
