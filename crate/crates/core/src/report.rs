//! A full invariant report for one diagram source, as a serializable document.
//!
//! Every field is a function of the source text, so two runs on the same input serialize to
//! the same bytes whatever the thread count. Pair rows are computed in parallel and collected
//! in augmentation order.

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::augment::{classes_of, enumerate_augmentations, enumerate_augmentations_with, AugmentError, Augmentation, SurgeryLetters};
use crate::dga::{check_d_squared, link_algebra, Dga, DgaError};
use crate::diagram::{parse_front, DiagramError};
use crate::duality::{almost_nondegenerate, criter_bg, main_verdict, DualityMaps, Sign, N};
use crate::geography::pair_geography;
use crate::lch::bilinearize;

pub const SCHEMA_VERSION: u32 = 1;

/// Pairs are swept only up to this many augmentations, which keeps a sweep to a few
/// hundred thousand bilinearized complexes.
pub const MAX_SWEPT_AUGMENTATIONS: usize = 512;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Augmentation(#[from] AugmentError),
    #[error("{0} augmentations exceed the sweep limit of {MAX_SWEPT_AUGMENTATIONS}")]
    TooManyAugmentations(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chord {
    pub name: String,
    pub degree: i64,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentationCounts {
    /// Augmentations sending every surgery generator to 0; these are the ones swept.
    pub induced: usize,
    /// Graded augmentations with surgery generators left free.
    pub free: usize,
    /// Augmentations of the second kind that are not of the first, by support.
    pub flagged: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRow {
    pub e1: usize,
    pub e2: usize,
    pub homotopic: bool,
    pub poincare: String,
    pub poincare_reversed: String,
    pub fundamental_in_minus: bool,
    pub fundamental_in_plus: bool,
    /// `(dim im τ_{±,0}, dim im τ_{±,n})` for `+` then `−`.
    pub images: [(usize, usize); 2],
    pub exact: bool,
    pub adjoint: bool,
    pub nondegenerate: bool,
    /// Only for connected diagrams: the rank difference of the connected criterion.
    pub connected_difference: Option<i64>,
    /// Only for non-homotopic pairs: both Poincaré polynomials are admissible, with the
    /// constraints on `im τ` met.
    pub admissible: Option<bool>,
    /// Only for non-homotopic pairs: whether the `im τ` splits are themselves witnesses.
    pub split_witnesses: Option<(bool, bool)>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub sha256: String,
    pub components: Vec<String>,
    pub chords: Vec<Chord>,
    pub d_squared_zero: bool,
    pub augmentations: Vec<String>,
    pub counts: AugmentationCounts,
    /// Augmentation ids per homotopy class, classes in order of first member.
    pub classes: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
    pub pairs: Vec<PairRow>,
    pub failures: Vec<String>,
}

impl Report {
    /// All verdicts agree with the theorems being checked.
    pub fn consistent(&self) -> bool {
        self.d_squared_zero && self.failures.is_empty() && self.pairs.iter().all(|p| p.failures.is_empty())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields serialize")
    }

    /// The human-readable sweep: one `blch` row per ordered pair followed by its verdicts.
    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut s = String::new();
        let _ = writeln!(s, "report v{} sha256 {}", self.schema_version, self.sha256);
        let _ = writeln!(s, "components {}", self.components.join(" "));
        let _ = writeln!(s, "chords {} d2 {}", self.chords.len(), if self.d_squared_zero { "ok" } else { "FAIL" });
        let c = &self.counts;
        let _ = writeln!(s, "augmentations {} (free surgery letters: {})", c.induced, c.free);
        for f in &c.flagged {
            let _ = writeln!(s, "flagged {f}");
        }
        for (i, a) in self.augmentations.iter().enumerate() {
            let _ = writeln!(s, "aug {i} {a}");
        }
        for (k, members) in self.classes.iter().enumerate() {
            let ids: Vec<String> = members.iter().map(|m| m.to_string()).collect();
            let _ = writeln!(s, "class {k} rep {} members {}", self.representatives[k], ids.join(" "));
        }
        for p in &self.pairs {
            let _ = writeln!(s, "blch e1={} e2={} P={}", p.e1, p.e2, p.poincare);
            let [(p0, pn), (m0, mn)] = p.images;
            let _ = write!(
                s,
                "  homotopic {} in_minus {} in_plus {} im+ {p0},{pn} im- {m0},{mn} exact {} adjoint {} nondegenerate {}",
                p.homotopic, p.fundamental_in_minus, p.fundamental_in_plus, p.exact, p.adjoint, p.nondegenerate
            );
            if let Some(d) = p.connected_difference {
                let _ = write!(s, " difference {d}");
            }
            if let Some(a) = p.admissible {
                let _ = write!(s, " admissible {a}");
            }
            if let Some((x, y)) = p.split_witnesses {
                let _ = write!(s, " tau_split_witness {x},{y}");
            }
            s.push('\n');
            for f in &p.failures {
                let _ = writeln!(s, "  FAIL {f}");
            }
        }
        for f in &self.failures {
            let _ = writeln!(s, "FAIL {f}");
        }
        let _ = writeln!(s, "verdict {}", if self.consistent() { "consistent" } else { "INCONSISTENT" });
        s
    }
}

pub fn digest(source: &str) -> String {
    hex::encode(Sha256::digest(source.as_bytes()))
}

/// Parses `source`, builds its (surgered) algebra and sweeps every ordered augmentation pair.
pub fn build_report(source: &str) -> Result<Report, ReportError> {
    let front = parse_front(source)?;
    let g = link_algebra(&front, N)?;
    let d_squared_zero = check_d_squared(&g).is_ok();
    let augs = enumerate_augmentations(&g);
    if augs.len() > MAX_SWEPT_AUGMENTATIONS {
        return Err(ReportError::TooManyAugmentations(augs.len()));
    }
    let free = enumerate_augmentations_with(&g, SurgeryLetters::Free);
    let flagged = free.iter().filter(|a| !augs.contains(a)).map(|a| a.display(&g).to_string()).collect();
    let counts = AugmentationCounts { induced: augs.len(), free: free.len(), flagged };
    let classes = classes_of(&g, augs)?;
    let mut members = vec![Vec::new(); classes.class_count()];
    for (i, &c) in classes.class_of.iter().enumerate() {
        members[c].push(i);
    }
    let n = classes.augmentations.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let pairs = pairs
        .par_iter()
        .map(|&(i, j)| pair_row(&g, &classes.augmentations, i, j, classes.homotopic(i, j)))
        .collect();
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        sha256: digest(source),
        components: g.component_names().to_vec(),
        chords: g
            .generators()
            .iter()
            .map(|x| Chord { name: x.name.clone(), degree: x.degree, from: x.source + 1, to: x.target + 1 })
            .collect(),
        d_squared_zero,
        augmentations: classes.augmentations.iter().map(|a| a.display(&g).to_string()).collect(),
        counts,
        classes: members,
        representatives: classes.representatives.clone(),
        pairs,
        failures: Vec::new(),
    })
}

fn pair_row(g: &Dga, augs: &[Augmentation], i: usize, j: usize, homotopic: bool) -> PairRow {
    let (a, b) = (&augs[i], &augs[j]);
    let mut failures = Vec::new();
    let mut fail = |e: &dyn std::fmt::Display| failures.push(e.to_string());
    let maps = match DualityMaps::new(g, a, b) {
        Ok(m) => m,
        Err(e) => {
            fail(&e);
            let poincare = bilinearize(g, a, b).map(|c| c.poincare().to_string()).unwrap_or_default();
            return PairRow {
                e1: i,
                e2: j,
                homotopic,
                poincare_reversed: bilinearize(g, b, a).map(|c| c.poincare().to_string()).unwrap_or_default(),
                poincare,
                fundamental_in_minus: false,
                fundamental_in_plus: false,
                images: [(0, 0); 2],
                exact: false,
                adjoint: false,
                nondegenerate: false,
                connected_difference: None,
                admissible: None,
                split_witnesses: None,
                failures,
            };
        }
    };
    let (in_minus, in_plus) = (maps.fundamental_in_image(Sign::Minus), maps.fundamental_in_image(Sign::Plus));
    if let Err(e) = main_verdict(g, &maps, a, b) {
        fail(&e);
    }
    let exact = maps.check_exactness().map_err(|e| fail(&e)).is_ok();
    let adjoint = maps.check_adjointness().map_err(|e| fail(&e)).is_ok();
    let nondegenerate = [&maps.plus.complex, &maps.minus.complex]
        .into_iter()
        .all(|cx| almost_nondegenerate(cx, 8).map_err(|e| fail(&e)).is_ok());
    let connected_difference = (g.component_count() == 1).then(|| match criter_bg(g, a, b) {
        Ok(v) => v.difference,
        Err(e) => {
            fail(&e);
            maps.minus.homology.rank(N) as i64 - maps.plus.homology.rank(-1) as i64
        }
    });
    let geo = (!homotopic).then(|| pair_geography(&maps));
    let admissible = geo.as_ref().map(|geo| {
        let ok = geo.holds(g.component_count());
        if !ok {
            fail(&format!("geography fails: {geo:?}"));
        }
        ok
    });
    let split_witnesses = geo.map(|geo| geo.split_witnesses);
    let images = [Sign::Plus, Sign::Minus].map(|s| (maps.image(s, 0).dim(), maps.image(s, N).dim()));
    PairRow {
        e1: i,
        e2: j,
        homotopic,
        poincare: maps.plus.homology.poincare().to_string(),
        poincare_reversed: maps.minus.homology.poincare().to_string(),
        fundamental_in_minus: in_minus,
        fundamental_in_plus: in_plus,
        images,
        exact,
        adjoint,
        nondegenerate,
        connected_difference,
        admissible,
        split_witnesses,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "legendrian v1\ncomponent B shift 1\ncomponent A shift 0\nevents:\nL 1\nL 3\nX 2 m12\nX 2 m21\nR 1\nR 1\n";

    #[test]
    fn hopf_report_marks_the_pair() {
        let r = build_report(HOPF).unwrap();
        assert!(r.consistent());
        let l = r.augmentations.iter().position(|a| a == "{m12=1}").unwrap();
        let rr = r.augmentations.iter().position(|a| a == "{}").unwrap();
        let row = r.pairs.iter().find(|p| p.e1 == l && p.e2 == rr).unwrap();
        assert!(!row.homotopic);
        assert_eq!(row.poincare, "1 + t");
        assert_eq!(row.admissible, Some(true));
    }

    #[test]
    fn json_is_stable() {
        let a = build_report(HOPF).unwrap().to_json();
        let b = build_report(HOPF).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"schema_version\": 1"));
        assert!(a.contains(&digest(HOPF)));
    }
}
