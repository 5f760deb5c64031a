//! The maps `τ` and `σ` of the duality sequence at `n = 1`, and the homotopy criteria built on them.
//!
//! `H_0(Λ)` has basis `[*_{Λ_j}]` and `H_1(Λ)` has basis `[Λ_j]`; both are stored as bit vectors of
//! length `r` and the intersection pairing is the dot product. `σ` is never counted from disks: the
//! cochain `σ_{∓,1−k}(c)` is `q ↦ c • τ_{±,1−k}(q)`.

use thiserror::Error;

use crate::algebra::evaluate_cut;
use crate::augment::{is_homotopic, AugmentError, Augmentation};
use crate::dga::{expand_boundary, Dga};
use crate::disks::BoundaryItem;
use crate::gf2::{BitVec, GF2Matrix, Subspace};
use crate::lch::{bilinearize, BilinearizedComplex, HomologyProfile, LchError};
use crate::resolve::MarkKind;

/// Dimension of the Legendrian; diagrams are fronts of links of circles.
pub const N: i64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error(transparent)]
    Lch(#[from] LchError),
    #[error(transparent)]
    Augmentation(#[from] AugmentError),
    #[error("component {0} carries no active basepoint")]
    MissingBasepoint(String),
    #[error("tau_{sign},{degree} does not vanish on boundaries")]
    NotAChainMap { sign: Sign, degree: i64 },
    #[error("duality sequence is not exact at H_{degree} for the {sign} ordering")]
    NotExact { sign: Sign, degree: i64 },
    #[error("adjointness fails for sigma_{sign},{degree}")]
    Adjointness { sign: Sign, degree: i64 },
    #[error("homotopy verdict {homotopic} disagrees with [Λ] ∈ im tau (minus: {minus}, plus: {plus})")]
    MainTheorem { homotopic: bool, minus: bool, plus: bool },
    #[error("connected criterion disagrees: rank difference {difference}, tau_0 vanishes {tau0_vanishes}, homotopic {homotopic}")]
    ConnectedCriterion { difference: i64, tau0_vanishes: bool, homotopic: bool },
    #[error("the connected criterion needs a connected diagram, this one has {0} components")]
    Disconnected(usize),
    #[error("a nonzero cohomology class in degree {0} pairs trivially with all of homology")]
    Degenerate(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Morse homology of `r` circles with the perfect two-critical-point model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorseHomology {
    pub components: usize,
}

impl MorseHomology {
    pub fn point(&self, j: usize) -> BitVec {
        BitVec::unit(self.components, j)
    }

    pub fn circle(&self, j: usize) -> BitVec {
        BitVec::unit(self.components, j)
    }

    /// `[Λ] = ⊕_j [Λ_j]`.
    pub fn fundamental(&self) -> BitVec {
        BitVec::ones_at(self.components, 0..self.components)
    }

    /// `c • d = Σ_j c_j • d_j` for `c ∈ H_k`, `d ∈ H_{n−k}`.
    pub fn intersection(&self, c: &BitVec, d: &BitVec) -> bool {
        c.dot(d)
    }
}

/// `τ_0` on the complex of the ordered pair `(a, b)`: a degree 0 chord `q` from `Λ_i` to `Λ_j`
/// goes to `a(q)[*_{Λ_j}] + b(q)[*_{Λ_i}]`. The result has one column per generator.
pub fn tau0(g: &Dga, a: &Augmentation, b: &Augmentation) -> GF2Matrix {
    let r = g.component_count();
    let mut m = GF2Matrix::zeros(r, g.len());
    for (q, gen) in g.generators().iter().enumerate() {
        if gen.degree != 0 {
            continue;
        }
        if a.get(q) {
            m.toggle(gen.target, q);
        }
        if b.get(q) {
            m.toggle(gen.source, q);
        }
    }
    m
}

fn check_basepoints(g: &Dga) -> Result<(), DualityError> {
    for (c, name) in g.component_names().iter().enumerate() {
        if !g.marks().iter().any(|m| m.kind == MarkKind::Basepoint && m.active && m.component == c) {
            return Err(DualityError::MissingBasepoint(name.clone()));
        }
    }
    Ok(())
}

/// `τ_n` on the complex of `(a, b)`: every disk at a degree `n` chord, read with its surgery
/// letters, contributes `a(b₁…b_{l−1}) b(b_l…b_m) [Λ_j]` for each active basepoint of `Λ_j`
/// crossed with `l − 1` letters before it.
pub fn tau_n(g: &Dga, a: &Augmentation, b: &Augmentation) -> Result<GF2Matrix, DualityError> {
    check_basepoints(g)?;
    let r = g.component_count();
    let mut m = GF2Matrix::zeros(r, g.len());
    for disk in g.disks() {
        if g.generators()[disk.positive].degree != N {
            continue;
        }
        for reading in expand_boundary(g.marks(), &disk.boundary) {
            let word = crate::dga::letters(&reading);
            let mut before = 0;
            for item in &reading {
                match *item {
                    BoundaryItem::Letter(_) => before += 1,
                    BoundaryItem::Mark(k) => {
                        let mark = g.marks()[k];
                        if mark.kind == MarkKind::Basepoint && mark.active && evaluate_cut(&word, a.values(), b.values(), before) {
                            m.toggle(mark.component, disk.positive);
                        }
                    }
                }
            }
        }
    }
    Ok(m)
}

/// One ordering of a pair: its complex, homology, and both `τ` maps.
#[derive(Debug, Clone)]
pub struct OrderedSide {
    pub complex: BilinearizedComplex,
    pub homology: HomologyProfile,
    pub tau0: GF2Matrix,
    pub tau_n: GF2Matrix,
}

impl OrderedSide {
    fn new(g: &Dga, a: &Augmentation, b: &Augmentation, sign: Sign) -> Result<Self, DualityError> {
        let complex = bilinearize(g, a, b)?;
        let homology = complex.homology();
        let t0 = tau0(g, a, b);
        let tn = tau_n(g, a, b)?;
        for (t, k) in [(&t0, 0), (&tn, N)] {
            if !t.mul(&complex.matrix).expect("shapes agree").is_zero() {
                return Err(DualityError::NotAChainMap { sign, degree: k });
            }
        }
        Ok(OrderedSide { complex, homology, tau0: t0, tau_n: tn })
    }

    pub fn tau(&self, k: i64) -> Option<&GF2Matrix> {
        match k {
            0 => Some(&self.tau0),
            N => Some(&self.tau_n),
            _ => None,
        }
    }

    /// `im τ_k` on homology, inside `H_k(Λ)`.
    pub fn image(&self, k: i64, r: usize) -> Subspace {
        let tau = self.tau(k).expect("tau exists in degrees 0 and n");
        let reps = self.homology.degree(k).map(|d| d.representatives.clone()).unwrap_or_default();
        Subspace::span(r, reps.iter().map(|z| tau.mul_vec(z).expect("chain length")))
    }
}

/// Both orderings of a pair of augmentations, `+` for `(ε₁, ε₂)` and `−` for `(ε₂, ε₁)`.
#[derive(Debug, Clone)]
pub struct DualityMaps {
    pub morse: MorseHomology,
    pub plus: OrderedSide,
    pub minus: OrderedSide,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    /// `(sign, k, dim im τ_{sign,k}, dim ker σ_{sign,n−k})`.
    pub spots: Vec<(Sign, i64, usize, usize)>,
}

impl DualityMaps {
    pub fn new(g: &Dga, e1: &Augmentation, e2: &Augmentation) -> Result<Self, DualityError> {
        Ok(DualityMaps {
            morse: MorseHomology { components: g.component_count() },
            plus: OrderedSide::new(g, e1, e2, Sign::Plus)?,
            minus: OrderedSide::new(g, e2, e1, Sign::Minus)?,
        })
    }

    pub fn side(&self, sign: Sign) -> &OrderedSide {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn image(&self, sign: Sign, k: i64) -> Subspace {
        self.side(sign).image(k, self.morse.components)
    }

    /// The cochain representing `σ_{sign,n−k}(c)` for `c ∈ H_k`. It lives on the complex of the
    /// opposite ordering and is adjoint to `τ_{opposite,n−k}`.
    pub fn sigma(&self, sign: Sign, k: i64, c: &BitVec) -> BitVec {
        let other = self.side(sign.opposite());
        let tau = other.tau(N - k).expect("n − k is 0 or n");
        tau.transpose().mul_vec(c).expect("class length")
    }

    /// `ker σ_{sign,n−k} ⊆ H_k`: classes whose cochain is a coboundary.
    pub fn sigma_kernel(&self, sign: Sign, k: i64) -> Subspace {
        let r = self.morse.components;
        let other = self.side(sign.opposite());
        let coboundaries = other.homology.degree(N - k).map(|d| d.coboundaries.basis().to_vec()).unwrap_or_default();
        let mut columns: Vec<BitVec> = (0..r).map(|j| self.sigma(sign, k, &BitVec::unit(r, j))).collect();
        columns.extend(coboundaries);
        let m = GF2Matrix::from_columns(other.complex.len(), &columns);
        Subspace::span(r, m.kernel().into_iter().map(|v| BitVec::from_bools(&v.to_bools()[..r])))
    }

    /// `im τ_{±,k} = ker σ_{±,n−k}` at both spots `k = 0, n` and both orderings.
    pub fn check_exactness(&self) -> Result<ExactnessReport, DualityError> {
        let mut spots = Vec::new();
        for sign in [Sign::Plus, Sign::Minus] {
            for k in [0, N] {
                let im = self.image(sign, k);
                let ker = self.sigma_kernel(sign, k);
                if !(im.contains_space(&ker) && ker.contains_space(&im)) {
                    return Err(DualityError::NotExact { sign, degree: k });
                }
                let rank_sigma = self.morse.components - ker.dim();
                let target = self.side(sign.opposite()).homology.cohomology_rank(N - k);
                let source = self.side(sign).homology.rank(k);
                if rank_sigma > target || im.dim() > source {
                    return Err(DualityError::NotExact { sign, degree: k });
                }
                spots.push((sign, k, im.dim(), ker.dim()));
            }
        }
        Ok(ExactnessReport { spots })
    }

    /// `⟨σ_{∓,n−k}(c), [q]⟩ = c • τ_{±,n−k}([q])` over basis classes `c` and homology
    /// representatives `q`. Returns the number of identities checked.
    pub fn check_adjointness(&self) -> Result<usize, DualityError> {
        let r = self.morse.components;
        let mut checked = 0;
        for sign in [Sign::Plus, Sign::Minus] {
            let tau_side = self.side(sign);
            for k in [0, N] {
                let tau = tau_side.tau(N - k).expect("degree 0 or n");
                let reps = tau_side.homology.degree(N - k).map(|d| d.representatives.clone()).unwrap_or_default();
                for j in 0..r {
                    let c = BitVec::unit(r, j);
                    let cochain = self.sigma(sign.opposite(), k, &c);
                    if !tau_side.complex.is_cocycle(&cochain) {
                        return Err(DualityError::Adjointness { sign: sign.opposite(), degree: N - k });
                    }
                    for q in &reps {
                        let left = tau_side.complex.pairing(&cochain, q)?;
                        let right = self.morse.intersection(&c, &tau.mul_vec(q).expect("chain length"));
                        if left != right {
                            return Err(DualityError::Adjointness { sign: sign.opposite(), degree: N - k });
                        }
                        checked += 1;
                    }
                }
            }
        }
        Ok(checked)
    }

    pub fn fundamental_in_image(&self, sign: Sign) -> bool {
        self.image(sign, N).contains(&self.morse.fundamental())
    }

    /// A chord `q` of degree 0 on the `−` side with `⟨σ_{−,0}([Λ]), [q]⟩ ≠ 0`, when one exists.
    pub fn sigma_fundamental_witness(&self) -> Option<usize> {
        let cochain = self.sigma(Sign::Minus, N, &self.morse.fundamental());
        let cx = &self.plus.complex;
        (0..cx.len()).find(|&q| cx.degrees[q] == 0 && cochain.get(q) && cx.is_cycle(&BitVec::unit(cx.len(), q)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MainVerdict {
    pub homotopic: bool,
    pub fundamental_in_minus: bool,
    pub fundamental_in_plus: bool,
}

/// Homotopy decided twice: by the antiderivation system and by `[Λ] ∈ im τ_{±,n}`.
pub fn thm1_criterion(g: &Dga, e1: &Augmentation, e2: &Augmentation) -> Result<MainVerdict, DualityError> {
    let maps = DualityMaps::new(g, e1, e2)?;
    main_verdict(g, &maps, e1, e2)
}

pub fn main_verdict(g: &Dga, maps: &DualityMaps, e1: &Augmentation, e2: &Augmentation) -> Result<MainVerdict, DualityError> {
    let homotopic = is_homotopic(g, e1, e2)?.is_homotopic();
    let minus = maps.fundamental_in_image(Sign::Minus);
    let plus = maps.fundamental_in_image(Sign::Plus);
    if homotopic != minus || homotopic != plus {
        return Err(DualityError::MainTheorem { homotopic, minus, plus });
    }
    Ok(MainVerdict { homotopic, fundamental_in_minus: minus, fundamental_in_plus: plus })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectedVerdict {
    /// `dim LCH^{ε₂,ε₁}_n − dim LCH^{ε₁,ε₂}_{−1}`.
    pub difference: i64,
    pub tau0_vanishes: bool,
    pub homotopic: bool,
}

pub fn criter_bg(g: &Dga, e1: &Augmentation, e2: &Augmentation) -> Result<ConnectedVerdict, DualityError> {
    if g.component_count() != 1 {
        return Err(DualityError::Disconnected(g.component_count()));
    }
    let maps = DualityMaps::new(g, e1, e2)?;
    let difference = maps.minus.homology.rank(N) as i64 - maps.plus.homology.rank(-1) as i64;
    let tau0_vanishes = maps.image(Sign::Plus, 0).dim() == 0;
    let homotopic = is_homotopic(g, e1, e2)?.is_homotopic();
    if (difference == 1) != homotopic || !(difference == 0 || difference == 1) || tau0_vanishes != homotopic {
        return Err(DualityError::ConnectedCriterion { difference, tau0_vanishes, homotopic });
    }
    Ok(ConnectedVerdict { difference, tau0_vanishes, homotopic })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NonDegeneracy {
    pub classes: usize,
    /// Classes paired nontrivially with a single chord that is a cycle.
    pub by_chord: usize,
    /// Classes that need a sum of chords as the witness.
    pub by_cycle: usize,
}

/// Every nonzero cohomology class of `cx` pairs nontrivially with some homology class. Classes
/// are enumerated exhaustively when a degree has at most `exhaustive` generators of cohomology,
/// and through the basis otherwise.
pub fn almost_nondegenerate(cx: &BilinearizedComplex, exhaustive: usize) -> Result<NonDegeneracy, DualityError> {
    let h = cx.homology();
    let mut out = NonDegeneracy::default();
    for (&k, d) in &h.degrees {
        let basis = &d.corepresentatives;
        let classes: Vec<BitVec> = if basis.len() <= exhaustive {
            (1u64..1 << basis.len())
                .map(|mask| {
                    let mut v = BitVec::zeros(cx.len());
                    for (i, b) in basis.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            v.xor_assign(b);
                        }
                    }
                    v
                })
                .collect()
        } else {
            basis.clone()
        };
        for a in classes {
            out.classes += 1;
            let chord = cx.generators_in(k).into_iter().any(|q| {
                let z = BitVec::unit(cx.len(), q);
                cx.is_cycle(&z) && a.get(q)
            });
            if chord {
                out.by_chord += 1;
            } else if d.representatives.iter().any(|z| a.dot(z)) {
                out.by_cycle += 1;
            } else {
                return Err(DualityError::Degenerate(k));
            }
        }
    }
    Ok(out)
}

/// For a connected surgered algebra: `α∘τ_{+,0}(q) = γ∘τ^S_{+,0}(q)` on every degree 0 chord of
/// the unsurgered algebra, where `α(c) = c • [Λ]`.
pub fn alpha_square_commutes(base: &Dga, surgered: &Dga, e1: &Augmentation, e2: &Augmentation) -> bool {
    let r = base.component_count();
    let morse = MorseHomology { components: r };
    let t = tau0(base, e1, e2);
    let (s1, s2) = (e1.extended(surgered.len()), e2.extended(surgered.len()));
    let ts = tau0(surgered, &s1, &s2);
    (0..base.len()).filter(|&q| base.generators()[q].degree == 0).all(|q| {
        let alpha = morse.intersection(&t.column(q), &morse.fundamental());
        let gamma = ts.column(q).iter_ones().count() % 2 == 1;
        alpha == gamma
    })
}
