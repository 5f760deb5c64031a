//! Which Poincaré polynomials occur for non-homotopic pairs, and how to build links that
//! realize them.
//!
//! A polynomial `P` is admissible for dimension `n` when it splits as `P = q + p` with
//! `q ∈ N[t]` of degree at most `n` and `q(0) ≥ 1`, and with `p(−1)` even (odd `n`) or zero
//! (even `n`). Only `q(−1)` enters the parity condition, which turns the split search into an
//! interval question about `q(−1)`; [`is_admissible`] answers it in closed form and
//! [`admissible_by_search`] is the exhaustive version kept as an oracle.
//!
//! Realization glues split pieces: connected blocks carrying the `p` part, copies of `Λ′`
//! with `(ε̃_L, ε̃_R)` adding 1 each, and unknots adding `t`. Every assembled link is
//! recomputed from scratch before it is returned.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::augment::{is_homotopic, AugmentError, Augmentation};
use crate::corpus;
use crate::dga::{link_algebra, Dga, DgaError, Origin};
use crate::diagram::FrontDiagram;
use crate::duality::{DualityError, DualityMaps, Sign, N};
use crate::lch::{bilinearize, LchError};
use crate::poly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeographyError {
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Augmentation(#[from] AugmentError),
    #[error(transparent)]
    Lch(#[from] LchError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error("block {name}: {reason}")]
    Block { name: String, reason: String },
    #[error("need r >= 1 and 0 <= m < r, got r = {r} and m = {m}")]
    Parameters { r: usize, m: usize },
    #[error("{poly} is not admissible for n = {n}: {refusal}")]
    Inadmissible { poly: LaurentPoly, n: u32, refusal: Refusal },
    #[error("{0} is admissible but no combination of library blocks realizes it")]
    Unreachable(LaurentPoly),
    #[error("links are only drawn for n = 1, not n = {0}")]
    Dimension(u32),
    #[error("{0} needs more pieces than the assembly limit of {MAX_PIECES}")]
    TooLarge(LaurentPoly),
    #[error("assembled link has P = {got} instead of {want}")]
    Mismatch { want: LaurentPoly, got: LaurentPoly },
    #[error("assembled augmentations are homotopic")]
    Homotopic,
    #[error("tau_+,1 of the split link is not the sum of its pieces' maps")]
    NotSplit,
    #[error("image of tau_+,1 has dimension {got}, expected {want}")]
    ImageDimension { want: usize, got: usize },
}

/// Largest number of split pieces an assembly may use.
pub const MAX_PIECES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Refusal {
    /// `P(0) = 0`, so no `q` has `q(0) ≥ 1`.
    NoConstantTerm,
    /// No admissible `q` leaves `p(−1)` with the required value.
    Parity,
}

impl std::fmt::Display for Refusal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Refusal::NoConstantTerm => "the constant coefficient is 0",
            Refusal::Parity => "no split satisfies the parity condition on p(-1)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Split {
    pub q: LaurentPoly,
    pub p: LaurentPoly,
}

/// The conditions of admissibility evaluated on one split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitCheck {
    pub sums_to_p: bool,
    pub q_is_polynomial: bool,
    pub q_degree_at_most_n: bool,
    pub q_constant_positive: bool,
    pub parity: bool,
}

impl SplitCheck {
    pub fn passes(&self) -> bool {
        self.sums_to_p && self.q_is_polynomial && self.q_degree_at_most_n && self.q_constant_positive && self.parity
    }
}

pub fn check_split(poly: &LaurentPoly, split: &Split, n: u32) -> SplitCheck {
    let p_at = split.p.eval_minus_one();
    SplitCheck {
        sums_to_p: &split.q + &split.p == *poly,
        q_is_polynomial: split.q.min_degree().is_none_or(|k| k >= 0),
        q_degree_at_most_n: split.q.max_degree().is_none_or(|k| k <= i64::from(n)),
        q_constant_positive: !split.q.constant_term().is_zero(),
        parity: if n % 2 == 1 { (&p_at % 2u32).is_zero() } else { p_at.is_zero() },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityWitness {
    pub split: Split,
    pub check: SplitCheck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    Admissible(AdmissibilityWitness),
    Refused(Refusal),
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible(_))
    }

    pub fn witness(&self) -> Option<&AdmissibilityWitness> {
        match self {
            Admissibility::Admissible(w) => Some(w),
            Admissibility::Refused(_) => None,
        }
    }
}

/// Moves up to `amount` from the coefficients of `poly` at `exps` into `q`, in order.
fn take(poly: &LaurentPoly, exps: impl Iterator<Item = i64>, amount: &BigUint, q: &mut LaurentPoly) {
    let mut left = amount.clone();
    for k in exps {
        if left.is_zero() {
            break;
        }
        let room = poly.coeff(k) - q.coeff(k).min(poly.coeff(k));
        let step = room.min(left.clone());
        left -= &step;
        q.add_term(k, step);
    }
}

/// Decides admissibility of `poly` for dimension `n` and returns a witness split.
///
/// With `E` and `O` the sums of the coefficients of `poly` in even and odd degrees of
/// `0..=n`, the values `q(−1)` over admissible `q ≤ poly` fill the integer interval
/// `[1 − O, E]`, and `p(−1) = poly(−1) − q(−1)`.
pub fn is_admissible(poly: &LaurentPoly, n: u32) -> Admissibility {
    let p0 = poly.constant_term();
    if p0.is_zero() {
        return Admissibility::Refused(Refusal::NoConstantTerm);
    }
    let hi = i64::from(n);
    let evens = || (0..=hi).step_by(2);
    let odds = || (1..=hi).step_by(2);
    let even_sum: BigUint = evens().map(|k| poly.coeff(k)).sum();
    let odd_sum: BigUint = odds().map(|k| poly.coeff(k)).sum();
    let target = poly.eval_minus_one();
    let mut q = LaurentPoly::monomial(0, 1u32);
    let reached = if n % 2 == 1 {
        if !(&target % 2u32).is_zero() {
            true
        } else if !odd_sum.is_zero() {
            take(poly, odds(), &BigUint::one(), &mut q);
            true
        } else if even_sum > BigUint::one() {
            take(poly, evens(), &BigUint::one(), &mut q);
            true
        } else {
            false
        }
    } else {
        let (lo, top) = (BigInt::one() - BigInt::from(odd_sum), BigInt::from(even_sum));
        if target < lo || target > top {
            false
        } else {
            let excess = &target - BigInt::one();
            let amount = excess.magnitude().clone();
            if excess >= BigInt::zero() {
                take(poly, evens(), &amount, &mut q);
            } else {
                take(poly, odds(), &amount, &mut q);
            }
            true
        }
    };
    if !reached {
        return Admissibility::Refused(Refusal::Parity);
    }
    let p = poly.checked_sub(&q).expect("q is taken from the coefficients of the polynomial");
    let split = Split { q, p };
    let check = check_split(poly, &split, n);
    debug_assert!(check.passes());
    Admissibility::Admissible(AdmissibilityWitness { split, check })
}

/// Every `q ≤ poly` with support in `0..=n`, smallest first in each coefficient. The count is
/// the product of `coefficient + 1` over those degrees, so this is for small inputs only.
pub fn candidate_splits(poly: &LaurentPoly, n: u32) -> Vec<Split> {
    let mut qs = vec![LaurentPoly::zero()];
    for k in 0..=i64::from(n) {
        let top = poly.coeff(k).to_u64().expect("coefficient small enough to enumerate");
        qs = qs
            .into_iter()
            .flat_map(|q| {
                (0..=top).map(move |c| {
                    let mut q = q.clone();
                    q.add_term(k, BigUint::from(c));
                    q
                })
            })
            .collect();
    }
    qs.into_iter().map(|q| Split { p: poly.checked_sub(&q).expect("q below poly"), q }).collect()
}

/// The exhaustive oracle for [`is_admissible`]: the first passing split, if any.
pub fn admissible_by_search(poly: &LaurentPoly, n: u32) -> Option<Split> {
    candidate_splits(poly, n).into_iter().find(|s| check_split(poly, s, n).passes())
}

/// `q = Σ_k dim im τ_{sign,k} t^k` for a pair, with `p = P − q`.
pub fn duality_split(maps: &DualityMaps, sign: Sign) -> Split {
    let side = maps.side(sign);
    let total = side.homology.poincare();
    let mut q = LaurentPoly::zero();
    for k in [0, N] {
        q.add_term(k, BigUint::from(maps.image(sign, k).dim()));
    }
    let p = total.checked_sub(&q).expect("im τ_k has dimension at most rank LCH_k");
    Split { q, p }
}

/// What the admissibility theorem predicts for one non-homotopic pair, in both orderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairGeography {
    /// The splits along `im τ_{+,k}` and `im τ_{−,k}`.
    pub plus: Split,
    pub minus: Split,
    /// Both Poincaré polynomials are admissible.
    pub plus_admissible: bool,
    pub minus_admissible: bool,
    /// Whether the `im τ` split itself is an admissibility witness. The theorem does not
    /// depend on this: on the three-component chain the split leaves `p(−1)` odd while
    /// another split of the same polynomial works.
    pub split_witnesses: (bool, bool),
    /// `dim im τ_{±,n}` for `(+, −)`, each below the number of components.
    pub top_images: (usize, usize),
}

impl PairGeography {
    pub fn holds(&self, components: usize) -> bool {
        self.plus_admissible
            && self.minus_admissible
            && self.top_images.0 < components
            && self.top_images.1 < components
            && !self.plus.q.constant_term().is_zero()
            && !self.minus.q.constant_term().is_zero()
    }
}

/// Splits both Poincaré polynomials of a pair along `im τ` and checks admissibility.
pub fn pair_geography(maps: &DualityMaps) -> PairGeography {
    let n = N as u32;
    let (plus, minus) = (duality_split(maps, Sign::Plus), duality_split(maps, Sign::Minus));
    let total = |s: &Split| &s.q + &s.p;
    PairGeography {
        plus_admissible: is_admissible(&total(&plus), n).is_admissible(),
        minus_admissible: is_admissible(&total(&minus), n).is_admissible(),
        split_witnesses: (check_split(&total(&plus), &plus, n).passes(), check_split(&total(&minus), &minus, n).passes()),
        top_images: (maps.image(Sign::Plus, N).dim(), maps.image(Sign::Minus, N).dim()),
        plus,
        minus,
    }
}

/// A front with a certified augmentation pair.
#[derive(Debug, Clone)]
pub struct Block {
    pub name: String,
    pub front: FrontDiagram,
    pub dga: Dga,
    pub e1: Augmentation,
    pub e2: Augmentation,
    pub poincare: LaurentPoly,
    pub homotopic: bool,
}

impl Block {
    /// Recomputes the pair's polynomial and homotopy verdict; `expected`, when given, must match.
    pub fn certify(name: &str, front: FrontDiagram, e1: &str, e2: &str, expected: Option<&str>) -> Result<Block, GeographyError> {
        let fail = |reason: String| GeographyError::Block { name: name.to_string(), reason };
        let dga = link_algebra(&front, N)?;
        let (a, b) = (Augmentation::parse(&dga, e1)?, Augmentation::parse(&dga, e2)?);
        let poincare = bilinearize(&dga, &a, &b)?.poincare();
        if let Some(text) = expected {
            let want: LaurentPoly = text.parse().map_err(|e| fail(format!("{e}")))?;
            if want != poincare {
                return Err(fail(format!("manifest says P = {want}, recomputed {poincare}")));
            }
        }
        let homotopic = is_homotopic(&dga, &a, &b)?.is_homotopic();
        Ok(Block { name: name.to_string(), front, dga, e1: a, e2: b, poincare, homotopic })
    }

    pub fn is_connected(&self) -> bool {
        self.dga.component_count() == 1
    }

    /// `p̃ = P − 1` for a connected block with a non-homotopic pair.
    pub fn p_part(&self) -> Option<LaurentPoly> {
        if !self.is_connected() || self.homotopic {
            return None;
        }
        self.poincare.checked_sub(&LaurentPoly::monomial(0, 1u32))
    }
}

/// The pieces realization draws from.
#[derive(Debug, Clone)]
pub struct BlockLibrary {
    pub hopf: Block,
    pub lambda_prime: Block,
    pub whitney: Block,
    connected: Vec<Block>,
}

/// `(corpus entry, e1, e2, P)` for every shipped block.
const MANIFEST: &[(&str, &str, &str, &str)] = &[
    ("hopf", "{m12=1}", "{}", "1 + t"),
    ("lambda-prime", "{m12=1}", "{}", "1"),
    ("unknot", "{}", "{}", "t"),
    ("trefoil", "{c3=1}", "{c2=1, c3=1}", "1"),
    ("psi-2", "{c5=1}", "{c4=1, c5=1}", "3"),
    ("psi-t-inv-t", "{c9=1}", "{c2=1, c9=1}", "t^-1 + 1 + t"),
];

impl BlockLibrary {
    pub fn shipped() -> Result<BlockLibrary, GeographyError> {
        let mut blocks = MANIFEST
            .iter()
            .map(|&(name, e1, e2, p)| Block::certify(name, corpus::front(name), e1, e2, Some(p)))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter();
        let mut next = || blocks.next().expect("manifest lists the three fixed blocks first");
        let (hopf, lambda_prime, whitney) = (next(), next(), next());
        let mut lib = BlockLibrary { hopf, lambda_prime: lambda_prime.clone(), whitney, connected: Vec::new() };
        lib.add(lambda_prime)?;
        for b in blocks {
            lib.add(b)?;
        }
        Ok(lib)
    }

    /// Adds a connected block; its pair must be non-homotopic.
    pub fn add(&mut self, block: Block) -> Result<(), GeographyError> {
        if block.p_part().is_none() {
            return Err(GeographyError::Block {
                name: block.name.clone(),
                reason: "a connected block needs one component and a non-homotopic pair".into(),
            });
        }
        self.connected.push(block);
        Ok(())
    }

    pub fn connected(&self) -> &[Block] {
        &self.connected
    }

    /// Blocks whose `p̃` parts sum to `p`, using at most `limit` blocks and at least one.
    /// Blocks with `p̃ = 0` fill in only when nothing else is needed.
    pub fn decompose(&self, p: &LaurentPoly, limit: usize) -> Option<Vec<&Block>> {
        let useful: Vec<(&Block, LaurentPoly)> =
            self.connected.iter().filter_map(|b| b.p_part().filter(|x| !x.is_zero()).map(|x| (b, x))).collect();
        fn go<'a>(rest: &LaurentPoly, from: usize, useful: &[(&'a Block, LaurentPoly)], limit: usize, acc: &mut Vec<&'a Block>) -> bool {
            if rest.is_zero() {
                return true;
            }
            if acc.len() == limit {
                return false;
            }
            for (i, (b, x)) in useful.iter().enumerate().skip(from) {
                if let Some(next) = rest.checked_sub(x) {
                    acc.push(*b);
                    if go(&next, i, useful, limit, acc) {
                        return true;
                    }
                    acc.pop();
                }
            }
            false
        }
        let mut acc = Vec::new();
        if limit == 0 || !go(p, 0, &useful, limit, &mut acc) {
            return None;
        }
        if acc.is_empty() {
            acc.push(self.connected.iter().find(|b| b.p_part().is_some_and(|x| x.is_zero()))?);
        }
        Some(acc)
    }
}

/// One piece of a split link and the pair it carries.
#[derive(Debug, Clone, Copy)]
pub struct Piece<'a> {
    pub block: &'a Block,
    pub e1: &'a Augmentation,
    pub e2: &'a Augmentation,
}

impl<'a> Piece<'a> {
    pub fn as_certified(block: &'a Block) -> Piece<'a> {
        Piece { block, e1: &block.e1, e2: &block.e2 }
    }
}

/// A horizontally displaced union of pieces with the pieces' pairs carried over.
#[derive(Debug, Clone)]
pub struct Assembly {
    pub front: FrontDiagram,
    pub dga: Dga,
    pub e1: Augmentation,
    pub e2: Augmentation,
    /// For each piece, the generator of the union matching each of its own generators.
    pub generators: Vec<Vec<usize>>,
    /// For each piece, the component of the union matching each of its own components.
    pub components: Vec<Vec<usize>>,
    pub names: Vec<String>,
}

fn shifted(o: Origin, by: usize) -> Origin {
    match o {
        Origin::Crossing { event } => Origin::Crossing { event: event + by },
        Origin::RightCusp { event } => Origin::RightCusp { event: event + by },
        Origin::Surgery { event } => Origin::Surgery { event: event + by },
    }
}

pub fn assemble(pieces: &[Piece<'_>]) -> Result<Assembly, GeographyError> {
    let first = pieces.first().ok_or(GeographyError::Parameters { r: 0, m: 0 })?;
    let mut front = first.block.front.clone();
    for p in &pieces[1..] {
        front = FrontDiagram::disjoint_union(&front, &p.block.front);
    }
    let dga = link_algebra(&front, N)?;
    let by_origin: HashMap<Origin, usize> = dga.generators().iter().enumerate().map(|(i, g)| (g.origin, i)).collect();
    let (mut e1, mut e2) = (vec![false; dga.len()], vec![false; dga.len()]);
    let (mut generators, mut components) = (Vec::new(), Vec::new());
    let (mut event_offset, mut component_offset) = (0, 0);
    for p in pieces {
        let local = &p.block.dga;
        let mut map = Vec::with_capacity(local.len());
        for (i, g) in local.generators().iter().enumerate() {
            let target = *by_origin.get(&shifted(g.origin, event_offset)).expect("every piece generator survives the union");
            e1[target] = p.e1.get(i);
            e2[target] = p.e2.get(i);
            map.push(target);
        }
        let originals = p.block.front.component_count();
        let mut comps = vec![usize::MAX; local.component_count()];
        for c in 0..originals {
            comps[local.component_of_original(c)] = dga.component_of_original(component_offset + c);
        }
        generators.push(map);
        components.push(comps);
        event_offset += p.block.front.events().len();
        component_offset += originals;
    }
    let (e1, e2) = (Augmentation::from_values(e1), Augmentation::from_values(e2));
    e1.validate(&dga)?;
    e2.validate(&dga)?;
    let names = pieces.iter().map(|p| p.block.name.clone()).collect();
    Ok(Assembly { front, dga, e1, e2, generators, components, names })
}

/// `r` copies of `Λ′` with `ε_L^m`, `ε_R^m`, certified to have `dim im τ_{+,1} = m`.
#[derive(Debug, Clone)]
pub struct LambdaR {
    pub r: usize,
    pub m: usize,
    pub assembly: Assembly,
    pub image_dim: usize,
    pub homotopic: bool,
}

pub fn build_lambda_r(lib: &BlockLibrary, r: usize, m: usize) -> Result<LambdaR, GeographyError> {
    if r == 0 || m >= r {
        return Err(GeographyError::Parameters { r, m });
    }
    let lp = &lib.lambda_prime;
    let pieces: Vec<Piece<'_>> =
        (0..r).map(|j| Piece { block: lp, e1: &lp.e1, e2: if j < m { &lp.e1 } else { &lp.e2 } }).collect();
    let assembly = assemble(&pieces)?;
    let maps = DualityMaps::new(&assembly.dga, &assembly.e1, &assembly.e2)?;
    let whole = &maps.plus.tau_n;
    let mut covered = vec![vec![false; assembly.dga.len()]; assembly.dga.component_count()];
    for (j, piece) in pieces.iter().enumerate() {
        let own = DualityMaps::new(&piece.block.dga, piece.e1, piece.e2)?;
        for (row, &to_row) in assembly.components[j].iter().enumerate() {
            for (col, &to_col) in assembly.generators[j].iter().enumerate() {
                if own.plus.tau_n.get(row, col) != whole.get(to_row, to_col) {
                    return Err(GeographyError::NotSplit);
                }
                covered[to_row][to_col] = true;
            }
        }
    }
    let outside_vanishes =
        covered.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &c)| c || !whole.get(i, j)));
    if !outside_vanishes {
        return Err(GeographyError::NotSplit);
    }
    let image_dim = maps.image(Sign::Plus, N).dim();
    if image_dim != m {
        return Err(GeographyError::ImageDimension { want: m, got: image_dim });
    }
    let homotopic = is_homotopic(&assembly.dga, &assembly.e1, &assembly.e2)?.is_homotopic();
    if homotopic {
        return Err(GeographyError::Homotopic);
    }
    Ok(LambdaR { r, m, assembly, image_dim, homotopic })
}

/// A link and non-homotopic pair realizing a requested polynomial.
#[derive(Debug, Clone)]
pub struct Realization {
    pub request: LaurentPoly,
    pub split: Split,
    pub assembly: Assembly,
    pub poincare: LaurentPoly,
}

fn small(c: &BigUint, poly: &LaurentPoly) -> Result<usize, GeographyError> {
    c.to_usize().filter(|&c| c <= MAX_PIECES).ok_or_else(|| GeographyError::TooLarge(poly.clone()))
}

/// Builds a link whose pair has Poincaré polynomial `poly`, then recomputes it.
///
/// The Hopf link is returned as it is for `1 + t`. Otherwise the admissible splits are tried
/// with the largest `q` first: `b` connected blocks whose `p̃` parts sum to `p`, `q(0) − b`
/// copies of `Λ′`, and `q_1` unknots. A connected block with exactly `poly` is the last resort.
pub fn realize(poly: &LaurentPoly, n: u32, lib: &BlockLibrary) -> Result<Realization, GeographyError> {
    if n != 1 {
        return Err(GeographyError::Dimension(n));
    }
    if let Admissibility::Refused(refusal) = is_admissible(poly, n) {
        return Err(GeographyError::Inadmissible { poly: poly.clone(), n, refusal });
    }
    if lib.hopf.poincare == *poly {
        return direct(poly, &lib.hopf);
    }
    for k in 0..=i64::from(n) {
        small(&poly.coeff(k), poly)?;
    }
    let mut splits: Vec<Split> = candidate_splits(poly, n).into_iter().filter(|s| check_split(poly, s, n).passes()).collect();
    splits.reverse();
    for split in splits {
        let constant = small(&split.q.constant_term(), poly)?;
        let tops = small(&split.q.coeff(1), poly)?;
        let Some(blocks) = lib.decompose(&split.p, constant) else {
            continue;
        };
        let fill = constant - blocks.len();
        let mut pieces: Vec<Piece<'_>> = blocks.into_iter().map(Piece::as_certified).collect();
        pieces.extend((0..fill).map(|_| Piece::as_certified(&lib.lambda_prime)));
        pieces.extend((0..tops).map(|_| Piece::as_certified(&lib.whitney)));
        if pieces.len() > MAX_PIECES {
            return Err(GeographyError::TooLarge(poly.clone()));
        }
        return finish(poly, split, assemble(&pieces)?);
    }
    match lib.connected.iter().find(|b| b.poincare == *poly) {
        Some(b) => direct(poly, b),
        None => Err(GeographyError::Unreachable(poly.clone())),
    }
}

fn direct(poly: &LaurentPoly, b: &Block) -> Result<Realization, GeographyError> {
    let assembly = assemble(&[Piece::as_certified(b)])?;
    let split = duality_split(&DualityMaps::new(&b.dga, &b.e1, &b.e2)?, Sign::Plus);
    finish(poly, split, assembly)
}

fn finish(poly: &LaurentPoly, split: Split, assembly: Assembly) -> Result<Realization, GeographyError> {
    let poincare = bilinearize(&assembly.dga, &assembly.e1, &assembly.e2)?.poincare();
    if poincare != *poly {
        return Err(GeographyError::Mismatch { want: poly.clone(), got: poincare });
    }
    if is_homotopic(&assembly.dga, &assembly.e1, &assembly.e2)?.is_homotopic() {
        return Err(GeographyError::Homotopic);
    }
    Ok(Realization { request: poly.clone(), split, assembly, poincare })
}

/// Augmentation values of a union, keyed by generator name, for reports.
pub fn named_values(a: &Assembly, e: &Augmentation) -> HashMap<String, bool> {
    a.dga.names().into_iter().zip(e.values().iter().copied()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(is_admissible(&poly("1 + t"), 1).is_admissible());
        assert!(is_admissible(&poly("3"), 1).is_admissible());
        assert_eq!(is_admissible(&poly("t^-1"), 1), Admissibility::Refused(Refusal::NoConstantTerm));
        assert_eq!(is_admissible(&poly("1 + t^-1"), 1), Admissibility::Refused(Refusal::Parity));
        assert_eq!(is_admissible(&poly("1 + t^-1"), 2), Admissibility::Refused(Refusal::Parity));
        assert!(is_admissible(&poly("2"), 2).is_admissible());
        assert!(is_admissible(&poly("1 + t + t^2"), 2).is_admissible());
    }

    #[test]
    fn witness_split_passes_its_own_check() {
        let p = poly("t^-3 + 2 + t + 4t^5");
        let w = is_admissible(&p, 1);
        let w = w.witness().unwrap();
        assert!(w.check.passes());
        assert_eq!(&w.split.q + &w.split.p, p);
    }

    proptest! {
        #[test]
        fn closed_form_matches_search(coeffs in proptest::collection::vec(0u64..4, 1..6), low in -3i64..1, n in 1u32..4) {
            let p = LaurentPoly::from_counts(coeffs.iter().enumerate().map(|(i, &c)| (low + i as i64, c)));
            prop_assert_eq!(is_admissible(&p, n).is_admissible(), admissible_by_search(&p, n).is_some());
        }
    }

    #[test]
    fn shipped_library_certifies() {
        let lib = BlockLibrary::shipped().unwrap();
        assert!(!lib.hopf.homotopic);
        assert!(!lib.lambda_prime.homotopic);
        assert!(lib.connected().iter().all(|b| b.is_connected() && !b.homotopic));
    }

    #[test]
    fn realizes_small_polynomials() {
        let lib = BlockLibrary::shipped().unwrap();
        for s in ["1 + t", "2 + t", "3", "1", "2 + 2t", "t^-1 + 2 + t", "5", "t^-1 + 3 + 2t"] {
            let r = realize(&poly(s), 1, &lib).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(r.poincare, poly(s));
        }
        let names = |s: &str| realize(&poly(s), 1, &lib).unwrap().assembly.names;
        assert_eq!(names("1 + t"), ["hopf"]);
        assert_eq!(names("3"), ["lambda-prime"; 3]);
        assert_eq!(names("2 + t"), ["lambda-prime", "lambda-prime", "unknot"]);
        assert!(matches!(realize(&poly("t"), 1, &lib), Err(GeographyError::Inadmissible { .. })));
        assert!(matches!(realize(&poly("4 + t^-1"), 1, &lib), Err(GeographyError::Unreachable(_))));
        assert!(matches!(realize(&poly("1"), 2, &lib), Err(GeographyError::Dimension(2))));
    }

    #[test]
    fn lambda_r_images() {
        let lib = BlockLibrary::shipped().unwrap();
        for m in 0..3 {
            let built = build_lambda_r(&lib, 3, m).unwrap();
            assert_eq!(built.image_dim, m);
        }
        assert!(matches!(build_lambda_r(&lib, 2, 2), Err(GeographyError::Parameters { .. })));
    }
}
