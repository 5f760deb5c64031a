//! Rigid disks of the resolved front, decorated with the marks their boundaries cross.
//!
//! The front is first turned into its Lagrangian picture: left cusps become smooth turns and
//! each right cusp becomes a small loop. A vertical line then meets a disk in a family of
//! intervals ("sheets"), each bounded by an upper and a lower boundary strand. The sweep
//! carries these sheets across the picture, together with the boundary collected so far on
//! every connected piece. Sheets appear and split at turns facing the sweep, and close or
//! merge at turns facing away. At a crossing an upper boundary may turn into the bottom
//! quadrant and a lower boundary into the top one, giving a negative corner, and exactly one
//! crossing hosts the positive corner. Two sweeps in opposite directions are run; they must
//! agree.
//!
//! Boundary items are listed counterclockwise, starting just after the positive corner.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use crate::algebra::Word;
use crate::diagram::Event;
use crate::resolve::{MarkLocation, Quadrant, ResolvedDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryItem {
    /// A negative corner at the chord with this index.
    Letter(usize),
    /// A crossing of the mark with this index.
    Mark(usize),
}

/// A convex corner of a disk at a chord, with the quadrant it occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub chord: usize,
    pub quadrant: Quadrant,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedDisk {
    pub positive: usize,
    pub boundary: Vec<BoundaryItem>,
    /// The positive corner first, then the negative corners in boundary order.
    pub corners: Vec<Corner>,
}

impl DecoratedDisk {
    /// Negative corner word `b₁ … b_m` in chord indices.
    pub fn word(&self) -> Word {
        Word(
            self.boundary
                .iter()
                .filter_map(|b| match b {
                    BoundaryItem::Letter(c) => Some(*c),
                    BoundaryItem::Mark(_) => None,
                })
                .collect(),
        )
    }

    /// `(mark, l)` for each mark crossing, where `l − 1` negative corners precede it.
    pub fn mark_positions(&self) -> Vec<(usize, usize)> {
        let mut letters = 0;
        let mut out = Vec::new();
        for b in &self.boundary {
            match b {
                BoundaryItem::Letter(_) => letters += 1,
                BoundaryItem::Mark(m) => out.push((*m, letters + 1)),
            }
        }
        out
    }
}

/// `(component, l)` for every crossing of a mark drawn from `marks` (indices into the
/// diagram's mark table).
pub fn boundary_marks(d: &ResolvedDiagram, disk: &DecoratedDisk, marks: &[usize]) -> Vec<(usize, usize)> {
    disk.mark_positions()
        .into_iter()
        .filter(|(m, _)| marks.contains(m))
        .map(|(m, l)| (d.marks()[m].component, l))
        .collect()
}

/// Marks located on strands in the column of event `e`, as `(mark, position)`.
fn strand_marks(d: &ResolvedDiagram, e: usize) -> Vec<(usize, usize)> {
    d.marks()
        .iter()
        .enumerate()
        .filter_map(|(i, m)| match m.location {
            MarkLocation::Strand { event, pos } if event == e => Some((i, pos)),
            _ => None,
        })
        .collect()
}

/// One event of the Lagrangian resolution: front crossings stay crossings, left cusps become
/// smooth leftmost turns, and each right cusp becomes a crossing followed by the rightmost
/// turn of a small loop, which carries the cusp's basepoint.
#[derive(Debug, Clone)]
enum Step {
    /// Strands `pos`, `pos + 1` exist ahead of this turn but not behind it.
    Open { pos: usize, marks: Vec<usize> },
    /// Strands `pos`, `pos + 1` exist behind this turn but not ahead of it.
    Close { pos: usize, marks: Vec<usize> },
    Cross { pos: usize, chord: usize },
    Marks(Vec<(usize, usize)>),
}

/// Quadrants of a crossing relative to the sweep direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Ahead,
    Behind,
}

#[derive(Debug, Clone, Copy)]
enum Item {
    Letter(usize, Quadrant),
    Mark(usize),
    Positive(usize, Side),
}

#[derive(Debug, Clone, Copy)]
enum Elem {
    Item(Item),
    Cut(usize),
}

#[derive(Debug, Clone, Copy)]
struct Sheet {
    u: usize,
    l: usize,
    piece: usize,
}

/// The part of a disk already swept. Every vertical line meets it in `sheets`; each connected
/// `piece` keeps its boundary as a cyclic counterclockwise sequence in which `Cut(s)` stands
/// for the still-open interval of sheet `s`, traversed from its upper end to its lower end.
#[derive(Debug, Clone, Default)]
struct State {
    sheets: Vec<Option<Sheet>>,
    pieces: Vec<Option<Vec<Elem>>>,
    positive: bool,
}

impl State {
    fn live(&self) -> Vec<(usize, Sheet)> {
        self.sheets.iter().enumerate().filter_map(|(i, s)| s.map(|s| (i, s))).collect()
    }

    fn cut_index(&self, s: usize) -> usize {
        let piece = self.sheets[s].expect("live sheet").piece;
        self.pieces[piece].as_ref().expect("live piece").iter().position(|e| matches!(e, Elem::Cut(c) if *c == s)).expect("cut present")
    }

    fn piece_mut(&mut self, s: usize) -> &mut Vec<Elem> {
        let piece = self.sheets[s].expect("live sheet").piece;
        self.pieces[piece].as_mut().expect("live piece")
    }

    fn new_piece(&mut self, u: usize, l: usize, arc: Vec<Item>) {
        let s = self.sheets.len();
        let piece = self.pieces.len();
        self.sheets.push(Some(Sheet { u, l, piece }));
        let mut elems = vec![Elem::Cut(s)];
        elems.extend(arc.into_iter().map(Elem::Item));
        self.pieces.push(Some(elems));
    }

    fn move_sheet(&mut self, s: usize, u: usize, l: usize) {
        let sheet = self.sheets[s].as_mut().expect("live sheet");
        sheet.u = u;
        sheet.l = l;
    }

    fn push_upper(&mut self, s: usize, item: Item) {
        let at = self.cut_index(s);
        self.piece_mut(s).insert(at, Elem::Item(item));
    }

    fn push_lower(&mut self, s: usize, item: Item) {
        let at = self.cut_index(s);
        self.piece_mut(s).insert(at + 1, Elem::Item(item));
    }

    /// Closes sheet `s`, leaving `fill` where its interval was.
    fn close(&mut self, s: usize, fill: &[Item]) {
        let at = self.cut_index(s);
        self.piece_mut(s).splice(at..=at, fill.iter().copied().map(Elem::Item));
        self.sheets[s] = None;
    }

    fn split(&mut self, s: usize, first: (usize, usize), marks: &[usize], second: (usize, usize)) {
        let piece = self.sheets[s].expect("live sheet").piece;
        let at = self.cut_index(s);
        let (a, b) = (self.sheets.len(), self.sheets.len() + 1);
        self.sheets.push(Some(Sheet { u: first.0, l: first.1, piece }));
        self.sheets.push(Some(Sheet { u: second.0, l: second.1, piece }));
        self.sheets[s] = None;
        let mut run = vec![Elem::Cut(a)];
        run.extend(marks.iter().map(|&m| Elem::Item(Item::Mark(m))));
        run.push(Elem::Cut(b));
        self.pieces[piece].as_mut().expect("live piece").splice(at..=at, run);
    }

    /// Joins sheet `a`, whose lower boundary runs into a turn, to sheet `b`, whose upper
    /// boundary leaves it. Fails if they already belong to one piece.
    fn merge(&mut self, a: usize, b: usize, turn: &[Item]) -> bool {
        let (sa, sb) = (self.sheets[a].expect("live sheet"), self.sheets[b].expect("live sheet"));
        if sa.piece == sb.piece {
            return false;
        }
        let rotate = |state: &State, s: usize| {
            let elems = state.pieces[state.sheets[s].expect("live").piece].as_ref().expect("live piece");
            let at = state.cut_index(s);
            elems[at + 1..].iter().chain(&elems[..at]).copied().collect::<Vec<_>>()
        };
        let (after_a, after_b) = (rotate(self, a), rotate(self, b));
        let m = self.sheets.len();
        self.sheets.push(Some(Sheet { u: sa.u, l: sb.l, piece: sa.piece }));
        let mut joined = vec![Elem::Cut(m)];
        joined.extend(after_b);
        joined.extend(turn.iter().copied().map(Elem::Item));
        joined.extend(after_a);
        for s in self.sheets.iter_mut().flatten() {
            if s.piece == sb.piece {
                s.piece = sa.piece;
            }
        }
        self.sheets[a] = None;
        self.sheets[b] = None;
        self.pieces[sb.piece] = None;
        self.pieces[sa.piece] = Some(joined);
        true
    }
}

enum Verdict {
    Open,
    Done(Vec<Item>),
    Dead,
}

impl State {
    /// The state with sheet and piece labels forgotten. Two states with the same signature
    /// have the same futures, so only one of them needs to be swept further.
    fn signature(&self) -> Vec<u64> {
        let mut live = self.live();
        live.sort_by_key(|&(_, s)| (s.u, s.l));
        let mut rank = vec![0; self.sheets.len()];
        for (r, &(id, _)) in live.iter().enumerate() {
            rank[id] = r as u64;
        }
        let mut sig = vec![u64::from(self.positive)];
        let mut pieces = Vec::new();
        for &(_, s) in &live {
            sig.extend([s.u as u64, s.l as u64]);
            if !pieces.contains(&s.piece) {
                pieces.push(s.piece);
            }
        }
        for p in pieces {
            sig.push(u64::MAX);
            for e in self.pieces[p].as_ref().expect("live piece") {
                match *e {
                    Elem::Item(Item::Letter(c, q)) => sig.extend([0, c as u64, q as u64]),
                    Elem::Item(Item::Mark(m)) => sig.extend([1, m as u64]),
                    Elem::Item(Item::Positive(c, side)) => sig.extend([2, c as u64, side as u64]),
                    Elem::Cut(c) => sig.extend([3, rank[c]]),
                }
            }
        }
        sig
    }

    fn verdict(&self) -> Verdict {
        let pieces: Vec<&Vec<Elem>> = self.pieces.iter().flatten().collect();
        let finished = pieces.iter().filter(|p| !p.iter().any(|e| matches!(e, Elem::Cut(_)))).count();
        match (finished, pieces.len()) {
            (0, _) => Verdict::Open,
            (1, 1) if self.positive => Verdict::Done(
                pieces[0].iter().map(|e| match e {
                    Elem::Item(i) => *i,
                    Elem::Cut(_) => unreachable!("finished piece"),
                }).collect(),
            ),
            _ => Verdict::Dead,
        }
    }
}

/// Every choice of how each live sheet passes a crossing, as `(u, l, upper item, lower item)`.
fn crossing_options(i: usize, chord: usize, s: Sheet) -> Vec<(usize, usize, Option<Item>, Option<Item>)> {
    let (u, l) = (s.u, s.l);
    if u == i {
        vec![(i + 1, l, None, None)]
    } else if u == i + 1 {
        vec![(i, l, None, None), (i + 1, l, Some(Item::Letter(chord, Quadrant::Bottom)), None)]
    } else if l == i {
        vec![(u, i + 1, None, None), (u, i, None, Some(Item::Letter(chord, Quadrant::Top)))]
    } else if l == i + 1 {
        vec![(u, i, None, None)]
    } else {
        vec![(u, l, None, None)]
    }
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        out = out.into_iter().flat_map(|prefix| options.iter().map(move |o| {
            let mut v = prefix.clone();
            v.push(o.clone());
            v
        })).collect();
    }
    out
}

/// All ways to pair each sheet of `a` with a distinct sheet of `b`.
fn matchings(a: &[usize], b: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let Some((&first, rest)) = a.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for (k, &partner) in b.iter().enumerate() {
        let mut others = b.to_vec();
        others.remove(k);
        for mut m in matchings(rest, &others) {
            m.insert(0, (first, partner));
            out.push(m);
        }
    }
    out
}

fn successors(state: &State, step: &Step) -> Vec<State> {
    let live = state.live();
    let mut out = Vec::new();
    match step {
        Step::Marks(marks) => {
            let mut next = state.clone();
            for &(id, s) in &live {
                for &(m, pos) in marks {
                    if pos == s.u {
                        next.push_upper(id, Item::Mark(m));
                    }
                    if pos == s.l {
                        next.push_lower(id, Item::Mark(m));
                    }
                }
            }
            out.push(next);
        }
        Step::Cross { pos, chord } => {
            let i = *pos;
            let mut choices = Vec::new();
            let mut dying = None;
            for &(id, s) in &live {
                if (s.u, s.l) == (i, i + 1) {
                    if state.positive || dying.is_some() {
                        return out;
                    }
                    dying = Some(id);
                    choices.push(Vec::new());
                } else {
                    choices.push(crossing_options(i, *chord, s));
                }
            }
            let choices: Vec<Vec<_>> = choices.into_iter().map(|c| if c.is_empty() { vec![None] } else { c.into_iter().map(Some).collect() }).collect();
            for pick in product(&choices) {
                let mut next = state.clone();
                for (&(id, _), option) in live.iter().zip(&pick) {
                    match option {
                        Some((u, l, up, down)) => {
                            next.move_sheet(id, *u, *l);
                            if let Some(item) = up {
                                next.push_upper(id, *item);
                            }
                            if let Some(item) = down {
                                next.push_lower(id, *item);
                            }
                        }
                        None => {
                            next.close(id, &[Item::Positive(*chord, Side::Behind)]);
                            next.positive = true;
                        }
                    }
                }
                if !next.positive {
                    let mut born = next.clone();
                    born.new_piece(i, i + 1, vec![Item::Positive(*chord, Side::Ahead)]);
                    born.positive = true;
                    out.push(born);
                }
                out.push(next);
            }
        }
        Step::Open { pos, marks } => {
            let i = *pos;
            let shift = |p: usize| if p >= i { p + 2 } else { p };
            let choices: Vec<Vec<bool>> = live.iter().map(|(_, s)| if s.u < i && i <= s.l { vec![false, true] } else { vec![false] }).collect();
            for pick in product(&choices) {
                let mut next = state.clone();
                for (&(id, s), &split) in live.iter().zip(&pick) {
                    if split {
                        next.split(id, (s.u, i), marks, (i + 1, s.l + 2));
                    } else {
                        next.move_sheet(id, shift(s.u), shift(s.l));
                    }
                }
                for _ in 0..=MAX_BIRTHS {
                    out.push(next.clone());
                    next.new_piece(i, i + 1, marks.iter().map(|&m| Item::Mark(m)).collect());
                }
            }
        }
        Step::Close { pos, marks } => {
            let i = *pos;
            let tip: Vec<Item> = marks.iter().map(|&m| Item::Mark(m)).collect();
            let mut next = state.clone();
            let (mut above, mut below) = (Vec::new(), Vec::new());
            for &(id, s) in &live {
                match (s.u, s.l) {
                    (u, l) if (u, l) == (i, i + 1) => next.close(id, &tip),
                    (u, l) if l == i && u < i => above.push(id),
                    (u, l) if u == i + 1 && l > i + 1 => below.push(id),
                    (u, l) if u == i || l == i + 1 || u == i + 1 || l == i => return out,
                    (u, l) => {
                        let shift = |p: usize| if p > i + 1 { p - 2 } else { p };
                        next.move_sheet(id, shift(u), shift(l));
                    }
                }
            }
            if above.len() != below.len() {
                return out;
            }
            'pairs: for m in matchings(&above, &below) {
                let mut joined = next.clone();
                for (a, b) in m {
                    if !joined.merge(a, b, &tip) {
                        continue 'pairs;
                    }
                    let id = joined.sheets.len() - 1;
                    let s = joined.sheets[id].expect("merged sheet");
                    joined.move_sheet(id, s.u, s.l - 2);
                }
                out.push(joined);
            }
        }
    }
    out
}

/// Sheets opened together at one turn are interchangeable, so one disk can be reached once per
/// way of telling them apart. Such repeats share their trace and are counted once.
const MAX_BIRTHS: usize = 3;

type Found = BTreeSet<(u64, DecoratedDisk)>;

/// `ok[k]` holds the intervals a lone sheet could have just before step `k` and still be closed
/// off later, with every merge partner assumed available. A state with any other sheet is dead.
struct Reach {
    width: usize,
    ok: Vec<Vec<bool>>,
}

impl Reach {
    fn new(steps: &[Step]) -> Reach {
        let mut strands: usize = 0;
        let mut width = 2;
        for step in steps {
            match step {
                Step::Open { .. } => strands += 2,
                Step::Close { .. } => strands = strands.saturating_sub(2),
                _ => {}
            }
            width = width.max(strands + 2);
        }
        let mut ok = vec![vec![false; width * width]; steps.len() + 1];
        for k in (0..steps.len()).rev() {
            let (now, ahead) = ok.split_at_mut(k + 1);
            let (now, ahead) = (&mut now[k], &ahead[0]);
            let at = |u: usize, l: usize| u < l && l < width && ahead[u * width + l];
            for u in 1..width {
                for l in u + 1..width {
                    now[u * width + l] = match &steps[k] {
                        Step::Marks(_) => at(u, l),
                        Step::Cross { pos, chord } => {
                            let i = *pos;
                            (u, l) == (i, i + 1) || crossing_options(i, *chord, Sheet { u, l, piece: 0 }).iter().any(|&(a, b, _, _)| at(a, b))
                        }
                        Step::Open { pos, .. } => {
                            let i = *pos;
                            let shift = |p: usize| if p >= i { p + 2 } else { p };
                            at(shift(u), shift(l)) || (u < i && i <= l && at(u, i) && at(i + 1, l + 2))
                        }
                        Step::Close { pos, .. } => {
                            let i = *pos;
                            let shift = |p: usize| if p > i + 1 { p - 2 } else { p };
                            if (u, l) == (i, i + 1) {
                                true
                            } else if l == i && u < i {
                                (i..width).any(|b| at(u, b))
                            } else if u == i + 1 && l > i + 1 {
                                (1..i).any(|a| at(a, l - 2))
                            } else if u == i || l == i + 1 || u == i + 1 || l == i {
                                false
                            } else {
                                at(shift(u), shift(l))
                            }
                        }
                    };
                }
            }
        }
        Reach { width, ok }
    }

    fn viable(&self, k: usize, state: &State) -> bool {
        state.live().iter().all(|(_, s)| s.l < self.width && self.ok[k][s.u * self.width + s.l])
    }
}

type Layer = HashMap<Vec<u64>, (State, BTreeSet<u64>)>;

impl State {
    /// The state with every boundary letter and mark dropped. Whether a state can still be
    /// completed depends only on this.
    fn shape(&self) -> State {
        let mut bare = self.clone();
        for piece in bare.pieces.iter_mut().flatten() {
            piece.retain(|e| matches!(e, Elem::Cut(_)));
        }
        bare
    }
}

/// For each step, the signatures of bare states from which the rest of the sweep can still
/// finish a disk. Bare layers stay small because letters no longer tell states apart.
fn completable(steps: &[Step], reach: &Reach) -> Vec<HashSet<Vec<u64>>> {
    let mut layers = vec![HashMap::from([(State::default().signature(), State::default())])];
    let mut edges: Vec<Vec<(Vec<u64>, Vec<u64>)>> = Vec::new();
    let mut finishing: Vec<HashSet<Vec<u64>>> = Vec::new();
    for (k, step) in steps.iter().enumerate() {
        let (mut next_layer, mut step_edges, mut done) = (HashMap::new(), Vec::new(), HashSet::new());
        for (sig, state) in &layers[k] {
            for next in successors(state, step) {
                if !reach.viable(k + 1, &next) {
                    continue;
                }
                match next.verdict() {
                    Verdict::Open => {
                        let bare = next.shape();
                        let to = bare.signature();
                        step_edges.push((sig.clone(), to.clone()));
                        next_layer.entry(to).or_insert(bare);
                    }
                    Verdict::Done(_) => {
                        done.insert(sig.clone());
                    }
                    Verdict::Dead => {}
                }
            }
        }
        layers.push(next_layer);
        edges.push(step_edges);
        finishing.push(done);
    }
    let mut alive = vec![HashSet::new(); steps.len() + 1];
    for k in (0..steps.len()).rev() {
        let mut now = std::mem::take(&mut finishing[k]);
        now.extend(edges[k].iter().filter(|(_, to)| alive[k + 1].contains(to)).map(|(from, _)| from.clone()));
        alive[k] = now;
    }
    alive
}

/// Sweeps the steps breadth first. States with the same signature are swept once, carrying
/// the set of traces of every history that reached them. A trace hashes the sorted sheet
/// intervals after each step, so it ignores which sheet is which.
fn sweep(steps: &[Step], reach: &Reach, mirrored: bool) -> Found {
    let alive = completable(steps, reach);
    let mut found = Found::new();
    let mut layer = Layer::new();
    layer.insert(State::default().signature(), (State::default(), BTreeSet::from([0])));
    for (k, step) in steps.iter().enumerate() {
        let mut next_layer = Layer::new();
        for (state, traces) in layer.values() {
            for next in successors(state, step) {
                let verdict = next.verdict();
                match verdict {
                    Verdict::Dead => continue,
                    Verdict::Open if !alive[k + 1].contains(&next.shape().signature()) => continue,
                    _ => {}
                }
                let mut intervals: Vec<(usize, usize)> = next.live().iter().map(|(_, s)| (s.u, s.l)).collect();
                intervals.sort_unstable();
                let extended = traces.iter().map(|&t| {
                    let mut h = DefaultHasher::new();
                    (t, &intervals).hash(&mut h);
                    h.finish()
                });
                match verdict {
                    Verdict::Open => next_layer.entry(next.signature()).or_insert_with(|| (next, BTreeSet::new())).1.extend(extended),
                    Verdict::Done(items) => {
                        let disk = finish(items, mirrored);
                        found.extend(extended.map(|t| (t, disk.clone())));
                    }
                    Verdict::Dead => {}
                }
            }
        }
        layer = next_layer;
    }
    found
}

/// The resolved diagram as steps from left to right.
fn lagrangian_steps(d: &ResolvedDiagram) -> Vec<Step> {
    let mut steps = Vec::new();
    for (e, ev) in d.front().events().iter().enumerate() {
        match ev {
            Event::LeftCusp { pos } => steps.push(Step::Close { pos: *pos, marks: Vec::new() }),
            Event::RightCusp { pos, .. } => {
                let chord = d.chord_at(e).expect("cusp chord");
                steps.push(Step::Cross { pos: *pos, chord });
                let marks = d.marks().iter().enumerate().filter(|(_, m)| m.location == MarkLocation::RightCusp { event: e }).map(|(i, _)| i).collect();
                steps.push(Step::Open { pos: *pos, marks });
            }
            Event::Crossing { pos, .. } => steps.push(Step::Cross { pos: *pos, chord: d.chord_at(e).expect("crossing chord") }),
            Event::Basepoint { .. } | Event::Surgery { .. } => steps.push(Step::Marks(strand_marks(d, e))),
        }
    }
    steps
}

/// Turns a finished boundary into a disk. `mirrored` runs were swept left to right, which
/// reverses the orientation and the roles of the two positive quadrants.
fn finish(items: Vec<Item>, mirrored: bool) -> DecoratedDisk {
    let mut items = items;
    if mirrored {
        items.reverse();
    }
    let at = items.iter().position(|i| matches!(i, Item::Positive(..))).expect("one positive corner");
    let Item::Positive(chord, side) = items[at] else { unreachable!() };
    let quadrant = match (side, mirrored) {
        (Side::Ahead, false) | (Side::Behind, true) => Quadrant::Left,
        _ => Quadrant::Right,
    };
    let mut corners = vec![Corner { chord, quadrant }];
    let mut boundary = Vec::new();
    for item in items[at + 1..].iter().chain(&items[..at]) {
        match *item {
            Item::Letter(c, q) => {
                boundary.push(BoundaryItem::Letter(c));
                corners.push(Corner { chord: c, quadrant: q });
            }
            Item::Mark(m) => boundary.push(BoundaryItem::Mark(m)),
            Item::Positive(..) => unreachable!("one positive corner"),
        }
    }
    DecoratedDisk { positive: chord, boundary, corners }
}

fn grouped(d: &ResolvedDiagram, steps: &[Step], mirrored: bool) -> Vec<Vec<DecoratedDisk>> {
    let found = sweep(steps, &Reach::new(steps), mirrored);
    let mut by_chord = vec![Vec::new(); d.chord_count()];
    for (_, disk) in found {
        by_chord[disk.positive].push(disk);
    }
    for list in &mut by_chord {
        list.sort();
    }
    by_chord
}

/// Every disk of the diagram, grouped by positive corner, from a sweep that runs right to left.
pub fn enumerate_all(d: &ResolvedDiagram) -> Vec<Vec<DecoratedDisk>> {
    let steps: Vec<Step> = lagrangian_steps(d).into_iter().rev().collect();
    grouped(d, &steps, false)
}

/// The same disks from a sweep running left to right, as an independent check. Turns swap
/// their roles: left cusps open strands in this direction and loop tips close them.
pub fn enumerate_all_rightward(d: &ResolvedDiagram) -> Vec<Vec<DecoratedDisk>> {
    let steps: Vec<Step> = lagrangian_steps(d)
        .into_iter()
        .map(|s| match s {
            // Orientation is reversed at the end, so marks sharing a turn go in backwards.
            Step::Close { pos, mut marks } => {
                marks.reverse();
                Step::Open { pos, marks }
            }
            Step::Open { pos, mut marks } => {
                marks.reverse();
                Step::Close { pos, marks }
            }
            other => other,
        })
        .collect();
    grouped(d, &steps, true)
}

/// Disks with positive corner at `chord`, in canonical order.
pub fn enumerate_disks(d: &ResolvedDiagram, chord: usize) -> Vec<DecoratedDisk> {
    enumerate_all(d).swap_remove(chord)
}

/// Debug dump, one disk per line: `a <- b1 b2 ... | marks: (comp,l) ...` with 1-based components.
pub fn dump(d: &ResolvedDiagram, disks: &[DecoratedDisk], names: &[String]) -> String {
    let mut s = String::new();
    let mut prev: Option<(usize, Word)> = None;
    let mut multiplicity = 0;
    for disk in disks {
        let key = (disk.positive, disk.word());
        if prev.as_ref() == Some(&key) {
            multiplicity += 1;
        } else {
            multiplicity = 1;
            prev = Some(key);
        }
        let letters: Vec<&str> = disk.word().0.iter().map(|&c| names[c].as_str()).collect();
        let _ = write!(s, "{} <- {} | marks:", names[disk.positive], letters.join(" "));
        let all: Vec<usize> = (0..d.marks().len()).collect();
        for (comp, l) in boundary_marks(d, disk, &all) {
            let _ = write!(s, " ({},{})", comp + 1, l);
        }
        if multiplicity > 1 {
            let _ = write!(s, " [copy {multiplicity}]");
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_front, FrontDiagram};
    use crate::resolve::resolve;
    use proptest::prelude::*;

    fn words(d: &ResolvedDiagram, chord: usize) -> Vec<Vec<usize>> {
        enumerate_disks(d, chord).iter().map(|k| k.word().0).collect()
    }

    #[test]
    fn unknot_has_two_lobes() {
        let d = resolve(&parse_front("legendrian v1\nevents:\nL 1\nR 1\n").unwrap());
        let disks = enumerate_disks(&d, 0);
        assert_eq!(disks.len(), 2);
        assert!(disks.iter().all(|k| k.word().is_empty()));
        // Only the thin lobe crosses the cusp basepoint.
        let marks: Vec<Vec<(usize, usize)>> = disks.iter().map(|k| boundary_marks(&d, k, &[0])).collect();
        assert_eq!(marks.iter().filter(|m| m.as_slice() == [(0, 1)]).count(), 1);
        assert_eq!(marks.iter().filter(|m| m.is_empty()).count(), 1);
    }

    #[test]
    fn trefoil_differentials() {
        let d = resolve(&parse_front("legendrian v1\nevents:\nL 1\nL 3\nX 2\nX 2\nX 2\nR 1\nR 1\n").unwrap());
        let (x1, x2, x3) = (0, 1, 2);
        let mut r1 = words(&d, 3);
        r1.sort();
        assert_eq!(r1, vec![vec![], vec![x1], vec![x1, x2, x3], vec![x3]]);
        let mut r2 = words(&d, 4);
        r2.sort();
        assert_eq!(r2, vec![vec![], vec![x1], vec![x3], vec![x3, x2, x1]]);
        for x in [x1, x2, x3] {
            assert!(words(&d, x).is_empty());
        }
    }

    #[test]
    fn hopf_disks_and_surgery_mark() {
        let d = resolve(&parse_front("legendrian v1\ncomponent B shift 1\nevents:\nL 1\nL 3\nS 1 4\nX 2\nX 2\nR 1\nR 1\n").unwrap());
        // chords: 0 = m12, 1 = m21, 2 = cusp of B, 3 = cusp of A
        assert!(words(&d, 0).is_empty());
        assert!(words(&d, 1).is_empty());
        let b: Vec<DecoratedDisk> = enumerate_disks(&d, 2);
        let b_words: Vec<Vec<usize>> = b.iter().map(|k| k.word().0).collect();
        assert!(b_words.contains(&vec![0, 1]));
        let eye = b.iter().find(|k| k.word().0.is_empty() && !k.boundary.contains(&BoundaryItem::Mark(0))).unwrap();
        assert_eq!(boundary_marks(&d, eye, &[2, 3]), vec![(0, 1)]);
        let a: Vec<DecoratedDisk> = enumerate_disks(&d, 3);
        let big = a.iter().find(|k| k.word().0 == vec![1, 0]).unwrap();
        assert_eq!(boundary_marks(&d, big, &[2, 3]), vec![(1, 3)]);
    }

    #[test]
    fn split_diagram_disks_stay_on_their_component() {
        let d = resolve(&parse_front("legendrian v1\nevents:\nL 1\nL 2\nX 1\nR 2\nR 1\nL 1\nR 1\n").unwrap());
        let chords = d.front().chords().unwrap();
        for c in 0..d.chord_count() {
            for k in enumerate_disks(&d, c) {
                for b in k.word().0 {
                    assert_eq!(chords[b].source, chords[c].source);
                }
            }
        }
    }

    #[test]
    fn fish_boundary_wraps_the_inner_cusp() {
        // A kink on the upper strand of the unknot; the outer cusp gets a second empty-word
        // disk whose boundary passes outside the kink's right cusp and its basepoint.
        let d = resolve(&parse_front("legendrian v1\nevents:\nL 1\nL 2\nX 1\nR 2\nR 1\n").unwrap());
        let outer = enumerate_disks(&d, 2);
        assert_eq!(outer.len(), 2);
        assert!(outer.iter().all(|k| k.word().is_empty()));
        // The only basepoint sits on the kink's cusp, so the thin lobe misses it.
        let wrap = outer.iter().find(|k| k.corners[0].quadrant == Quadrant::Left).unwrap();
        assert_eq!(wrap.boundary, vec![BoundaryItem::Mark(0)]);
        assert_eq!(enumerate_all(&d), enumerate_all_rightward(&d));
    }

    #[test]
    fn corners_respect_quadrant_signs() {
        let d = resolve(&parse_front("legendrian v1\nevents:\nL 1\nL 3\nX 2\nX 2\nX 2\nR 1\nR 1\n").unwrap());
        for list in enumerate_all(&d) {
            for k in list {
                assert!(k.corners[0].quadrant.is_positive());
                assert!(k.corners[1..].iter().all(|c| !c.quadrant.is_positive()));
                assert_eq!(k.corners.len(), k.word().len() + 1);
            }
        }
    }

    proptest! {
        #[test]
        fn two_sweep_orders_agree(events in crate::diagram::tests::random_front_events()) {
            let d = resolve(&FrontDiagram::new(Vec::new(), events).unwrap());
            prop_assert_eq!(enumerate_all(&d), enumerate_all_rightward(&d));
        }
    }
}
