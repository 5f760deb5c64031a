//! Legendrian Reidemeister rewrites of front event lists, and basepoint slides.
//!
//! Every rewrite is local: it replaces or inserts a short run of events without changing the
//! strand positions on either side of the run, so events elsewhere keep their meaning.
//! Inserted chords are unnamed and take automatic names.

use thiserror::Error;

use crate::diagram::{DiagramError, Event, FrontDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReidemeisterError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{0} does not apply here")]
    NotApplicable(Move),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Above,
    Below,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Above => "above",
            Side::Below => "below",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    /// First move: a kink on the strand at `pos`, inserted just before event `event`. The
    /// kink's cusps open on the given side of the strand.
    Kink { event: usize, pos: usize, side: Side },
    /// Second move: the cusp of event `event` passes through the neighbouring strand on `side`.
    CuspThrough { event: usize, side: Side },
    /// Third move: the three crossings starting at `event` are replaced by the opposite triple.
    Triple { event: usize },
    /// The basepoint of event `event` trades places with the adjacent crossing, the next one
    /// if `forward`, the previous one otherwise.
    SlideBasepoint { event: usize, forward: bool },
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Move::Kink { event, pos, side } => write!(f, "kink on strand {pos} before event {event} opening {side}"),
            Move::CuspThrough { event, side } => write!(f, "cusp of event {event} through the strand {side}"),
            Move::Triple { event } => write!(f, "triple point at events {event}..{}", event + 2),
            Move::SlideBasepoint { event, forward } => {
                write!(f, "basepoint of event {event} slid {}", if *forward { "forward" } else { "back" })
            }
        }
    }
}

fn crossing(pos: usize) -> Event {
    Event::Crossing { pos, name: None }
}

fn right_cusp(pos: usize) -> Event {
    Event::RightCusp { pos, name: None }
}

/// The replacement events for a move, and the range of old events they replace.
fn rewrite(front: &FrontDiagram, mv: Move) -> Option<(std::ops::Range<usize>, Vec<Event>)> {
    let events = front.events();
    let strands = |e: usize| front.column(e).len();
    match mv {
        Move::Kink { event, pos, side } => {
            if event > events.len() || pos == 0 || pos > strands(event) {
                return None;
            }
            let run = match side {
                Side::Below => vec![Event::LeftCusp { pos: pos + 1 }, crossing(pos), right_cusp(pos + 1)],
                Side::Above => vec![Event::LeftCusp { pos }, crossing(pos + 1), right_cusp(pos)],
            };
            Some((event..event, run))
        }
        Move::CuspThrough { event, side } => {
            let n = strands(*[event, events.len()].iter().min()?);
            let run = match (events.get(event)?, side) {
                (Event::LeftCusp { pos }, Side::Above) if *pos >= 2 => {
                    let q = *pos;
                    vec![Event::LeftCusp { pos: q - 1 }, crossing(q), crossing(q - 1)]
                }
                (Event::LeftCusp { pos }, Side::Below) if *pos <= n => {
                    let q = *pos;
                    vec![Event::LeftCusp { pos: q + 1 }, crossing(q), crossing(q + 1)]
                }
                (Event::RightCusp { pos, name }, Side::Above) if *pos >= 2 => {
                    let q = *pos;
                    vec![crossing(q - 1), crossing(q), Event::RightCusp { pos: q - 1, name: name.clone() }]
                }
                (Event::RightCusp { pos, name }, Side::Below) if pos + 2 <= n => {
                    let q = *pos;
                    vec![crossing(q + 1), crossing(q), Event::RightCusp { pos: q + 1, name: name.clone() }]
                }
                _ => return None,
            };
            Some((event..event + 1, run))
        }
        Move::Triple { event } => {
            let run = events.get(event..event + 3)?;
            let (Event::Crossing { pos: a, name: na }, Event::Crossing { pos: b, name: nb }, Event::Crossing { pos: c, name: nc }) =
                (&run[0], &run[1], &run[2])
            else {
                return None;
            };
            if a != c || a.abs_diff(*b) != 1 {
                return None;
            }
            // The outer crossings swap roles: the pair crossed first is crossed last afterwards.
            let new = vec![
                Event::Crossing { pos: *b, name: nc.clone() },
                Event::Crossing { pos: *a, name: nb.clone() },
                Event::Crossing { pos: *b, name: na.clone() },
            ];
            Some((event..event + 3, new))
        }
        Move::SlideBasepoint { event, forward } => {
            let Event::Basepoint { pos: p } = events.get(event)? else {
                return None;
            };
            let other = if forward { event + 1 } else { event.checked_sub(1)? };
            let Event::Crossing { pos: q, name } = events.get(other)? else {
                return None;
            };
            let moved = if *q == *p {
                q + 1
            } else if q + 1 == *p {
                *q
            } else {
                return None;
            };
            let x = Event::Crossing { pos: *q, name: name.clone() };
            let b = Event::Basepoint { pos: moved };
            Some(if forward { (event..event + 2, vec![x, b]) } else { (other..event + 1, vec![b, x]) })
        }
    }
}

/// Applies a move. Component shifts are adjusted so that the strands left of the rewritten
/// run keep their Maslov potentials, which keeps mixed-chord gradings unchanged.
pub fn apply(front: &FrontDiagram, mv: Move) -> Result<FrontDiagram, ReidemeisterError> {
    let (range, run) = rewrite(front, mv).ok_or(ReidemeisterError::NotApplicable(mv))?;
    let start = range.start;
    let mut events = front.events().to_vec();
    events.splice(range, run);
    let moved = FrontDiagram::new(front.components().to_vec(), events)?;
    let (Ok(before), Ok(after)) = (front.maslov_potentials(), moved.maslov_potentials()) else {
        return Ok(moved);
    };
    let mut components = front.components().to_vec();
    for (k, (&old, &new)) in front.column(start).iter().zip(moved.column(start)).enumerate() {
        let c = front.strand_component(start, k + 1);
        components[c].shift = front.components()[c].shift + before[old] - after[new];
    }
    Ok(FrontDiagram::new(components, moved.events().to_vec())?)
}

/// Every move that applies to `front`, in a fixed order: kinks, cusp moves, triple points,
/// basepoint slides.
pub fn sites(front: &FrontDiagram) -> Vec<Move> {
    let len = front.events().len();
    let mut out = Vec::new();
    for event in 0..=len {
        for pos in 1..=front.column(event).len() {
            for side in [Side::Above, Side::Below] {
                out.push(Move::Kink { event, pos, side });
            }
        }
    }
    let candidates = (0..len)
        .flat_map(|event| [Side::Above, Side::Below].map(|side| Move::CuspThrough { event, side }))
        .chain((0..len).map(|event| Move::Triple { event }))
        .chain((0..len).flat_map(|event| [true, false].map(|forward| Move::SlideBasepoint { event, forward })));
    out.extend(candidates.filter(|&mv| rewrite(front, mv).is_some()));
    out
}

/// A representative set of sites: one kink of each side per strand position of the widest
/// column, plus every cusp, triple-point and basepoint move.
pub fn shipped_sites(front: &FrontDiagram) -> Vec<Move> {
    let all = sites(front);
    let mut kinks_seen = std::collections::BTreeSet::new();
    all.into_iter()
        .filter(|mv| match mv {
            Move::Kink { pos, side, .. } => kinks_seen.insert((*pos, *side)),
            _ => true,
        })
        .collect()
}
