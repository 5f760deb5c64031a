//! Front diagrams in the `legendrian v1` text format.
//!
//! A front is read left to right as a list of events acting on a stack of strand
//! positions numbered from 1 at the top. Strands are traced into segments (maximal
//! arcs between cusps), segments into link components, and components carry a
//! Maslov shift used to regrade mixed chords.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("event {event} (line {line}): {message}")]
    Topology { event: usize, line: usize, message: String },
    #[error("component {component} has no consistent Maslov potential")]
    MaslovObstruction { component: String },
    #[error("duplicate identifier {0:?}")]
    DuplicateName(String),
    #[error("{declared} component declarations but only {found} components in the front")]
    TooManyComponents { declared: usize, found: usize },
    #[error("component {component} carries more than one basepoint")]
    DuplicateBasepoint { component: String },
}

/// One column of the front.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Event {
    /// Left cusp creating strand positions `pos`, `pos + 1`.
    LeftCusp { pos: usize },
    /// Right cusp closing strand positions `pos`, `pos + 1`.
    RightCusp { pos: usize, name: Option<String> },
    /// Crossing of strands at positions `pos` and `pos + 1`.
    Crossing { pos: usize, name: Option<String> },
    /// Basepoint on the strand at `pos`.
    Basepoint { pos: usize },
    /// A pair of 0-surgery marks on the strands at `first` and `second`.
    Surgery { first: usize, second: usize, name: Option<String> },
}

impl Event {
    fn explicit_name(&self) -> Option<&str> {
        match self {
            Event::RightCusp { name, .. } | Event::Crossing { name, .. } | Event::Surgery { name, .. } => {
                name.as_deref()
            }
            _ => None,
        }
    }

    fn set_name(&mut self, new: Option<String>) {
        if let Event::RightCusp { name, .. } | Event::Crossing { name, .. } | Event::Surgery { name, .. } = self {
            *name = new;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentSpec {
    pub name: String,
    pub shift: i64,
}

/// A maximal strand arc between a left cusp and a right cusp.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub component: usize,
    /// Event index of the left cusp that opens the segment.
    pub born: usize,
    /// True for the upper branch of its left cusp.
    pub upper: bool,
    /// Event index of the right cusp that closes the segment.
    pub dies: usize,
}

/// Where a component's basepoint sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasepointSite {
    /// On the strand at `pos` in the column of event `event` (a `B` event).
    Strand { event: usize, pos: usize },
    /// At the tip of the right cusp of event `event`.
    RightCusp { event: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChordKind {
    Crossing,
    RightCusp,
}

/// A Reeb chord of the resolved front with its grading and endpoint components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chord {
    pub name: String,
    pub kind: ChordKind,
    pub event: usize,
    pub degree: i64,
    /// Component containing the lower end of the chord (0-based).
    pub source: usize,
    /// Component containing the upper end of the chord (0-based).
    pub target: usize,
}

impl Chord {
    pub fn is_mixed(&self) -> bool {
        self.source != self.target
    }
}

/// A validated front diagram with its strand tracing. Equality ignores source line numbers.
#[derive(Debug, Clone)]
pub struct FrontDiagram {
    events: Vec<Event>,
    lines: Vec<usize>,
    components: Vec<ComponentSpec>,
    segments: Vec<Segment>,
    columns: Vec<Vec<usize>>,
    basepoints: Vec<BasepointSite>,
    names: Vec<Option<String>>,
}

impl PartialEq for FrontDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.events == other.events && self.components == other.components && self.names == other.names
    }
}

impl Eq for FrontDiagram {}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl FrontDiagram {
    /// Validates an event list. `declared` names and shifts the components in order of
    /// their first left cusp; missing declarations default to `K<i>` with shift 0.
    pub fn new(declared: Vec<ComponentSpec>, events: Vec<Event>) -> Result<Self, DiagramError> {
        let lines = vec![0; events.len()];
        Self::with_lines(declared, events, lines)
    }

    fn with_lines(declared: Vec<ComponentSpec>, events: Vec<Event>, lines: Vec<usize>) -> Result<Self, DiagramError> {
        let topo = |event: usize, message: String| DiagramError::Topology { event: event + 1, line: lines[event], message };
        let mut columns = Vec::with_capacity(events.len() + 1);
        let mut state: Vec<usize> = Vec::new();
        let mut born: Vec<(usize, bool)> = Vec::new();
        let mut dies: Vec<Option<usize>> = Vec::new();
        let mut uf_pairs: Vec<(usize, usize)> = Vec::new();
        for (e, ev) in events.iter().enumerate() {
            columns.push(state.clone());
            let n = state.len();
            let need = |pos: usize, width: usize| pos >= 1 && pos + width - 1 <= n;
            match ev {
                Event::LeftCusp { pos } => {
                    if *pos < 1 || *pos > n + 1 {
                        return Err(topo(e, format!("left cusp at {pos} outside 1..={}", n + 1)));
                    }
                    let (up, down) = (born.len(), born.len() + 1);
                    born.push((e, true));
                    born.push((e, false));
                    dies.push(None);
                    dies.push(None);
                    uf_pairs.push((up, down));
                    state.splice(pos - 1..pos - 1, [up, down]);
                }
                Event::RightCusp { pos, .. } => {
                    if !need(*pos, 2) {
                        return Err(topo(e, format!("right cusp at {pos} needs strands {pos} and {} of {n}", pos + 1)));
                    }
                    let (up, down) = (state[pos - 1], state[*pos]);
                    dies[up] = Some(e);
                    dies[down] = Some(e);
                    uf_pairs.push((up, down));
                    state.drain(pos - 1..pos + 1);
                }
                Event::Crossing { pos, .. } => {
                    if !need(*pos, 2) {
                        return Err(topo(e, format!("crossing at {pos} out of range for {n} strands")));
                    }
                    state.swap(pos - 1, *pos);
                }
                Event::Basepoint { pos } => {
                    if !need(*pos, 1) {
                        return Err(topo(e, format!("basepoint at {pos} out of range for {n} strands")));
                    }
                }
                Event::Surgery { first, second, .. } => {
                    if first == second || !need(*first, 1) || !need(*second, 1) {
                        return Err(topo(e, format!("surgery marks {first}, {second} invalid for {n} strands")));
                    }
                }
            }
        }
        columns.push(state.clone());
        if !state.is_empty() {
            let e = events.len().saturating_sub(1);
            return Err(DiagramError::Topology {
                event: events.len(),
                line: lines.get(e).copied().unwrap_or(0),
                message: format!("{} strand(s) never closed by a right cusp", state.len()),
            });
        }

        let mut uf = UnionFind::new(born.len());
        for (a, b) in uf_pairs {
            uf.union(a, b);
        }
        let mut comp_of_root: HashMap<usize, usize> = HashMap::new();
        let mut seg_component = vec![0; born.len()];
        for (s, slot) in seg_component.iter_mut().enumerate() {
            let root = uf.find(s);
            let next = comp_of_root.len();
            *slot = *comp_of_root.entry(root).or_insert(next);
        }
        let count = comp_of_root.len();
        if declared.len() > count {
            return Err(DiagramError::TooManyComponents { declared: declared.len(), found: count });
        }
        let mut components = declared;
        for i in components.len()..count {
            components.push(ComponentSpec { name: format!("K{}", i + 1), shift: 0 });
        }
        let mut seen = BTreeSet::new();
        for c in &components {
            if !seen.insert(c.name.clone()) {
                return Err(DiagramError::DuplicateName(c.name.clone()));
            }
        }
        let segments: Vec<Segment> = born
            .iter()
            .zip(&dies)
            .zip(&seg_component)
            .map(|((&(b, upper), d), &component)| Segment { component, born: b, upper, dies: d.expect("closed") })
            .collect();

        let mut basepoints: Vec<Option<BasepointSite>> = vec![None; count];
        for (e, ev) in events.iter().enumerate() {
            if let Event::Basepoint { pos } = ev {
                let c = segments[columns[e][pos - 1]].component;
                if basepoints[c].is_some() {
                    return Err(DiagramError::DuplicateBasepoint { component: components[c].name.clone() });
                }
                basepoints[c] = Some(BasepointSite::Strand { event: e, pos: *pos });
            }
        }
        for (e, ev) in events.iter().enumerate() {
            if let Event::RightCusp { pos, .. } = ev {
                let c = segments[columns[e][pos - 1]].component;
                basepoints[c].get_or_insert(BasepointSite::RightCusp { event: e });
            }
        }
        let basepoints = basepoints.into_iter().map(|b| b.expect("every component has a right cusp")).collect();

        let mut d = FrontDiagram { events, lines, components, segments, columns, basepoints, names: Vec::new() };
        d.names = d.assign_names()?;
        Ok(d)
    }

    fn assign_names(&self) -> Result<Vec<Option<String>>, DiagramError> {
        let surgeries = self.events.iter().filter(|e| matches!(e, Event::Surgery { .. })).count();
        let (mut chord_k, mut surgery_k) = (0, 0);
        let mut seen = BTreeSet::new();
        for c in &self.components {
            seen.insert(c.name.clone());
        }
        let mut names = Vec::with_capacity(self.events.len());
        for ev in &self.events {
            let auto = match ev {
                Event::Crossing { .. } | Event::RightCusp { .. } => {
                    chord_k += 1;
                    Some(format!("c{chord_k}"))
                }
                Event::Surgery { .. } => {
                    surgery_k += 1;
                    Some(if surgeries == 1 { "s".to_string() } else { format!("s{surgery_k}") })
                }
                _ => None,
            };
            let name = ev.explicit_name().map(str::to_string).or(auto);
            if let Some(n) = &name {
                if !seen.insert(n.clone()) {
                    return Err(DiagramError::DuplicateName(n.clone()));
                }
            }
            names.push(name);
        }
        Ok(names)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn components(&self) -> &[ComponentSpec] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Segment ids at each strand position just left of event `e`; `e = events.len()` is the far right.
    pub fn column(&self, e: usize) -> &[usize] {
        &self.columns[e]
    }

    /// Segment ids just right of event `e`.
    pub fn column_after(&self, e: usize) -> &[usize] {
        &self.columns[e + 1]
    }

    pub fn basepoints(&self) -> &[BasepointSite] {
        &self.basepoints
    }

    /// Source line of event `e`, or 0 for diagrams built in code.
    pub fn source_line(&self, e: usize) -> usize {
        self.lines[e]
    }

    /// Final identifier of the chord or surgery generator introduced by event `e`.
    pub fn name_of(&self, e: usize) -> Option<&str> {
        self.names[e].as_deref()
    }

    pub fn strand_component(&self, e: usize, pos: usize) -> usize {
        self.segments[self.columns[e][pos - 1]].component
    }

    pub fn has_surgery_marks(&self) -> bool {
        self.events.iter().any(|e| matches!(e, Event::Surgery { .. }))
    }

    /// Maslov potential of every segment, including component shifts.
    pub fn maslov_potentials(&self) -> Result<Vec<i64>, DiagramError> {
        let n = self.segments.len();
        // Each cusp forces upper = lower + 1.
        let mut edges: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
        let mut link = |up: usize, down: usize| {
            edges[up].push((down, -1));
            edges[down].push((up, 1));
        };
        for (e, ev) in self.events.iter().enumerate() {
            match ev {
                Event::LeftCusp { pos } => {
                    let col = &self.columns[e + 1];
                    link(col[pos - 1], col[*pos]);
                }
                Event::RightCusp { pos, .. } => {
                    let col = &self.columns[e];
                    link(col[pos - 1], col[*pos]);
                }
                _ => {}
            }
        }
        let mut mu: Vec<Option<i64>> = vec![None; n];
        for start in 0..n {
            if mu[start].is_some() {
                continue;
            }
            mu[start] = Some(0);
            let mut stack = vec![start];
            let mut members = vec![start];
            while let Some(s) = stack.pop() {
                let ms = mu[s].expect("visited");
                for &(t, delta) in &edges[s] {
                    match mu[t] {
                        None => {
                            mu[t] = Some(ms + delta);
                            stack.push(t);
                            members.push(t);
                        }
                        Some(mt) if mt != ms + delta => {
                            let c = self.segments[s].component;
                            return Err(DiagramError::MaslovObstruction { component: self.components[c].name.clone() });
                        }
                        Some(_) => {}
                    }
                }
            }
            let lowest = members.iter().map(|&s| mu[s].expect("visited")).min().expect("nonempty");
            let shift = self.components[self.segments[start].component].shift;
            for s in members {
                mu[s] = Some(mu[s].expect("visited") - lowest + shift);
            }
        }
        Ok(mu.into_iter().map(|m| m.expect("all visited")).collect())
    }

    /// Chord table in event order with degrees `μ(source) − μ(target)`, right cusps in degree 1.
    pub fn chords(&self) -> Result<Vec<Chord>, DiagramError> {
        let mu = self.maslov_potentials()?;
        let mut out = Vec::new();
        for (e, ev) in self.events.iter().enumerate() {
            let (kind, pos) = match ev {
                Event::Crossing { pos, .. } => (ChordKind::Crossing, *pos),
                Event::RightCusp { pos, .. } => (ChordKind::RightCusp, *pos),
                _ => continue,
            };
            let col = &self.columns[e];
            let (descending, ascending) = (col[pos - 1], col[pos]);
            let degree = match kind {
                ChordKind::Crossing => mu[descending] - mu[ascending],
                ChordKind::RightCusp => 1,
            };
            out.push(Chord {
                name: self.names[e].clone().expect("chords are named"),
                kind,
                event: e,
                degree,
                source: self.segments[descending].component,
                target: self.segments[ascending].component,
            });
        }
        Ok(out)
    }

    /// Serializes to `legendrian v1`; re-parsing yields an equal diagram.
    pub fn to_source(&self) -> String {
        let mut s = String::from("legendrian v1\n");
        for c in &self.components {
            let _ = writeln!(s, "component {} shift {}", c.name, c.shift);
        }
        s.push_str("events:\n");
        for ev in &self.events {
            let line = match ev {
                Event::LeftCusp { pos } => format!("L {pos}"),
                Event::RightCusp { pos, name } => with_name(format!("R {pos}"), name),
                Event::Crossing { pos, name } => with_name(format!("X {pos}"), name),
                Event::Basepoint { pos } => format!("B {pos}"),
                Event::Surgery { first, second, name } => with_name(format!("S {first} {second}"), name),
            };
            s.push_str(&line);
            s.push('\n');
        }
        s
    }

    /// Horizontally displaced union: `a` entirely left of `b`. Every chord name is frozen
    /// explicitly; names of `b` that collide with names of `a` get a numeric suffix.
    pub fn disjoint_union(a: &FrontDiagram, b: &FrontDiagram) -> FrontDiagram {
        let mut taken: BTreeSet<String> = a.components.iter().map(|c| c.name.clone()).collect();
        taken.extend(a.names.iter().flatten().cloned());
        let fresh = |base: &str, taken: &mut BTreeSet<String>| {
            let mut k = 2;
            let mut cand = base.to_string();
            while taken.contains(&cand) {
                cand = format!("{base}_{k}");
                k += 1;
            }
            taken.insert(cand.clone());
            cand
        };
        let mut components = a.components.clone();
        for c in &b.components {
            let name = fresh(&c.name, &mut taken);
            components.push(ComponentSpec { name, shift: c.shift });
        }
        let mut events = Vec::with_capacity(a.events.len() + b.events.len());
        for (ev, n) in a.events.iter().zip(&a.names) {
            let mut ev = ev.clone();
            ev.set_name(n.clone());
            events.push(ev);
        }
        for (ev, n) in b.events.iter().zip(&b.names) {
            let mut ev = ev.clone();
            ev.set_name(n.as_ref().map(|n| fresh(n, &mut taken)));
            events.push(ev);
        }
        FrontDiagram::new(components, events).expect("union of valid fronts with unique names is valid")
    }
}

fn with_name(base: String, name: &Option<String>) -> String {
    match name {
        Some(n) => format!("{base} {n}"),
        None => base,
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Syntax { line, column, message: message.into() }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_position(line: usize, (col, tok): (usize, &str)) -> Result<usize, DiagramError> {
    match tok.parse::<usize>() {
        Ok(p) if p >= 1 => Ok(p),
        _ => Err(syntax(line, col, format!("expected a strand position (positive integer), found {tok:?}"))),
    }
}

fn parse_event(line: usize, toks: &[(usize, &str)]) -> Result<Event, DiagramError> {
    let (col, kind) = toks[0];
    let arg = |i: usize| {
        toks.get(i).copied().ok_or_else(|| syntax(line, col, format!("event {kind} is missing an argument")))
    };
    let name_at = |i: usize, max: usize| -> Result<Option<String>, DiagramError> {
        if toks.len() > max {
            let (c, t) = toks[max];
            return Err(syntax(line, c, format!("unexpected token {t:?}")));
        }
        match toks.get(i) {
            None => Ok(None),
            Some(&(_, t)) if is_identifier(t) => Ok(Some(t.to_string())),
            Some(&(c, t)) => Err(syntax(line, c, format!("invalid identifier {t:?}"))),
        }
    };
    let no_more = |max: usize| match toks.get(max) {
        Some(&(c, t)) => Err(syntax(line, c, format!("unexpected token {t:?}"))),
        None => Ok(()),
    };
    match kind {
        "L" => {
            let pos = parse_position(line, arg(1)?)?;
            no_more(2)?;
            Ok(Event::LeftCusp { pos })
        }
        "R" => Ok(Event::RightCusp { pos: parse_position(line, arg(1)?)?, name: name_at(2, 3)? }),
        "X" => Ok(Event::Crossing { pos: parse_position(line, arg(1)?)?, name: name_at(2, 3)? }),
        "B" => {
            let pos = parse_position(line, arg(1)?)?;
            no_more(2)?;
            Ok(Event::Basepoint { pos })
        }
        "S" => Ok(Event::Surgery {
            first: parse_position(line, arg(1)?)?,
            second: parse_position(line, arg(2)?)?,
            name: name_at(3, 4)?,
        }),
        other => Err(syntax(line, col, format!("unknown event {other:?} (expected L, R, X, B or S)"))),
    }
}

/// Parses `legendrian v1` source text.
///
/// Lines are trimmed; `#` starts a comment. After the header come `component NAME shift INT`
/// declarations, then `events:` and one event per line (or several separated by `;`).
pub fn parse_front(text: &str) -> Result<FrontDiagram, DiagramError> {
    let mut header_seen = false;
    let mut in_events = false;
    let mut declared = Vec::new();
    let mut events = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        if !header_seen {
            let toks = tokens(content);
            if toks.iter().map(|t| t.1).collect::<Vec<_>>() != ["legendrian", "v1"] {
                return Err(syntax(line_no, toks[0].0, "expected header `legendrian v1`"));
            }
            header_seen = true;
            continue;
        }
        if !in_events {
            let toks = tokens(content);
            match toks[0].1 {
                "events:" if toks.len() == 1 => in_events = true,
                "component" => {
                    if toks.len() != 4 || toks[2].1 != "shift" {
                        return Err(syntax(line_no, toks[0].0, "expected `component NAME shift INT`"));
                    }
                    if !is_identifier(toks[1].1) {
                        return Err(syntax(line_no, toks[1].0, format!("invalid component name {:?}", toks[1].1)));
                    }
                    let shift = toks[3]
                        .1
                        .parse::<i64>()
                        .map_err(|_| syntax(line_no, toks[3].0, format!("invalid shift {:?}", toks[3].1)))?;
                    declared.push(ComponentSpec { name: toks[1].1.to_string(), shift });
                }
                _ => return Err(syntax(line_no, toks[0].0, "expected `component …` or `events:`")),
            }
            continue;
        }
        let mut offset = 0;
        for piece in content.split(';') {
            let toks: Vec<(usize, &str)> = tokens(piece).into_iter().map(|(c, t)| (c + offset, t)).collect();
            offset += piece.len() + 1;
            if toks.is_empty() {
                continue;
            }
            events.push(parse_event(line_no, &toks)?);
            lines.push(line_no);
        }
    }
    if !header_seen {
        return Err(syntax(1, 1, "missing header `legendrian v1`"));
    }
    if !in_events {
        return Err(syntax(text.lines().count().max(1), 1, "missing `events:` section"));
    }
    FrontDiagram::with_lines(declared, events, lines)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) const UNKNOT: &str = "legendrian v1\nevents:\nL 1\nR 1\n";
    const HOPF: &str = "legendrian v1\ncomponent B shift 1\ncomponent A shift 0\nevents:\nL 1\nL 3\nX 2 m12\nX 2 m21\nR 1\nR 1\n";

    #[test]
    fn unknot_has_one_component_and_no_crossings() {
        let d = parse_front(UNKNOT).unwrap();
        assert_eq!(d.component_count(), 1);
        let chords = d.chords().unwrap();
        assert_eq!(chords.len(), 1);
        assert_eq!(chords[0].degree, 1);
        assert_eq!(chords[0].kind, ChordKind::RightCusp);
        assert_eq!(d.basepoints(), &[BasepointSite::RightCusp { event: 1 }]);
    }

    #[test]
    fn hopf_components_and_degrees() {
        let d = parse_front(HOPF).unwrap();
        assert_eq!(d.component_count(), 2);
        let chords = d.chords().unwrap();
        let mixed: Vec<i64> = chords.iter().filter(|c| c.is_mixed()).map(|c| c.degree).collect();
        assert_eq!(mixed, vec![0, 0]);
        let m12 = &chords[0];
        assert_eq!((m12.name.as_str(), m12.source, m12.target), ("m12", 0, 1));
    }

    #[test]
    fn shift_moves_mixed_degrees_by_one() {
        let unshifted = parse_front(&HOPF.replace("B shift 1", "B shift 0")).unwrap().chords().unwrap();
        let shifted = parse_front(HOPF).unwrap().chords().unwrap();
        for (a, b) in unshifted.iter().zip(&shifted) {
            let delta = b.degree - a.degree;
            let expected = match (a.source, a.target) {
                (0, 1) => 1,
                (1, 0) => -1,
                _ => 0,
            };
            assert_eq!(delta, expected, "chord {}", a.name);
        }
        let degrees: Vec<i64> = unshifted.iter().filter(|c| c.is_mixed()).map(|c| c.degree).collect();
        assert_eq!(degrees.iter().sum::<i64>(), 0);
    }

    #[test]
    fn dangling_strand_is_topological_error() {
        let err = parse_front("legendrian v1\nevents:\nL 1\n").unwrap_err();
        assert!(matches!(err, DiagramError::Topology { .. }), "{err}");
    }

    #[test]
    fn crossing_out_of_range() {
        let err = parse_front("legendrian v1\nevents:\nL 1\nX 2\nR 1\n").unwrap_err();
        assert!(matches!(err, DiagramError::Topology { event: 2, line: 4, .. }), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_front("legendrian v1\nevents:\nL 1\n  Q 3\n").unwrap_err();
        assert_eq!(err, DiagramError::Syntax { line: 4, column: 3, message: "unknown event \"Q\" (expected L, R, X, B or S)".into() });
        assert!(matches!(parse_front("legendre v1\n"), Err(DiagramError::Syntax { line: 1, .. })));
        assert!(matches!(parse_front("legendrian v1\nevents:\nL x\n"), Err(DiagramError::Syntax { line: 3, column: 3, .. })));
    }

    #[test]
    fn zigzag_has_maslov_obstruction() {
        // A stabilized unknot: the zigzag turns the potential by two around the loop.
        let src = "legendrian v1\nevents:\nL 1\nL 2\nR 1\nR 1\n";
        let d = parse_front(src);
        match d {
            Ok(d) => assert!(matches!(d.chords(), Err(DiagramError::MaslovObstruction { .. }))),
            Err(e) => panic!("unexpected parse failure {e}"),
        }
    }

    #[test]
    fn explicit_basepoint_overrides_cusp() {
        let d = parse_front("legendrian v1\nevents:\nL 1\nB 2\nR 1\n").unwrap();
        assert_eq!(d.basepoints(), &[BasepointSite::Strand { event: 1, pos: 2 }]);
        assert!(matches!(
            parse_front("legendrian v1\nevents:\nL 1\nB 2\nB 1\nR 1\n"),
            Err(DiagramError::DuplicateBasepoint { .. })
        ));
    }

    #[test]
    fn union_renumbers_components() {
        let u = parse_front(UNKNOT).unwrap();
        let two = FrontDiagram::disjoint_union(&u, &u);
        assert_eq!(two.component_count(), 2);
        let chords = two.chords().unwrap();
        assert_eq!(chords.len(), 2);
        assert!(chords.iter().all(|c| !c.is_mixed()));
        let hopf = parse_front(HOPF).unwrap();
        let three = FrontDiagram::disjoint_union(&hopf, &u);
        assert_eq!(three.component_count(), 3);
        let twice = FrontDiagram::disjoint_union(&hopf, &hopf);
        let names: Vec<String> = twice.chords().unwrap().into_iter().map(|c| c.name).collect();
        assert_eq!(names, ["m12", "m21", "c3", "c4", "m12_2", "m21_2", "c3_2", "c4_2"]);
    }

    #[test]
    fn source_roundtrip_on_fixtures() {
        for src in [UNKNOT, HOPF] {
            let d = parse_front(src).unwrap();
            let again = parse_front(&d.to_source()).unwrap();
            assert_eq!(again.events(), d.events());
            assert_eq!(again.components(), d.components());
        }
    }

    /// Random valid fronts built by a random walk over the strand stack.
    pub(crate) fn random_front_events() -> impl Strategy<Value = Vec<Event>> {
        prop::collection::vec((0u8..4, 0usize..8), 1..14).prop_map(|steps| {
            let mut events = Vec::new();
            let mut n = 0usize;
            for (kind, at) in steps {
                match kind {
                    0 if n < 6 => {
                        let pos = at % (n + 1) + 1;
                        events.push(Event::LeftCusp { pos });
                        n += 2;
                    }
                    1 if n >= 2 => events.push(Event::Crossing { pos: at % (n - 1) + 1, name: None }),
                    2 if n >= 2 => {
                        events.push(Event::RightCusp { pos: at % (n - 1) + 1, name: None });
                        n -= 2;
                    }
                    _ if n >= 2 => events.push(Event::Crossing { pos: at % (n - 1) + 1, name: None }),
                    _ => {
                        events.push(Event::LeftCusp { pos: 1 });
                        n += 2;
                    }
                }
            }
            while n >= 2 {
                events.push(Event::RightCusp { pos: 1, name: None });
                n -= 2;
            }
            events
        })
    }

    proptest! {
        #[test]
        fn printing_roundtrips(events in random_front_events()) {
            let d = FrontDiagram::new(Vec::new(), events).unwrap();
            let again = parse_front(&d.to_source()).unwrap();
            prop_assert_eq!(again.events(), d.events());
            prop_assert_eq!(again.components(), d.components());
            prop_assert_eq!(again.basepoints(), d.basepoints());
        }

        #[test]
        fn mixed_crossings_come_in_pairs(events in random_front_events()) {
            let d = FrontDiagram::new(Vec::new(), events).unwrap();
            let r = d.component_count();
            let mut count = vec![vec![0usize; r]; r];
            for (e, ev) in d.events().iter().enumerate() {
                if let Event::Crossing { pos, .. } = ev {
                    let (a, b) = (d.strand_component(e, *pos), d.strand_component(e, pos + 1));
                    if a != b {
                        count[a.min(b)][a.max(b)] += 1;
                    }
                }
            }
            for row in count {
                for c in row {
                    prop_assert_eq!(c % 2, 0);
                }
            }
        }
    }
}
