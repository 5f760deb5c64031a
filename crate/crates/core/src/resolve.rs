//! Lagrangian resolution of a front: planar map, chord table and mark sites.
//!
//! Every crossing becomes a 4-valent vertex and every right cusp becomes a small loop
//! whose self-crossing is a vertex with its two east half-edges joined. Half-edges around
//! a vertex are stored counterclockwise as NE, NW, SW, SE, so the quadrant between
//! consecutive half-edges is top, left, bottom, right.

use crate::diagram::{BasepointSite, Chord, DiagramError, Event, FrontDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfEdge {
    NE = 0,
    NW = 1,
    SW = 2,
    SE = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrant {
    Top,
    Left,
    Bottom,
    Right,
}

impl Quadrant {
    /// Reeb sign of the quadrant: left and right quadrants are positive.
    pub fn is_positive(self) -> bool {
        matches!(self, Quadrant::Left | Quadrant::Right)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Crossing,
    CuspLoop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub event: usize,
    pub kind: VertexKind,
}

/// The resolved diagram as a combinatorial map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    pub vertices: Vec<Vertex>,
    /// `twin[4 * v + h]` is the half-edge at the other end of the edge leaving `v` at `h`.
    pub twin: Vec<usize>,
}

impl PlanarMap {
    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    /// Orbits of "cross the edge, then turn to the next half-edge counterclockwise".
    pub fn face_orbits(&self) -> usize {
        let n = self.twin.len();
        let mut seen = vec![false; n];
        let mut faces = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                let t = self.twin[h];
                h = t - t % 4 + (t % 4 + 1) % 4;
            }
        }
        faces
    }

    pub fn connected_components(&self) -> usize {
        let v = self.vertices.len();
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (h, &t) in self.twin.iter().enumerate() {
            let (a, b) = (find(&mut parent, h / 4), find(&mut parent, t / 4));
            parent[a.max(b)] = a.min(b);
        }
        (0..v).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Number of faces of the plane cut along the diagram.
    pub fn plane_faces(&self) -> usize {
        self.face_orbits() + 1 - self.connected_components()
    }

    /// Euler's formula `V − E + F = 1 + C` for the plane.
    pub fn euler_holds(&self) -> bool {
        let (v, e, f, c) = (self.vertices.len(), self.edge_count(), self.plane_faces(), self.connected_components());
        v + f == e + 1 + c
    }
}

/// Where a mark sits on the front.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarkLocation {
    Strand { event: usize, pos: usize },
    RightCusp { event: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarkKind {
    Basepoint,
    /// One of the two points of the surgery pair introduced by event `event`.
    Surgery { event: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MarkSite {
    pub kind: MarkKind,
    pub component: usize,
    pub location: MarkLocation,
}

/// A front together with its Lagrangian resolution.
#[derive(Debug, Clone)]
pub struct ResolvedDiagram {
    front: FrontDiagram,
    map: PlanarMap,
    marks: Vec<MarkSite>,
    chord_of_event: Vec<Option<usize>>,
    chord_events: Vec<usize>,
}

fn walk_right(front: &FrontDiagram, vertex_of_event: &[Option<usize>], from: usize, mut p: usize) -> usize {
    for (f, ev) in front.events().iter().enumerate().skip(from + 1) {
        match ev {
            Event::LeftCusp { pos } if p >= *pos => p += 2,
            Event::RightCusp { pos, .. } | Event::Crossing { pos, .. } => {
                let at = |h: HalfEdge| 4 * vertex_of_event[f].expect("vertex") + h as usize;
                if p == *pos {
                    return at(HalfEdge::NW);
                }
                if p == pos + 1 {
                    return at(HalfEdge::SW);
                }
                if matches!(ev, Event::RightCusp { .. }) && p > pos + 1 {
                    p -= 2;
                }
            }
            _ => {}
        }
    }
    unreachable!("strand runs off the right edge of a valid front")
}

fn walk_left(front: &FrontDiagram, vertex_of_event: &[Option<usize>], from: usize, mut p: usize) -> usize {
    for f in (0..from).rev() {
        match &front.events()[f] {
            Event::Crossing { pos, .. } => {
                let at = |h: HalfEdge| 4 * vertex_of_event[f].expect("vertex") + h as usize;
                if p == *pos {
                    return at(HalfEdge::NE);
                }
                if p == pos + 1 {
                    return at(HalfEdge::SE);
                }
            }
            Event::RightCusp { pos, .. } if p >= *pos => p += 2,
            Event::LeftCusp { pos } => {
                if p == *pos {
                    return walk_right(front, vertex_of_event, f, pos + 1);
                }
                if p == pos + 1 {
                    return walk_right(front, vertex_of_event, f, *pos);
                }
                if p > pos + 1 {
                    p -= 2;
                }
            }
            _ => {}
        }
    }
    unreachable!("strand runs off the left edge of a valid front")
}

/// Resolves a validated front.
pub fn resolve(front: &FrontDiagram) -> ResolvedDiagram {
    let events = front.events();
    let mut vertices = Vec::new();
    let mut vertex_of_event = vec![None; events.len()];
    let mut chord_of_event = vec![None; events.len()];
    let mut chord_events = Vec::new();
    for (e, ev) in events.iter().enumerate() {
        let kind = match ev {
            Event::Crossing { .. } => VertexKind::Crossing,
            Event::RightCusp { .. } => VertexKind::CuspLoop,
            _ => continue,
        };
        vertex_of_event[e] = Some(vertices.len());
        chord_of_event[e] = Some(chord_events.len());
        chord_events.push(e);
        vertices.push(Vertex { event: e, kind });
    }
    let mut twin = vec![usize::MAX; 4 * vertices.len()];
    for (v, vx) in vertices.iter().enumerate() {
        let pos = match &events[vx.event] {
            Event::Crossing { pos, .. } | Event::RightCusp { pos, .. } => *pos,
            _ => unreachable!(),
        };
        let here = |h: HalfEdge| 4 * v + h as usize;
        twin[here(HalfEdge::NW)] = walk_left(front, &vertex_of_event, vx.event, pos);
        twin[here(HalfEdge::SW)] = walk_left(front, &vertex_of_event, vx.event, pos + 1);
        match vx.kind {
            VertexKind::Crossing => {
                twin[here(HalfEdge::NE)] = walk_right(front, &vertex_of_event, vx.event, pos);
                twin[here(HalfEdge::SE)] = walk_right(front, &vertex_of_event, vx.event, pos + 1);
            }
            VertexKind::CuspLoop => {
                twin[here(HalfEdge::NE)] = here(HalfEdge::SE);
                twin[here(HalfEdge::SE)] = here(HalfEdge::NE);
            }
        }
    }
    debug_assert!(twin.iter().enumerate().all(|(h, &t)| twin[t] == h), "edge tracing is not an involution");

    let mut marks = Vec::new();
    for (c, site) in front.basepoints().iter().enumerate() {
        let location = match *site {
            BasepointSite::Strand { event, pos } => MarkLocation::Strand { event, pos },
            BasepointSite::RightCusp { event } => MarkLocation::RightCusp { event },
        };
        marks.push(MarkSite { kind: MarkKind::Basepoint, component: c, location });
    }
    for (e, ev) in events.iter().enumerate() {
        if let Event::Surgery { first, second, .. } = ev {
            for &pos in &[*first, *second] {
                marks.push(MarkSite {
                    kind: MarkKind::Surgery { event: e },
                    component: front.strand_component(e, pos),
                    location: MarkLocation::Strand { event: e, pos },
                });
            }
        }
    }
    ResolvedDiagram { front: front.clone(), map: PlanarMap { vertices, twin }, marks, chord_of_event, chord_events }
}

impl ResolvedDiagram {
    pub fn front(&self) -> &FrontDiagram {
        &self.front
    }

    pub fn planar_map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn marks(&self) -> &[MarkSite] {
        &self.marks
    }

    /// Chord index (event order) of the crossing or right cusp at event `e`.
    pub fn chord_at(&self, e: usize) -> Option<usize> {
        self.chord_of_event[e]
    }

    pub fn chord_count(&self) -> usize {
        self.chord_events.len()
    }

    pub fn chord_event(&self, chord: usize) -> usize {
        self.chord_events[chord]
    }

    /// Vertex of a chord; vertex and chord indices coincide.
    pub fn vertex_of_chord(&self, chord: usize) -> usize {
        chord
    }
}

/// Graded chord table, in event order.
pub fn grade(d: &ResolvedDiagram) -> Result<Vec<Chord>, DiagramError> {
    d.front.chords()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_front;

    fn resolved(src: &str) -> ResolvedDiagram {
        resolve(&parse_front(src).unwrap())
    }

    #[test]
    fn unknot_resolves_to_one_loop() {
        let d = resolved("legendrian v1\nevents:\nL 1\nR 1\n");
        let m = d.planar_map();
        assert_eq!(m.vertices.len(), 1);
        assert_eq!(m.edge_count(), 2);
        assert_eq!(m.plane_faces(), 3);
        assert!(m.euler_holds());
        let chords = grade(&d).unwrap();
        assert_eq!(chords.len(), 1);
        assert_eq!(chords[0].degree, 1);
    }

    #[test]
    fn hopf_and_split_links_satisfy_euler() {
        for src in [
            "legendrian v1\ncomponent B shift 1\nevents:\nL 1\nL 3\nX 2\nX 2\nR 1\nR 1\n",
            "legendrian v1\nevents:\nL 1\nR 1\nL 1\nR 1\n",
            "legendrian v1\nevents:\nL 1\nL 3\nX 2\nX 2\nX 2\nR 1\nR 1\n",
        ] {
            let d = resolved(src);
            assert!(d.planar_map().euler_holds(), "{src}");
        }
        let split = resolved("legendrian v1\nevents:\nL 1\nR 1\nL 1\nR 1\n");
        assert_eq!(split.planar_map().connected_components(), 2);
    }

    #[test]
    fn hopf_degrees_follow_shift() {
        let d = resolved("legendrian v1\ncomponent B shift 1\nevents:\nL 1\nL 3\nX 2\nX 2\nR 1\nR 1\n");
        let degrees: Vec<i64> = grade(&d).unwrap().iter().map(|c| c.degree).collect();
        assert_eq!(degrees, vec![0, 0, 1, 1]);
    }

    #[test]
    fn surgery_marks_are_listed_after_basepoints() {
        let d = resolved("legendrian v1\nevents:\nL 1\nL 3\nS 1 4\nX 2\nX 2\nR 1\nR 1\n");
        let kinds: Vec<MarkKind> = d.marks().iter().map(|m| m.kind).collect();
        assert_eq!(kinds, vec![MarkKind::Basepoint, MarkKind::Basepoint, MarkKind::Surgery { event: 2 }, MarkKind::Surgery { event: 2 }]);
        assert_eq!(d.marks()[2].component, 0);
        assert_eq!(d.marks()[3].component, 1);
    }
}
