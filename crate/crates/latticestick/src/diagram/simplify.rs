//! Crossing-decreasing diagram simplification.
//!
//! Repeatedly applies Reidemeister I (monogon faces) and Reidemeister II
//! (bigon faces whose two edges run over-over and under-under) until neither
//! applies. Faces come from the rotation system carried by the crossings, so
//! only genuine empty bigons are removed.

use super::{Crossing, Diagram};

/// An edge-end: (crossing index, slot).
type End = (usize, usize);

struct Map {
    /// live crossings; removed ones are None
    crossings: Vec<Option<Crossing>>,
    /// union-find over edge ids, tracking splices
    parent: Vec<usize>,
}

/// A face as the cyclic list of (edge root, arrival end) pairs.
type Face = Vec<(usize, End)>;

impl Map {
    fn new(d: &Diagram) -> Map {
        let m = d.edge_count();
        Map {
            crossings: d.crossings().iter().copied().map(Some).collect(),
            parent: (0..m).collect(),
        }
    }

    fn find(&mut self, e: usize) -> usize {
        if self.parent[e] != e {
            let r = self.find(self.parent[e]);
            self.parent[e] = r;
            r
        } else {
            e
        }
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Both ends of every live edge, keyed by edge root.
    fn edge_ends(&mut self) -> std::collections::HashMap<usize, Vec<End>> {
        let mut ends: std::collections::HashMap<usize, Vec<End>> = Default::default();
        for ci in 0..self.crossings.len() {
            if let Some(c) = self.crossings[ci] {
                for s in 0..4 {
                    let e = self.find(c.slots[s]);
                    ends.entry(e).or_default().push((ci, s));
                }
            }
        }
        ends
    }

    /// Faces of the 4-valent map. Walking rule: arrive at (c, s) along an
    /// edge, depart along the edge at slot (s+1) mod 4.
    fn faces(&mut self) -> Vec<Face> {
        let ends = self.edge_ends();
        let mut faces = Vec::new();
        let mut visited: std::collections::HashSet<End> = Default::default();
        let mut starts: Vec<End> = ends.values().flatten().copied().collect();
        starts.sort_unstable();
        for start in starts {
            if visited.contains(&start) {
                continue;
            }
            let mut face: Face = Vec::new();
            let mut arrive = start;
            loop {
                if !visited.insert(arrive) {
                    break;
                }
                let (ci, s) = arrive;
                let depart = (ci, (s + 1) % 4);
                let c = self.crossings[ci].expect("live crossing");
                let e = self.find(c.slots[depart.1]);
                let far = *ends[&e]
                    .iter()
                    .find(|&&end| end != depart)
                    .expect("edge has two ends");
                face.push((e, far));
                arrive = far;
                if arrive == start {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    /// Remove a crossing, splicing the two strands through it.
    fn remove_crossing(&mut self, ci: usize) {
        let c = self.crossings[ci].take().expect("crossing already removed");
        let pairs = [(c.slots[0], c.slots[2]), (c.slots[1], c.slots[3])];
        for (a, b) in pairs {
            let (ra, rb) = (self.find(a), self.find(b));
            self.union(ra, rb);
        }
    }

    fn live_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.is_some()).count()
    }

    /// Rebuild a compact diagram with edges renumbered.
    fn into_diagram(mut self) -> Diagram {
        let raw: Vec<Crossing> = self.crossings.iter().flatten().copied().collect();
        let live: Vec<Crossing> = raw
            .into_iter()
            .map(|c| Crossing {
                slots: c.slots.map(|e| self.find(e)),
                over_in_at_1: c.over_in_at_1,
            })
            .collect();
        if live.is_empty() {
            return Diagram::unknot();
        }
        let mut ids: Vec<usize> = live.iter().flat_map(|c| c.slots).collect();
        ids.sort_unstable();
        ids.dedup();
        let rank: std::collections::HashMap<usize, usize> =
            ids.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let crossings = live
            .into_iter()
            .map(|c| Crossing {
                slots: c.slots.map(|e| rank[&e]),
                over_in_at_1: c.over_in_at_1,
            })
            .collect();
        Diagram::from_crossings(crossings)
    }
}

/// Apply crossing-decreasing R1/R2 moves until none applies. Never increases
/// the crossing count; idempotent.
pub fn simplify(d: &Diagram) -> Diagram {
    let mut map = Map::new(d);
    while map.live_count() > 0 {
        let faces = map.faces();
        let mut applied = false;
        // R1: monogon face.
        for face in &faces {
            if face.len() == 1 {
                let (_, (ci, _)) = face[0];
                map.remove_crossing(ci);
                applied = true;
                break;
            }
        }
        if applied {
            continue;
        }
        // R2: bigon face, one edge over at both crossings, the other under
        // at both. For a bigon with arrivals (c1,s1),(c2,s2): the edge
        // departing (c1, s1+1) arrives at (c2, s2) and the edge departing
        // (c2, s2+1) arrives back at (c1, s1).
        for face in &faces {
            if face.len() != 2 {
                continue;
            }
            let (e_a, (c1, s1)) = face[0];
            let (e_b, (c2, s2)) = face[1];
            if c1 == c2 || e_a == e_b {
                continue;
            }
            // e_b sits at (c1, s1) and (c2, (s2+1)%4); e_a at (c2, s2) and
            // (c1, (s1+1)%4). Over slots are odd, under slots even.
            let a_slots = [s2 % 2, (s1 + 1) % 4 % 2];
            let b_slots = [s1 % 2, (s2 + 1) % 4 % 2];
            let a_over = a_slots == [1, 1];
            let a_under = a_slots == [0, 0];
            let b_over = b_slots == [1, 1];
            let b_under = b_slots == [0, 0];
            if (a_over && b_under) || (a_under && b_over) {
                map.remove_crossing(c1);
                map.remove_crossing(c2);
                applied = true;
                break;
            }
        }
        if !applied {
            break;
        }
    }
    map.into_diagram()
}
