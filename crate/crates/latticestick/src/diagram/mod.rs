//! Combinatorial knot diagrams.
//!
//! A diagram stores its crossings only. Each crossing holds the four incident
//! edge identifiers in counterclockwise rotation order with slot 0 the
//! incoming under edge and slot 2 the outgoing under edge; the over strand
//! occupies slots 1 and 3. Edge connectivity and traversal order are implied:
//! an edge appears in exactly two slots, once incoming and once outgoing.

mod middle;
mod project;
mod simplify;

pub use middle::{lattice_r2_reduce, middle_level_crossings, MiddleLevelReport, R2Reduction};
pub use project::project;
pub use simplify::simplify;

use serde::Serialize;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum DiagramError {
    #[error("a zero-crossing diagram has no PD code; classify directly")]
    UnknottedNoCrossings,
    #[error("PD code is malformed: {0}")]
    BadPdCode(String),
    #[error("polygon does not have the four-z-stick middle-level structure")]
    WrongZStructure,
    #[error("polygon is not properly leveled")]
    NotProperlyLeveled,
    #[error("diagram has {0} crossings, above the state-sum cap")]
    TooManyCrossings(usize),
}

/// One crossing: edge ids at the four slots in counterclockwise order.
/// Slot 0 carries the incoming under edge, slot 2 the outgoing under edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub slots: [usize; 4],
    /// True when the over strand enters at slot 1 (positive crossing under
    /// this library's sign convention), false when it enters at slot 3.
    pub over_in_at_1: bool,
}

impl Crossing {
    /// Crossing sign: with slots counterclockwise and the under strand
    /// running 0 -> 2, an over strand entering at slot 1 crosses right to
    /// left over the under strand, a negative crossing.
    pub fn sign(&self) -> i64 {
        if self.over_in_at_1 {
            -1
        } else {
            1
        }
    }

    fn incoming_slots(&self) -> [usize; 2] {
        if self.over_in_at_1 {
            [0, 1]
        } else {
            [0, 3]
        }
    }
}

/// A knot diagram. The zero-crossing diagram represents the round unknot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    crossings: Vec<Crossing>,
}

/// Planar-diagram code: one 4-tuple of arc labels per crossing.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PDCode(pub Vec<[usize; 4]>);

impl Diagram {
    pub fn unknot() -> Diagram {
        Diagram { crossings: vec![] }
    }

    pub(crate) fn from_crossings(crossings: Vec<Crossing>) -> Diagram {
        let d = Diagram { crossings };
        debug_assert!(d.validate().is_ok(), "inconsistent diagram: {:?}", d.validate());
        d
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Count of transverse double points.
    pub fn crossing_number(&self) -> usize {
        self.crossings.len()
    }

    /// Signed crossing sum.
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign()).sum()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    /// Structural consistency: every edge id below 2n appears in exactly two
    /// slots, once incoming and once outgoing, and the traversal is a single
    /// closed curve through all 2n edges.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        let m = 2 * n;
        let mut incoming = vec![0usize; m];
        let mut outgoing = vec![0usize; m];
        for c in &self.crossings {
            for s in 0..4 {
                let e = c.slots[s];
                if e >= m {
                    return Err(format!("edge id {e} out of range"));
                }
                if c.incoming_slots().contains(&s) {
                    incoming[e] += 1;
                } else {
                    outgoing[e] += 1;
                }
            }
        }
        if incoming.iter().any(|&k| k != 1) || outgoing.iter().any(|&k| k != 1) {
            return Err("edge incidence is not one head and one tail per edge".into());
        }
        if self.traversal().len() != m {
            return Err("traversal does not cover the diagram".into());
        }
        Ok(())
    }

    /// Passages along the knot starting from edge 0: (crossing, entry slot).
    pub fn traversal(&self) -> Vec<(usize, usize)> {
        let n = self.crossings.len();
        if n == 0 {
            return vec![];
        }
        // head lookup table
        let mut head = vec![(usize::MAX, usize::MAX); 2 * n];
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in c.incoming_slots() {
                head[c.slots[s]] = (ci, s);
            }
        }
        let mut out = Vec::with_capacity(2 * n);
        let mut e = 0usize;
        loop {
            let (ci, s) = head[e];
            out.push((ci, s));
            e = self.crossings[ci].slots[(s + 2) % 4];
            if e == 0 || out.len() > 2 * n {
                break;
            }
        }
        out
    }

    /// Standard PD code with labels 1..2n assigned in traversal order from
    /// edge 0.
    pub fn pd_code(&self) -> Result<PDCode, DiagramError> {
        let n = self.crossings.len();
        if n == 0 {
            return Err(DiagramError::UnknottedNoCrossings);
        }
        // Relabel edges by traversal order.
        let trav = self.traversal();
        let mut label = vec![0usize; 2 * n];
        let mut e = 0usize;
        for (k, &(ci, s)) in trav.iter().enumerate() {
            label[e] = k + 1;
            e = self.crossings[ci].slots[(s + 2) % 4];
        }
        let mut tuples: Vec<[usize; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                [
                    label[c.slots[0]],
                    label[c.slots[1]],
                    label[c.slots[2]],
                    label[c.slots[3]],
                ]
            })
            .collect();
        tuples.sort_unstable_by_key(|t| t[0]);
        Ok(PDCode(tuples))
    }

    /// Signed Gauss code: crossings numbered by first visit, negative on
    /// under passages.
    pub fn gauss_code(&self) -> Vec<i64> {
        let trav = self.traversal();
        let mut number = vec![usize::MAX; self.crossings.len()];
        let mut next = 0usize;
        let mut out = Vec::with_capacity(trav.len());
        for (ci, s) in trav {
            if number[ci] == usize::MAX {
                number[ci] = next;
                next += 1;
            }
            let id = (number[ci] + 1) as i64;
            out.push(if s == 0 { -id } else { id });
        }
        out
    }

    /// Parse a PD code with labels 1..2n in traversal order; tuple layout
    /// X(a,b,c,d) counterclockwise with `a` the incoming under edge.
    pub fn from_pd(tuples: &[[usize; 4]]) -> Result<Diagram, DiagramError> {
        let n = tuples.len();
        if n == 0 {
            return Ok(Diagram::unknot());
        }
        let m = 2 * n;
        let mut seen = vec![0usize; m + 1];
        for t in tuples {
            for &e in t {
                if e == 0 || e > m {
                    return Err(DiagramError::BadPdCode(format!("label {e} out of range")));
                }
                seen[e] += 1;
            }
        }
        if seen[1..].iter().any(|&k| k != 2) {
            return Err(DiagramError::BadPdCode(
                "every label must appear exactly twice".into(),
            ));
        }
        let follows = |x: usize, y: usize| y == x % m + 1;
        let crossings = tuples
            .iter()
            .map(|&[a, b, c, d]| {
                // Over strand runs b -> d or d -> b along increasing labels.
                let over_in_at_1 = if follows(b, d) {
                    true
                } else if follows(d, b) {
                    false
                } else {
                    // Fall back for 2-crossing codes where both b,d are
                    // adjacent labels: orient so the under strand a -> c is
                    // consistent; choose b as incoming.
                    true
                };
                Crossing {
                    slots: [a - 1, b - 1, c - 1, d - 1],
                    over_in_at_1,
                }
            })
            .collect();
        let d = Diagram { crossings };
        d.validate().map_err(DiagramError::BadPdCode)?;
        Ok(d)
    }

    /// The mirror diagram: over and under swapped at every crossing, planar
    /// embedding unchanged.
    pub fn mirror(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let s = c.slots;
                if c.over_in_at_1 {
                    Crossing {
                        slots: [s[1], s[2], s[3], s[0]],
                        over_in_at_1: false,
                    }
                } else {
                    Crossing {
                        slots: [s[3], s[0], s[1], s[2]],
                        over_in_at_1: true,
                    }
                }
            })
            .collect();
        Diagram::from_crossings(crossings)
    }
}

/// PD codes print in the standard bracketed form, one crossing per tuple.
impl std::fmt::Display for PDCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|t| format!("X({},{},{},{})", t[0], t[1], t[2], t[3]))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Standard positive trefoil PD code.
#[cfg(test)]
pub(crate) const TREFOIL_PD: [[usize; 4]; 3] = [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]];
