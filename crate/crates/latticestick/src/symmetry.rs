//! The 48 signed coordinate permutations of the cube and canonical keys.
//!
//! Canonical keys quotient polygons by cube symmetry, translation, cyclic
//! rotation of the vertex list and traversal reversal. The key is the
//! lexicographically least byte encoding of the vertex cycle over all those
//! transforms, with the bounding-box minimum corner translated to the origin.

use crate::lattice::{Axis, LatticePoint, LatticePolygon};

/// A signed coordinate permutation plus an integer translation.
///
/// Output coordinate `i` is `sign[i] * input[perm[i]] + translation[i]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LatticeSymmetry {
    pub perm: [usize; 3],
    pub sign: [i32; 3],
    pub translation: [i32; 3],
}

impl LatticeSymmetry {
    pub fn identity() -> Self {
        LatticeSymmetry {
            perm: [0, 1, 2],
            sign: [1, 1, 1],
            translation: [0, 0, 0],
        }
    }

    /// All 48 rotations/reflections of the cube, translation-free.
    /// Deterministic order: permutations in lexicographic order, then sign
    /// patterns in binary order.
    pub fn hyperoctahedral() -> Vec<LatticeSymmetry> {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut out = Vec::with_capacity(48);
        for perm in PERMS {
            for bits in 0..8 {
                let sign = [
                    if bits & 4 != 0 { -1 } else { 1 },
                    if bits & 2 != 0 { -1 } else { 1 },
                    if bits & 1 != 0 { -1 } else { 1 },
                ];
                out.push(LatticeSymmetry {
                    perm,
                    sign,
                    translation: [0, 0, 0],
                });
            }
        }
        out
    }

    pub fn translate(t: [i32; 3]) -> Self {
        LatticeSymmetry {
            perm: [0, 1, 2],
            sign: [1, 1, 1],
            translation: t,
        }
    }

    pub fn apply_point(&self, p: LatticePoint) -> LatticePoint {
        let c = p.as_array();
        LatticePoint::new(
            self.sign[0] * c[self.perm[0]] + self.translation[0],
            self.sign[1] * c[self.perm[1]] + self.translation[1],
            self.sign[2] * c[self.perm[2]] + self.translation[2],
        )
    }

    /// How this symmetry permutes axes: output axis `i` draws from `axis_image(i)`.
    pub fn axis_source(&self, out: Axis) -> Axis {
        Axis::from_index(self.perm[out.index()])
    }

    /// Group composition: `self` after `other`.
    pub fn compose(&self, other: &LatticeSymmetry) -> LatticeSymmetry {
        let mut perm = [0usize; 3];
        let mut sign = [0i32; 3];
        let mut translation = [0i32; 3];
        for i in 0..3 {
            perm[i] = other.perm[self.perm[i]];
            sign[i] = self.sign[i] * other.sign[self.perm[i]];
            translation[i] = self.sign[i] * other.translation[self.perm[i]] + self.translation[i];
        }
        LatticeSymmetry {
            perm,
            sign,
            translation,
        }
    }

    /// Whether the symmetry reverses spatial orientation (odd determinant).
    pub fn is_orientation_reversing(&self) -> bool {
        let perm_odd = {
            let p = self.perm;
            let mut inv = 0;
            for i in 0..3 {
                for j in (i + 1)..3 {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            inv % 2 == 1
        };
        let neg = self.sign.iter().filter(|&&s| s < 0).count() % 2 == 1;
        perm_odd ^ neg
    }
}

/// Image polygon under a symmetry; validity and stick counts (up to axis
/// permutation) are preserved.
pub fn apply_symmetry(p: &LatticePolygon, g: &LatticeSymmetry) -> LatticePolygon {
    let vertices: Vec<LatticePoint> = p.vertices().iter().map(|&v| g.apply_point(v)).collect();
    LatticePolygon::from_corners_unchecked(vertices)
}

fn encode_cycle(points: &[LatticePoint], start: usize, forward: bool, out: &mut Vec<u8>) {
    let n = points.len();
    out.clear();
    out.push(n as u8);
    // Translation normalization against the min corner of the point set.
    let mut lo = [i32::MAX; 3];
    for p in points {
        for a in Axis::ALL {
            lo[a.index()] = lo[a.index()].min(p.get(a));
        }
    }
    for k in 0..n {
        let idx = if forward {
            (start + k) % n
        } else {
            (start + n - k % n) % n
        };
        let p = points[idx];
        out.push((p.x - lo[0]) as u8);
        out.push((p.y - lo[1]) as u8);
        out.push((p.z - lo[2]) as u8);
    }
}

/// Canonical byte-string key, invariant under the 48 cube symmetries, all
/// translations, cyclic rotation and reversal of the vertex list.
pub fn canonical_form(p: &LatticePolygon) -> Vec<u8> {
    let n = p.len();
    let mut best: Option<Vec<u8>> = None;
    let mut buf = Vec::with_capacity(1 + 3 * n);
    let mut transformed = Vec::with_capacity(n);
    for g in LatticeSymmetry::hyperoctahedral() {
        transformed.clear();
        transformed.extend(p.vertices().iter().map(|&v| g.apply_point(v)));
        // Only starts at a lexicographically minimal vertex can win.
        let min_v = transformed.iter().copied().min().unwrap();
        for start in 0..n {
            if transformed[start] != min_v {
                continue;
            }
            for forward in [true, false] {
                encode_cycle(&transformed, start, forward, &mut buf);
                if best.as_ref().map_or(true, |b| buf < *b) {
                    best = Some(buf.clone());
                }
            }
        }
    }
    best.unwrap()
}

/// Decode a canonical key back into its representative polygon.
pub fn decode_canonical(key: &[u8]) -> Option<LatticePolygon> {
    let n = *key.first()? as usize;
    if key.len() != 1 + 3 * n {
        return None;
    }
    let vertices: Vec<LatticePoint> = key[1..]
        .chunks_exact(3)
        .map(|c| LatticePoint::new(c[0] as i32, c[1] as i32, c[2] as i32))
        .collect();
    LatticePolygon::from_vertices(vertices).ok()
}

/// Canonical keys serialize as lowercase hex.
pub fn key_to_hex(key: &[u8]) -> String {
    let mut s = String::with_capacity(key.len() * 2);
    for b in key {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

pub fn key_from_hex(s: &str) -> Option<Vec<u8>> {
    if s.len() % 2 != 0 {
        return None;
    }
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&s[i..i + 2], 16).ok())
        .collect()
}
