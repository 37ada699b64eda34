//! Shared helpers for integration tests: an independent Kauffman bracket
//! oracle and a seeded random polygon generator.

use std::collections::HashMap;

use latticestick::diagram::Diagram;
use latticestick::laurent::LaurentPoly;
use latticestick::LatticePolygon;
use rand::Rng;

/// Independent bracket state sum. Legs are numbered 4*crossing + slot; each
/// state pairs legs inside every crossing (A: 0-1 and 2-3, B: 1-2 and 3-0),
/// edges pair legs between crossings, and loops are the cycles of the union
/// of the two pairings. No union-find, no sharing with the library code.
pub fn bracket_oracle(d: &Diagram) -> LaurentPoly {
    let n = d.crossings().len();
    if n == 0 {
        return LaurentPoly::one();
    }
    // leg -> leg across each edge
    let mut occurrences: HashMap<usize, Vec<usize>> = HashMap::new();
    for (ci, c) in d.crossings().iter().enumerate() {
        for s in 0..4 {
            occurrences.entry(c.slots[s]).or_default().push(4 * ci + s);
        }
    }
    let mut edge_mate = vec![usize::MAX; 4 * n];
    for legs in occurrences.values() {
        assert_eq!(legs.len(), 2, "every edge has two ends");
        edge_mate[legs[0]] = legs[1];
        edge_mate[legs[1]] = legs[0];
    }

    let delta = {
        let mut d = LaurentPoly::zero();
        d.add_term(2, -1);
        d.add_term(-2, -1);
        d
    };

    let mut sum = LaurentPoly::zero();
    for state in 0u64..(1 << n) {
        let mut smooth_mate = vec![usize::MAX; 4 * n];
        let mut a_count: i64 = 0;
        for ci in 0..n {
            let a_smoothing = state & (1 << ci) == 0;
            let pairs: [[usize; 2]; 2] = if a_smoothing {
                a_count += 1;
                [[0, 1], [2, 3]]
            } else {
                [[1, 2], [3, 0]]
            };
            for [u, v] in pairs {
                smooth_mate[4 * ci + u] = 4 * ci + v;
                smooth_mate[4 * ci + v] = 4 * ci + u;
            }
        }
        // count cycles alternating smoothing-pair then edge-pair
        let mut seen = vec![false; 4 * n];
        let mut loops = 0usize;
        for leg in 0..4 * n {
            if seen[leg] {
                continue;
            }
            loops += 1;
            let mut cur = leg;
            loop {
                seen[cur] = true;
                let across = smooth_mate[cur];
                seen[across] = true;
                cur = edge_mate[across];
                if cur == leg {
                    break;
                }
            }
        }
        let mut term = LaurentPoly::one();
        for _ in 1..loops {
            term = &term * &delta;
        }
        sum = &sum + &term.shift(2 * a_count - n as i64, 1);
    }
    sum
}

/// A random nonplanar closed polygon with at most `max_sticks` sticks,
/// generated as a self-avoiding corner walk in a 5^3 box. Deterministic for
/// a seeded `rng`.
pub fn random_polygon(rng: &mut impl Rng, max_sticks: usize) -> LatticePolygon {
    assert!(max_sticks >= 6);
    loop {
        if let Some(p) = try_walk(rng, max_sticks) {
            if !p.is_planar() {
                return p;
            }
        }
    }
}

const BOX: i32 = 5;

fn try_walk(rng: &mut impl Rng, max_sticks: usize) -> Option<LatticePolygon> {
    let start = [rng.gen_range(0..BOX), rng.gen_range(0..BOX), rng.gen_range(0..BOX)];
    let mut occupied = std::collections::HashSet::new();
    occupied.insert(start);
    let mut path = vec![start];
    let mut first_axis = usize::MAX;
    let mut last_axis = usize::MAX;

    for stick in 0..max_sticks {
        let cur = *path.last().unwrap();
        // try closing once enough sticks are placed, more eagerly over time
        if stick >= 4 && rng.gen_bool((stick as f64 / max_sticks as f64).min(0.9)) {
            if let Some(p) = close(&path, &occupied, first_axis, last_axis) {
                return Some(p);
            }
        }
        let mut moves: Vec<(usize, i32)> = Vec::new();
        for a in 0..3 {
            if a == last_axis {
                continue;
            }
            for c in 0..BOX {
                if c != cur[a] {
                    moves.push((a, c));
                }
            }
        }
        while !moves.is_empty() {
            let k = rng.gen_range(0..moves.len());
            let (a, c) = moves.swap_remove(k);
            if let Some(covered) = free_span(cur, a, c, &occupied) {
                occupied.extend(covered.iter().copied());
                let mut t = cur;
                t[a] = c;
                path.push(t);
                if first_axis == usize::MAX {
                    first_axis = a;
                }
                last_axis = a;
                break;
            }
        }
    }
    close(&path, &occupied, first_axis, last_axis)
}

/// Points a stick from `cur` along axis `a` to coord `c` would newly cover,
/// or None if any is occupied.
fn free_span(
    cur: [i32; 3],
    a: usize,
    c: i32,
    occupied: &std::collections::HashSet<[i32; 3]>,
) -> Option<Vec<[i32; 3]>> {
    let step = (c - cur[a]).signum();
    let mut out = Vec::new();
    let mut q = cur;
    while q[a] != c {
        q[a] += step;
        if occupied.contains(&q) {
            return None;
        }
        out.push(q);
    }
    Some(out)
}

fn close(
    path: &[[i32; 3]],
    occupied: &std::collections::HashSet<[i32; 3]>,
    first_axis: usize,
    last_axis: usize,
) -> Option<LatticePolygon> {
    if path.len() < 4 {
        return None;
    }
    let cur = *path.last().unwrap();
    let start = path[0];
    let diff: Vec<usize> = (0..3).filter(|&a| cur[a] != start[a]).collect();
    let [a] = diff.as_slice() else { return None };
    if *a == last_axis || *a == first_axis {
        return None;
    }
    // interior of the closing stick must be free
    let step = (start[*a] - cur[*a]).signum();
    let mut q = cur;
    loop {
        q[*a] += step;
        if q == start {
            break;
        }
        if occupied.contains(&q) {
            return None;
        }
    }
    LatticePolygon::from_vertices(path.iter().copied()).ok()
}

/// Jones polynomial of a polygon's simplified projection.
pub fn jones_of(p: &LatticePolygon) -> LaurentPoly {
    let d = latticestick::diagram::simplify(&latticestick::diagram::project(p));
    latticestick::invariants::jones(&d).expect("simplified diagram fits the state-sum cap")
}
