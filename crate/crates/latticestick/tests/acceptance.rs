//! Acceptance suite: one line per criterion, all must pass.
//!
//! The heavy data — every properly leveled polygon with at most 14 sticks,
//! classified — is computed once and shared by the criteria.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use latticestick::census::{
    canonical_keys, census, unpruned_canonical_keys, verify_records, CensusRecord, PolygonJson,
};
use latticestick::diagram::{
    middle_level_crossings, project, simplify, DiagramError, Diagram,
};
use latticestick::invariants::{
    classify, jones, kauffman_bracket, reference_diagrams, KnotClass,
};
use latticestick::lattice::LatticePolygon;
use latticestick::leveling::{
    boundary_level_report, duplicate_level_pairs, is_properly_leveled, make_properly_leveled,
};
use latticestick::symmetry::decode_canonical;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Everything gathered in the single full pass.
struct Pass {
    records: Vec<CensusRecord>,
    /// (stick total, label, polygon) for every nontrivial polygon.
    nontrivial: Vec<(usize, String, LatticePolygon)>,
    /// One unknot census polygon for the determinant check.
    unknot_rep: LatticePolygon,
    /// Polygons whose raw-projection Jones differed from the simplified one.
    jones_mismatches: usize,
    /// Lemma 1(2) violations: nontrivial polygons with duplicate level pairs.
    duplicate_pair_violations: usize,
}

fn compositions(max_sticks: usize) -> Vec<[usize; 3]> {
    let mut comps = Vec::new();
    for a in 2..=8usize {
        for b in 2..=a {
            for c in 2..=b {
                if a + b + c <= max_sticks && a <= b + c {
                    comps.push([a, b, c]);
                }
            }
        }
    }
    comps.sort_by_key(|c| (c.iter().sum::<usize>(), *c));
    comps
}

fn full_pass(max_sticks: usize) -> Pass {
    let mut records = Vec::new();
    let mut nontrivial = Vec::new();
    let mut unknot_rep = None;
    let mut jones_mismatches = 0;
    let mut duplicate_pair_violations = 0;

    for dims in compositions(max_sticks) {
        let keys: Vec<Vec<u8>> = canonical_keys(dims).unwrap().into_iter().collect();
        let per_poly: Vec<(KnotClass, bool, bool, LatticePolygon)> = keys
            .par_iter()
            .map(|key| {
                let p = decode_canonical(key).expect("census key decodes");
                assert!(is_properly_leveled(&p), "census emitted unleveled polygon");
                let class = classify(&p).expect("classification stays under the cap");
                let raw = project(&p);
                let simp = simplify(&raw);
                let jones_ok = jones(&raw).expect("raw projection under the cap")
                    == jones(&simp).expect("simplified projection under the cap");
                let dup = !duplicate_level_pairs(&p).expect("leveled").is_empty();
                (class, jones_ok, dup, p)
            })
            .collect();

        let total = keys.len();
        let mut classes: BTreeMap<String, usize> = BTreeMap::new();
        let mut representatives = BTreeMap::new();
        for (class, jones_ok, dup, p) in per_poly {
            let label = class.label();
            *classes.entry(label.clone()).or_insert(0) += 1;
            if !jones_ok {
                jones_mismatches += 1;
            }
            if class.is_nontrivial() {
                if dup {
                    duplicate_pair_violations += 1;
                }
                representatives
                    .entry(label.clone())
                    .or_insert_with(|| PolygonJson {
                        vertices: p.vertices().iter().map(|v| v.as_array()).collect(),
                    });
                nontrivial.push((dims.iter().sum(), label, p));
            } else if unknot_rep.is_none() {
                unknot_rep = Some(p);
            }
        }
        let mut composition = dims;
        composition.sort_unstable_by(|a, b| b.cmp(a));
        records.push(CensusRecord {
            composition,
            total,
            classes,
            representatives,
        });
    }

    Pass {
        records,
        nontrivial,
        unknot_rep: unknot_rep.expect("census contains unknots"),
        jones_mismatches,
        duplicate_pair_violations,
    }
}

fn nontrivial_of(r: &CensusRecord) -> BTreeSet<&str> {
    r.classes
        .keys()
        .filter(|l| l.as_str() != "unknot")
        .map(|l| l.as_str())
        .collect()
}

fn det_of(p: &LatticePolygon) -> u64 {
    let d = simplify(&project(p));
    latticestick::invariants::determinant(&d).expect("under the cap")
}

/// Cyclically rotate coordinates until the z-axis carries exactly `n` sticks.
fn rotate_z_to(p: &LatticePolygon, n: usize) -> Option<LatticePolygon> {
    let mut q = p.clone();
    for _ in 0..3 {
        if q.stick_counts().n_z == n {
            return Some(q);
        }
        let rotated: Vec<[i32; 3]> = q
            .vertices()
            .iter()
            .map(|v| [v.y, v.z, v.x])
            .collect();
        q = LatticePolygon::from_vertices(rotated).expect("rotation preserves validity");
    }
    None
}

fn criterion_1(pass: &Pass) -> Result<String, String> {
    let report = verify_records(&pass.records, 14);
    if !report.all_pass() {
        let fails: Vec<&str> = report
            .verdicts
            .iter()
            .filter(|v| !v.pass)
            .map(|v| v.claim.as_str())
            .collect();
        return Err(format!("failed claims: {fails:?}"));
    }
    if !report.unknowns.is_empty() {
        return Err(format!("unknown classes: {:?}", report.unknowns));
    }
    Ok(format!(
        "nontrivial classes by sticks: {:?}",
        report.nontrivial_by_sticks
    ))
}

fn criterion_2(pass: &Pass) -> Result<String, String> {
    let rec = |comp: [usize; 3]| {
        pass.records
            .iter()
            .find(|r| r.composition == comp)
            .ok_or_else(|| format!("missing record {comp:?}"))
    };
    let r444 = rec([4, 4, 4])?;
    if nontrivial_of(r444) != BTreeSet::from(["3_1"]) {
        return Err(format!("(4,4,4) nontrivial = {:?}", nontrivial_of(r444)));
    }
    let r554 = rec([5, 5, 4])?;
    let r644 = rec([6, 4, 4])?;
    let allowed = BTreeSet::from(["3_1", "4_1"]);
    for r in [r554, r644] {
        if !nontrivial_of(r).is_subset(&allowed) {
            return Err(format!(
                "{:?} nontrivial = {:?}",
                r.composition,
                nontrivial_of(r)
            ));
        }
    }
    if !nontrivial_of(r554).contains("4_1") && !nontrivial_of(r644).contains("4_1") {
        return Err("4_1 absent from both (5,5,4) and (6,4,4)".into());
    }
    for r in &pass.records {
        if r.composition.iter().sum::<usize>() == 13
            && !nontrivial_of(r).is_subset(&BTreeSet::from(["3_1"]))
        {
            return Err(format!(
                "13 sticks {:?} nontrivial = {:?}",
                r.composition,
                nontrivial_of(r)
            ));
        }
    }
    // Frozen regression baselines from the first verified run.
    let baselines: &[([usize; 3], usize, &[(&str, usize)])] = &[
        ([4, 4, 4], 8209, &[("3_1", 7)]),
        ([5, 4, 4], 154035, &[("3_1", 194)]),
        ([5, 5, 4], 1342690, &[("3_1", 3383), ("4_1", 33)]),
        ([6, 4, 4], 682458, &[("3_1", 1133), ("4_1", 3)]),
        ([6, 5, 3], 956573, &[]),
        ([6, 6, 2], 137736, &[]),
        ([7, 4, 3], 95677, &[]),
    ];
    for (comp, total, classes) in baselines {
        let r = rec(*comp)?;
        if r.total != *total {
            return Err(format!("{comp:?} total {} != baseline {total}", r.total));
        }
        for (label, n) in *classes {
            if r.classes.get(*label) != Some(n) {
                return Err(format!(
                    "{comp:?} {label} count {:?} != baseline {n}",
                    r.classes.get(*label)
                ));
            }
        }
    }
    Ok("composition-level classes and baselines match".into())
}

fn criterion_3() -> Result<String, String> {
    let mut checked = 0;
    for dims in compositions(12) {
        let pruned = canonical_keys(dims).map_err(|e| e.to_string())?;
        let naive = unpruned_canonical_keys(dims).map_err(|e| e.to_string())?;
        if pruned != naive {
            return Err(format!("enumerator mismatch at {dims:?}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} compositions, exact key-set equality"))
}

fn criterion_4(pass: &Pass) -> Result<String, String> {
    // Bracket against the independent oracle.
    let mut corpus: Vec<Diagram> = Vec::new();
    for (_, d) in reference_diagrams() {
        corpus.push(d.mirror());
        corpus.push(d);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xb4ac_4e7);
    while corpus.len() < 60 {
        let p = common::random_polygon(&mut rng, 24);
        let d = project(&p);
        if (1..=10).contains(&d.crossing_number()) {
            corpus.push(simplify(&d));
            corpus.push(d);
        }
    }
    let mut checked = 0;
    for d in &corpus {
        if d.crossing_number() > 10 {
            continue;
        }
        if kauffman_bracket(d).expect("small diagram") != common::bracket_oracle(d) {
            return Err(format!("bracket mismatch on {:?}", d.gauss_code()));
        }
        checked += 1;
    }
    if checked < 50 {
        return Err(format!("oracle corpus too small: {checked}"));
    }
    // Determinants of census representatives.
    if det_of(&pass.unknot_rep) != 1 {
        return Err("census unknot determinant != 1".into());
    }
    for (want_label, want_det) in [("3_1", 3), ("4_1", 5)] {
        let (_, _, p) = pass
            .nontrivial
            .iter()
            .find(|(_, l, _)| l == want_label)
            .ok_or(format!("no census {want_label}"))?;
        if det_of(p) != want_det {
            return Err(format!("census {want_label} determinant != {want_det}"));
        }
    }
    // Jones invariance under simplify, checked across the full pass.
    if pass.jones_mismatches != 0 {
        return Err(format!(
            "{} polygons changed Jones under simplify",
            pass.jones_mismatches
        ));
    }
    Ok(format!(
        "{checked} oracle diagrams, dets 1/3/5, Jones stable under simplify"
    ))
}

fn criterion_5() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a77_1ce5);
    for i in 0..1000 {
        let p = common::random_polygon(&mut rng, 30);
        let q = make_properly_leveled(&p).map_err(|e| format!("polygon {i}: {e}"))?;
        if !is_properly_leveled(&q) {
            return Err(format!("polygon {i}: output not leveled"));
        }
        if q.stick_counts() != p.stick_counts() {
            return Err(format!("polygon {i}: composition changed"));
        }
        if make_properly_leveled(&q).map_err(|e| e.to_string())? != q {
            return Err(format!("polygon {i}: not idempotent"));
        }
        if common::jones_of(&q) != common::jones_of(&p) {
            return Err(format!("polygon {i}: knot type changed"));
        }
    }
    Ok("1000 random polygons leveled, composition- and Jones-preserving".into())
}

fn criterion_6(pass: &Pass) -> Result<String, String> {
    // Lemma 1(2): duplicate level pairs force the unknot.
    if pass.duplicate_pair_violations != 0 {
        return Err(format!(
            "{} nontrivial polygons have duplicate level pairs",
            pass.duplicate_pair_violations
        ));
    }
    // Lemma 1(3): boundary-level structure at minimal stick counts.
    let mut minimal_checked = 0;
    for (total, label, p) in &pass.nontrivial {
        let minimal = (label == "3_1" && *total == 12) || (label == "4_1" && *total == 14);
        if !minimal {
            continue;
        }
        let reports = boundary_level_report(p).map_err(|e| e.to_string())?;
        for r in &reports {
            for b in &r.boundary {
                if !b.conforms {
                    return Err(format!(
                        "minimal {label} violates boundary structure on {:?} at {}",
                        r.axis, b.coord
                    ));
                }
            }
        }
        minimal_checked += 1;
    }
    if minimal_checked == 0 {
        return Err("no minimal members found".into());
    }
    // Lemma 3/4: middle-level intersections of (5,5,4) figure-eights.
    let mut structured = 0;
    for (_, label, p) in &pass.nontrivial {
        if label != "4_1" {
            continue;
        }
        let mut counts = p.stick_counts().sorted();
        counts.sort_unstable();
        if counts != [4, 5, 5] {
            continue;
        }
        let q = rotate_z_to(p, 4).ok_or("no axis with 4 sticks")?;
        match middle_level_crossings(&q) {
            Ok(rep) => {
                if rep.tangency_count != 0 || rep.overlap_count != 0 {
                    return Err(format!(
                        "non-transverse middle intersections: {rep:?}"
                    ));
                }
                if rep.transverse_count < 2 {
                    return Err(format!("fewer than 2 transverse points: {rep:?}"));
                }
                structured += 1;
            }
            Err(DiagramError::WrongZStructure) => continue,
            Err(e) => return Err(e.to_string()),
        }
    }
    if structured == 0 {
        return Err("no (5,5,4) figure-eight with the middle-level z-structure".into());
    }
    Ok(format!(
        "{minimal_checked} minimal members conform; {structured} structured (5,5,4) 4_1s transverse-only"
    ))
}

fn criterion_7() -> Result<String, String> {
    let serialize = |records: &[CensusRecord]| {
        let mut s = String::new();
        for r in records {
            s.push_str(&serde_json::to_string(r).unwrap());
            s.push('\n');
        }
        s
    };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| census(12)).map_err(|e| e.to_string())
    };
    let a = serialize(&run(1)?);
    let b = serialize(&run(8)?);
    if a != b {
        return Err("census output differs between 1 and 8 workers".into());
    }
    Ok(format!("{} bytes, identical across worker counts", a.len()))
}

#[test]
fn acceptance() {
    let pass = full_pass(14);
    let results: Vec<(usize, &str, Result<String, String>)> = vec![
        (1, "theorem reproduction at 14 sticks", criterion_1(&pass)),
        (2, "composition-level checks", criterion_2(&pass)),
        (3, "pruned vs unpruned enumerator", criterion_3()),
        (4, "invariant engine vs oracle", criterion_4(&pass)),
        (5, "leveling on random polygons", criterion_5()),
        (6, "lemma corpus checks", criterion_6(&pass)),
        (7, "census determinism across workers", criterion_7()),
    ];
    let mut all_ok = true;
    for (i, name, r) in &results {
        match r {
            Ok(info) => println!("PASS criterion {i}: {name} — {info}"),
            Err(e) => {
                all_ok = false;
                println!("FAIL criterion {i}: {name} — {e}");
            }
        }
    }
    assert!(all_ok, "acceptance criteria failed");
}
