//! Shared helpers and brute-force reference computations for integration tests.
//!
//! The reference versions walk the circles slot by slot instead of using the
//! library's slot arithmetic, so they serve as independent oracles.
#![allow(dead_code)]

use std::path::PathBuf;

use cfmove_core::{parse_gauss_code, ChordId, GaussDiagram};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> GaussDiagram {
    let text = std::fs::read_to_string(fixture_dir().join(name)).expect("fixture readable");
    parse_gauss_code(&text).expect("fixture parses")
}

pub fn all_fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "gd"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

/// Signed count of type-(i, j) chords, read straight off the chord table.
pub fn ref_lk(g: &GaussDiagram, i: usize, j: usize) -> i64 {
    g.chords()
        .values()
        .filter(|c| c.tail_circle == i && c.head_circle == j)
        .map(|c| c.sign.value())
        .sum()
}

fn position(g: &GaussDiagram, circle: usize, id: ChordId) -> usize {
    g.circle(circle)
        .iter()
        .position(|e| e.chord == id)
        .expect("chord touches circle")
}

/// Endpoints met strictly between the endpoints of `a` and `b` on `circle`,
/// walking counterclockwise from `a`.
pub fn walk_between(g: &GaussDiagram, circle: usize, a: ChordId, b: ChordId) -> usize {
    let slots = g.circle(circle);
    let mut p = position(g, circle, a);
    let mut seen = 0;
    loop {
        p = (p + 1) % slots.len();
        if slots[p].chord == b {
            return seen;
        }
        seen += 1;
    }
}

pub fn ref_equivalent(g: &GaussDiagram, i: usize, j: usize, a: ChordId, b: ChordId) -> bool {
    a == b || (walk_between(g, i, a, b) + walk_between(g, j, a, b)).is_multiple_of(2)
}

/// Chords with one end on `i` and the other on `j`, in slot order on `i`.
pub fn ref_connecting(g: &GaussDiagram, i: usize, j: usize) -> Vec<ChordId> {
    g.circle(i)
        .iter()
        .filter(|e| {
            let c = g.chord(e.chord).unwrap();
            c.connects(i, j)
        })
        .map(|e| e.chord)
        .collect()
}

pub fn ref_n(g: &GaussDiagram, i: usize, j: usize) -> u64 {
    let conn = ref_connecting(g, i, j);
    let Some(&base) = conn.first() else {
        return 0;
    };
    let (mut s, mut sbar) = (0i64, 0i64);
    for &c in &conn {
        let v = g.chord(c).unwrap().sign.value();
        if ref_equivalent(g, i, j, base, c) {
            s += v;
        } else {
            sbar += v;
        }
    }
    (s - sbar).unsigned_abs()
}

pub fn ref_triple_even(g: &GaussDiagram, c12: ChordId, c13: ChordId, c23: ChordId) -> bool {
    (walk_between(g, 0, c12, c13) + walk_between(g, 1, c12, c23) + walk_between(g, 2, c13, c23))
        .is_multiple_of(2)
}

pub fn ref_triples(g: &GaussDiagram) -> (Vec<[ChordId; 3]>, Vec<[ChordId; 3]>) {
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for &a in &ref_connecting(g, 0, 1) {
        for &b in &ref_connecting(g, 0, 2) {
            for &c in &ref_connecting(g, 1, 2) {
                if ref_triple_even(g, a, b, c) {
                    even.push([a, b, c]);
                } else {
                    odd.push([a, b, c]);
                }
            }
        }
    }
    (even, odd)
}

pub fn ref_tau(g: &GaussDiagram) -> (i64, i64) {
    let sign = |t: &[ChordId; 3]| {
        t.iter()
            .map(|&c| g.chord(c).unwrap().sign.value())
            .product::<i64>()
    };
    let (even, odd) = ref_triples(g);
    (even.iter().map(sign).sum(), odd.iter().map(sign).sum())
}
