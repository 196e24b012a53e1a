//! CF-invariants: linking numbers and their differences, circle parities,
//! chord equivalence, the n-invariant of a pair of even circles, triple
//! parity and the τ pair of 3-component even diagrams.
//!
//! Arc counts use the endpoints strictly between the two delimiting
//! endpoints. On an even circle the two arcs then have equal parity.

use std::fmt;

use serde::Serialize;

use crate::diagram::{ChordId, GaussDiagram, LinkClass, Parity};
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn pairs(mu: usize) -> Vec<(usize, usize)> {
    (0..mu)
        .flat_map(|i| (i + 1..mu).map(move |j| (i, j)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingMatrix(Vec<Vec<i64>>);

impl LinkingMatrix {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }
}

/// Exact half-integer, stored as twice its value.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger {
    pub twice: i64,
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

pub fn linking_matrix(g: &GaussDiagram) -> LinkingMatrix {
    let mu = g.mu();
    let mut m = vec![vec![0; mu]; mu];
    for ch in g.chords().values().filter(|c| !c.is_self()) {
        m[ch.tail_circle][ch.head_circle] += ch.sign.value();
    }
    LinkingMatrix(m)
}

fn check_pair(g: &GaussDiagram, i: usize, j: usize) -> Result<()> {
    if i >= j || j >= g.mu() {
        return Err(Error::Precondition(format!(
            "need 1 <= i < j <= {}, got ({}, {})",
            g.mu(),
            i + 1,
            j + 1
        )));
    }
    Ok(())
}

/// `Lk(i, j) - Lk(j, i)`.
pub fn lk_difference(g: &GaussDiagram, i: usize, j: usize) -> Result<i64> {
    check_pair(g, i, j)?;
    let m = linking_matrix(g);
    Ok(m.get(i, j) - m.get(j, i))
}

/// Virtual linking number, minus half the difference.
pub fn vlk(g: &GaussDiagram, i: usize, j: usize) -> Result<HalfInteger> {
    Ok(HalfInteger {
        twice: -lk_difference(g, i, j)?,
    })
}

pub fn component_parity(g: &GaussDiagram, c: usize) -> Parity {
    g.parity(c)
}

/// Interior endpoint count of the arc from slot `p` to slot `q`, counterclockwise
/// when `forward`, otherwise the complementary arc.
fn arc_interior(len: usize, p: usize, q: usize, forward: bool) -> usize {
    let fwd = crate::diagram::forward_interior(len, p, q);
    if forward {
        fwd
    } else {
        len - 2 - fwd
    }
}

fn require_even(g: &GaussDiagram, c: usize) -> Result<()> {
    if g.parity(c) == Parity::Odd {
        return Err(Error::Precondition(format!("circle {} is odd", c + 1)));
    }
    Ok(())
}

/// Circles `(i, j)`, `i < j`, joined by a nonself-chord.
fn ends(g: &GaussDiagram, id: ChordId) -> Result<(usize, usize)> {
    let ch = g
        .chord(id)
        .ok_or_else(|| Error::Precondition(format!("no chord {id}")))?;
    if ch.is_self() {
        return Err(Error::Precondition(format!("chord {id} is a self-chord")));
    }
    Ok((
        ch.tail_circle.min(ch.head_circle),
        ch.tail_circle.max(ch.head_circle),
    ))
}

fn equivalent_with_arcs(
    g: &GaussDiagram,
    c1: ChordId,
    c2: ChordId,
    arcs: [bool; 2],
) -> Result<bool> {
    let (i, j) = ends(g, c1)?;
    if ends(g, c2)? != (i, j) {
        return Err(Error::Precondition(format!(
            "chords {c1} and {c2} connect different circles"
        )));
    }
    require_even(g, i)?;
    require_even(g, j)?;
    if c1 == c2 {
        return Ok(true);
    }
    let mut total = 0;
    for (k, c) in [i, j].into_iter().enumerate() {
        let p = g.slot_on(c, c1).expect("endpoint");
        let q = g.slot_on(c, c2).expect("endpoint");
        total += arc_interior(g.circle(c).len(), p, q, arcs[k]);
    }
    Ok(total % 2 == 0)
}

/// Whether two chords joining the same two even circles are equivalent.
pub fn chords_equivalent(g: &GaussDiagram, c1: ChordId, c2: ChordId) -> Result<bool> {
    equivalent_with_arcs(g, c1, c2, [true, true])
}

/// Nonself-chords joining circles `i` and `j`, in slot order on circle `i`.
pub fn connecting_chords(g: &GaussDiagram, i: usize, j: usize) -> Vec<ChordId> {
    g.circle(i)
        .iter()
        .map(|e| e.chord)
        .filter(|id| g.chords()[id].connects(i, j))
        .collect()
}

fn sigma_pair(g: &GaussDiagram, i: usize, j: usize, base: ChordId) -> Result<(i64, i64)> {
    let mut sigma = 0;
    let mut sigma_bar = 0;
    for id in connecting_chords(g, i, j) {
        let s = g.chords()[&id].sign.value();
        if chords_equivalent(g, base, id)? {
            sigma += s;
        } else {
            sigma_bar += s;
        }
    }
    Ok((sigma, sigma_bar))
}

/// `|σ - σ̄|` for circles `i < j`, both even; 0 when no chord joins them.
pub fn n_invariant(g: &GaussDiagram, i: usize, j: usize) -> Result<u64> {
    check_pair(g, i, j)?;
    require_even(g, i)?;
    require_even(g, j)?;
    match connecting_chords(g, i, j).first() {
        None => Ok(0),
        Some(&base) => {
            let (s, sb) = sigma_pair(g, i, j, base)?;
            Ok((s - sb).unsigned_abs())
        }
    }
}

fn triple_circles(g: &GaussDiagram, c12: ChordId, c13: ChordId, c23: ChordId) -> Result<()> {
    if g.mu() != 3 {
        return Err(Error::Precondition("triples need exactly 3 circles".into()));
    }
    for c in 0..3 {
        require_even(g, c)?;
    }
    if ends(g, c12)? != (0, 1) || ends(g, c13)? != (0, 2) || ends(g, c23)? != (1, 2) {
        return Err(Error::Precondition(
            "triple must join circles 1-2, 1-3 and 2-3 in that order".into(),
        ));
    }
    Ok(())
}

fn triple_parity_with_arcs(
    g: &GaussDiagram,
    c12: ChordId,
    c13: ChordId,
    c23: ChordId,
    arcs: [bool; 3],
) -> Result<Parity> {
    triple_circles(g, c12, c13, c23)?;
    let delimiters = [(0, c12, c13), (1, c12, c23), (2, c13, c23)];
    let mut total = 0;
    for (k, (c, a, b)) in delimiters.into_iter().enumerate() {
        let p = g.slot_on(c, a).expect("endpoint");
        let q = g.slot_on(c, b).expect("endpoint");
        total += arc_interior(g.circle(c).len(), p, q, arcs[k]);
    }
    Ok(if total % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    })
}

/// Parity of a triple of chords joining circles 1-2, 1-3 and 2-3.
pub fn triple_parity(g: &GaussDiagram, c12: ChordId, c13: ChordId, c23: ChordId) -> Result<Parity> {
    triple_parity_with_arcs(g, c12, c13, c23, [true; 3])
}

/// Even and odd triples, each as `[c12, c13, c23]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleSets {
    pub even: Vec<[ChordId; 3]>,
    pub odd: Vec<[ChordId; 3]>,
}

fn check_even3(g: &GaussDiagram) -> Result<()> {
    if g.mu() != 3 || g.link_class() != LinkClass::Even {
        return Err(Error::Precondition(
            "τ needs three circles, all even".into(),
        ));
    }
    Ok(())
}

/// Sum of endpoint slot indices of a nonself-chord; only its parity matters.
fn slot_sum(g: &GaussDiagram, id: ChordId) -> usize {
    let ch = g.chords()[&id];
    g.slot_on(ch.tail_circle, id).expect("tail") + g.slot_on(ch.head_circle, id).expect("head")
}

pub fn triple_sets(g: &GaussDiagram) -> Result<TripleSets> {
    check_even3(g)?;
    let (a, b, c) = (
        connecting_chords(g, 0, 1),
        connecting_chords(g, 0, 2),
        connecting_chords(g, 1, 2),
    );
    let mut out = TripleSets::default();
    for &x in &a {
        for &y in &b {
            for &z in &c {
                // Interior counts sum to the slot sums plus 3 (mod 2) on even circles.
                let odd = (slot_sum(g, x) + slot_sum(g, y) + slot_sum(g, z) + 1) % 2 == 1;
                if odd {
                    out.odd.push([x, y, z]);
                } else {
                    out.even.push([x, y, z]);
                }
            }
        }
    }
    Ok(out)
}

/// `(τ₀, τ₁)`: signed counts of even and odd triples.
pub fn tau_pair(g: &GaussDiagram) -> Result<(i64, i64)> {
    tau_pair_with(g, Execution::default())
}

pub fn tau_pair_with(g: &GaussDiagram, exec: Execution) -> Result<(i64, i64)> {
    check_even3(g)?;
    let a = connecting_chords(g, 0, 1);
    let b: Vec<(i64, usize)> = connecting_chords(g, 0, 2)
        .into_iter()
        .map(|id| (g.chords()[&id].sign.value(), slot_sum(g, id) % 2))
        .collect();
    let c: Vec<(i64, usize)> = connecting_chords(g, 1, 2)
        .into_iter()
        .map(|id| (g.chords()[&id].sign.value(), slot_sum(g, id) % 2))
        .collect();
    let rows = par::map_vec(exec, &a, |&x| {
        let (sx, px) = (g.chords()[&x].sign.value(), slot_sum(g, x) % 2);
        let mut t = [0i64; 2];
        for &(sy, py) in &b {
            for &(sz, pz) in &c {
                t[(px + py + pz + 1) % 2] += sx * sy * sz;
            }
        }
        t
    });
    Ok(rows
        .iter()
        .fold((0, 0), |acc, t| (acc.0 + t[0], acc.1 + t[1])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantProfile {
    pub mu: usize,
    pub lk: Vec<Vec<i64>>,
    /// `Lk(i, j) - Lk(j, i)` over pairs `i < j` in lexicographic order.
    pub diffs: Vec<i64>,
    pub parities: Vec<Parity>,
    pub link_class: LinkClass,
    /// Per pair; `None` unless both circles are even.
    pub n: Vec<Option<u64>>,
    pub tau: Option<(i64, i64)>,
}

impl InvariantProfile {
    pub fn tau_difference(&self) -> Option<i64> {
        self.tau.map(|(a, b)| a - b)
    }
}

pub fn invariant_profile(g: &GaussDiagram) -> InvariantProfile {
    let mu = g.mu();
    let lk = linking_matrix(g);
    let ps = pairs(mu);
    InvariantProfile {
        mu,
        diffs: ps
            .iter()
            .map(|&(i, j)| lk.get(i, j) - lk.get(j, i))
            .collect(),
        parities: (0..mu).map(|c| g.parity(c)).collect(),
        link_class: g.link_class(),
        n: ps.iter().map(|&(i, j)| n_invariant(g, i, j).ok()).collect(),
        tau: tau_pair(g).ok(),
        lk: lk.0,
    }
}

/// Internals exposed for tests: arc choices, σ/σ̄ for a chosen base chord.
#[doc(hidden)]
pub mod hooks {
    use super::*;

    pub fn chords_equivalent_arcs(
        g: &GaussDiagram,
        c1: ChordId,
        c2: ChordId,
        arcs: [bool; 2],
    ) -> Result<bool> {
        equivalent_with_arcs(g, c1, c2, arcs)
    }

    pub fn triple_parity_arcs(
        g: &GaussDiagram,
        c12: ChordId,
        c13: ChordId,
        c23: ChordId,
        arcs: [bool; 3],
    ) -> Result<Parity> {
        triple_parity_with_arcs(g, c12, c13, c23, arcs)
    }

    pub fn sigma(g: &GaussDiagram, i: usize, j: usize, base: ChordId) -> Result<(i64, i64)> {
        sigma_pair(g, i, j, base)
    }
}
