//! Reduction to normal forms with certifying traces.
//!
//! The normal form with parameters `a_ij` has, for every pair `i < j`, a block
//! of `|a_ij|` parallel chords of type `(i, j)` and sign `sgn(a_ij)` stacked
//! above `|a_ji|` chords of type `(j, i)`. Blocks are stacked in
//! lexicographic pair order. Circle `k` reads the blocks it shares with
//! lower-indexed circles top to bottom, then those shared with
//! higher-indexed circles bottom to top. In this layout all chords joining
//! two circles are equivalent and all triples are even.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::ser::SerializeMap;
use serde::Serialize;

use crate::diagram::{
    canonical_form, Chord, ChordId, EndKind, Endpoint, GaussDiagram, LinkClass, Parity, Sign,
};
use crate::error::{Error, Result};
use crate::invariants::{linking_matrix, lk_difference, pairs};
use crate::moves::{
    apply_move, exchange_steps, flip_circle_steps, flip_nonself_steps, gap_between, Move, Site,
};
use crate::trace::MoveTrace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalFormParams {
    mu: usize,
    a: BTreeMap<(usize, usize), i64>,
}

impl NormalFormParams {
    pub fn zero(mu: usize) -> Self {
        NormalFormParams {
            mu,
            a: BTreeMap::new(),
        }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    /// `a_ij` for 0-based `i != j`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!(i != j && i < self.mu && j < self.mu, "index out of range");
        if v == 0 {
            self.a.remove(&(i, j));
        } else {
            self.a.insert((i, j), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty()
    }

    /// `(a12, a21, a13, a31, a23, a32)` for three circles.
    pub fn tuple3(&self) -> [i64; 6] {
        assert_eq!(self.mu, 3);
        [
            self.get(0, 1),
            self.get(1, 0),
            self.get(0, 2),
            self.get(2, 0),
            self.get(1, 2),
            self.get(2, 1),
        ]
    }

    pub fn from_tuple3(t: [i64; 6]) -> Self {
        let mut p = NormalFormParams::zero(3);
        for (k, &(i, j)) in [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]
            .iter()
            .enumerate()
        {
            p.set(i, j, t[k]);
        }
        p
    }

    /// Image under negating and reversing every chord at circle `k`:
    /// `(a_kj, a_jk) -> (-a_jk, -a_kj)` for each `j`.
    pub fn flip_circle(&self, k: usize) -> Self {
        let mut p = self.clone();
        for j in (0..self.mu).filter(|&j| j != k) {
            p.set(k, j, -self.get(j, k));
            p.set(j, k, -self.get(k, j));
        }
        p
    }
}

impl fmt::Display for NormalFormParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = pairs(self.mu)
            .into_iter()
            .map(|(i, j)| format!("{},{}", self.get(i, j), self.get(j, i)))
            .collect();
        write!(f, "G({})", blocks.join(";"))
    }
}

impl Serialize for NormalFormParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        for (i, j) in pairs(self.mu) {
            m.serialize_entry(&format!("{},{}", i + 1, j + 1), &self.get(i, j))?;
            m.serialize_entry(&format!("{},{}", j + 1, i + 1), &self.get(j, i))?;
        }
        m.end()
    }
}

/// Height order of a chord inside the layout: pair, then type, then position in the stack.
type HeightKey = ((usize, usize), u8, Reverse<usize>);

/// Target order of circle `k` given chord heights: lower-indexed partners by
/// increasing height, then higher-indexed partners by decreasing height.
fn circle_rank(
    g: &GaussDiagram,
    k: usize,
    id: ChordId,
    height: &HashMap<ChordId, usize>,
) -> (u8, i64) {
    let ch = g.chords()[&id];
    let other = if ch.tail_circle == k {
        ch.head_circle
    } else {
        ch.tail_circle
    };
    let h = height[&id] as i64;
    if other < k {
        (0, h)
    } else {
        (1, -h)
    }
}

pub fn realize(p: &NormalFormParams) -> GaussDiagram {
    let mu = p.mu;
    let mut g = GaussDiagram::empty(mu);
    let mut height = HashMap::new();
    let mut next = 1u32;
    for (i, j) in pairs(mu) {
        for (t, h) in [(i, j), (j, i)] {
            let a = p.get(t, h);
            let sign = if a >= 0 { Sign::Pos } else { Sign::Neg };
            for _ in 0..a.unsigned_abs() {
                let id = ChordId(next);
                height.insert(id, (next - 1) as usize);
                next += 1;
                g.add_chord(
                    id,
                    Chord {
                        sign,
                        tail_circle: t,
                        head_circle: h,
                    },
                );
            }
        }
    }
    for k in 0..mu {
        let mut ends: Vec<Endpoint> = g
            .chords()
            .iter()
            .filter(|(_, ch)| ch.tail_circle == k || ch.head_circle == k)
            .map(|(&id, ch)| {
                let kind = if ch.tail_circle == k {
                    EndKind::Tail
                } else {
                    EndKind::Head
                };
                Endpoint::new(id, kind)
            })
            .collect();
        ends.sort_by_key(|e| circle_rank(&g, k, e.chord, &height));
        *g.circle_mut(k) = ends;
    }
    g
}

struct Run {
    cur: GaussDiagram,
    steps: Vec<Move>,
}

impl Run {
    fn new(g: &GaussDiagram) -> Self {
        Run {
            cur: g.clone(),
            steps: Vec::new(),
        }
    }

    fn apply(&mut self, m: Move) {
        self.cur = apply_move(&self.cur, &m).expect("normalization move applies");
        self.steps.push(m);
    }

    fn extend(&mut self, (g, steps): (GaussDiagram, Vec<Move>)) {
        self.cur = g;
        self.steps.extend(steps);
    }

    fn exchange(&mut self, site: Site) {
        let r = exchange_steps(&self.cur, site).expect("exchange of distinct chords");
        self.extend(r);
    }

    /// Removes self-chords, innermost first, by sliding one end next to the other.
    fn eliminate_self_chords(&mut self) {
        loop {
            let mut best: Option<(usize, usize, usize, usize)> = None;
            for (&id, ch) in self.cur.chords() {
                if !ch.is_self() {
                    continue;
                }
                let c = ch.tail_circle;
                let (_, p) = self.cur.locate(id, EndKind::Tail).expect("tail");
                let (_, q) = self.cur.locate(id, EndKind::Head).expect("head");
                let len = self.cur.circle(c).len();
                for (from, to) in [(p, q), (q, p)] {
                    let inside = crate::diagram::forward_interior(len, from, to);
                    if best.is_none_or(|b| inside < b.0) {
                        best = Some((inside, c, from, to));
                    }
                }
            }
            let Some((inside, c, mut from, to)) = best else {
                return;
            };
            let len = self.cur.circle(c).len();
            for _ in 0..inside {
                self.exchange(Site::new(c, (from + 1) % len));
                from = (from + 1) % len;
            }
            let gap = gap_between(len, from, to).expect("ends adjacent");
            self.apply(Move::R1Delete {
                site: Site::new(c, gap),
            });
        }
    }

    /// Bubble-sorts every circle into the block layout using adjacent exchanges.
    fn sort_into_blocks(&mut self) {
        let g = &self.cur;
        let mut keyed: Vec<(HeightKey, ChordId)> = g
            .chords()
            .iter()
            .map(|(&id, ch)| {
                let (lo, hi) = (
                    ch.tail_circle.min(ch.head_circle),
                    ch.tail_circle.max(ch.head_circle),
                );
                let rank = u8::from(ch.tail_circle != lo);
                let pos = g.slot_on(lo, id).expect("endpoint on lower circle");
                (((lo, hi), rank, Reverse(pos)), id)
            })
            .collect();
        keyed.sort();
        let height: HashMap<ChordId, usize> = keyed
            .iter()
            .enumerate()
            .map(|(h, &(_, id))| (id, h))
            .collect();
        for k in 0..self.cur.mu() {
            let len = self.cur.circle(k).len();
            loop {
                let mut swapped = false;
                for p in 0..len.saturating_sub(1) {
                    let a = self.cur.circle(k)[p].chord;
                    let b = self.cur.circle(k)[p + 1].chord;
                    if circle_rank(&self.cur, k, a, &height) > circle_rank(&self.cur, k, b, &height)
                    {
                        self.exchange(Site::new(k, p + 1));
                        swapped = true;
                    }
                }
                if !swapped {
                    break;
                }
            }
        }
    }

    /// Inside each block, moves type `(lo, hi)` chords above type `(hi, lo)`
    /// ones. Exchanging a neighbouring pair on both circles swaps their
    /// heights and leaves signs and types as they were.
    fn sort_types(&mut self) {
        for (lo, hi) in pairs(self.cur.mu()) {
            loop {
                // Ascending height is descending position on the lower circle.
                let mut block: Vec<(usize, ChordId)> = self
                    .cur
                    .circle(lo)
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| self.cur.chords()[&e.chord].connects(lo, hi))
                    .map(|(p, e)| (p, e.chord))
                    .collect();
                block.reverse();
                let upward = |id: ChordId| self.cur.chords()[&id].tail_circle == lo;
                let Some(w) = block.windows(2).find(|w| !upward(w[0].1) && upward(w[1].1)) else {
                    break;
                };
                let (upper, lower) = (w[0].1, w[1].1);
                for c in [lo, hi] {
                    let len = self.cur.circle(c).len();
                    let pu = self.cur.slot_on(c, upper).expect("endpoint");
                    let pl = self.cur.slot_on(c, lower).expect("endpoint");
                    let gap = gap_between(len, pu, pl)
                        .or_else(|| gap_between(len, pl, pu))
                        .expect("neighbouring heights are adjacent");
                    self.exchange(Site::new(c, gap));
                }
            }
        }
    }

    /// Cancels neighbouring same-type chords of opposite sign until none remain.
    fn cancel_pairs(&mut self) {
        'outer: loop {
            for (lo, hi) in pairs(self.cur.mu()) {
                let block: Vec<ChordId> = self
                    .cur
                    .circle(lo)
                    .iter()
                    .map(|e| e.chord)
                    .filter(|id| self.cur.chords()[id].connects(lo, hi))
                    .collect();
                for (x, &u) in block.iter().enumerate() {
                    for &v in &block[x + 1..] {
                        if let Some(m) = r2_cancel(&self.cur, u, v) {
                            self.apply(m);
                            continue 'outer;
                        }
                    }
                }
            }
            return;
        }
    }
}

/// R2 deletion of `u` and `v` if they are a cancelling pair.
fn r2_cancel(g: &GaussDiagram, u: ChordId, v: ChordId) -> Option<Move> {
    let (cu, cv) = (g.chords()[&u], g.chords()[&v]);
    if cu.tail_circle != cv.tail_circle || cu.head_circle != cv.head_circle || cu.sign == cv.sign {
        return None;
    }
    let site = |kind: EndKind| {
        let (c, p) = g.locate(u, kind)?;
        let (_, q) = g.locate(v, kind)?;
        let len = g.circle(c).len();
        let gap = gap_between(len, p, q).or_else(|| gap_between(len, q, p))?;
        Some(Site::new(c, gap))
    };
    Some(Move::R2Delete {
        tail: site(EndKind::Tail)?,
        head: site(EndKind::Head)?,
    })
}

fn params_of(g: &GaussDiagram) -> NormalFormParams {
    let lk = linking_matrix(g);
    let mut p = NormalFormParams::zero(g.mu());
    for i in 0..g.mu() {
        for j in (0..g.mu()).filter(|&j| j != i) {
            p.set(i, j, lk.get(i, j));
        }
    }
    p
}

/// Reduces any diagram to the block normal form. The returned trace ends at a
/// diagram equal to `realize(&params)` up to rotation and relabelling.
pub fn normalize_general(g: &GaussDiagram) -> (NormalFormParams, MoveTrace) {
    let run = general_run(g);
    let p = params_of(&run.cur);
    debug_assert_eq!(canonical_form(&run.cur), canonical_form(&realize(&p)));
    (p, MoveTrace::new(g.clone(), run.steps))
}

/// Reduces an odd or almost odd diagram to a normal form with `a_ji = 0` for
/// `i < j`; then `a_ij` equals `Lk(i, j) - Lk(j, i)` of the input.
pub fn normalize_odd(g: &GaussDiagram) -> Result<(NormalFormParams, MoveTrace)> {
    let class = g.link_class();
    if class == LinkClass::Odd && g.mu() % 2 == 1 {
        return Err(Error::Precondition(
            "odd diagrams have an even number of circles".into(),
        ));
    }
    if !matches!(class, LinkClass::Odd | LinkClass::AlmostOdd(_)) {
        return Err(Error::Precondition(format!(
            "link class {class} is neither odd nor almost odd"
        )));
    }
    let mut run = general_run(g);
    for (i, j) in pairs(g.mu()) {
        let odd = if g.parity(i) == Parity::Odd { i } else { j };
        let down: Vec<ChordId> = run
            .cur
            .chords()
            .iter()
            .filter(|(_, ch)| ch.tail_circle == j && ch.head_circle == i)
            .map(|(&id, _)| id)
            .collect();
        for id in down {
            let r = flip_nonself_steps(&run.cur, odd, id).expect("flip on an odd circle");
            run.extend(r);
        }
    }
    run.cancel_pairs();
    let p = params_of(&run.cur);
    for (i, j) in pairs(g.mu()) {
        assert_eq!(p.get(j, i), 0, "reverse-type chords remain");
        assert_eq!(
            p.get(i, j),
            lk_difference(g, i, j).expect("valid pair"),
            "odd normal form disagrees with the linking difference"
        );
    }
    debug_assert_eq!(canonical_form(&run.cur), canonical_form(&realize(&p)));
    Ok((p, MoveTrace::new(g.clone(), run.steps)))
}

fn general_run(g: &GaussDiagram) -> Run {
    let mut run = Run::new(g);
    run.eliminate_self_chords();
    run.sort_into_blocks();
    run.sort_types();
    run.cancel_pairs();
    run
}

/// Flips the chords at each listed circle of a normal-form diagram and
/// re-sorts the blocks, giving the normal form of the transformed parameters.
pub fn flip_normal_form(nf: &GaussDiagram, circles: &[usize]) -> Result<(GaussDiagram, MoveTrace)> {
    let mut run = Run::new(nf);
    for &c in circles {
        let r = flip_circle_steps(&run.cur, c)?;
        run.extend(r);
    }
    run.sort_types();
    Ok((run.cur.clone(), MoveTrace::new(nf.clone(), run.steps)))
}

fn check_even3(p: &NormalFormParams) -> Result<()> {
    if p.mu != 3 {
        return Err(Error::Precondition(
            "even orbit canonicalization needs 3 circles".into(),
        ));
    }
    let s = |i, j| (p.get(i, j) + p.get(j, i)).rem_euclid(2);
    if s(0, 1) != s(0, 2) || s(0, 1) != s(1, 2) {
        return Err(Error::Precondition(format!(
            "{p} does not realize an even diagram"
        )));
    }
    Ok(())
}

/// The orbit under flipping no circle or exactly one circle, paired with the flipped circle.
pub fn even3_orbit(p: &NormalFormParams) -> Result<Vec<(Option<usize>, NormalFormParams)>> {
    check_even3(p)?;
    Ok([None, Some(0), Some(1), Some(2)]
        .into_iter()
        .map(|k| (k, k.map_or_else(|| p.clone(), |k| p.flip_circle(k))))
        .collect())
}

/// Lexicographically least tuple `(a12, a21, a13, a31, a23, a32)` in the orbit.
pub fn canonicalize_even3(p: &NormalFormParams) -> Result<NormalFormParams> {
    Ok(even3_orbit(p)?
        .into_iter()
        .map(|(_, q)| q)
        .min_by_key(|q| q.tuple3())
        .expect("orbit is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_gauss_code;

    #[test]
    fn realize_zero_is_empty() {
        assert_eq!(realize(&NormalFormParams::zero(3)), GaussDiagram::empty(3));
    }

    #[test]
    fn realize_single_block_is_standard() {
        let mut p = NormalFormParams::zero(3);
        p.set(2, 0, -2);
        assert_eq!(
            canonical_form(&realize(&p)),
            canonical_form(&crate::diagram::build_standard(3, 2, 0, -2).unwrap())
        );
    }

    #[test]
    fn display_and_flip() {
        let p = NormalFormParams::from_tuple3([1, 0, 1, 0, 1, 0]);
        assert_eq!(p.to_string(), "G(1,0;1,0;1,0)");
        assert_eq!(p.flip_circle(0).tuple3(), [0, -1, 0, -1, 1, 0]);
        assert_eq!(p.flip_circle(0).flip_circle(1), p.flip_circle(2));
    }

    #[test]
    fn trivial_knot_normalizes_to_empty() {
        let g = parse_gauss_code("circles 1\ncircle 1: O1+ O2- U1+ O3+ U2- U3+").unwrap();
        let (p, t) = normalize_general(&g);
        assert!(p.is_zero());
        assert_eq!(t.replay().unwrap(), GaussDiagram::empty(1));
    }

    #[test]
    fn odd_needs_odd_class() {
        assert!(normalize_odd(&GaussDiagram::empty(2)).is_err());
        let g = parse_gauss_code("circles 2\ncircle 1: O1+ U2+\ncircle 2: U1+ O2+").unwrap();
        assert!(normalize_odd(&g).is_err());
    }

    #[test]
    fn minimal_odd_pair() {
        let g =
            parse_gauss_code("circles 2\ncircle 1: O1+ U2- O3+\ncircle 2: U1+ O2- U3+").unwrap();
        assert_eq!(g.link_class(), LinkClass::Odd);
        let (p, t) = normalize_odd(&g).unwrap();
        assert_eq!(p.get(0, 1), lk_difference(&g, 0, 1).unwrap());
        assert_eq!(p.get(1, 0), 0);
        assert_eq!(
            canonical_form(&t.replay().unwrap()),
            canonical_form(&realize(&p))
        );
    }

    #[test]
    fn even3_canonical_examples() {
        let p = NormalFormParams::from_tuple3([1, 0, 1, 0, 1, 0]);
        let q = NormalFormParams::from_tuple3([0, -1, 0, -1, 1, 0]);
        assert_eq!(
            canonicalize_even3(&p).unwrap(),
            canonicalize_even3(&q).unwrap()
        );
        let bad = NormalFormParams::from_tuple3([1, 0, 0, 0, 0, 0]);
        assert!(canonicalize_even3(&bad).is_err());
    }
}
