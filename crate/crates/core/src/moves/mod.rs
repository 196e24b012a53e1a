//! Primitive moves: R1, R2, R3 and CF, addressed by slot gaps.
//!
//! Gap `k` on a circle of length `L` sits between slots `(k - 1) mod L` and
//! `k`, so gap 0 separates the last slot from the first. A pair site
//! `(circle, k)` names the two endpoints around gap `k`, read in that order.
//! Insertions at gap `k` insert at index `k`; gap `L` is accepted as an
//! append, which is cyclically the same place as gap 0.

mod macros;

pub use macros::{exchange_adjacent, flip_circle_chords, flip_nonself_chord};
pub(crate) use macros::{exchange_steps, flip_circle_steps, flip_nonself_steps};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::diagram::{canonical_form, Chord, ChordId, EndKind, Endpoint, GaussDiagram, Sign};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub circle: usize,
    pub gap: usize,
}

impl Site {
    pub fn new(circle: usize, gap: usize) -> Self {
        Site { circle, gap }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum R2Variant {
    /// Heads in the same order as the tails.
    Parallel,
    Antiparallel,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// New free self-chord at a gap; `head_first` puts the head before the tail.
    R1Insert {
        site: Site,
        sign: Sign,
        head_first: bool,
    },
    /// Removes the free self-chord occupying the pair at `site`.
    R1Delete { site: Site },
    /// Adds chords `a` (sign `sign`) and `b` (opposite sign). Tails `a, b`
    /// go in at `tail`; heads go in at `head`, a gap of the circle after the
    /// tails were inserted.
    R2Insert {
        tail: Site,
        head: Site,
        sign: Sign,
        variant: R2Variant,
    },
    /// Removes two opposite-sign chords whose tails form the pair at `tail`
    /// and whose heads form the pair at `head`.
    R2Delete { tail: Site, head: Site },
    /// Sites `[T, M, B]`: T holds tails of `x, y`, M holds the head of `x`
    /// and the tail of `z`, B holds the heads of `y, z`. Swaps all three pairs.
    R3 { sites: [Site; 3] },
    /// Swaps two adjacent same-kind endpoints of distinct chords, negating
    /// and reversing both chords.
    CF { site: Site },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum MoveKind {
    R1Insert,
    R1Delete,
    R2Insert,
    R2Delete,
    R3,
    CF,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::R1Insert => "R1Insert",
            MoveKind::R1Delete => "R1Delete",
            MoveKind::R2Insert => "R2Insert",
            MoveKind::R2Delete => "R2Delete",
            MoveKind::R3 => "R3",
            MoveKind::CF => "CF",
        }
    }
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Insert { .. } => MoveKind::R1Insert,
            Move::R1Delete { .. } => MoveKind::R1Delete,
            Move::R2Insert { .. } => MoveKind::R2Insert,
            Move::R2Delete { .. } => MoveKind::R2Delete,
            Move::R3 { .. } => MoveKind::R3,
            Move::CF { .. } => MoveKind::CF,
        }
    }

    pub fn is_cf(&self) -> bool {
        matches!(self, Move::CF { .. })
    }

    /// Change in chord count.
    pub fn chord_delta(&self) -> i64 {
        match self {
            Move::R1Insert { .. } => 1,
            Move::R1Delete { .. } => -1,
            Move::R2Insert { .. } => 2,
            Move::R2Delete { .. } => -2,
            Move::R3 { .. } | Move::CF { .. } => 0,
        }
    }
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::PatternMismatch(msg.into())
}

fn out_of_range(msg: impl Into<String>) -> Error {
    Error::SiteOutOfRange(msg.into())
}

/// Gap whose pair reads `(first, second)`, if the slots are cyclically adjacent in that order.
pub(crate) fn gap_between(len: usize, first: usize, second: usize) -> Option<usize> {
    (len >= 2 && first != second && (first + 1) % len == second).then_some(second)
}

/// Slots `(first, second)` of a pair site.
pub(crate) fn pair_slots(g: &GaussDiagram, site: Site) -> Result<(usize, usize)> {
    if site.circle >= g.mu() {
        return Err(out_of_range(format!(
            "circle {} of {}",
            site.circle + 1,
            g.mu()
        )));
    }
    let len = g.circle(site.circle).len();
    if len < 2 {
        return Err(out_of_range(format!(
            "circle {} has {len} slots, a pair needs 2",
            site.circle + 1
        )));
    }
    if site.gap >= len {
        return Err(out_of_range(format!(
            "gap {} on circle {} of length {len}",
            site.gap,
            site.circle + 1
        )));
    }
    Ok(((site.gap + len - 1) % len, site.gap))
}

fn pair_endpoints(g: &GaussDiagram, site: Site) -> Result<(Endpoint, Endpoint)> {
    let (a, b) = pair_slots(g, site)?;
    let c = g.circle(site.circle);
    Ok((c[a], c[b]))
}

fn check_insert_gap(g: &GaussDiagram, site: Site) -> Result<()> {
    if site.circle >= g.mu() {
        return Err(out_of_range(format!(
            "circle {} of {}",
            site.circle + 1,
            g.mu()
        )));
    }
    let len = g.circle(site.circle).len();
    if site.gap > len {
        return Err(out_of_range(format!(
            "gap {} on circle {} of length {len}",
            site.gap,
            site.circle + 1
        )));
    }
    Ok(())
}

/// Removes slots from one circle, highest index first.
fn remove_slots(g: &mut GaussDiagram, circle: usize, mut slots: Vec<usize>) {
    slots.sort_unstable_by(|a, b| b.cmp(a));
    for s in slots {
        g.circle_mut(circle).remove(s);
    }
}

/// Chords `(x, y, z)` of a valid R3 site triple.
pub(crate) fn r3_match(g: &GaussDiagram, sites: [Site; 3]) -> Result<(ChordId, ChordId, ChordId)> {
    let [t, m, b] = sites;
    let (t1, t2) = pair_endpoints(g, t)?;
    let (m1, m2) = pair_endpoints(g, m)?;
    let (b1, b2) = pair_endpoints(g, b)?;
    if t1.kind != EndKind::Tail || t2.kind != EndKind::Tail {
        return Err(mismatch("R3: first site must hold two tails"));
    }
    if b1.kind != EndKind::Head || b2.kind != EndKind::Head {
        return Err(mismatch("R3: third site must hold two heads"));
    }
    let (hx, tz, o_m) = match (m1.kind, m2.kind) {
        (EndKind::Head, EndKind::Tail) => (m1, m2, 1),
        (EndKind::Tail, EndKind::Head) => (m2, m1, -1),
        _ => return Err(mismatch("R3: middle site must hold a head and a tail")),
    };
    let (x, z) = (hx.chord, tz.chord);
    let (y, o_t) = if t1.chord == x {
        (t2.chord, 1)
    } else if t2.chord == x {
        (t1.chord, -1)
    } else {
        return Err(mismatch(
            "R3: first site must hold the tail of the middle head's chord",
        ));
    };
    let o_b = if b1.chord == y && b2.chord == z {
        1
    } else if b1.chord == z && b2.chord == y {
        -1
    } else {
        return Err(mismatch(
            "R3: third site must hold the heads of the remaining chords",
        ));
    };
    if x == y || y == z || x == z {
        return Err(mismatch("R3: chords must be distinct"));
    }
    let s = |id: ChordId| g.chords()[&id].sign.value();
    if o_t * o_m != s(y) * s(z) || o_m * o_b != s(x) * s(y) {
        return Err(mismatch("R3: orders and signs do not form a triangle"));
    }
    Ok((x, y, z))
}

pub fn apply_move(g: &GaussDiagram, m: &Move) -> Result<GaussDiagram> {
    let mut out = g.clone();
    match *m {
        Move::R1Insert {
            site,
            sign,
            head_first,
        } => {
            check_insert_gap(g, site)?;
            let id = g.next_id();
            let (first, second) = if head_first {
                (EndKind::Head, EndKind::Tail)
            } else {
                (EndKind::Tail, EndKind::Head)
            };
            let slots = out.circle_mut(site.circle);
            slots.insert(site.gap, Endpoint::new(id, first));
            slots.insert(site.gap + 1, Endpoint::new(id, second));
            out.add_chord(
                id,
                Chord {
                    sign,
                    tail_circle: site.circle,
                    head_circle: site.circle,
                },
            );
        }
        Move::R1Delete { site } => {
            let (a, b) = pair_slots(g, site)?;
            let (ea, eb) = (g.circle(site.circle)[a], g.circle(site.circle)[b]);
            if ea.chord != eb.chord {
                return Err(mismatch("R1Delete: pair is not a free self-chord"));
            }
            remove_slots(&mut out, site.circle, vec![a, b]);
            out.remove_chord(ea.chord);
        }
        Move::R2Insert {
            tail,
            head,
            sign,
            variant,
        } => {
            check_insert_gap(g, tail)?;
            let a = g.next_id();
            let b = ChordId(a.0 + 1);
            {
                let slots = out.circle_mut(tail.circle);
                slots.insert(tail.gap, Endpoint::new(a, EndKind::Tail));
                slots.insert(tail.gap + 1, Endpoint::new(b, EndKind::Tail));
            }
            check_insert_gap(&out, head)?;
            if head.circle == tail.circle && head.gap == tail.gap + 1 {
                return Err(mismatch("R2Insert: heads cannot go between the new tails"));
            }
            let (h1, h2) = match variant {
                R2Variant::Parallel => (a, b),
                R2Variant::Antiparallel => (b, a),
            };
            let slots = out.circle_mut(head.circle);
            slots.insert(head.gap, Endpoint::new(h1, EndKind::Head));
            slots.insert(head.gap + 1, Endpoint::new(h2, EndKind::Head));
            for (id, s) in [(a, sign), (b, sign.flip())] {
                out.add_chord(
                    id,
                    Chord {
                        sign: s,
                        tail_circle: tail.circle,
                        head_circle: head.circle,
                    },
                );
            }
        }
        Move::R2Delete { tail, head } => {
            let (ta, tb) = pair_slots(g, tail)?;
            let (ha, hb) = pair_slots(g, head)?;
            let t = (g.circle(tail.circle)[ta], g.circle(tail.circle)[tb]);
            let h = (g.circle(head.circle)[ha], g.circle(head.circle)[hb]);
            if t.0.kind != EndKind::Tail || t.1.kind != EndKind::Tail {
                return Err(mismatch("R2Delete: tail site must hold two tails"));
            }
            if h.0.kind != EndKind::Head || h.1.kind != EndKind::Head {
                return Err(mismatch("R2Delete: head site must hold two heads"));
            }
            let tails: BTreeSet<ChordId> = [t.0.chord, t.1.chord].into();
            let heads: BTreeSet<ChordId> = [h.0.chord, h.1.chord].into();
            if tails.len() != 2 || tails != heads {
                return Err(mismatch(
                    "R2Delete: sites must hold both ends of the same two chords",
                ));
            }
            let (sa, sb) = (g.chords()[&t.0.chord].sign, g.chords()[&t.1.chord].sign);
            if sa == sb {
                return Err(mismatch("R2Delete: chords must have opposite signs"));
            }
            if tail.circle == head.circle {
                remove_slots(&mut out, tail.circle, vec![ta, tb, ha, hb]);
            } else {
                remove_slots(&mut out, tail.circle, vec![ta, tb]);
                remove_slots(&mut out, head.circle, vec![ha, hb]);
            }
            out.remove_chord(t.0.chord);
            out.remove_chord(t.1.chord);
        }
        Move::R3 { sites } => {
            r3_match(g, sites)?;
            for s in sites {
                let (a, b) = pair_slots(g, s)?;
                out.circle_mut(s.circle).swap(a, b);
            }
        }
        Move::CF { site } => {
            let (a, b) = pair_slots(g, site)?;
            let (ea, eb) = (g.circle(site.circle)[a], g.circle(site.circle)[b]);
            if ea.kind != eb.kind {
                return Err(mismatch("CF: endpoints must be of the same kind"));
            }
            if ea.chord == eb.chord {
                return Err(mismatch("CF: endpoints must belong to distinct chords"));
            }
            out.circle_mut(site.circle).swap(a, b);
            out.reverse_chord(ea.chord);
            out.reverse_chord(eb.chord);
        }
    }
    Ok(out)
}

/// `(neighbour slot, gap)` for the two neighbours of `slot`; the gap reads
/// `(slot, neighbour)` for the right neighbour and `(neighbour, slot)` for the left.
fn neighbours(len: usize, slot: usize) -> [(usize, usize, bool); 2] {
    let right = (slot + 1) % len;
    let left = (slot + len - 1) % len;
    [(right, right, true), (left, slot, false)]
}

/// Number of distinct insertion gaps on a circle of length `len`.
fn insert_gaps(len: usize) -> usize {
    len.max(1)
}

/// Every applicable move, in a fixed order: R1Delete, R2Delete, R3, CF and,
/// with `allow_growth`, R1Insert then R2Insert.
pub fn enumerate_moves(g: &GaussDiagram, allow_growth: bool) -> Vec<Move> {
    let mut out = Vec::new();
    let mu = g.mu();

    let mut seen_r1 = BTreeSet::new();
    for c in 0..mu {
        let len = g.circle(c).len();
        if len < 2 {
            continue;
        }
        for gap in 0..len {
            let (a, b) = ((gap + len - 1) % len, gap);
            let (ea, eb) = (g.circle(c)[a], g.circle(c)[b]);
            if ea.chord == eb.chord && seen_r1.insert(ea.chord) {
                out.push(Move::R1Delete {
                    site: Site::new(c, gap),
                });
            }
        }
    }

    let mut seen_r2 = BTreeSet::new();
    for c in 0..mu {
        let len = g.circle(c).len();
        if len < 2 {
            continue;
        }
        for gap in 0..len {
            let (ta, tb) = (g.circle(c)[(gap + len - 1) % len], g.circle(c)[gap]);
            if ta.kind != EndKind::Tail || tb.kind != EndKind::Tail || ta.chord == tb.chord {
                continue;
            }
            let (ca, cb) = (g.chords()[&ta.chord], g.chords()[&tb.chord]);
            if ca.sign == cb.sign || ca.head_circle != cb.head_circle {
                continue;
            }
            let key = (ta.chord.min(tb.chord), ta.chord.max(tb.chord));
            if seen_r2.contains(&key) {
                continue;
            }
            let hc = ca.head_circle;
            let hlen = g.circle(hc).len();
            let (_, pa) = g.locate(ta.chord, EndKind::Head).expect("head exists");
            let (_, pb) = g.locate(tb.chord, EndKind::Head).expect("head exists");
            if let Some(hg) = gap_between(hlen, pa, pb).or_else(|| gap_between(hlen, pb, pa)) {
                seen_r2.insert(key);
                out.push(Move::R2Delete {
                    tail: Site::new(c, gap),
                    head: Site::new(hc, hg),
                });
            }
        }
    }

    let mut seen_r3 = BTreeSet::new();
    for c in 0..mu {
        let len = g.circle(c).len();
        if len < 2 {
            continue;
        }
        for gap in 0..len {
            let t = Site::new(c, gap);
            let Ok((e1, e2)) = pair_endpoints(g, t) else {
                continue;
            };
            if e1.kind != EndKind::Tail || e2.kind != EndKind::Tail || e1.chord == e2.chord {
                continue;
            }
            for (x, y) in [(e1.chord, e2.chord), (e2.chord, e1.chord)] {
                let (cx, px) = g.locate(x, EndKind::Head).expect("head exists");
                let lx = g.circle(cx).len();
                if lx < 2 {
                    continue;
                }
                for (nb, mgap, _) in neighbours(lx, px) {
                    let en = g.circle(cx)[nb];
                    if en.kind != EndKind::Tail || en.chord == x || en.chord == y {
                        continue;
                    }
                    let z = en.chord;
                    let (cy, py) = g.locate(y, EndKind::Head).expect("head exists");
                    let (cz, pz) = g.locate(z, EndKind::Head).expect("head exists");
                    if cy != cz {
                        continue;
                    }
                    let ly = g.circle(cy).len();
                    for (nb2, bgap, _) in neighbours(ly, py) {
                        if nb2 != pz {
                            continue;
                        }
                        let sites = [t, Site::new(cx, mgap), Site::new(cy, bgap)];
                        if let Ok(key) = r3_match(g, sites) {
                            if seen_r3.insert(key) {
                                out.push(Move::R3 { sites });
                            }
                        }
                    }
                }
            }
        }
    }

    for c in 0..mu {
        let len = g.circle(c).len();
        if len < 2 {
            continue;
        }
        let gaps = if len == 2 { 1..2 } else { 0..len };
        for gap in gaps {
            let (ea, eb) = (g.circle(c)[(gap + len - 1) % len], g.circle(c)[gap]);
            if ea.kind == eb.kind && ea.chord != eb.chord {
                out.push(Move::CF {
                    site: Site::new(c, gap),
                });
            }
        }
    }

    if allow_growth {
        for c in 0..mu {
            for gap in 0..insert_gaps(g.circle(c).len()) {
                for sign in [Sign::Pos, Sign::Neg] {
                    for head_first in [false, true] {
                        out.push(Move::R1Insert {
                            site: Site::new(c, gap),
                            sign,
                            head_first,
                        });
                    }
                }
            }
        }
        for tc in 0..mu {
            for tg in 0..insert_gaps(g.circle(tc).len()) {
                for hc in 0..mu {
                    let hlen = g.circle(hc).len() + if hc == tc { 2 } else { 0 };
                    for hg in 0..insert_gaps(hlen) {
                        if hc == tc && hg == tg + 1 {
                            continue;
                        }
                        for sign in [Sign::Pos, Sign::Neg] {
                            for variant in [R2Variant::Parallel, R2Variant::Antiparallel] {
                                out.push(Move::R2Insert {
                                    tail: Site::new(tc, tg),
                                    head: Site::new(hc, hg),
                                    sign,
                                    variant,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// A move on `post = apply_move(pre, m)` leading back to `pre` up to
/// [`canonical_form`].
pub fn inverse(pre: &GaussDiagram, m: &Move, post: &GaussDiagram) -> Result<Move> {
    match *m {
        Move::R1Insert { .. } => {
            let id = pre.next_id();
            let (c, p) = post.locate(id, EndKind::Tail).expect("inserted chord");
            let (_, q) = post.locate(id, EndKind::Head).expect("inserted chord");
            let len = post.circle(c).len();
            let gap = gap_between(len, p, q)
                .or_else(|| gap_between(len, q, p))
                .expect("inserted chord is free");
            Ok(Move::R1Delete {
                site: Site::new(c, gap),
            })
        }
        Move::R1Delete { site } => {
            let (a, b) = pair_slots(pre, site)?;
            let first = pre.circle(site.circle)[a];
            let sign = pre.chords()[&first.chord].sign;
            let gap = if b == 0 { 0 } else { a };
            Ok(Move::R1Insert {
                site: Site::new(site.circle, gap),
                sign,
                head_first: first.kind == EndKind::Head,
            })
        }
        Move::R2Insert { .. } => {
            let a = pre.next_id();
            let b = ChordId(a.0 + 1);
            let (tc, ta) = post.locate(a, EndKind::Tail).expect("inserted chord");
            let (_, tb) = post.locate(b, EndKind::Tail).expect("inserted chord");
            let (hc, ha) = post.locate(a, EndKind::Head).expect("inserted chord");
            let (_, hb) = post.locate(b, EndKind::Head).expect("inserted chord");
            let (tl, hl) = (post.circle(tc).len(), post.circle(hc).len());
            let tg = gap_between(tl, ta, tb).or_else(|| gap_between(tl, tb, ta));
            let hg = gap_between(hl, ha, hb).or_else(|| gap_between(hl, hb, ha));
            Ok(Move::R2Delete {
                tail: Site::new(tc, tg.expect("adjacent tails")),
                head: Site::new(hc, hg.expect("adjacent heads")),
            })
        }
        Move::R2Delete { tail, head } => r2_delete_inverse(pre, tail, head, post),
        Move::R3 { .. } | Move::CF { .. } => Ok(*m),
    }
}

fn r2_delete_inverse(
    pre: &GaussDiagram,
    tail: Site,
    head: Site,
    post: &GaussDiagram,
) -> Result<Move> {
    let (t1, t2) = pair_slots(pre, tail)?;
    let (h1, h2) = pair_slots(pre, head)?;
    let a = pre.circle(tail.circle)[t1].chord;
    let sign = pre.chords()[&a].sign;
    let variant = if pre.circle(head.circle)[h1].chord == a {
        R2Variant::Parallel
    } else {
        R2Variant::Antiparallel
    };
    let target = canonical_form(pre);
    let same = tail.circle == head.circle;
    let tg = if t2 == 0 {
        0
    } else {
        t1 - if same {
            [h1, h2].iter().filter(|&&h| h < t1).count()
        } else {
            0
        }
    };
    let hg = if h2 == 0 { 0 } else { h1 };
    let guess = Move::R2Insert {
        tail: Site::new(tail.circle, tg),
        head: Site::new(head.circle, hg),
        sign,
        variant,
    };
    if apply_move(post, &guess).is_ok_and(|r| canonical_form(&r) == target) {
        return Ok(guess);
    }
    let tlen = post.circle(tail.circle).len();
    for tg in 0..insert_gaps(tlen) {
        let hlen = post.circle(head.circle).len() + if same { 2 } else { 0 };
        for hg in 0..insert_gaps(hlen) {
            let m = Move::R2Insert {
                tail: Site::new(tail.circle, tg),
                head: Site::new(head.circle, hg),
                sign,
                variant,
            };
            if apply_move(post, &m).is_ok_and(|r| canonical_form(&r) == target) {
                return Ok(m);
            }
        }
    }
    Err(mismatch(
        "R2Delete: no insertion restores the original diagram",
    ))
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::R1Insert {
                site,
                sign,
                head_first,
            } => write!(
                f,
                "R1Insert {} {} {} {}",
                site.circle + 1,
                site.gap,
                sign.symbol(),
                if head_first {
                    "head-first"
                } else {
                    "tail-first"
                }
            ),
            Move::R1Delete { site } => write!(f, "R1Delete {} {}", site.circle + 1, site.gap),
            Move::R2Insert {
                tail,
                head,
                sign,
                variant,
            } => write!(
                f,
                "R2Insert {},{} {},{} {} {}",
                tail.circle + 1,
                head.circle + 1,
                tail.gap,
                head.gap,
                sign.symbol(),
                match variant {
                    R2Variant::Parallel => "parallel",
                    R2Variant::Antiparallel => "antiparallel",
                }
            ),
            Move::R2Delete { tail, head } => write!(
                f,
                "R2Delete {},{} {},{}",
                tail.circle + 1,
                head.circle + 1,
                tail.gap,
                head.gap
            ),
            Move::R3 { sites: [t, m, b] } => write!(
                f,
                "R3 {},{},{} {},{},{}",
                t.circle + 1,
                m.circle + 1,
                b.circle + 1,
                t.gap,
                m.gap,
                b.gap
            ),
            Move::CF { site } => write!(f, "CF {} {}", site.circle + 1, site.gap),
        }
    }
}

fn parse_list(tok: &str, n: usize) -> std::result::Result<Vec<usize>, String> {
    let parts: Vec<&str> = tok.split(',').collect();
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated values in `{tok}`"));
    }
    parts
        .iter()
        .map(|p| p.parse::<usize>().map_err(|_| format!("bad number `{p}`")))
        .collect()
}

fn parse_circles(tok: &str, n: usize) -> std::result::Result<Vec<usize>, String> {
    let v = parse_list(tok, n)?;
    if v.contains(&0) {
        return Err("circle indices are 1-based".into());
    }
    Ok(v.into_iter().map(|c| c - 1).collect())
}

fn parse_sign(tok: &str) -> std::result::Result<Sign, String> {
    match tok {
        "+" => Ok(Sign::Pos),
        "-" => Ok(Sign::Neg),
        _ => Err(format!("bad sign `{tok}`")),
    }
}

impl FromStr for Move {
    type Err = String;

    fn from_str(line: &str) -> std::result::Result<Self, String> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let arity = |n: usize| {
            if toks.len() == n {
                Ok(())
            } else {
                Err(format!("`{}` takes {} fields", toks[0], n - 1))
            }
        };
        match toks.first().copied() {
            Some("R1Insert") => {
                arity(5)?;
                let c = parse_circles(toks[1], 1)?[0];
                let g = parse_list(toks[2], 1)?[0];
                let head_first = match toks[4] {
                    "tail-first" => false,
                    "head-first" => true,
                    o => return Err(format!("bad orientation `{o}`")),
                };
                Ok(Move::R1Insert {
                    site: Site::new(c, g),
                    sign: parse_sign(toks[3])?,
                    head_first,
                })
            }
            Some("R1Delete") | Some("CF") => {
                arity(3)?;
                let site = Site::new(parse_circles(toks[1], 1)?[0], parse_list(toks[2], 1)?[0]);
                Ok(if toks[0] == "CF" {
                    Move::CF { site }
                } else {
                    Move::R1Delete { site }
                })
            }
            Some("R2Insert") => {
                arity(5)?;
                let c = parse_circles(toks[1], 2)?;
                let g = parse_list(toks[2], 2)?;
                let variant = match toks[4] {
                    "parallel" => R2Variant::Parallel,
                    "antiparallel" => R2Variant::Antiparallel,
                    o => return Err(format!("bad variant `{o}`")),
                };
                Ok(Move::R2Insert {
                    tail: Site::new(c[0], g[0]),
                    head: Site::new(c[1], g[1]),
                    sign: parse_sign(toks[3])?,
                    variant,
                })
            }
            Some("R2Delete") => {
                arity(3)?;
                let c = parse_circles(toks[1], 2)?;
                let g = parse_list(toks[2], 2)?;
                Ok(Move::R2Delete {
                    tail: Site::new(c[0], g[0]),
                    head: Site::new(c[1], g[1]),
                })
            }
            Some("R3") => {
                arity(3)?;
                let c = parse_circles(toks[1], 3)?;
                let g = parse_list(toks[2], 3)?;
                Ok(Move::R3 {
                    sites: [
                        Site::new(c[0], g[0]),
                        Site::new(c[1], g[1]),
                        Site::new(c[2], g[2]),
                    ],
                })
            }
            Some(other) => Err(format!("unknown move `{other}`")),
            None => Err("empty line".into()),
        }
    }
}

#[cfg(test)]
mod tests;
