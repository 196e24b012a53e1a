//! Gauss diagrams: ordered counterclockwise circles carrying signed, directed chords.
//!
//! Circle indices are 0-based in the API; the text format and trace files use
//! 1-based indices.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordId(pub u32);

impl fmt::Display for ChordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// Which end of a chord sits in a slot. The tail is the over-passage, the head
/// the under-passage.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndKind {
    Tail,
    Head,
}

impl EndKind {
    pub fn other(self) -> EndKind {
        match self {
            EndKind::Tail => EndKind::Head,
            EndKind::Head => EndKind::Tail,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub chord: ChordId,
    pub kind: EndKind,
}

impl Endpoint {
    pub fn new(chord: ChordId, kind: EndKind) -> Self {
        Endpoint { chord, kind }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chord {
    pub sign: Sign,
    pub tail_circle: usize,
    pub head_circle: usize,
}

impl Chord {
    pub fn is_self(&self) -> bool {
        self.tail_circle == self.head_circle
    }

    /// `true` when the chord connects the unordered pair `{i, j}`, `i != j`.
    pub fn connects(&self, i: usize, j: usize) -> bool {
        i != j
            && ((self.tail_circle == i && self.head_circle == j)
                || (self.tail_circle == j && self.head_circle == i))
    }
}

/// Parity of a circle: the number of chord endpoints on it.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum LinkClass {
    Odd,
    Even,
    /// Exactly one even circle (0-based index), all others odd.
    AlmostOdd(usize),
    Mixed,
}

impl serde::Serialize for LinkClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for LinkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkClass::Odd => write!(f, "odd"),
            LinkClass::Even => write!(f, "even"),
            LinkClass::AlmostOdd(k) => write!(f, "almost_odd({})", k + 1),
            LinkClass::Mixed => write!(f, "mixed"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    circles: Vec<Vec<Endpoint>>,
    chords: BTreeMap<ChordId, Chord>,
}

impl GaussDiagram {
    /// `mu` circles, no chords.
    pub fn empty(mu: usize) -> Self {
        assert!(mu >= 1, "a Gauss diagram has at least one circle");
        GaussDiagram {
            circles: vec![Vec::new(); mu],
            chords: BTreeMap::new(),
        }
    }

    /// Builds and validates a diagram from slot sequences and chord signs.
    pub fn new(circles: Vec<Vec<Endpoint>>, signs: &BTreeMap<ChordId, Sign>) -> Result<Self> {
        if circles.is_empty() {
            return Err(Error::Invalid("diagram needs at least one circle".into()));
        }
        let mut tails: HashMap<ChordId, usize> = HashMap::new();
        let mut heads: HashMap<ChordId, usize> = HashMap::new();
        for (c, slots) in circles.iter().enumerate() {
            for e in slots {
                if e.chord.0 == 0 {
                    return Err(Error::Invalid("chord ids must be positive".into()));
                }
                let seen = match e.kind {
                    EndKind::Tail => &mut tails,
                    EndKind::Head => &mut heads,
                };
                if seen.insert(e.chord, c).is_some() {
                    return Err(Error::DuplicateKind(e.chord.0));
                }
            }
        }
        let ids: BTreeSet<ChordId> = tails.keys().chain(heads.keys()).copied().collect();
        let mut chords = BTreeMap::new();
        for id in ids {
            let (Some(&t), Some(&h)) = (tails.get(&id), heads.get(&id)) else {
                return Err(Error::ChordCount { id: id.0, count: 1 });
            };
            let sign = *signs
                .get(&id)
                .ok_or_else(|| Error::Invalid(format!("no sign for chord {id}")))?;
            chords.insert(
                id,
                Chord {
                    sign,
                    tail_circle: t,
                    head_circle: h,
                },
            );
        }
        Ok(GaussDiagram { circles, chords })
    }

    pub fn mu(&self) -> usize {
        self.circles.len()
    }

    pub fn circles(&self) -> &[Vec<Endpoint>] {
        &self.circles
    }

    pub fn circle(&self, c: usize) -> &[Endpoint] {
        &self.circles[c]
    }

    pub fn chords(&self) -> &BTreeMap<ChordId, Chord> {
        &self.chords
    }

    pub fn chord(&self, id: ChordId) -> Option<&Chord> {
        self.chords.get(&id)
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn self_chord_count(&self) -> usize {
        self.chords.values().filter(|c| c.is_self()).count()
    }

    pub fn max_id(&self) -> u32 {
        self.chords.keys().next_back().map_or(0, |id| id.0)
    }

    pub(crate) fn next_id(&self) -> ChordId {
        ChordId(self.max_id() + 1)
    }

    /// Circle and slot of one endpoint.
    pub fn locate(&self, id: ChordId, kind: EndKind) -> Option<(usize, usize)> {
        let chord = self.chords.get(&id)?;
        let c = match kind {
            EndKind::Tail => chord.tail_circle,
            EndKind::Head => chord.head_circle,
        };
        let p = self.circles[c]
            .iter()
            .position(|e| e.chord == id && e.kind == kind)?;
        Some((c, p))
    }

    /// Slot of the endpoint of `id` lying on circle `c` (nonself-chords only
    /// have one).
    pub fn slot_on(&self, c: usize, id: ChordId) -> Option<usize> {
        self.circles[c].iter().position(|e| e.chord == id)
    }

    pub fn parity(&self, c: usize) -> Parity {
        if self.circles[c].len().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn link_class(&self) -> LinkClass {
        let evens: Vec<usize> = (0..self.mu())
            .filter(|&c| self.parity(c) == Parity::Even)
            .collect();
        match evens.len() {
            0 => LinkClass::Odd,
            n if n == self.mu() => LinkClass::Even,
            1 => LinkClass::AlmostOdd(evens[0]),
            _ => LinkClass::Mixed,
        }
    }

    // Mutation helpers used by the move engine. They keep `chords` in sync.

    pub(crate) fn circle_mut(&mut self, c: usize) -> &mut Vec<Endpoint> {
        &mut self.circles[c]
    }

    pub(crate) fn add_chord(&mut self, id: ChordId, chord: Chord) {
        self.chords.insert(id, chord);
    }

    pub(crate) fn remove_chord(&mut self, id: ChordId) {
        self.chords.remove(&id);
    }

    /// Negates the sign and reverses the orientation of a chord in place.
    pub(crate) fn reverse_chord(&mut self, id: ChordId) {
        let chord = self.chords.get_mut(&id).expect("chord exists");
        chord.sign = chord.sign.flip();
        std::mem::swap(&mut chord.tail_circle, &mut chord.head_circle);
        for slots in &mut self.circles {
            for e in slots.iter_mut().filter(|e| e.chord == id) {
                e.kind = e.kind.other();
            }
        }
    }

    /// Checks the structural invariants. Used by tests and after replays.
    pub fn validate(&self) -> Result<()> {
        let signs = self.chords.iter().map(|(k, v)| (*k, v.sign)).collect();
        let rebuilt = GaussDiagram::new(self.circles.clone(), &signs)?;
        if rebuilt.chords != self.chords {
            return Err(Error::Invalid("chord table out of sync with slots".into()));
        }
        Ok(())
    }
}

/// Per-circle rotation starts and chord relabelling that produce the canonical form.
#[derive(Clone, Debug)]
pub(crate) struct CanonicalLayout {
    pub starts: Vec<usize>,
    pub labels: HashMap<ChordId, u32>,
}

type Token = (u32, EndKind, Sign);

pub(crate) fn canonical_layout(g: &GaussDiagram) -> CanonicalLayout {
    struct Cand {
        starts: Vec<usize>,
        labels: HashMap<ChordId, u32>,
        next: u32,
    }
    let mut cands = vec![Cand {
        starts: Vec::new(),
        labels: HashMap::new(),
        next: 1,
    }];
    for slots in &g.circles {
        let len = slots.len();
        let mut best: Option<Vec<Token>> = None;
        let mut winners: Vec<Cand> = Vec::new();
        for cand in &cands {
            for r in 0..len.max(1) {
                let mut labels = cand.labels.clone();
                let mut next = cand.next;
                let mut seq: Vec<Token> = Vec::with_capacity(len);
                let mut worse = false;
                for k in 0..len {
                    let e = slots[(r + k) % len];
                    let label = *labels.entry(e.chord).or_insert_with(|| {
                        next += 1;
                        next - 1
                    });
                    seq.push((label, e.kind, g.chords[&e.chord].sign));
                    // Early exit once the prefix is already larger than the best.
                    if let Some(b) = &best {
                        if seq[..] > b[..seq.len()] {
                            worse = true;
                            break;
                        }
                    }
                }
                if worse {
                    continue;
                }
                let next_cand = Cand {
                    starts: cand.starts.iter().copied().chain([r]).collect(),
                    labels,
                    next,
                };
                match &best {
                    Some(b) if seq == *b => {
                        if !winners.iter().any(|w| w.labels == next_cand.labels) {
                            winners.push(next_cand);
                        }
                    }
                    _ => {
                        best = Some(seq);
                        winners = vec![next_cand];
                    }
                }
            }
        }
        cands = winners;
    }
    let c = cands.swap_remove(0);
    CanonicalLayout {
        starts: c.starts,
        labels: c.labels,
    }
}

/// Rotates every circle to its lexicographically least rotation and renumbers
/// chords by first appearance. Two diagrams are equal up to circle rotation
/// and chord relabelling iff their canonical forms are identical.
pub fn canonical_form(g: &GaussDiagram) -> GaussDiagram {
    let layout = canonical_layout(g);
    apply_layout(g, &layout)
}

pub(crate) fn apply_layout(g: &GaussDiagram, layout: &CanonicalLayout) -> GaussDiagram {
    let circles = g
        .circles
        .iter()
        .zip(&layout.starts)
        .map(|(slots, &r)| {
            let len = slots.len();
            (0..len)
                .map(|k| {
                    let e = slots[(r + k) % len];
                    Endpoint::new(ChordId(layout.labels[&e.chord]), e.kind)
                })
                .collect()
        })
        .collect();
    let chords = g
        .chords
        .iter()
        .map(|(id, ch)| (ChordId(layout.labels[id]), *ch))
        .collect();
    GaussDiagram { circles, chords }
}

pub fn same_diagram(a: &GaussDiagram, b: &GaussDiagram) -> bool {
    a.mu() == b.mu() && a.chord_count() == b.chord_count() && canonical_form(a) == canonical_form(b)
}

/// `G_ij(a)`: `|a|` parallel chords of type `(i, j)` with sign `sgn(a)`.
///
/// Chords are stacked top to bottom; the lower-indexed circle reads them
/// bottom-up and the higher-indexed one top-down, as for horizontal chords
/// between two counterclockwise circles placed left to right.
pub fn build_standard(mu: usize, i: usize, j: usize, a: i64) -> Result<GaussDiagram> {
    if i == j || i >= mu || j >= mu {
        return Err(Error::Precondition(format!(
            "standard diagram needs distinct circle indices below {mu}, got ({}, {})",
            i + 1,
            j + 1
        )));
    }
    let mut g = GaussDiagram::empty(mu);
    let sign = if a >= 0 { Sign::Pos } else { Sign::Neg };
    let ids: Vec<ChordId> = (1..=a.unsigned_abs() as u32).map(ChordId).collect();
    for &id in &ids {
        g.add_chord(
            id,
            Chord {
                sign,
                tail_circle: i,
                head_circle: j,
            },
        );
    }
    let kind_on = |c: usize| if c == i { EndKind::Tail } else { EndKind::Head };
    let (lo, hi) = (i.min(j), i.max(j));
    g.circles[lo] = ids
        .iter()
        .rev()
        .map(|&id| Endpoint::new(id, kind_on(lo)))
        .collect();
    g.circles[hi] = ids
        .iter()
        .map(|&id| Endpoint::new(id, kind_on(hi)))
        .collect();
    Ok(g)
}

/// Connected sum: circle `i` of `G` (from its canonical rotation start)
/// followed by circle `i` of `H`; chord ids of `H` are shifted past those of `G`.
pub fn connected_sum(g: &GaussDiagram, h: &GaussDiagram) -> Result<GaussDiagram> {
    if g.mu() != h.mu() {
        return Err(Error::MuMismatch(g.mu(), h.mu()));
    }
    let cg = canonical_form(g);
    let ch = canonical_form(h);
    let shift = cg.max_id();
    let mut out = cg.clone();
    for (id, chord) in &ch.chords {
        out.chords.insert(ChordId(id.0 + shift), *chord);
    }
    for (c, slots) in ch.circles.iter().enumerate() {
        out.circles[c].extend(
            slots
                .iter()
                .map(|e| Endpoint::new(ChordId(e.chord.0 + shift), e.kind)),
        );
    }
    Ok(canonical_form(&out))
}

/// Endpoints strictly inside the counterclockwise arc from slot `from` to slot `to`.
pub(crate) fn forward_interior(len: usize, from: usize, to: usize) -> usize {
    debug_assert!(from != to);
    (to + len - from) % len - 1
}
