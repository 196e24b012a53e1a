//! Replayable move sequences.
//!
//! A trace is positional: each move addresses slots of the diagram produced
//! by the previous one. Traces can be moved onto any diagram that is equal up
//! to rotation and relabelling ([`MoveTrace::rebase`]), which is how reversed
//! and concatenated traces are assembled.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::diagram::{apply_layout, canonical_layout, GaussDiagram};
use crate::error::{Error, Result};
use crate::moves::{apply_move, inverse, Move, Site};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTrace {
    pub start: GaussDiagram,
    pub steps: Vec<Move>,
}

impl MoveTrace {
    pub fn new(start: GaussDiagram, steps: Vec<Move>) -> Self {
        MoveTrace { start, steps }
    }

    pub fn empty(start: GaussDiagram) -> Self {
        MoveTrace::new(start, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Final diagram; fails on the first step whose pattern does not match.
    pub fn replay(&self) -> Result<GaussDiagram> {
        let mut cur = self.start.clone();
        for (i, m) in self.steps.iter().enumerate() {
            cur = apply_move(&cur, m).map_err(|e| Error::Replay {
                step: i + 1,
                source: Box::new(e),
            })?;
        }
        Ok(cur)
    }

    /// Start diagram followed by the diagram after each step.
    pub fn states(&self) -> Result<Vec<GaussDiagram>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.start.clone());
        for (i, m) in self.steps.iter().enumerate() {
            let next = apply_move(out.last().expect("nonempty"), m).map_err(|e| Error::Replay {
                step: i + 1,
                source: Box::new(e),
            })?;
            out.push(next);
        }
        Ok(out)
    }

    /// One move per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for m in &self.steps {
            let _ = writeln!(out, "{m}");
        }
        out
    }

    pub fn parse_steps(text: &str) -> Result<Vec<Move>> {
        text.lines()
            .enumerate()
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
            .map(|(n, l)| {
                l.parse::<Move>()
                    .map_err(|msg| Error::TraceSyntax { line: n + 1, msg })
            })
            .collect()
    }

    pub fn from_text(start: GaussDiagram, text: &str) -> Result<Self> {
        Ok(MoveTrace::new(start, Self::parse_steps(text)?))
    }

    /// The same moves applied to `onto`, which must equal `self.start` up to
    /// rotation and relabelling.
    pub fn rebase(&self, onto: &GaussDiagram) -> Result<MoveTrace> {
        let mut x = self.start.clone();
        let mut y = onto.clone();
        let mut align = Aligner::new(&x, &y)?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, m) in self.steps.iter().enumerate() {
            let m2 = align.map_move(m, &x, &y)?;
            let wrap = |e| Error::Replay {
                step: i + 1,
                source: Box::new(e),
            };
            x = apply_move(&x, m).map_err(wrap)?;
            y = apply_move(&y, &m2).map_err(wrap)?;
            align.refresh(&x, &y)?;
            steps.push(m2);
        }
        Ok(MoveTrace::new(onto.clone(), steps))
    }

    /// A trace from the end of `self` back to (a rotated, relabelled copy of) its start.
    pub fn reverse(&self) -> Result<MoveTrace> {
        let states = self.states()?;
        let end = states.last().expect("nonempty").clone();
        let mut cur = end.clone();
        let mut align = Aligner::identity(&end);
        let mut steps = Vec::with_capacity(self.steps.len());
        for k in (0..self.steps.len()).rev() {
            let (pre, post) = (&states[k], &states[k + 1]);
            align.refresh(post, &cur)?;
            let inv = inverse(pre, &self.steps[k], post)?;
            let mapped = align.map_move(&inv, post, &cur)?;
            cur = apply_move(&cur, &mapped)?;
            steps.push(mapped);
        }
        Ok(MoveTrace::new(end, steps))
    }

    /// `self` followed by `next`, with `next` rebased onto the end of `self`.
    pub fn then(&self, next: &MoveTrace) -> Result<MoveTrace> {
        let end = self.replay()?;
        let tail = next.rebase(&end)?;
        let mut steps = self.steps.clone();
        steps.extend(tail.steps);
        Ok(MoveTrace::new(self.start.clone(), steps))
    }
}

/// Per-circle rotation taking slots of one diagram to an isomorphic one.
struct Aligner {
    offsets: Vec<usize>,
}

/// `true` when rotating each circle of `x` by `offsets` gives `y` up to chord relabelling.
fn rotated_match(x: &GaussDiagram, y: &GaussDiagram, offsets: &[usize]) -> bool {
    if x.mu() != y.mu() || x.chord_count() != y.chord_count() {
        return false;
    }
    let mut fwd = HashMap::new();
    let mut back = HashMap::new();
    for c in 0..x.mu() {
        let (cx, cy) = (x.circle(c), y.circle(c));
        if cx.len() != cy.len() {
            return false;
        }
        let len = cx.len();
        for s in 0..len {
            let ex = cx[s];
            let ey = cy[(s + offsets[c]) % len];
            if ex.kind != ey.kind || x.chords()[&ex.chord].sign != y.chords()[&ey.chord].sign {
                return false;
            }
            if *fwd.entry(ex.chord).or_insert(ey.chord) != ey.chord
                || *back.entry(ey.chord).or_insert(ex.chord) != ex.chord
            {
                return false;
            }
        }
    }
    true
}

impl Aligner {
    fn identity(g: &GaussDiagram) -> Self {
        Aligner {
            offsets: vec![0; g.mu()],
        }
    }

    fn new(x: &GaussDiagram, y: &GaussDiagram) -> Result<Self> {
        let mut a = Aligner::identity(x);
        a.refresh(x, y)?;
        Ok(a)
    }

    fn refresh(&mut self, x: &GaussDiagram, y: &GaussDiagram) -> Result<()> {
        if self.offsets.len() == x.mu() && rotated_match(x, y, &self.offsets) {
            return Ok(());
        }
        if x.mu() != y.mu() {
            return Err(Error::MuMismatch(x.mu(), y.mu()));
        }
        let lx = canonical_layout(x);
        let ly = canonical_layout(y);
        if apply_layout(x, &lx) != apply_layout(y, &ly) {
            return Err(Error::Precondition(
                "trace does not start at an isomorphic diagram".into(),
            ));
        }
        self.offsets = (0..x.mu())
            .map(|c| {
                let len = x.circle(c).len();
                if len == 0 {
                    0
                } else {
                    (ly.starts[c] + len - lx.starts[c]) % len
                }
            })
            .collect();
        debug_assert!(rotated_match(x, y, &self.offsets));
        Ok(())
    }

    fn slot(&self, x: &GaussDiagram, c: usize, s: usize) -> usize {
        let len = x.circle(c).len();
        if len == 0 {
            0
        } else {
            (s % len + self.offsets[c]) % len
        }
    }

    fn pair(&self, x: &GaussDiagram, site: Site) -> Site {
        Site::new(site.circle, self.slot(x, site.circle, site.gap))
    }

    fn map_move(&self, m: &Move, x: &GaussDiagram, y: &GaussDiagram) -> Result<Move> {
        let _ = y;
        if self.offsets.iter().all(|&o| o == 0) {
            return Ok(*m);
        }
        Ok(match *m {
            Move::R1Insert {
                site,
                sign,
                head_first,
            } => Move::R1Insert {
                site: self.pair(x, site),
                sign,
                head_first,
            },
            Move::R1Delete { site } => Move::R1Delete {
                site: self.pair(x, site),
            },
            Move::CF { site } => Move::CF {
                site: self.pair(x, site),
            },
            Move::R2Delete { tail, head } => Move::R2Delete {
                tail: self.pair(x, tail),
                head: self.pair(x, head),
            },
            Move::R3 { sites } => Move::R3 {
                sites: sites.map(|s| self.pair(x, s)),
            },
            Move::R2Insert {
                tail,
                head,
                sign,
                variant,
            } => {
                let tg = self.slot(x, tail.circle, tail.gap);
                let hg = if head.circle != tail.circle {
                    self.slot(x, head.circle, head.gap)
                } else {
                    let len = x.circle(tail.circle).len();
                    let idx = head.gap % (len + 2);
                    if idx == tail.gap % (len + 2) {
                        tg
                    } else if idx == tail.gap + 1 {
                        return Err(Error::PatternMismatch(
                            "R2Insert: heads cannot go between the new tails".into(),
                        ));
                    } else {
                        let s = if idx < tail.gap { idx } else { idx - 2 };
                        let s2 = self.slot(x, tail.circle, s);
                        if s2 < tg {
                            s2
                        } else {
                            s2 + 2
                        }
                    }
                };
                Move::R2Insert {
                    tail: Site::new(tail.circle, tg),
                    head: Site::new(head.circle, hg),
                    sign,
                    variant,
                }
            }
        })
    }
}
